"""
Reportable event logging (counterexample candidates, probe hits, crashes).
"""

import os
import logging
import logging.handlers

from .config import get_config


class EventLogger:
    """Event logger for results that must never pass silently"""

    def __init__(self, path=None):
        self.event_logger = logging.getLogger('flatband.events')
        self.event_logger.setLevel(logging.WARNING)

        path = path or get_config().event_log
        if path and not any(getattr(h, 'baseFilename', None) == os.path.abspath(path)
                            for h in self.event_logger.handlers):
            # Create event log handler
            event_handler = logging.handlers.RotatingFileHandler(
                path,
                maxBytes=10*1024*1024,  # 10MB
                backupCount=5
            )
            event_handler.setFormatter(logging.Formatter(
                '%(asctime)s - EVENT - %(levelname)s - %(message)s'
            ))
            self.event_logger.addHandler(event_handler)

    def log_event(self, event_type, details, base=None):
        """Log reportable events"""
        message = f"EVENT: {event_type} | DETAILS: {details}"
        if base is not None:
            message += f" | BASE: {base}"
        self.event_logger.warning(message)
