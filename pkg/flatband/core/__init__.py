"""
Core components: configuration, named errors and event logging.
"""

from .config import AnalysisConfig, get_config, reset_config
from .errors import FlatbandError, ParseError
from .events import EventLogger
