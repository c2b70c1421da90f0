"""
Configuration handling and validation for the toolkit.
"""

import os
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv()


class AnalysisConfig:
    """Analysis configuration management"""

    # name: (default, description)
    INTEGER_VARS = {
        'FLATBAND_EXPLOSION_CAP': (10_000_000, 'max loops/configurations per enumeration call'),
        'FLATBAND_TORUS_CAP': (4096, 'max dimension N*L^d of a finite-torus matrix'),
        'FLATBAND_GRID_SIDE': (11, 'default side length of uniform theta grids (odd)'),
        'FLATBAND_MAX_LOOP_LENGTH': (12, 'iterative deepening bound for extremal loop search'),
        'FLATBAND_SEED': (0, 'default seed for sampled checks and probes'),
        'FLATBAND_SAMPLE_DENOMINATOR': (1000, 'denominator bound of the rational probe sampler'),
    }

    def __init__(self):
        self.validate_environment()
        self.load_config()

    def validate_environment(self):
        """Validate optional environment variables"""
        for var, (_, description) in self.INTEGER_VARS.items():
            raw = os.getenv(var)
            if raw is None:
                continue
            try:
                value = int(raw)
            except (ValueError, TypeError):
                raise ValueError(f"{var} must be an integer ({description})")
            if value < 0 or (value == 0 and var != 'FLATBAND_SEED'):
                raise ValueError(f"{var} must be positive ({description})")

        grid_side = os.getenv('FLATBAND_GRID_SIDE')
        if grid_side is not None and int(grid_side) % 2 == 0:
            raise ValueError("FLATBAND_GRID_SIDE must be odd to avoid symmetry-degenerate grid points")

        level = os.getenv('FLATBAND_LOG_LEVEL', 'INFO').upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"FLATBAND_LOG_LEVEL must be a logging level name, got {level}")

        logger.debug("Environment validated")

    def load_config(self):
        """Load configuration from environment variables"""
        values = {var: int(os.getenv(var, str(default))) for var, (default, _) in self.INTEGER_VARS.items()}

        # Enumeration and size guards
        self.explosion_cap = values['FLATBAND_EXPLOSION_CAP']
        self.torus_cap = values['FLATBAND_TORUS_CAP']
        self.max_loop_length = values['FLATBAND_MAX_LOOP_LENGTH']

        # Sampling
        self.grid_side = values['FLATBAND_GRID_SIDE']
        self.seed = values['FLATBAND_SEED']
        self.sample_denominator = values['FLATBAND_SAMPLE_DENOMINATOR']

        # Logging
        self.log_level = os.getenv('FLATBAND_LOG_LEVEL', 'INFO').upper()
        self.log_file = os.getenv('FLATBAND_LOG_FILE') or None
        self.event_log = os.getenv('FLATBAND_EVENT_LOG') or None


_config = None


def get_config() -> AnalysisConfig:
    """Process-wide configuration, loaded on first use"""
    global _config
    if _config is None:
        _config = AnalysisConfig()
    return _config


def reset_config():
    """Forget the cached configuration so the environment is read again"""
    global _config
    _config = None
