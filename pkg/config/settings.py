# Uniform Normal Form Engine Configuration
from typing import Dict, List
import os
import logging
from pathlib import Path
from dotenv import load_dotenv

# Custom Exceptions
class ConfigurationError(Exception):
    """Base exception for configuration errors."""
    pass

class ValidationError(ConfigurationError):
    """Exception for validation errors."""
    pass

logger = logging.getLogger(__name__)

# Load environment variables from the .env file
def load_env_file() -> None:
    """Load environment variables from the .env file."""
    env_path = Path(__file__).parent.parent / '.env'
    if env_path.exists():
        load_dotenv(dotenv_path=str(env_path))
        logger.info(f"Loaded environment variables from {env_path}")
    else:
        logger.debug(f"Environment file not found at {env_path}")

load_env_file()

def _int_setting(name: str, default: str) -> int:
    """Read an integer setting, reporting the offending key on bad input."""
    raw = os.environ.get(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}")

# Logging Settings
LOG_FILE = os.environ.get('LOG_FILE', 'logs/normal_form.log')
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING').upper()

# Output Settings
OUTPUT_FORMAT = os.environ.get('OUTPUT_FORMAT', 'json').lower()
SUPPORTED_FORMATS: List[str] = ['json', 'pretty']

# Engine Limits
MAX_DIMENSION = _int_setting('MAX_DIMENSION', '12')

# Corpus Generator Settings
CORPUS_SEED = _int_setting('CORPUS_SEED', '20240611')
CORPUS_SIZE = _int_setting('CORPUS_SIZE', '200')
CORPUS_MAX_DIM = _int_setting('CORPUS_MAX_DIM', '6')
CORPUS_ENTRY_BOUND = _int_setting('CORPUS_ENTRY_BOUND', '3')

# Batch Settings
BATCH_JOBS = _int_setting('BATCH_JOBS', '1')

# Project Information
PROJECT_NAME = os.environ.get('PROJECT_NAME', 'UniformNormalForm')

def validate_config() -> None:
    """Validate that configuration values are present and valid."""
    try:
        if LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ValidationError(f"Invalid log level: {LOG_LEVEL}")

        if OUTPUT_FORMAT not in SUPPORTED_FORMATS:
            raise ValidationError(
                f"OUTPUT_FORMAT must be one of {SUPPORTED_FORMATS}, got {OUTPUT_FORMAT!r}"
            )

        numeric_settings: Dict[str, int] = {
            'MAX_DIMENSION': MAX_DIMENSION,
            'CORPUS_SIZE': CORPUS_SIZE,
            'CORPUS_MAX_DIM': CORPUS_MAX_DIM,
            'CORPUS_ENTRY_BOUND': CORPUS_ENTRY_BOUND,
            'BATCH_JOBS': BATCH_JOBS,
        }

        for setting, value in numeric_settings.items():
            if value <= 0:
                raise ValidationError(f"{setting} must be a positive number")

        logger.debug("Configuration validation successful")

    except Exception as e:
        logger.error(f"Configuration validation failed: {str(e)}")
        raise

validate_config()
