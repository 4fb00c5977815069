import logging
import os
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List

from config import settings

# Singleton logger instance
_logger = None


class NormalFormError(Exception):
    """Base exception class for the uniform normal form engine."""
    pass


class ShapeError(NormalFormError):
    """Non-square, mismatched or oversized matrix input."""
    pass


class ParseError(NormalFormError):
    """Malformed input file or rational literal."""
    pass


class NotInvariantError(NormalFormError):
    """A map does not preserve the subspace it is restricted to."""
    pass


class NotNilpotentError(NormalFormError):
    """A nilpotent-only operation received a matrix with N^dim != 0."""
    pass


class NotSquareFreeError(NormalFormError):
    """A polynomial expected to be square-free shares a factor with its derivative."""
    pass


class VerificationError(NormalFormError):
    """An exact identity guaranteed by the construction did not hold."""
    pass


def setup_logging() -> logging.Logger:
    """
    Configure logging for the application.

    Reports go to stdout, so log records are written to stderr and,
    when LOG_FILE is set, to that file as well.

    Returns:
        logging.Logger: Configured logger instance

    Raises:
        OSError: If log directory cannot be created
        ValueError: If log level is invalid
    """
    global _logger
    if _logger is not None:
        return _logger

    try:
        log_level = getattr(logging, settings.LOG_LEVEL)
    except AttributeError:
        raise ValueError(f"Invalid log level: {settings.LOG_LEVEL}")

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        log_dir = os.path.dirname(settings.LOG_FILE)
        try:
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir)
        except OSError as e:
            raise OSError(f"Failed to create log directory {log_dir}: {str(e)}")
        handlers.append(logging.FileHandler(settings.LOG_FILE))

    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    _logger = logging.getLogger('uniform_normal_form')
    _logger.setLevel(log_level)
    for handler in handlers:
        handler.setFormatter(formatter)
        _logger.addHandler(handler)
    _logger.propagate = False
    return _logger


logger = setup_logging()


def handle_error(e: Exception, operation: str) -> str:
    """
    Handle engine errors in a consistent way.

    Args:
        e (Exception): The exception to handle
        operation (str): Description of the operation that failed

    Returns:
        str: Formatted error message
    """
    if isinstance(e, NormalFormError):
        error_message = f"{type(e).__name__} during {operation}: {str(e)}"
    else:
        error_message = f"Error during {operation}: {str(e)}"
    logger.error(error_message)
    return error_message


def ensure_directory_exists(directory: str) -> None:
    """
    Ensure that the specified directory exists.

    Args:
        directory (str): Path to the directory

    Raises:
        OSError: If directory cannot be created
        PermissionError: If insufficient permissions
    """
    try:
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
            logger.info(f"Created directory: {directory}")
    except (OSError, PermissionError) as e:
        logger.error(f"Failed to create directory {directory}: {str(e)}")
        raise


@contextmanager
def log_duration(operation: str) -> Iterator[None]:
    """Log how long the wrapped block took, at INFO level."""
    start_time = time.time()
    logger.info(f"Starting {operation}")
    try:
        yield
    finally:
        duration = time.time() - start_time
        logger.info(f"Operation {operation} completed in {duration:.3f} seconds")


@dataclass
class CheckReport:
    """Named boolean outcomes of exact identity checks."""

    checks: Dict[str, bool] = field(default_factory=dict)

    def record(self, name: str, passed: bool) -> bool:
        self.checks[name] = bool(passed)
        if not passed:
            logger.error(f"Check failed: {name}")
        return bool(passed)

    def merge(self, other: 'CheckReport', prefix: str = '') -> None:
        for name, passed in other.checks.items():
            self.checks[f"{prefix}{name}"] = passed

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, passed in self.checks.items() if not passed]
