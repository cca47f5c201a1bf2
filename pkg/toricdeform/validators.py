import functools
import logging
import re

from toricdeform.errors import FanFormatError, ToricError
from toricdeform.reporting import emit_json, error_envelope

# Setup logging
logger = logging.getLogger(__name__)

EXIT_ERROR = 2

DEGREE_PATTERN = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")


def validate_degree_string(text, rank, field_name="degree"):
    """Check a comma-separated integer vector of the fan's rank"""
    if text is None:
        return f"{field_name} is required"
    if not DEGREE_PATTERN.match(text):
        return f"{field_name} must be comma-separated integers, got {text!r}"
    length = len(text.split(","))
    if length != rank:
        return f"{field_name} has length {length}, expected {rank}"
    return None


def parse_degree(text):
    return tuple(int(x) for x in text.split(","))


def validate_ray_index(value, fan, field_name="ray"):
    if value is None:
        return f"{field_name} is required"
    if not 0 <= value < len(fan.rays):
        return f"{field_name} must be between 0 and {len(fan.rays) - 1}"
    return None


def validate_component(text, field_name="component"):
    """Component given as comma-separated ray indices"""
    if text is None:
        return None
    if not re.match(r"^\s*\d+(\s*,\s*\d+)*\s*$", text):
        return f"{field_name} must be comma-separated ray indices, got {text!r}"
    return None


def validate_positive(value, field_name):
    if value is not None and value <= 0:
        return f"{field_name} must be greater than 0"
    return None


def first_error(*errors):
    return next((e for e in errors if e), None)


# Decorator for command handlers
def handle_command_exception(f):
    """Turn library and file errors into an error report with exit code 2"""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FanFormatError as e:
            logger.error(f"Error in {f.__name__}: {str(e)}")
            emit_json(error_envelope(str(e), line=e.line, column=e.column))
            return EXIT_ERROR
        except (ToricError, OSError) as e:
            logger.error(f"Error in {f.__name__}: {str(e)}")
            emit_json(error_envelope(str(e)))
            return EXIT_ERROR
    return wrapper
