"""
Error handling for the command-line front end.

Maps exceptions to exit codes and to the JSON payload written to stderr.
"""

from typing import Any, Dict, Tuple

from hypertoric.utils.errors import HypertoricError
from hypertoric.utils.validators import ParseError, ValidationError

EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_DOMAIN_ERROR = 3


def handle_exception(e: Exception) -> Tuple[Dict[str, Any], int]:
    """Payload and exit code for an exception raised while running a command"""
    if isinstance(e, (ParseError, ValidationError)):
        return e.to_dict(), EXIT_INVALID_INPUT
    if isinstance(e, OSError):
        return {"error": type(e).__name__, "message": str(e), "path": getattr(e, "filename", None)}, EXIT_INVALID_INPUT
    if isinstance(e, HypertoricError):
        return e.to_dict(), EXIT_DOMAIN_ERROR
    if isinstance(e, AssertionError):
        return {"error": "AssertionError", "message": str(e)}, EXIT_ASSERTION_FAILED
    raise e
