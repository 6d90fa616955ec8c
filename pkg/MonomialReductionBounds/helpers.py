"""
helpers.py

Shared plumbing for every phase module: the exception hierarchy (each error
knows the exit code the CLI reports for it), JSON reading/writing in the one
byte-stable style used for configs and reports, and logging setup.
"""

import json
import logging
import sys

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3
EXIT_UNRESOLVED = 4
EXIT_FAIL = 5

LOG_FORMAT = "[%(levelname)s] %(message)s"

logger = logging.getLogger(__name__)


class AlgebraError(Exception):
    """Base class for everything the engine raises on purpose."""

    exit_code = EXIT_FAIL


class DimensionMismatch(AlgebraError):
    pass


class AmbientMismatch(AlgebraError):
    pass


class NonMemberExponent(AlgebraError):
    pass


class ZeroIdealError(AlgebraError):
    pass


class UnsupportedAmbient(AlgebraError):
    pass


class HypothesisNotMet(AlgebraError):
    """An operation's precondition fails on the given instance."""

    exit_code = EXIT_HYPOTHESIS


class UnresolvedBound(AlgebraError):
    """A bounded search ran out before reaching an answer."""

    exit_code = EXIT_UNRESOLVED

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class StabilizationError(UnresolvedBound):
    pass


class CertificateError(AlgebraError):
    """A constructed certificate failed its own verification."""


class ConfigError(AlgebraError):
    exit_code = EXIT_CONFIG


def configure_logging(verbosity: int = 0) -> None:
    """
    One stderr handler with the bracketed level prefix.
    verbosity < 0 -> WARNING, 0 -> INFO, > 0 -> DEBUG.
    """
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)


def dumps_stable(payload) -> str:
    """JSON text that is byte-identical for equal payloads."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_json_file(path):
    """
    Read a JSON document. Missing files and decode errors become ConfigError
    with the position of the problem.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"Cannot find {path}.")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Failed to parse JSON in {path}: line {e.lineno}, column {e.colno}: {e.msg}")


def write_json_file(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_stable(payload))
    logger.debug("wrote %s", path)
