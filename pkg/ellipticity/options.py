"""
Search options, resolved from command-line values with django settings as the fallback
"""
from fractions import Fraction
from typing import Optional, Tuple
import logging

from django.conf import settings

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)


def _as_int(name: str, value, minimum: int) -> int:
    try:
        result = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError("{0} must be an integer, got '{1}'".format(name, value))
    if result < minimum:
        raise ConfigurationError("{0} must be at least {1}, got {2}".format(name, minimum, result))
    return result


def resolve_jobs(value=None) -> int:
    if value is None:
        value = getattr(settings, "QROB_JOBS", 1)
    return _as_int("jobs", value, 1)


def resolve_budget(value=None) -> int:
    if value is None:
        value = getattr(settings, "QROB_ENUM_BUDGET", 4000)
    return _as_int("enumeration budget", value, 1)


def resolve_deadline(value=None) -> Optional[float]:
    """
    seconds allowed for one enumeration, or None when unlimited (a value of 0)
    """
    if value is None:
        value = getattr(settings, "QROB_ENUM_DEADLINE", 20)
    try:
        result = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError("enumeration deadline must be a number of seconds, got '{0}'".format(value))
    if result < 0:
        raise ConfigurationError("enumeration deadline must not be negative, got {0}".format(result))
    return result if result > 0 else None


def resolve_coeff_set(value: Optional[str] = None) -> Tuple[Fraction, ...]:
    """
    parses a comma-separated coefficient list such as "0,1,-1" or "0,1,-1,1/2". The order given is the enumeration
    order; duplicates are dropped.
    """
    if value is None:
        value = getattr(settings, "QROB_COEFF_SET", "0,1,-1")
    if isinstance(value, (list, tuple)):
        parts = [str(v) for v in value]
    else:
        parts = [p.strip() for p in str(value).split(",") if p.strip() != ""]
    if len(parts) == 0:
        raise ConfigurationError("coefficient set is empty")
    result = []
    for p in parts:
        try:
            coeff = Fraction(p)
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError("'{0}' in coefficient set '{1}' is not a rational".format(p, value))
        if coeff not in result:
            result.append(coeff)
    return tuple(result)
