"""
Runtime tunables for the tropical services.

Values come from ``settings.TROPEIG`` when Django is configured, otherwise
from the defaults below, so the services can also be imported as a plain
library. ``using()`` overrides them for the current context (one CLI run,
one Celery task).
"""
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields, replace
from typing import Iterator, Optional
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropicalSettings:
    eps_rel: float = 1e-9
    projection_eps: float = 1e-7
    projection_max_cycles: int = 10_000
    projection_zero_floor: float = 1e-12
    max_coverings: int = 1_000_000
    max_dimension: int = 500
    orbit_steps: int = 200
    seed: int = 42
    oracle_resolution: int = 25
    oracle_samples: int = 1000
    oracle_max_dimension: int = 6
    surrogate_factor: float = 1e6
    matmul_chunk: int = 64

    def with_overrides(self, **overrides) -> 'TropicalSettings':
        """Copy with the given fields replaced; ``None`` values are ignored."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise TypeError(f"Unknown tropical setting(s): {', '.join(sorted(unknown))}")
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self


# settings.TROPEIG key -> TropicalSettings field
SETTINGS_KEYS = {
    'EPS_REL': 'eps_rel',
    'PROJECTION_EPS': 'projection_eps',
    'PROJECTION_MAX_CYCLES': 'projection_max_cycles',
    'PROJECTION_ZERO_FLOOR': 'projection_zero_floor',
    'MAX_COVERINGS': 'max_coverings',
    'MAX_DIMENSION': 'max_dimension',
    'ORBIT_STEPS': 'orbit_steps',
    'SEED': 'seed',
    'ORACLE_RESOLUTION': 'oracle_resolution',
    'ORACLE_SAMPLES': 'oracle_samples',
    'ORACLE_MAX_DIMENSION': 'oracle_max_dimension',
    'SURROGATE_FACTOR': 'surrogate_factor',
    'MATMUL_CHUNK': 'matmul_chunk',
}

_override: ContextVar[Optional[TropicalSettings]] = ContextVar('tropical_settings_override', default=None)


def _from_django() -> TropicalSettings:
    try:
        from django.conf import settings
        from django.core.exceptions import ImproperlyConfigured
    except ImportError:
        return TropicalSettings()

    try:
        raw = getattr(settings, 'TROPEIG', {}) if settings.configured else {}
    except ImproperlyConfigured:
        raw = {}

    values = {}
    for key, value in (raw or {}).items():
        name = SETTINGS_KEYS.get(key)
        if name is None:
            logger.warning(f"Ignoring unknown TROPEIG setting {key!r}")
            continue
        values[name] = value
    return TropicalSettings().with_overrides(**values)


def get_settings() -> TropicalSettings:
    """Effective settings for the current context."""
    current = _override.get()
    if current is not None:
        return current
    return _from_django()


@contextmanager
def using(**overrides) -> Iterator[TropicalSettings]:
    """
    Temporarily override settings, e.g. ``with using(eps_rel=1e-6): ...``.

    Overrides nest; ``None`` values keep the enclosing value.
    """
    effective = get_settings().with_overrides(**overrides)
    token = _override.set(effective)
    try:
        yield effective
    finally:
        _override.reset(token)
