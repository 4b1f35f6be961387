"""Process-wide numerical defaults.

The defaults are tuned for desk-scale experiments. Use ``set_settings`` to
change them globally or ``settings_override`` for a temporary change.
"""

import contextlib
import dataclasses
from dataclasses import dataclass
from typing import Any, Iterator


@dataclass(frozen=True)
class Settings:
    """Tolerances and size limits shared by every module."""

    lp_tolerance: float = 1e-9
    mass_tolerance: float = 1e-9
    simplex_tolerance: float = 1e-12
    dedup_decimals: int = 12
    max_transport_support: int = 2000
    mvee_tolerance: float = 1e-7
    mvee_max_iterations: int = 100_000


_settings = Settings()


def get_settings() -> Settings:
    """Return the current settings."""
    return _settings


def set_settings(**overrides: Any) -> Settings:
    """Replace selected settings globally and return the new value.

    Args:
        **overrides: Field names of :class:`Settings` with their new values.
    """
    global _settings
    _settings = dataclasses.replace(_settings, **overrides)
    return _settings


@contextlib.contextmanager
def settings_override(**overrides: Any) -> Iterator[Settings]:
    """Temporarily override settings inside a ``with`` block."""
    global _settings
    previous = _settings
    _settings = dataclasses.replace(previous, **overrides)
    try:
        yield _settings
    finally:
        _settings = previous
