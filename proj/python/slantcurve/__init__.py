"""Slant-helix hierarchy analysis for sampled space curves."""

from ._core import (
    SlantError,
    analyze,
    frenet,
    generate,
    sigma_ladder,
    __version__,
)

__all__ = [
    "SlantError",
    "analyze",
    "frenet",
    "generate",
    "sigma_ladder",
    "__version__",
]
