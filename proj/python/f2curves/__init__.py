"""Plane curves over GF(2^m) with many rational points."""

import os as _os

_data = _os.path.join(_os.path.dirname(__file__), "data")
if _os.path.isdir(_data):
    _os.environ.setdefault("F2C_DATA_DIR", _data)

from ._core import (  # noqa: E402
    CheckpointError,
    ConfigError,
    RejectedCurve,
    absolute_irreducibility,
    corpus_failures,
    count_points,
    effective_bound,
    ihara_bound,
    is_irreducible,
    normalize,
    orbit,
    search,
    serre_bound,
    sieve_stats,
    to_mask,
    verify,
)

__all__ = [
    "CheckpointError",
    "ConfigError",
    "RejectedCurve",
    "absolute_irreducibility",
    "corpus_failures",
    "count_points",
    "effective_bound",
    "ihara_bound",
    "is_irreducible",
    "normalize",
    "orbit",
    "search",
    "serre_bound",
    "sieve_stats",
    "to_mask",
    "verify",
]
