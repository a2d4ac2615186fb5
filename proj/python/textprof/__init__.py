"""Profile-learning toolkit for text filtering.

Thin package over the C++ extension; everything lives in ``textprof._core``.
"""

from ._core import (  # noqa: F401
    ConfigError,
    Corpus,
    DataError,
    Hierarchy,
    LookupError,
    NoiseError,
    ParseError,
    ValidationError,
    cosine_similarity,
    generate_synthetic,
    metrics,
    run_cli,
    t_test,
    tfidf_weight,
    tokenize,
)

__all__ = [
    "ConfigError",
    "Corpus",
    "DataError",
    "Hierarchy",
    "LookupError",
    "NoiseError",
    "ParseError",
    "ValidationError",
    "cosine_similarity",
    "generate_synthetic",
    "metrics",
    "run_cli",
    "t_test",
    "tfidf_weight",
    "tokenize",
]
