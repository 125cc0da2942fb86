"""Small input-validation helpers shared across the package."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def check_positive_int(name: str, value) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
    return int(value)


def check_positive_float(name: str, value) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_in(name: str, value, allowed: Iterable) -> None:
    allowed = tuple(allowed)
    if value not in allowed:
        raise ValueError(f"{name} must be one of {allowed}, got {value!r}")


def check_token_sentences(X) -> list[list[str]]:
    """Validate that X is an iterable of token sequences and materialize it."""
    if isinstance(X, str):
        raise TypeError("expected an iterable of token sequences, got a single string")
    sentences = []
    for i, sent in enumerate(X):
        if isinstance(sent, str):
            raise TypeError(
                f"sentence {i} is a raw string; tokenize first (e.g. corpus.normalize)"
            )
        sent = list(sent)
        for tok in sent:
            if not isinstance(tok, str):
                raise TypeError(f"sentence {i} contains a non-string token: {tok!r}")
        sentences.append(sent)
    return sentences
