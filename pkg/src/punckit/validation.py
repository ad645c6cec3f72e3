"""Input-validation helpers shared by the estimator-style classes."""

from __future__ import annotations

from typing import Any, Iterable

from .errors import PunckitError


def check_text(value: Any, name: str = "text") -> str:
    """Return ``value`` if it is a str, else raise TypeError."""
    if not isinstance(value, str):
        raise TypeError(f"{name} must be a str, got {type(value).__name__}")
    return value


def check_text_list(X: Iterable[str], name: str = "X") -> list[str]:
    """Materialize an iterable of strings, rejecting a bare string.

    A single string is iterable character-by-character, which is never what
    a caller wants here, so it is rejected explicitly.
    """
    if isinstance(X, str):
        raise TypeError(f"{name} must be an iterable of strings, not a single string")
    out = list(X)
    for i, item in enumerate(out):
        if not isinstance(item, str):
            raise TypeError(f"{name}[{i}] must be a str, got {type(item).__name__}")
    return out


def check_token_lists(X: Iterable[Iterable[str]], name: str = "X") -> list[list[str]]:
    """Materialize an iterable of token sequences as lists of str."""
    if isinstance(X, str):
        raise TypeError(f"{name} must be a sequence of token lists, not a string")
    out = []
    for i, row in enumerate(X):
        if isinstance(row, str):
            raise TypeError(f"{name}[{i}] must be a token list, not a string")
        out.append([check_text(tok, f"{name}[{i}]") for tok in row])
    return out


def check_same_length(a: list, b: list, what: str) -> None:
    """Raise a SHAPE error when two parallel sequences disagree in length."""
    if len(a) != len(b):
        raise PunckitError(
            "SHAPE", f"{what}: length mismatch ({len(a)} vs {len(b)})"
        )
