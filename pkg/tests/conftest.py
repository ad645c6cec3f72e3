"""Shared synthetic-text helpers for the test suite.

All generators take an explicit ``random.Random`` so every test pins its own
seed and stays reproducible.
"""

from __future__ import annotations

import random

PERSIAN_LETTERS = "ابپتثجچحخدذرزژسشصضطظعغفقکگلمنوهی"
INTERIOR_MARKS = ("،", ":", "؛")
FINAL_MARKS = (".", "؟", "!")


def make_word(rng: random.Random, lo: int = 2, hi: int = 7) -> str:
    return "".join(rng.choice(PERSIAN_LETTERS) for _ in range(rng.randint(lo, hi)))


def make_sentence(rng: random.Random, min_words: int = 3, max_words: int = 12) -> str:
    """A plausibly punctuated Persian sentence ending in a terminal mark."""
    words = [make_word(rng) for _ in range(rng.randint(min_words, max_words))]
    out = []
    for i, w in enumerate(words):
        if i > 0 and rng.random() < 0.25:
            out[-1] += rng.choice(INTERIOR_MARKS)
        out.append(w)
    return " ".join(out) + rng.choice(FINAL_MARKS)


def make_canonical_sentence(rng: random.Random, min_words: int = 3, max_words: int = 10) -> str:
    """Sentence already in post-pipeline shape: single spaces, marks attached,
    only the four label-bearing marks, terminal ``.`` or ``؟``."""
    n = rng.randint(min_words, max_words)
    words = [make_word(rng) for _ in range(n)]
    out = []
    for i, w in enumerate(words[:-1]):
        if rng.random() < 0.3:
            w += rng.choice(("،", ":"))
        out.append(w)
    out.append(words[-1] + rng.choice((".", "؟")))
    return " ".join(out)


def make_corpus(rng: random.Random, n: int, **kw) -> list[str]:
    return [make_sentence(rng, **kw) for _ in range(n)]
