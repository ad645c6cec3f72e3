"""Deterministic normalization for Persian-script text.

Normalization runs three stages in a fixed order:

1. :func:`standardize_punctuation` — ASCII comma/semicolon/question mark are
   mapped to their Persian counterparts.
2. :func:`filter_characters` — every character outside a closed retained set
   is removed; a removed run that would otherwise glue two word fragments
   together is replaced by a single space.
3. :func:`normalize_whitespace` — whitespace runs collapse to single spaces
   and the ends are trimmed.

The composition (:func:`normalize`) is idempotent: applying it twice yields
the same string as applying it once.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from sklearn.base import BaseEstimator, TransformerMixin

from .validation import check_text, check_text_list


class PunctuationMark(Enum):
    """The six punctuation marks tracked throughout the toolkit."""

    PERIOD = "."  # .
    PERSIAN_COMMA = "،"  # ،
    PERSIAN_QUESTION = "؟"  # ؟
    COLON = ":"  # :
    EXCLAMATION = "!"  # !
    PERSIAN_SEMICOLON = "؛"  # ؛

    @property
    def char(self) -> str:
        return self.value


#: The six mark characters as a set, for fast membership tests.
TARGET_MARKS = frozenset(m.value for m in PunctuationMark)

#: Zero-width non-joiner: orthographically significant in Persian, always kept.
ZWNJ = "‌"

#: Unicode blocks whose letters and combining marks are retained.
ARABIC_BLOCKS = (
    (0x0600, 0x06FF),  # Arabic
    (0x0750, 0x077F),  # Arabic Supplement
    (0xFB50, 0xFDFF),  # Arabic Presentation Forms-A
    (0xFE70, 0xFEFF),  # Arabic Presentation Forms-B
)

#: The three digit families that are retained as-is (never translated).
DIGIT_RANGES = (
    (0x0030, 0x0039),  # ASCII
    (0x0660, 0x0669),  # Arabic-Indic
    (0x06F0, 0x06F9),  # Extended Arabic-Indic
)

_ASCII_LETTER_RANGES = ((0x0041, 0x005A), (0x0061, 0x007A))

# Codepoints for which str.isspace() is true.
_WHITESPACE_RANGES = (
    (0x0009, 0x000D),
    (0x001C, 0x001F),
    (0x0020, 0x0020),
    (0x0085, 0x0085),
    (0x00A0, 0x00A0),
    (0x1680, 0x1680),
    (0x2000, 0x200A),
    (0x2028, 0x2029),
    (0x202F, 0x202F),
    (0x205F, 0x205F),
    (0x3000, 0x3000),
)

_STANDARDIZE_TABLE = str.maketrans(
    {
        ",": PunctuationMark.PERSIAN_COMMA.value,
        ";": PunctuationMark.PERSIAN_SEMICOLON.value,
        "?": PunctuationMark.PERSIAN_QUESTION.value,
    }
)


@dataclass(frozen=True, slots=True)
class RawDocument:
    """A source-tagged unit of raw text entering the pipeline."""

    source_id: str
    text: str

    def __post_init__(self) -> None:
        if not self.source_id:
            raise ValueError("source_id must be non-empty")
        check_text(self.text, "text")


def parse_codepoint_ranges(spec: str) -> tuple[str, ...]:
    """Parse ``"00C0-00FF,20AC"`` style hex ranges into a tuple of chars.

    Each comma-separated item is either a single hex codepoint or an
    inclusive ``LO-HI`` range. Raises ValueError on malformed input.
    """
    chars: list[str] = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        lo, sep, hi = item.partition("-")
        try:
            start = int(lo, 16)
            end = int(hi, 16) if sep else start
        except ValueError:
            raise ValueError(f"malformed codepoint range: {item!r}") from None
        if not (0 <= start <= end <= 0x10FFFF):
            raise ValueError(f"codepoint range out of order or out of bounds: {item!r}")
        chars.extend(chr(cp) for cp in range(start, end + 1))
    return tuple(chars)


def _expand(ranges: Iterable[tuple[int, int]]) -> set[str]:
    out: set[str] = set()
    for lo, hi in ranges:
        out.update(map(chr, range(lo, hi + 1)))
    return out


def _base_retained() -> frozenset[str]:
    kept = _expand(DIGIT_RANGES) | _expand(_WHITESPACE_RANGES) | set(TARGET_MARKS)
    kept.add(ZWNJ)
    # From the Arabic blocks keep letters and combining marks only; symbols,
    # block-internal punctuation, and unassigned slots are dropped.
    for lo, hi in ARABIC_BLOCKS:
        for cp in range(lo, hi + 1):
            ch = chr(cp)
            if unicodedata.category(ch)[0] in ("L", "M"):
                kept.add(ch)
    return frozenset(kept)


_BASE_RETAINED = _base_retained()

# Compiled removal patterns, keyed by configuration.
_PATTERN_CACHE: dict[tuple[bool, frozenset[str]], re.Pattern[str]] = {}


def _char_class(chars: frozenset[str]) -> str:
    """Render a set of chars as a compact negated regex class body."""
    cps = sorted(map(ord, chars))
    parts: list[str] = []
    i = 0
    while i < len(cps):
        j = i
        while j + 1 < len(cps) and cps[j + 1] == cps[j] + 1:
            j += 1
        lo, hi = cps[i], cps[j]
        if hi - lo >= 2:
            parts.append(f"\\U{lo:08X}-\\U{hi:08X}")
        else:
            parts.extend(f"\\U{cp:08X}" for cp in cps[i : j + 1])
        i = j + 1
    return "".join(parts)


def _removal_pattern(
    keep_ascii_letters: bool, extra: frozenset[str]
) -> re.Pattern[str]:
    key = (keep_ascii_letters, extra)
    pat = _PATTERN_CACHE.get(key)
    if pat is None:
        kept = set(_BASE_RETAINED) | extra
        if keep_ascii_letters:
            kept |= _expand(_ASCII_LETTER_RANGES)
        pat = re.compile(f"[^{_char_class(frozenset(kept))}]+")
        _PATTERN_CACHE[key] = pat
    return pat


def _is_word_char(ch: str) -> bool:
    """True for characters that form words: letters, digits, combining
    marks, and the zero-width non-joiner."""
    if ch == ZWNJ:
        return True
    cat = unicodedata.category(ch)
    return cat[0] in ("L", "M") or cat == "Nd"


def standardize_punctuation(text: str) -> str:
    """Map ASCII ``,``/``;``/``?`` to ``،``/``؛``/``؟``. Total and 1:1 on
    codepoints, so length is preserved."""
    return check_text(text).translate(_STANDARDIZE_TABLE)


def filter_characters(
    text: str,
    *,
    keep_ascii_letters: bool = True,
    extra_retained: Iterable[str] = (),
) -> str:
    """Remove every character outside the retained set.

    Retained by default: letters and combining marks from the Arabic blocks,
    the zero-width non-joiner, ASCII / Arabic-Indic / Extended Arabic-Indic
    digits, the six tracked punctuation marks, whitespace, and (unless
    ``keep_ascii_letters`` is false) ASCII letters. ``extra_retained`` adds
    individual characters to the set.

    A removed run that is flanked by word-forming characters on both sides
    is replaced by a single space rather than deleted outright, so that two
    previously separate words never merge into one.
    """
    check_text(text)
    pat = _removal_pattern(bool(keep_ascii_letters), frozenset(extra_retained))

    def _sub(m: re.Match[str]) -> str:
        s, e = m.start(), m.end()
        if s > 0 and e < len(text) and _is_word_char(text[s - 1]) and _is_word_char(text[e]):
            return " "
        return ""

    return pat.sub(_sub, text)


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace runs to single spaces and strip the ends."""
    return " ".join(check_text(text).split())


def normalize(
    text: str,
    *,
    keep_ascii_letters: bool = True,
    extra_retained: Iterable[str] = (),
) -> str:
    """Full normalization: standardize marks, filter characters, collapse
    whitespace. Idempotent for any input and configuration."""
    return normalize_whitespace(
        filter_characters(
            standardize_punctuation(text),
            keep_ascii_letters=keep_ascii_letters,
            extra_retained=extra_retained,
        )
    )


class TextNormalizer(BaseEstimator, TransformerMixin):
    """Stateless transformer wrapping :func:`normalize`.

    Parameters
    ----------
    keep_ascii_letters : bool, default=True
        Retain ASCII letters during character filtering.
    extra_retained : tuple of str, default=()
        Additional characters to retain, e.g. from
        :func:`parse_codepoint_ranges`.

    Examples
    --------
    >>> TextNormalizer().transform(["سلام,  دنیا?"])
    ['سلام، دنیا؟']
    """

    def __init__(
        self,
        keep_ascii_letters: bool = True,
        extra_retained: tuple[str, ...] = (),
    ) -> None:
        self.keep_ascii_letters = keep_ascii_letters
        self.extra_retained = extra_retained

    def fit(self, X: Iterable[str] | None = None, y: object = None) -> "TextNormalizer":
        """No-op; the transformer is stateless. Returns self."""
        if X is not None:
            check_text_list(X)
        return self

    def transform(self, X: Iterable[str]) -> list[str]:
        """Normalize each string in ``X``."""
        return [
            normalize(
                t,
                keep_ascii_letters=self.keep_ascii_letters,
                extra_retained=self.extra_retained,
            )
            for t in check_text_list(X)
        ]
