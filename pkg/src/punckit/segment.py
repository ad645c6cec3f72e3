"""Sentence segmentation and rule-based quality filtering.

Boundaries are placed after each of the three terminal marks (``.``, ``!``,
``؟``), with a decimal guard: a period with digits immediately on both sides
is not a boundary. Candidate sentences then pass through a fixed registry of
twelve reject rules grouped into three families (structural, content,
quality). All rules always run, so an audit record can attribute every
failure; a sentence is accepted iff no rule fires.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Union

from .normalize import ARABIC_BLOCKS, DIGIT_RANGES, TARGET_MARKS, ZWNJ, RawDocument
from .validation import check_text

#: Marks that may terminate a sentence.
TERMINAL_MARKS = frozenset({".", "!", "؟"})

# --- rule registry (identifiers appear in audit records verbatim) ---------
MIN_LEN = "MIN_LEN"
MIN_PUNCT = "MIN_PUNCT"
TERMINATION = "TERMINATION"
URL = "URL"
EMAIL = "EMAIL"
HANDLE = "HANDLE"
EMOJI = "EMOJI"
SYMBOL_RATIO = "SYMBOL_RATIO"
MIXED_LANG = "MIXED_LANG"
REPEAT_PUNCT = "REPEAT_PUNCT"
ENUM = "ENUM"
FRAGMENT = "FRAGMENT"

#: Closed registry, in evaluation order; ``failed_rules`` only ever contains
#: identifiers from this tuple, in this relative order.
ALL_RULES = (
    MIN_LEN,
    MIN_PUNCT,
    TERMINATION,
    URL,
    EMAIL,
    HANDLE,
    EMOJI,
    SYMBOL_RATIO,
    MIXED_LANG,
    REPEAT_PUNCT,
    ENUM,
    FRAGMENT,
)

MIN_SENTENCE_CODEPOINTS = 10
MIN_TARGET_MARKS = 2
SYMBOL_RATIO_MAX = 0.20  # strict: reject only when ratio > threshold
FOREIGN_LETTER_RATIO_MAX = 0.30
FRAGMENT_RATIO_MAX = 0.50

_MARK_CHARS = tuple(sorted(TARGET_MARKS))
_DIGIT_CHARS = frozenset(
    chr(cp) for lo, hi in DIGIT_RANGES for cp in range(lo, hi + 1)
)

_BOUNDARY_RE = re.compile("[.!؟]")
_URL_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*://|www\.")
# At least one non-@ char before the @, and a dotted domain after it.
_EMAIL_RE = re.compile(r"[^\s@]+@[^\s@]+\.[^\s.@]")
_EMOJI_RE = re.compile(r"[☀-➿️\U0001F300-\U0001FAFF]")
_REPEAT_RE = re.compile(r"([.!:،؟؛])\1")
_ENUM_RE = re.compile(r"[0-9٠-٩۰-۹]+[.)\-:] |[•\-*▪]")


@dataclass(frozen=True, slots=True)
class Sentence:
    """A candidate sentence with its provenance coordinates."""

    text: str
    source_id: str
    doc_index: int
    sent_index: int

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("sentence text must be non-empty")


@dataclass(frozen=True, slots=True)
class FilterVerdict:
    """Outcome of the filter: accepted iff no rule failed."""

    accepted: bool
    failed_rules: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.accepted != (not self.failed_rules):
            raise ValueError("accepted must equal emptiness of failed_rules")


def _text_of(s: Union[Sentence, str]) -> str:
    return s.text if isinstance(s, Sentence) else check_text(s)


def segment_text(text: str) -> list[str]:
    """Split normalized text at terminal marks; see module docstring.

    A trailing fragment without a terminal mark is emitted as-is (it will
    fail the TERMINATION rule downstream). Never drops non-whitespace
    codepoints.
    """
    check_text(text)
    out: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        i = m.start()
        if (
            text[i] == "."
            and 0 < i < len(text) - 1
            and text[i - 1] in _DIGIT_CHARS
            and text[i + 1] in _DIGIT_CHARS
        ):
            continue  # decimal guard: 3.5 is one token, not a boundary
        piece = text[start : i + 1].strip()
        if piece:
            out.append(piece)
        start = i + 1
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


def segment(doc: RawDocument, doc_index: int = 0) -> list[Sentence]:
    """Segment a normalized document into :class:`Sentence` values."""
    return [
        Sentence(text=t, source_id=doc.source_id, doc_index=doc_index, sent_index=k)
        for k, t in enumerate(segment_text(doc.text))
    ]


# --- per-character census, memoized ---------------------------------------
# flags: bit0 non-whitespace, bit1 letter, bit2 Arabic-block letter,
# bit3 symbol (non-whitespace, not word-forming, not a target mark)
_CHAR_FLAGS: dict[str, int] = {}


def _char_flags(ch: str) -> int:
    f = _CHAR_FLAGS.get(ch)
    if f is not None:
        return f
    f = 0
    if not ch.isspace():
        f |= 1
        cat = unicodedata.category(ch)
        if cat[0] == "L":
            f |= 2
            cp = ord(ch)
            if any(lo <= cp <= hi for lo, hi in ARABIC_BLOCKS):
                f |= 4
        word_forming = (
            cat[0] in ("L", "M") or cat == "Nd" or ch == ZWNJ
        )
        if not word_forming and ch not in TARGET_MARKS:
            f |= 8
    _CHAR_FLAGS[ch] = f
    return f


def _census(text: str) -> tuple[int, int, int, int]:
    """Return (non_ws, letters, arabic_letters, symbols) counts."""
    non_ws = letters = arabic = symbols = 0
    flags = _CHAR_FLAGS
    for ch in text:
        f = flags.get(ch)
        if f is None:
            f = _char_flags(ch)
        non_ws += f & 1
        letters += (f >> 1) & 1
        arabic += (f >> 2) & 1
        symbols += (f >> 3) & 1
    return non_ws, letters, arabic, symbols


def check_structural(s: Union[Sentence, str]) -> FilterVerdict:
    """Length, mark-count, and termination rules."""
    text = _text_of(s)
    failed = []
    if len(text) < MIN_SENTENCE_CODEPOINTS:
        failed.append(MIN_LEN)
    if sum(text.count(m) for m in _MARK_CHARS) < MIN_TARGET_MARKS:
        failed.append(MIN_PUNCT)
    if not text or text[-1] not in TERMINAL_MARKS:
        failed.append(TERMINATION)
    return FilterVerdict(not failed, tuple(failed))


def check_content(s: Union[Sentence, str]) -> FilterVerdict:
    """Web-artifact and character-composition rules.

    SYMBOL_RATIO counts non-whitespace codepoints that are neither
    word-forming (letters, combining marks, digits, ZWNJ) nor one of the six
    target marks, over all non-whitespace codepoints. MIXED_LANG counts
    letters outside the Arabic blocks over all letters. Both are strict
    inequalities against their thresholds.
    """
    text = _text_of(s)
    failed = []
    if _URL_RE.search(text):
        failed.append(URL)
    if _EMAIL_RE.search(text):
        failed.append(EMAIL)
    if any(tok.startswith("@") for tok in text.split()):
        failed.append(HANDLE)
    if _EMOJI_RE.search(text):
        failed.append(EMOJI)
    non_ws, letters, arabic, symbols = _census(text)
    if non_ws and symbols / non_ws > SYMBOL_RATIO_MAX:
        failed.append(SYMBOL_RATIO)
    if letters and (letters - arabic) / letters > FOREIGN_LETTER_RATIO_MAX:
        failed.append(MIXED_LANG)
    return FilterVerdict(not failed, tuple(failed))


def check_quality(s: Union[Sentence, str]) -> FilterVerdict:
    """Repetition, enumeration, and fragment rules."""
    text = _text_of(s)
    failed = []
    if _REPEAT_RE.search(text):
        failed.append(REPEAT_PUNCT)
    if _ENUM_RE.match(text):  # anchored at the start of the sentence
        failed.append(ENUM)
    tokens = text.split()
    if tokens:
        single = 0
        for tok in tokens:
            n = 0
            for ch in tok:
                if ch not in TARGET_MARKS:
                    n += 1
                    if n > 1:
                        break
            single += n == 1
        if single / len(tokens) > FRAGMENT_RATIO_MAX:
            failed.append(FRAGMENT)
    return FilterVerdict(not failed, tuple(failed))


def filter_sentence(s: Union[Sentence, str]) -> FilterVerdict:
    """Union of all three rule families; all checks always run."""
    failed = (
        check_structural(s).failed_rules
        + check_content(s).failed_rules
        + check_quality(s).failed_rules
    )
    return FilterVerdict(not failed, failed)


def verdict_record(sentence: Sentence, verdict: FilterVerdict) -> dict:
    """Audit-log representation of a filtering decision."""
    return {
        "text": sentence.text,
        "source_id": sentence.source_id,
        "accepted": verdict.accepted,
        "failed_rules": list(verdict.failed_rules),
    }
