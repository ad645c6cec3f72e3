"""Word/label conversion under the five-class scheme.

Each word's label is the class of the punctuation mark that follows it in
the surface text. Exclamation marks and Persian semicolons have no class of
their own: by default they map onto PERIOD and COMMA respectively
("map" mode); "drop" mode maps them to EMPTY instead.

On canonical sentences — single-space separation, each mark attached
directly to its preceding word, only the four class marks present —
``reconstruct(extract_labels(s)) == s`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence, Union

from sklearn.base import BaseEstimator, TransformerMixin

from .errors import PunckitError
from .normalize import TARGET_MARKS
from .validation import check_text, check_text_list


class Label(Enum):
    """Per-word classes, declared in tie-break order."""

    EMPTY = "EMPTY"
    COMMA = "COMMA"
    PERIOD = "PERIOD"
    QUESTION = "QUESTION"
    COLON = "COLON"


#: Mark character appended by ``reconstruct`` for each non-EMPTY label.
LABEL_MARKS: dict[Label, str] = {
    Label.COMMA: "،",
    Label.PERIOD: ".",
    Label.QUESTION: "؟",
    Label.COLON: ":",
}

_BASE_MARK_LABELS = {
    "،": Label.COMMA,
    ".": Label.PERIOD,
    "؟": Label.QUESTION,
    ":": Label.COLON,
}

LABEL_MAPPINGS = ("map", "drop")

_DELETE_MARKS = str.maketrans("", "", "".join(TARGET_MARKS))


def mark_label_mapping(mapping: str = "map") -> dict[str, Label]:
    """Mark char → Label under the chosen handling of ``!`` and ``؛``."""
    if mapping not in LABEL_MAPPINGS:
        raise ValueError(f"mapping must be one of {LABEL_MAPPINGS}, got {mapping!r}")
    extra = Label.EMPTY if mapping == "drop" else None
    return {
        **_BASE_MARK_LABELS,
        "!": Label.PERIOD if extra is None else extra,
        "؛": Label.COMMA if extra is None else extra,
    }


def as_label(value: Union[Label, str]) -> Label:
    """Coerce a Label or its wire name to a Label."""
    if isinstance(value, Label):
        return value
    try:
        return Label[value]
    except (KeyError, TypeError):
        raise ValueError(f"unknown label: {value!r}") from None


@dataclass(slots=True)
class LabeledSample:
    """Parallel word/label sequences plus the originating text for audit."""

    words: list[str]
    labels: list[Label]
    text: str = ""

    def to_record(self, source_id: str = "") -> dict:
        """JSONL wire form: {"words": [...], "labels": ["COMMA", ...], ...}."""
        rec = {"words": list(self.words), "labels": [l.name for l in self.labels]}
        if source_id:
            rec["source_id"] = source_id
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "LabeledSample":
        return cls(
            words=list(rec["words"]),
            labels=[as_label(l) for l in rec["labels"]],
            text=rec.get("text", ""),
        )


def extract_labels(sentence: str, mapping: str = "map") -> LabeledSample:
    """Convert a punctuated sentence into a word/label sequence.

    Words are whitespace tokens with all target marks removed; a word's
    label is decided by the marks that follow it (trailing marks of its own
    token, then any directly following mark-only tokens): the first mark in
    surface order that maps to a non-EMPTY class wins, the rest are
    discarded. Marks interior to a token and leading marks with no
    preceding word are discarded. Tokens consisting only of marks never
    become words.
    """
    check_text(sentence)
    label_of = mark_label_mapping(mapping)
    if not sentence.strip():
        raise PunckitError("EMPTY_INPUT", "cannot label an empty sentence")
    words: list[str] = []
    labels: list[Label] = []
    open_slot = False  # last word's label still undecided

    def attach(mark: str) -> None:
        nonlocal open_slot
        if not words or not open_slot:
            return
        lbl = label_of[mark]
        if lbl is not Label.EMPTY:
            labels[-1] = lbl
            open_slot = False

    for tok in sentence.split():
        end = len(tok)
        while end and tok[end - 1] in TARGET_MARKS:
            end -= 1
        lead = 0
        while lead < end and tok[lead] in TARGET_MARKS:
            lead += 1
        for mark in tok[:lead]:  # marks ahead of this token's word follow
            attach(mark)  # the previous word in surface order
        word = tok[lead:end].translate(_DELETE_MARKS)
        if word:
            words.append(word)
            labels.append(Label.EMPTY)
            open_slot = True
        for mark in tok[end:]:
            attach(mark)
    return LabeledSample(words=words, labels=labels, text=sentence)


def strip_punctuation(sentence: str) -> str:
    """Remove all six target marks and re-normalize whitespace.

    Always equals ``" ".join(extract_labels(sentence).words)`` for non-blank
    input.
    """
    return " ".join(check_text(sentence).translate(_DELETE_MARKS).split())


def reconstruct(sample: LabeledSample) -> str:
    """Inverse of labeling: join words, appending each non-EMPTY label's
    mark directly to its word."""
    if len(sample.words) != len(sample.labels):
        raise PunckitError(
            "SHAPE",
            f"words/labels length mismatch ({len(sample.words)} vs {len(sample.labels)})",
        )
    return " ".join(
        w + LABEL_MARKS.get(as_label(l), "")
        for w, l in zip(sample.words, sample.labels)
    )


class PunctuationLabeler(BaseEstimator, TransformerMixin):
    """Stateless transformer form of the labeler.

    ``transform`` maps sentences to :class:`LabeledSample`;
    ``inverse_transform`` maps samples back to punctuated text.

    Parameters
    ----------
    mapping : {"map", "drop"}, default="map"
        How ``!`` and ``؛`` contribute labels.
    """

    def __init__(self, mapping: str = "map") -> None:
        self.mapping = mapping

    def fit(self, X: Iterable[str] | None = None, y: object = None) -> "PunctuationLabeler":
        mark_label_mapping(self.mapping)  # validate the parameter
        if X is not None:
            check_text_list(X)
        return self

    def transform(self, X: Iterable[str]) -> list[LabeledSample]:
        return [extract_labels(t, self.mapping) for t in check_text_list(X)]

    def inverse_transform(self, samples: Sequence[LabeledSample]) -> list[str]:
        return [reconstruct(s) for s in samples]
