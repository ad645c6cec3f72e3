"""Scoring of punctuation predictions against gold references.

Two modes share one report shape:

* **label mode** — aligned label sequences per sample;
* **text mode** — raw punctuated text (e.g. from a generative model), where
  the word sequences may disagree; a word-level alignment attributes label
  confusion on matched positions and tallies additions/deletions/
  substitutions as over-correction diagnostics.

Per-class precision/recall/F1 cover the four mark classes only; EMPTY never
appears as a reported class. Macro metrics are arithmetic means of the four
per-class values (macro F1 averages per-class F1 values, it is not the F1 of
macro P/R); micro metrics pool tp/fp/fn over the four classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .analytics import round_half_up
from .errors import PunckitError
from .labeling import Label, as_label, extract_labels, strip_punctuation
from .normalize import normalize_whitespace
from .validation import check_text

#: Reported classes, in declaration order.
EVAL_CLASSES = (Label.COMMA, Label.PERIOD, Label.QUESTION, Label.COLON)

MATCH = "match"
SUBSTITUTION = "substitution"
DELETION = "deletion"
ADDITION = "addition"


def f1(precision: float, recall: float) -> float:
    """Harmonic mean; 0 when both inputs are 0."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(slots=True)
class ConfusionCounts:
    """Per-class tp/fp/fn over the four mark classes."""

    tp: dict[Label, int] = field(default_factory=lambda: {c: 0 for c in EVAL_CLASSES})
    fp: dict[Label, int] = field(default_factory=lambda: {c: 0 for c in EVAL_CLASSES})
    fn: dict[Label, int] = field(default_factory=lambda: {c: 0 for c in EVAL_CLASSES})

    def add(self, pred: Label, gold: Label) -> None:
        """Record one position."""
        if pred is gold:
            if pred is not Label.EMPTY:
                self.tp[pred] += 1
        else:
            if pred is not Label.EMPTY:
                self.fp[pred] += 1
            if gold is not Label.EMPTY:
                self.fn[gold] += 1

    def merge(self, other: "ConfusionCounts") -> "ConfusionCounts":
        for c in EVAL_CLASSES:
            self.tp[c] += other.tp[c]
            self.fp[c] += other.fp[c]
            self.fn[c] += other.fn[c]
        return self

    def to_dict(self) -> dict:
        return {
            c.name: {"tp": self.tp[c], "fp": self.fp[c], "fn": self.fn[c]}
            for c in EVAL_CLASSES
        }


def score_labels(
    pred: Sequence[Union[Label, str]], gold: Sequence[Union[Label, str]]
) -> ConfusionCounts:
    """Position-by-position confusion over two aligned label sequences."""
    pred = [as_label(l) for l in pred]
    gold = [as_label(l) for l in gold]
    if len(pred) != len(gold):
        raise PunckitError(
            "SHAPE", f"pred/gold length mismatch ({len(pred)} vs {len(gold)})"
        )
    counts = ConfusionCounts()
    for p, g in zip(pred, gold):
        counts.add(p, g)
    return counts


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    return p, r, f1(p, r)


def per_class_metrics(counts: ConfusionCounts) -> dict[Label, tuple[float, float, float]]:
    """(precision, recall, f1) per reported class."""
    return {
        c: _prf(counts.tp[c], counts.fp[c], counts.fn[c]) for c in EVAL_CLASSES
    }


def macro_metrics(counts: ConfusionCounts) -> tuple[float, float, float]:
    """Arithmetic means of the per-class precision/recall/f1 values."""
    per = per_class_metrics(counts)
    n = len(EVAL_CLASSES)
    return (
        sum(v[0] for v in per.values()) / n,
        sum(v[1] for v in per.values()) / n,
        sum(v[2] for v in per.values()) / n,
    )


def micro_metrics(counts: ConfusionCounts) -> tuple[float, float, float]:
    """Pooled tp/fp/fn over the four classes, then P/R/F1."""
    tp = sum(counts.tp.values())
    fp = sum(counts.fp.values())
    fn = sum(counts.fn.values())
    return _prf(tp, fp, fn)


def fsm(pred_text: str, gold_text: str) -> bool:
    """Full-sentence match after whitespace normalization."""
    return normalize_whitespace(check_text(pred_text)) == normalize_whitespace(
        check_text(gold_text)
    )


@dataclass(frozen=True, slots=True)
class Edit:
    """One alignment step; indices are None on the missing side."""

    op: str
    src_index: int | None
    pred_index: int | None


def _alignment(pred_words: Sequence[str], src_words: Sequence[str]) -> list[Edit]:
    """Full minimum-cost alignment path, including matches.

    Unit costs for addition/deletion/substitution, 0 for exact match. Ties
    broken during backtrace by preferring match > substitution > deletion >
    addition, which makes the edit classification canonical.
    """
    n, m = len(src_words), len(pred_words)
    # dp[i][j] = cost of aligning src[:i] with pred[:j]
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dp[i][0] = i
    for j in range(1, m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        row, prev = dp[i], dp[i - 1]
        src_i = src_words[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (src_i != pred_words[j - 1])
            dele = prev[j] + 1
            add = row[j - 1] + 1
            row[j] = min(sub, dele, add)
    path: list[Edit] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and src_words[i - 1] == pred_words[j - 1] and dp[i][j] == dp[i - 1][j - 1]:
            path.append(Edit(MATCH, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and dp[i][j] == dp[i - 1][j - 1] + 1:
            path.append(Edit(SUBSTITUTION, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            path.append(Edit(DELETION, i - 1, None))
            i -= 1
        else:
            path.append(Edit(ADDITION, None, j - 1))
            j -= 1
    path.reverse()
    return path


def align_words(pred_words: Sequence[str], src_words: Sequence[str]) -> list[Edit]:
    """Minimum-cost word-level edit script (matches omitted).

    Classifies each edit as an addition (word in pred only), deletion (word
    in src only), or substitution. Identical sequences yield an empty
    script.
    """
    return [e for e in _alignment(pred_words, src_words) if e.op != MATCH]


@dataclass(slots=True)
class SampleEval:
    """Per-sample contribution to a report (text mode)."""

    fsm: bool
    counts: ConfusionCounts
    additions: int = 0
    deletions: int = 0
    substitutions: int = 0

    @property
    def edited(self) -> bool:
        return bool(self.additions or self.deletions or self.substitutions)


def _words_and_labels(text: str, mapping: str) -> tuple[list[str], list[Label]]:
    if not text.strip():
        return [], []
    sample = extract_labels(text, mapping)
    return sample.words, sample.labels


def evaluate_text(
    pred_text: str, gold_text: str, mapping: str = "map"
) -> SampleEval:
    """Score one raw-text prediction against its gold sentence.

    Words of both sides are aligned after punctuation stripping. Label
    confusion is scored on matched (aligned-equal) positions; a gold
    non-EMPTY label on a deleted word counts as a false negative and a
    predicted non-EMPTY label on an added or substituted word counts as a
    false positive.
    """
    gold_words, gold_labels = _words_and_labels(gold_text, mapping)
    pred_words, pred_labels = _words_and_labels(pred_text, mapping)
    counts = ConfusionCounts()
    adds = dels = subs = 0
    for e in _alignment(pred_words, gold_words):
        if e.op == MATCH:
            counts.add(pred_labels[e.pred_index], gold_labels[e.src_index])
        elif e.op == DELETION:
            dels += 1
            if gold_labels[e.src_index] is not Label.EMPTY:
                counts.fn[gold_labels[e.src_index]] += 1
        elif e.op == ADDITION:
            adds += 1
            if pred_labels[e.pred_index] is not Label.EMPTY:
                counts.fp[pred_labels[e.pred_index]] += 1
        else:  # substitution
            subs += 1
            if pred_labels[e.pred_index] is not Label.EMPTY:
                counts.fp[pred_labels[e.pred_index]] += 1
    return SampleEval(
        fsm=fsm(pred_text, gold_text),
        counts=counts,
        additions=adds,
        deletions=dels,
        substitutions=subs,
    )


@dataclass(slots=True)
class EditStats:
    """Over-correction tallies across a corpus."""

    additions: int = 0
    deletions: int = 0
    substitutions: int = 0
    samples_with_edits: int = 0
    edit_rate: float = 0.0

    def to_dict(self) -> dict:
        return {
            "additions": self.additions,
            "deletions": self.deletions,
            "substitutions": self.substitutions,
            "samples_with_edits": self.samples_with_edits,
            "edit_rate": self.edit_rate,
        }


@dataclass(slots=True)
class EvalReport:
    """Aggregate metrics over an evaluation run."""

    samples: int
    per_class: dict[str, dict[str, float]]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    micro_precision: float
    micro_recall: float
    micro_f1: float
    fsm_rate: float
    edit_stats: EditStats
    confusion: ConfusionCounts

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "per_class": self.per_class,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "micro_precision": self.micro_precision,
            "micro_recall": self.micro_recall,
            "micro_f1": self.micro_f1,
            "fsm_rate": self.fsm_rate,
            "edit_stats": self.edit_stats.to_dict(),
            "confusion": self.confusion.to_dict(),
        }


def _build_report(
    samples: int, matched: int, counts: ConfusionCounts, edits: EditStats
) -> EvalReport:
    per = per_class_metrics(counts)
    macro = macro_metrics(counts)
    micro = micro_metrics(counts)
    edits.edit_rate = edits.samples_with_edits / samples if samples else 0.0
    return EvalReport(
        samples=samples,
        per_class={
            c.name: {"precision": v[0], "recall": v[1], "f1": v[2]}
            for c, v in per.items()
        },
        macro_precision=macro[0],
        macro_recall=macro[1],
        macro_f1=macro[2],
        micro_precision=micro[0],
        micro_recall=micro[1],
        micro_f1=micro[2],
        fsm_rate=matched / samples if samples else 0.0,
        edit_stats=edits,
        confusion=counts,
    )


def evaluate_corpus(
    pairs: Iterable[tuple], mode: str = "label", mapping: str = "map"
) -> EvalReport:
    """Aggregate a stream of (pred, gold) pairs into an :class:`EvalReport`.

    ``mode="label"``: each pair is two aligned label sequences; a sample
    counts as matched when the sequences are identical. ``mode="text"``:
    each pair is two strings, scored via :func:`evaluate_text`.
    """
    if mode not in ("label", "text"):
        raise ValueError(f"mode must be 'label' or 'text', got {mode!r}")
    counts = ConfusionCounts()
    edits = EditStats()
    samples = 0
    matched = 0
    for pred, gold in pairs:
        samples += 1
        if mode == "label":
            pred_l = [as_label(l) for l in pred]
            gold_l = [as_label(l) for l in gold]
            counts.merge(score_labels(pred_l, gold_l))
            matched += pred_l == gold_l
        else:
            one = evaluate_text(pred, gold, mapping)
            counts.merge(one.counts)
            matched += one.fsm
            edits.additions += one.additions
            edits.deletions += one.deletions
            edits.substitutions += one.substitutions
            edits.samples_with_edits += one.edited
    if samples == 0:
        raise PunckitError("NO_SAMPLES", "evaluation stream is empty")
    return _build_report(samples, matched, counts, edits)


def load_pairs(path, mode: str = "label") -> list[tuple]:
    """Read evaluation pairs from JSONL.

    Text mode: {"gold": ..., "pred": ...}. Label mode:
    {"gold_labels": [...], "pred_labels": [...]}.
    """
    pairs: list[tuple] = []
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            try:
                if mode == "text":
                    pairs.append((rec["pred"], rec["gold"]))
                else:
                    pairs.append((rec["pred_labels"], rec["gold_labels"]))
            except KeyError as exc:
                raise PunckitError(
                    "SHAPE", f"{path}:{ln}: missing field {exc} for mode {mode!r}"
                ) from None
    return pairs


def _fmt4(x: float) -> str:
    return f"{round_half_up(x, 4):.4f}"


def render_report(report: EvalReport) -> str:
    """Fixed-width rendering in the per-class/macro/micro table layout."""
    lines = [f"{'Class':<16}{'Precision':>10}{'Recall':>10}{'F1-score':>10}"]
    for name, m in report.per_class.items():
        lines.append(
            f"{name:<16}{_fmt4(m['precision']):>10}{_fmt4(m['recall']):>10}{_fmt4(m['f1']):>10}"
        )
    lines.append(
        f"{'Macro Average':<16}{_fmt4(report.macro_precision):>10}"
        f"{_fmt4(report.macro_recall):>10}{_fmt4(report.macro_f1):>10}"
    )
    lines.append(
        f"{'Micro Average':<16}{_fmt4(report.micro_precision):>10}"
        f"{_fmt4(report.micro_recall):>10}{_fmt4(report.micro_f1):>10}"
    )
    lines.append("")
    lines.append(f"Samples:  {report.samples}")
    lines.append(f"FSM rate: {_fmt4(report.fsm_rate)}")
    e = report.edit_stats
    lines.append(
        "Edits:    "
        f"additions={e.additions} deletions={e.deletions} "
        f"substitutions={e.substitutions} "
        f"samples_with_edits={e.samples_with_edits} "
        f"edit_rate={_fmt4(e.edit_rate)}"
    )
    return "\n".join(lines)
