"""Corpus-level punctuation statistics.

All tallies are plain integer counters, so partial tallies merge exactly and
the result is independent of stream order or partitioning. Percentages are
computed from exact integer ratios and rounded half-up to two decimals only
at reporting time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Union

from .errors import PunckitError
from .normalize import PunctuationMark
from .segment import Sentence

#: (mark name, mark char) in enum declaration order.
_MARK_ITEMS = tuple((m.name, m.value) for m in PunctuationMark)
MARK_NAMES = tuple(name for name, _ in _MARK_ITEMS)

#: Histogram buckets; 0 and 1 stay in the output even though the filter
#: guarantees accepted sentences carry at least two marks.
HISTOGRAM_BUCKETS = ("0", "1", "2", "3", "4", "5", "6+")


def round_half_up(value: float, places: int) -> float:
    """Round a float half-up (not banker's) to ``places`` decimals."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def _pct(count: int, total: int) -> float:
    """Exact integer ratio as a percent, half-up to 2 decimals."""
    if total == 0:
        return 0.0
    return float(
        (Decimal(100 * count) / Decimal(total)).quantize(
            Decimal("0.01"), rounding=ROUND_HALF_UP
        )
    )


@dataclass(frozen=True, slots=True)
class CorpusStats:
    """Finalized statistics; counts are exact, percents 2-decimal."""

    total_sentences: int
    total_marks: int
    per_mark: dict[str, tuple[int, float]]
    coverage: dict[str, tuple[int, float]]
    cooccurrence: dict[tuple[str, str], float]
    histogram: dict[str, tuple[int, float]]
    avg_marks_per_sentence: float

    def to_dict(self) -> dict:
        """JSON-ready representation (pair keys joined with '+')."""
        return {
            "total_sentences": self.total_sentences,
            "total_marks": self.total_marks,
            "per_mark": {k: list(v) for k, v in self.per_mark.items()},
            "coverage": {k: list(v) for k, v in self.coverage.items()},
            "cooccurrence": {f"{a}+{b}": p for (a, b), p in self.cooccurrence.items()},
            "histogram": {k: list(v) for k, v in self.histogram.items()},
            "avg_marks_per_sentence": self.avg_marks_per_sentence,
        }


@dataclass(slots=True)
class StatsAccumulator:
    """Streaming tally; ``merge`` is associative and commutative."""

    sentences: int = 0
    marks: Counter = field(default_factory=Counter)
    containing: Counter = field(default_factory=Counter)
    pairs: Counter = field(default_factory=Counter)
    histogram: Counter = field(default_factory=Counter)

    def update(self, sentence: Union[Sentence, str]) -> None:
        text = sentence.text if isinstance(sentence, Sentence) else sentence
        self.sentences += 1
        total = 0
        present: list[str] = []
        for name, ch in _MARK_ITEMS:
            c = text.count(ch)
            if c:
                total += c
                self.marks[name] += c
                self.containing[name] += 1
                present.append(name)
        for i in range(len(present)):
            for j in range(i + 1, len(present)):
                self.pairs[(present[i], present[j])] += 1
        self.histogram["6+" if total >= 6 else str(total)] += 1

    def update_many(self, corpus: Iterable[Union[Sentence, str]]) -> None:
        for s in corpus:
            self.update(s)

    def merge(self, other: "StatsAccumulator") -> "StatsAccumulator":
        self.sentences += other.sentences
        self.marks += other.marks
        self.containing += other.containing
        self.pairs += other.pairs
        self.histogram += other.histogram
        return self

    def finalize(self) -> CorpusStats:
        total_marks = sum(self.marks.values())
        n = self.sentences
        per_mark = {
            name: (self.marks[name], _pct(self.marks[name], total_marks))
            for name in MARK_NAMES
        }
        cover = {
            name: (self.containing[name], _pct(self.containing[name], n))
            for name in MARK_NAMES
        }
        # All 15 unordered pairs, sorted by co-occurrence count descending
        # (pair names break ties) for a stable report order.
        all_pairs = [
            (MARK_NAMES[i], MARK_NAMES[j])
            for i in range(len(MARK_NAMES))
            for j in range(i + 1, len(MARK_NAMES))
        ]
        ordered = sorted(all_pairs, key=lambda p: (-self.pairs[p], p))
        cooc = {p: _pct(self.pairs[p], n) for p in ordered}
        hist = {
            b: (self.histogram[b], _pct(self.histogram[b], n))
            for b in HISTOGRAM_BUCKETS
        }
        return CorpusStats(
            total_sentences=n,
            total_marks=total_marks,
            per_mark=per_mark,
            coverage=cover,
            cooccurrence=cooc,
            histogram=hist,
            avg_marks_per_sentence=(total_marks / n) if n else 0.0,
        )


def corpus_stats(corpus: Iterable[Union[Sentence, str]]) -> CorpusStats:
    """Single-pass statistics over a corpus."""
    acc = StatsAccumulator()
    acc.update_many(corpus)
    return acc.finalize()


def count_marks(corpus: Iterable[Union[Sentence, str]]) -> dict[str, int]:
    """Occurrence totals for each of the six marks (zeros included)."""
    acc = StatsAccumulator()
    acc.update_many(corpus)
    return {name: acc.marks[name] for name in MARK_NAMES}


def mark_percentages(counts: Mapping[str, int]) -> dict[str, float]:
    """Percent share of each mark, half-up to 2 decimals.

    Raises NO_MARKS when the counts are all zero (or empty).
    """
    total = sum(counts.values())
    if total == 0:
        raise PunckitError("NO_MARKS", "cannot compute percentages of zero marks")
    return {name: _pct(c, total) for name, c in counts.items()}


def cooccurrence(
    corpus: Iterable[Union[Sentence, str]]
) -> dict[tuple[str, str], float]:
    """Percent of sentences containing at least one of each mark of a pair,
    for all 15 unordered pairs, sorted descending."""
    acc = StatsAccumulator()
    acc.update_many(corpus)
    return acc.finalize().cooccurrence


def coverage(corpus: Iterable[Union[Sentence, str]]) -> dict[str, tuple[int, float]]:
    """Per mark: sentences containing it at least once (counted once per
    sentence regardless of frequency), with percent of all sentences."""
    acc = StatsAccumulator()
    acc.update_many(corpus)
    return acc.finalize().coverage


def count_histogram(
    corpus: Iterable[Union[Sentence, str]]
) -> dict[str, tuple[int, float]]:
    """Sentences bucketed by their total target-mark count."""
    acc = StatsAccumulator()
    acc.update_many(corpus)
    return acc.finalize().histogram


def render_stats(stats: CorpusStats) -> str:
    """Human-readable rendering of all four statistic families."""
    lines: list[str] = []
    lines.append("Punctuation mark distribution")
    lines.append(f"{'Mark':<20}{'Count':>14}  {'% of marks':>10}")
    for name, (c, p) in sorted(stats.per_mark.items(), key=lambda kv: -kv[1][0]):
        lines.append(f"{name:<20}{c:>14,}  {p:>10.2f}")
    lines.append(f"{'Total':<20}{stats.total_marks:>14,}  {100.0 if stats.total_marks else 0.0:>10.2f}")
    lines.append("")
    lines.append("Sentence coverage per mark")
    lines.append(f"{'Mark':<20}{'Sentences':>14}  {'% of sents':>10}")
    for name, (c, p) in sorted(stats.coverage.items(), key=lambda kv: -kv[1][0]):
        lines.append(f"{name:<20}{c:>14,}  {p:>10.2f}")
    lines.append("")
    lines.append("Mark pair co-occurrence (% of sentences containing both)")
    for (a, b), p in stats.cooccurrence.items():
        lines.append(f"{a + ' + ' + b:<42}{p:>8.2f}")
    lines.append("")
    lines.append("Marks per sentence")
    lines.append(f"{'Count':<8}{'Sentences':>14}  {'% of sents':>10}")
    for b, (c, p) in stats.histogram.items():
        lines.append(f"{b:<8}{c:>14,}  {p:>10.2f}")
    lines.append("")
    lines.append(f"Sentences: {stats.total_sentences:,}")
    lines.append(f"Average marks per sentence: {stats.avg_marks_per_sentence:.4f}")
    return "\n".join(lines)
