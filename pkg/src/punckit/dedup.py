"""Exact deduplication, stratified sampling, and dataset splitting.

Deduplication hashes a canonical form of each sentence (lowercased,
whitespace-collapsed) with SHA-256 and keeps the first occurrence of each
digest. Only the 32-byte digests are held in memory — roughly 0.7 GB of raw
key material at 20M sentences plus set overhead — never the full texts.

Sampling and splitting are seeded with a named, portable generator
(NumPy PCG64) so runs reproduce across machines for a fixed seed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import PunckitError
from .segment import Sentence


def canonical_text(text: str) -> str:
    """Lowercase and collapse whitespace; identity for most Persian text
    (Persian letters have no case)."""
    return " ".join(text.lower().split())


def canonical_key(text: str) -> bytes:
    """SHA-256 digest of the canonical form's UTF-8 bytes."""
    return hashlib.sha256(canonical_text(text).encode("utf-8")).digest()


def deduplicate(sentences: Iterable[Sentence]) -> Iterator[Sentence]:
    """Yield the first occurrence of each canonical key, preserving order.

    Streaming and single-pass; idempotent (a second pass over the output
    drops nothing).
    """
    seen: set[bytes] = set()
    for s in sentences:
        key = canonical_key(s.text)
        if key not in seen:
            seen.add(key)
            yield s


def largest_remainder(total: int, weights: Sequence[int]) -> list[int]:
    """Apportion ``total`` into integer quotas proportional to ``weights``.

    Exact integer arithmetic: quota_i = floor(total*w_i/W), then the
    leftover units go to the largest fractional remainders (ties to the
    lower index). Quotas always sum to ``total`` and never exceed w_i when
    total ≤ W.
    """
    if total < 0:
        raise ValueError("total must be non-negative")
    W = sum(weights)
    if W <= 0:
        raise ValueError("weights must sum to a positive value")
    base = [total * w // W for w in weights]
    leftover = total - sum(base)
    by_remainder = sorted(
        range(len(weights)), key=lambda i: (-(total * weights[i] % W), i)
    )
    for i in by_remainder[:leftover]:
        base[i] += 1
    return base


def _group_by_source(corpus: Sequence[Sentence]) -> dict[str, list[int]]:
    """Indices per source_id, keyed in first-appearance order."""
    groups: dict[str, list[int]] = {}
    for i, s in enumerate(corpus):
        groups.setdefault(s.source_id, []).append(i)
    return groups


def stratified_sample(
    corpus: Sequence[Sentence], n: int, seed: int
) -> list[Sentence]:
    """Sample ``n`` sentences preserving per-source proportions.

    Per-source quotas come from :func:`largest_remainder` over source sizes;
    within each source the selection is seeded uniform sampling without
    replacement. Output preserves the corpus order. Deterministic for fixed
    (corpus, n, seed).
    """
    corpus = list(corpus)
    if n > len(corpus):
        raise PunckitError(
            "SAMPLE_TOO_LARGE",
            f"requested sample of {n} from a pool of {len(corpus)}",
        )
    groups = _group_by_source(corpus)
    quotas = largest_remainder(n, [len(g) for g in groups.values()])
    rng = np.random.Generator(np.random.PCG64(seed))
    chosen: list[int] = []
    for idxs, quota in zip(groups.values(), quotas):
        picked = rng.choice(len(idxs), size=quota, replace=False)
        chosen.extend(idxs[int(j)] for j in picked)
    chosen.sort()
    return [corpus[i] for i in chosen]


@dataclass(frozen=True, slots=True)
class SplitSpec:
    """Sizes and seed for a three-way split."""

    seed: int
    train_size: int
    val_size: int
    test_size: int
    stratify_by_source: bool = True


@dataclass(slots=True)
class DatasetSplit:
    """The three disjoint parts of a split."""

    train: list[Sentence] = field(default_factory=list)
    validation: list[Sentence] = field(default_factory=list)
    test: list[Sentence] = field(default_factory=list)

    def sizes(self) -> tuple[int, int, int]:
        return len(self.train), len(self.validation), len(self.test)


def split(subset: Sequence[Sentence], spec: SplitSpec) -> DatasetSplit:
    """Seeded shuffle then contiguous assignment into train/val/test.

    With ``stratify_by_source`` (the default) the shuffle-and-assign happens
    per source with largest-remainder quotas per part, so each part matches
    the subset's per-source proportions within ±1 sentence per source. Part
    sizes are exact. Deterministic for fixed (subset, spec).
    """
    subset = list(subset)
    sizes = (spec.train_size, spec.val_size, spec.test_size)
    if any(k <= 0 for k in sizes):
        raise PunckitError("SPLIT_SIZES", f"split sizes must be positive, got {sizes}")
    if sum(sizes) > len(subset):
        raise PunckitError(
            "SPLIT_SIZES",
            f"split sizes {sizes} sum to {sum(sizes)} > pool of {len(subset)}",
        )
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    parts: tuple[list[int], list[int], list[int]] = ([], [], [])

    if spec.stratify_by_source:
        groups = list(_group_by_source(subset).values())
        counts = [len(g) for g in groups]
        remaining = counts
        quota_rows: list[list[int]] = []
        # Allocate each part against what the earlier parts left behind, so
        # per-part totals stay exact and no source is over-drawn.
        for part_size in sizes:
            quotas = largest_remainder(part_size, remaining)
            quotas = [min(q, r) for q, r in zip(quotas, remaining)]
            deficit = part_size - sum(quotas)
            if deficit:  # redistribute capped units to sources with room
                for i in range(len(quotas)):
                    room = remaining[i] - quotas[i]
                    take = min(room, deficit)
                    quotas[i] += take
                    deficit -= take
                    if not deficit:
                        break
            quota_rows.append(quotas)
            remaining = [r - q for r, q in zip(remaining, quotas)]
        for idxs, qs in zip(groups, (list(col) for col in zip(*quota_rows))):
            order = rng.permutation(len(idxs))
            pos = 0
            for part, q in zip(parts, qs):
                part.extend(idxs[int(j)] for j in order[pos : pos + q])
                pos += q
    else:
        order = rng.permutation(len(subset))
        pos = 0
        for part, q in zip(parts, sizes):
            part.extend(int(j) for j in order[pos : pos + q])
            pos += q

    return DatasetSplit(
        train=[subset[i] for i in parts[0]],
        validation=[subset[i] for i in parts[1]],
        test=[subset[i] for i in parts[2]],
    )
