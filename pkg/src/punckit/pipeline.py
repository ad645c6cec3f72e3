"""Manifest-driven corpus construction: the end-to-end curate pipeline.

A manifest names ordered sources and the run configuration. ``curate`` runs
normalize → segment → filter → deduplicate → (optional) stratified sample →
split, streaming documents so that only survivors are held in memory, and
writes all artifacts: the three split JSONL files, a split manifest, a
filter-audit JSONL, and a run report with per-stage counts and throughput.

All intermediates are JSONL (one UTF-8 record per line, no BOM).
"""

from __future__ import annotations

import json
import sys
import time
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator, Union

from . import __version__
from .dedup import SplitSpec, canonical_key, split, stratified_sample
from .errors import PunckitError
from .labeling import extract_labels
from .normalize import normalize, parse_codepoint_ranges
from .segment import ALL_RULES, FilterVerdict, Sentence, filter_sentence, segment_text

SOURCE_FORMATS = ("plain", "jsonl")


@dataclass(frozen=True, slots=True)
class SourceSpec:
    """One corpus source: a text file or a JSONL file with a text field."""

    id: str
    path: Path
    format: str
    text_field: str | None = None


@dataclass(slots=True)
class Manifest:
    """Validated run configuration."""

    sources: list[SourceSpec]
    seed: int = 0
    split_sizes: tuple[int, int, int] | None = None
    sample_size: int | None = None
    keep_ascii_letters: bool = True
    extra_retained: tuple[str, ...] = ()
    label_mapping: str = "map"
    stratify_by_source: bool = True

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Manifest":
        """Parse and validate a manifest JSON file.

        Any structural problem raises a MANIFEST error. Source files are
        opened lazily at stream time; a missing or unreadable file raises a
        SOURCE error there. Relative source paths resolve against the
        manifest's directory.
        """
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise PunckitError("MANIFEST", f"cannot read manifest {path}: {exc}")
        except json.JSONDecodeError as exc:
            raise PunckitError("MANIFEST", f"manifest {path} is not valid JSON: {exc}")
        if not isinstance(doc, dict):
            raise PunckitError("MANIFEST", "manifest root must be a JSON object")

        raw_sources = doc.get("sources")
        if not isinstance(raw_sources, list) or not raw_sources:
            raise PunckitError("MANIFEST", "manifest needs a non-empty 'sources' list")
        sources: list[SourceSpec] = []
        seen_ids: set[str] = set()
        for k, entry in enumerate(raw_sources):
            if not isinstance(entry, dict):
                raise PunckitError("MANIFEST", f"sources[{k}] must be an object")
            sid = entry.get("id")
            spath = entry.get("path")
            fmt = entry.get("format", "plain")
            if not isinstance(sid, str) or not sid:
                raise PunckitError("MANIFEST", f"sources[{k}] needs a non-empty 'id'")
            if sid in seen_ids:
                raise PunckitError("MANIFEST", f"duplicate source id {sid!r}")
            seen_ids.add(sid)
            if not isinstance(spath, str) or not spath:
                raise PunckitError("MANIFEST", f"source {sid!r} needs a 'path'")
            if fmt not in SOURCE_FORMATS:
                raise PunckitError(
                    "MANIFEST",
                    f"source {sid!r} format must be one of {SOURCE_FORMATS}, got {fmt!r}",
                )
            field = entry.get("text_field")
            if fmt == "jsonl":
                if not isinstance(field, str) or not field:
                    raise PunckitError(
                        "MANIFEST", f"jsonl source {sid!r} needs 'text_field'"
                    )
            resolved = (path.parent / spath).resolve() if not Path(spath).is_absolute() else Path(spath)
            sources.append(SourceSpec(id=sid, path=resolved, format=fmt, text_field=field))

        seed = doc.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise PunckitError("MANIFEST", "'seed' must be an integer")

        split_sizes = None
        if "split" in doc:
            raw_split = doc["split"]
            if not isinstance(raw_split, dict):
                raise PunckitError("MANIFEST", "'split' must be an object")
            try:
                split_sizes = tuple(
                    int(raw_split[k]) for k in ("train", "validation", "test")
                )
            except (KeyError, TypeError, ValueError):
                raise PunckitError(
                    "MANIFEST", "'split' needs integer train/validation/test sizes"
                )
            if any(isinstance(raw_split[k], bool) for k in ("train", "validation", "test")) or any(
                v <= 0 for v in split_sizes
            ):
                raise PunckitError("MANIFEST", "split sizes must be positive integers")

        sample_size = doc.get("sample_size")
        if sample_size is not None:
            if not isinstance(sample_size, int) or isinstance(sample_size, bool) or sample_size <= 0:
                raise PunckitError("MANIFEST", "'sample_size' must be a positive integer")

        keep_ascii = doc.get("keep_ascii_letters", True)
        if not isinstance(keep_ascii, bool):
            raise PunckitError("MANIFEST", "'keep_ascii_letters' must be a boolean")

        retain = doc.get("retain", "")
        if isinstance(retain, str):
            try:
                extra = parse_codepoint_ranges(retain) if retain else ()
            except ValueError as exc:
                raise PunckitError("MANIFEST", f"bad 'retain' value: {exc}")
        elif isinstance(retain, list) and all(
            isinstance(c, str) and len(c) == 1 for c in retain
        ):
            extra = tuple(retain)
        else:
            raise PunckitError(
                "MANIFEST", "'retain' must be a hex-range string or list of characters"
            )

        mapping = doc.get("label_mapping", "map")
        if mapping not in ("map", "drop"):
            raise PunckitError("MANIFEST", "'label_mapping' must be 'map' or 'drop'")

        stratify = doc.get("stratify_by_source", True)
        if not isinstance(stratify, bool):
            raise PunckitError("MANIFEST", "'stratify_by_source' must be a boolean")

        return cls(
            sources=sources,
            seed=seed,
            split_sizes=split_sizes,
            sample_size=sample_size,
            keep_ascii_letters=keep_ascii,
            extra_retained=extra,
            label_mapping=mapping,
            stratify_by_source=stratify,
        )


def iter_documents(source: SourceSpec) -> Iterator[str]:
    """Yield raw document texts from a source file.

    Unreadable files and malformed records raise a SOURCE error naming the
    source id.
    """
    try:
        with open(source.path, encoding="utf-8") as fh:
            if source.format == "plain":
                for line in fh:
                    yield line.rstrip("\n")
            else:
                for ln, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise PunckitError(
                            "SOURCE",
                            f"source {source.id!r}: {source.path}:{ln}: bad JSON: {exc}",
                        )
                    text = rec.get(source.text_field) if isinstance(rec, dict) else None
                    if not isinstance(text, str):
                        raise PunckitError(
                            "SOURCE",
                            f"source {source.id!r}: {source.path}:{ln}: "
                            f"missing or non-string field {source.text_field!r}",
                        )
                    yield text
    except OSError as exc:
        raise PunckitError("SOURCE", f"source {source.id!r} unreadable: {exc}")
    except UnicodeDecodeError as exc:
        raise PunckitError("SOURCE", f"source {source.id!r} is not valid UTF-8: {exc}")


# --- JSONL helpers ----------------------------------------------------------


def write_jsonl(path: Union[str, Path], records: Iterable[dict]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False))
            fh.write("\n")
            n += 1
    return n


def read_jsonl(path: Union[str, Path]) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise PunckitError("SOURCE", f"{path}:{ln}: bad JSON: {exc}")


def read_sentences(path: Union[str, Path]) -> Iterator[Sentence]:
    """Read a sentences JSONL file ({"text": ..., "source_id": ...})."""
    for i, rec in enumerate(read_jsonl(path)):
        text = rec.get("text")
        if not isinstance(text, str) or not text:
            raise PunckitError("SOURCE", f"{path}: record {i} has no usable 'text'")
        yield Sentence(
            text=text,
            source_id=rec.get("source_id", "corpus"),
            doc_index=rec.get("doc_index", i),
            sent_index=rec.get("sent_index", 0),
        )


def sentence_record(s: Sentence) -> dict:
    return {"text": s.text, "source_id": s.source_id}


# --- the curate pipeline ----------------------------------------------------

# Worker-side normalization config, set once per process by the initializer.
_WORKER_CFG: tuple[bool, tuple[str, ...]] | None = None


def _init_worker(cfg: tuple[bool, tuple[str, ...]]) -> None:
    global _WORKER_CFG
    _WORKER_CFG = cfg


def _process_document(
    item: tuple[str, int, str]
) -> tuple[str, int, list[tuple[str, int, tuple[str, ...]]]]:
    """normalize → segment → filter one document; used by worker processes."""
    source_id, doc_index, raw = item
    keep_ascii, extra = _WORKER_CFG
    text = normalize(raw, keep_ascii_letters=keep_ascii, extra_retained=extra)
    out = []
    for k, sent in enumerate(segment_text(text)):
        out.append((sent, k, filter_sentence(sent).failed_rules))
    return source_id, doc_index, out


def _stage1_results(
    manifest: Manifest, jobs: int
) -> Iterator[tuple[str, int, list[tuple[str, int, tuple[str, ...]]]]]:
    cfg = (manifest.keep_ascii_letters, manifest.extra_retained)
    items = (
        (src.id, doc_index, raw)
        for src in manifest.sources
        for doc_index, raw in enumerate(iter_documents(src))
    )
    if jobs <= 1:
        _init_worker(cfg)
        for item in items:
            yield _process_document(item)
    else:
        with Pool(jobs, initializer=_init_worker, initargs=(cfg,)) as pool:
            yield from pool.imap(_process_document, items, chunksize=256)


def curate(
    manifest: Manifest,
    out_dir: Union[str, Path],
    seed: int | None = None,
    jobs: int = 1,
) -> dict:
    """Run the full pipeline and write all artifacts into ``out_dir``.

    Returns the run report (also written as ``run_report.json``). The flag
    seed, when given, wins over the manifest seed.
    """
    if manifest.split_sizes is None:
        raise PunckitError("MANIFEST", "manifest has no 'split' section; curate needs one")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seed = manifest.seed if seed is None else seed

    t0 = time.perf_counter()
    documents = 0
    segmented = 0
    accepted = 0
    rule_tallies: Counter = Counter()
    seen: set[bytes] = set()
    survivors: list[Sentence] = []

    audit_path = out / "filter_audit.jsonl"
    with open(audit_path, "w", encoding="utf-8") as audit:
        for source_id, doc_index, results in _stage1_results(manifest, jobs):
            documents += 1
            for text, sent_index, failed in results:
                segmented += 1
                rec = {
                    "text": text,
                    "source_id": source_id,
                    "accepted": not failed,
                    "failed_rules": list(failed),
                }
                audit.write(json.dumps(rec, ensure_ascii=False))
                audit.write("\n")
                if failed:
                    rule_tallies.update(failed)
                    continue
                accepted += 1
                key = canonical_key(text)
                if key not in seen:
                    seen.add(key)
                    survivors.append(
                        Sentence(
                            text=text,
                            source_id=source_id,
                            doc_index=doc_index,
                            sent_index=sent_index,
                        )
                    )
    unique = len(survivors)
    t1 = time.perf_counter()
    print(
        f"[curate] {documents:,} documents -> {segmented:,} sentences, "
        f"{accepted:,} accepted, {unique:,} unique "
        f"({segmented / max(t1 - t0, 1e-9):,.0f} sentences/s)",
        file=sys.stderr,
    )

    if manifest.sample_size is not None:
        sampled = stratified_sample(survivors, manifest.sample_size, seed)
    else:
        sampled = survivors
    t2 = time.perf_counter()

    spec = SplitSpec(
        seed=seed,
        train_size=manifest.split_sizes[0],
        val_size=manifest.split_sizes[1],
        test_size=manifest.split_sizes[2],
        stratify_by_source=manifest.stratify_by_source,
    )
    ds = split(sampled, spec)
    t3 = time.perf_counter()

    part_files = {}
    per_source: dict[str, dict[str, int]] = {}
    for name, part in (
        ("train", ds.train),
        ("validation", ds.validation),
        ("test", ds.test),
    ):
        part_path = out / f"{name}.jsonl"
        write_jsonl(part_path, (sentence_record(s) for s in part))
        part_files[name] = part_path.name
        per_source[name] = dict(Counter(s.source_id for s in part))
    split_manifest = {
        "seed": seed,
        "sizes": {
            "train": len(ds.train),
            "validation": len(ds.validation),
            "test": len(ds.test),
        },
        "per_source": per_source,
        "stratify_by_source": manifest.stratify_by_source,
        "files": part_files,
        "toolkit_version": __version__,
    }
    (out / "split_manifest.json").write_text(
        json.dumps(split_manifest, ensure_ascii=False, indent=2), encoding="utf-8"
    )
    t4 = time.perf_counter()

    report = {
        "toolkit_version": __version__,
        "seed": seed,
        "jobs": jobs,
        "stages": {
            "segment": {"documents_in": documents, "sentences_out": segmented},
            "filter": {
                "sentences_in": segmented,
                "sentences_out": accepted,
                "rejected": segmented - accepted,
                "rejections_by_rule": {r: rule_tallies.get(r, 0) for r in ALL_RULES},
            },
            "dedup": {
                "sentences_in": accepted,
                "sentences_out": unique,
                "duplicates_dropped": accepted - unique,
            },
            "sample": {"sentences_in": unique, "sentences_out": len(sampled)},
            "split": {
                "sentences_in": len(sampled),
                "train": len(ds.train),
                "validation": len(ds.validation),
                "test": len(ds.test),
                "unassigned": len(sampled) - sum(ds.sizes()),
            },
        },
        "timings_seconds": {
            "segment_filter_dedup": round(t1 - t0, 3),
            "sample": round(t2 - t1, 3),
            "split": round(t3 - t2, 3),
            "write": round(t4 - t3, 3),
            "total": round(t4 - t0, 3),
        },
        "sentences_per_second": round(segmented / max(t1 - t0, 1e-9), 1),
        "artifacts": {
            "train": part_files["train"],
            "validation": part_files["validation"],
            "test": part_files["test"],
            "split_manifest": "split_manifest.json",
            "filter_audit": audit_path.name,
            "run_report": "run_report.json",
        },
    }
    (out / "run_report.json").write_text(
        json.dumps(report, ensure_ascii=False, indent=2), encoding="utf-8"
    )
    return report
