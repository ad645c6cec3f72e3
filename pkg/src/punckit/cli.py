"""Command-line interface: manifest-driven curation plus standalone stages.

Exit codes: 0 success; 1 invalid manifest or infeasible sizes; 2 unreadable
source; 3 empty corpus/input; 4 gold/prediction mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analytics import StatsAccumulator, render_stats
from .dedup import SplitSpec, deduplicate, split
from .errors import PunckitError
from .evaluation import evaluate_corpus, load_pairs, render_report
from .labeling import LABEL_MAPPINGS, extract_labels
from .normalize import RawDocument, normalize, parse_codepoint_ranges
from .perceptron import PerceptronRestorer, train
from .pipeline import (
    Manifest,
    curate,
    read_jsonl,
    read_sentences,
    sentence_record,
    write_jsonl,
)
from .segment import filter_sentence, segment

EXIT_CODES = {
    "MANIFEST": 1,
    "SPLIT_SIZES": 1,
    "SAMPLE_TOO_LARGE": 1,
    "SOURCE": 2,
    "NO_SAMPLES": 3,
    "NO_MARKS": 3,
    "NO_DATA": 3,
    "EMPTY_INPUT": 3,
    "PAIR_MISMATCH": 4,
    "SHAPE": 4,
}

JOBS_ENV_VAR = "PUNCKIT_JOBS"


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _open_in(path: str):
    return sys.stdin if path == "-" else open(path, encoding="utf-8")


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8")


def _read_lines(path: str) -> list[str]:
    fh = _open_in(path)
    try:
        return [line.rstrip("\n") for line in fh]
    finally:
        if fh is not sys.stdin:
            fh.close()


# --- subcommand handlers ------------------------------------------------


def cmd_curate(args: argparse.Namespace) -> int:
    manifest = Manifest.load(args.manifest)
    report = curate(manifest, args.out, seed=args.seed, jobs=args.jobs)
    stages = report["stages"]
    print(
        "curate done: "
        f"{stages['segment']['documents_in']} documents, "
        f"{stages['filter']['sentences_out']} accepted, "
        f"{stages['dedup']['sentences_out']} unique, "
        f"split {stages['split']['train']}/{stages['split']['validation']}"
        f"/{stages['split']['test']} -> {args.out}"
    )
    return 0


def cmd_normalize(args: argparse.Namespace) -> int:
    extra = parse_codepoint_ranges(args.retain) if args.retain else ()
    out = _open_out(args.out)
    try:
        for line in _read_lines(args.infile):
            out.write(
                normalize(
                    line,
                    keep_ascii_letters=not args.strip_ascii_letters,
                    extra_retained=extra,
                )
            )
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_segment(args: argparse.Namespace) -> int:
    def records():
        for doc_index, line in enumerate(_read_lines(args.infile)):
            doc = RawDocument(source_id=args.source_id, text=line)
            for s in segment(doc, doc_index):
                yield {
                    "text": s.text,
                    "source_id": s.source_id,
                    "doc_index": s.doc_index,
                    "sent_index": s.sent_index,
                }

    n = write_jsonl(args.out, records())
    print(f"segmented into {n} candidate sentences -> {args.out}", file=sys.stderr)
    return 0


def cmd_filter(args: argparse.Namespace) -> int:
    kept = 0
    total = 0
    audit_fh = open(args.audit, "w", encoding="utf-8") if args.audit else None
    try:
        with open(args.out, "w", encoding="utf-8") as out:
            for s in read_sentences(args.infile):
                total += 1
                verdict = filter_sentence(s.text)
                if audit_fh is not None:
                    rec = {
                        "text": s.text,
                        "source_id": s.source_id,
                        "accepted": verdict.accepted,
                        "failed_rules": list(verdict.failed_rules),
                    }
                    audit_fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
                if verdict.accepted:
                    out.write(json.dumps(sentence_record(s), ensure_ascii=False) + "\n")
                    kept += 1
    finally:
        if audit_fh is not None:
            audit_fh.close()
    print(f"kept {kept} of {total} sentences -> {args.out}", file=sys.stderr)
    return 0


def cmd_dedup(args: argparse.Namespace) -> int:
    n_in = 0

    def counted():
        nonlocal n_in
        for s in read_sentences(args.infile):
            n_in += 1
            yield s

    n_out = write_jsonl(args.out, (sentence_record(s) for s in deduplicate(counted())))
    print(f"dedup: {n_in} -> {n_out} sentences -> {args.out}", file=sys.stderr)
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    subset = list(read_sentences(args.infile))
    spec = SplitSpec(
        seed=args.seed if args.seed is not None else 0,
        train_size=args.train,
        val_size=args.validation,
        test_size=args.test,
        stratify_by_source=not args.no_stratify,
    )
    ds = split(subset, spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, part in (
        ("train", ds.train),
        ("validation", ds.validation),
        ("test", ds.test),
    ):
        write_jsonl(out / f"{name}.jsonl", (sentence_record(s) for s in part))
    manifest = {
        "seed": spec.seed,
        "sizes": {
            "train": len(ds.train),
            "validation": len(ds.validation),
            "test": len(ds.test),
        },
        "stratify_by_source": spec.stratify_by_source,
        "toolkit_version": __version__,
    }
    (out / "split_manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2), encoding="utf-8"
    )
    print(
        f"split {len(ds.train)}/{len(ds.validation)}/{len(ds.test)} -> {out}",
        file=sys.stderr,
    )
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    acc = StatsAccumulator()
    for s in read_sentences(args.infile):
        acc.update(s)
    if acc.sentences == 0:
        raise PunckitError("NO_SAMPLES", f"corpus {args.infile} is empty")
    stats = acc.finalize()
    rendering = render_stats(stats)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "stats.json").write_text(
            json.dumps(stats.to_dict(), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
        (out / "stats.txt").write_text(rendering + "\n", encoding="utf-8")
    print(rendering)
    return 0


def cmd_make_labels(args: argparse.Namespace) -> int:
    def records():
        for s in read_sentences(args.infile):
            sample = extract_labels(s.text, args.label_mapping)
            yield sample.to_record(source_id=s.source_id)

    n = write_jsonl(args.out, records())
    print(f"labeled {n} sentences -> {args.out}", file=sys.stderr)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    if args.pairs:
        pairs = load_pairs(args.pairs, args.mode)
    else:
        if not (args.gold and args.pred):
            raise PunckitError(
                "PAIR_MISMATCH", "evaluate needs --pairs or both --gold and --pred"
            )
        if args.mode == "text":
            gold = _read_lines(args.gold)
            pred = _read_lines(args.pred)
        else:
            gold = [rec["labels"] for rec in read_jsonl(args.gold)]
            pred = [rec["labels"] for rec in read_jsonl(args.pred)]
        if len(gold) != len(pred):
            raise PunckitError(
                "PAIR_MISMATCH",
                f"gold has {len(gold)} lines, pred has {len(pred)}",
            )
        pairs = list(zip(pred, gold))
    report = evaluate_corpus(pairs, mode=args.mode, mapping=args.label_mapping)
    rendering = render_report(report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(
            json.dumps(report.to_dict(), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
        (out / "report.txt").write_text(rendering + "\n", encoding="utf-8")
    print(rendering)
    return 0


def cmd_train_baseline(args: argparse.Namespace) -> int:
    from .labeling import LabeledSample

    samples = [LabeledSample.from_record(rec) for rec in read_jsonl(args.infile)]
    model = train(samples, epochs=args.epochs, seed=args.seed if args.seed is not None else 0)
    model.save(args.out)
    print(f"trained on {len(samples)} samples -> {args.out}", file=sys.stderr)
    return 0


def cmd_restore(args: argparse.Namespace) -> int:
    model = PerceptronRestorer.load(args.model)
    out = _open_out(args.out)
    try:
        for line in _read_lines(args.infile):
            out.write(model.restore(line))
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# --- parser wiring --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="punckit",
        description="Corpus curation and evaluation for Persian punctuation restoration.",
    )
    parser.add_argument("--version", action="version", version=f"punckit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curate", help="run the full manifest-driven pipeline")
    p.add_argument("--manifest", required=True, help="manifest JSON path")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the manifest seed")
    p.add_argument(
        "--jobs",
        type=int,
        default=_default_jobs(),
        help=f"worker processes (default from ${JOBS_ENV_VAR} or 1)",
    )
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser("normalize", help="normalize text lines")
    p.add_argument("--in", dest="infile", required=True, help="input lines ('-' = stdin)")
    p.add_argument("--out", default="-", help="output lines ('-' = stdout)")
    p.add_argument("--retain", default="", help="extra retained codepoints, hex ranges")
    p.add_argument(
        "--strip-ascii-letters",
        action="store_true",
        help="drop ASCII letters instead of retaining them",
    )
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("segment", help="segment normalized lines into sentences")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="output sentences JSONL")
    p.add_argument("--source-id", default="corpus")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("filter", help="apply the quality filter to sentences JSONL")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="accepted sentences JSONL")
    p.add_argument("--audit", default=None, help="optional per-sentence audit JSONL")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("dedup", help="drop exact duplicates (canonical SHA-256)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("split", help="seeded train/validation/test split")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--train", type=int, required=True)
    p.add_argument("--validation", type=int, required=True)
    p.add_argument("--test", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-stratify", action="store_true")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("stats", help="corpus punctuation statistics")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="directory for stats.json/stats.txt")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("make-labels", help="convert sentences to word/label JSONL")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--label-mapping", choices=LABEL_MAPPINGS, default="map")
    p.set_defaults(func=cmd_make_labels)

    p = sub.add_parser("evaluate", help="score predictions against gold")
    p.add_argument("--mode", choices=("label", "text"), default="label")
    p.add_argument("--pairs", default=None, help="pairs JSONL (pred/gold per record)")
    p.add_argument("--gold", default=None, help="gold file (lines or labels JSONL)")
    p.add_argument("--pred", default=None, help="prediction file, line-aligned with gold")
    p.add_argument("--out", default=None, help="directory for report.json/report.txt")
    p.add_argument("--label-mapping", choices=LABEL_MAPPINGS, default="map")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("train-baseline", help="train the perceptron restorer")
    p.add_argument("--in", dest="infile", required=True, help="labeled JSONL")
    p.add_argument("--out", required=True, help="model file")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("restore", help="punctuate plain-text lines with a model")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True, help="plain lines ('-' = stdin)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_restore)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PunckitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.code, 1)


if __name__ == "__main__":
    sys.exit(main())
