"""punckit: corpus curation and evaluation for Persian punctuation restoration."""

__version__ = "0.1.0"

from .errors import PunckitError
from .normalize import (
    PunctuationMark,
    RawDocument,
    TextNormalizer,
    filter_characters,
    normalize,
    normalize_whitespace,
    parse_codepoint_ranges,
    standardize_punctuation,
)
from .segment import (
    ALL_RULES,
    FilterVerdict,
    Sentence,
    check_content,
    check_quality,
    check_structural,
    filter_sentence,
    segment,
    segment_text,
)
from .dedup import (
    DatasetSplit,
    SplitSpec,
    canonical_key,
    canonical_text,
    deduplicate,
    largest_remainder,
    split,
    stratified_sample,
)
from .analytics import (
    CorpusStats,
    StatsAccumulator,
    cooccurrence,
    corpus_stats,
    count_histogram,
    count_marks,
    coverage,
    mark_percentages,
    render_stats,
)
from .labeling import (
    Label,
    LabeledSample,
    PunctuationLabeler,
    extract_labels,
    reconstruct,
    strip_punctuation,
)
from .evaluation import (
    ConfusionCounts,
    EditStats,
    EvalReport,
    align_words,
    evaluate_corpus,
    evaluate_text,
    f1,
    fsm,
    macro_metrics,
    micro_metrics,
    render_report,
    score_labels,
)
from .perceptron import PerceptronRestorer, featurize, train
from .pipeline import Manifest, SourceSpec, curate, iter_documents

__all__ = [
    "ALL_RULES",
    "ConfusionCounts",
    "CorpusStats",
    "DatasetSplit",
    "EditStats",
    "EvalReport",
    "FilterVerdict",
    "Label",
    "LabeledSample",
    "Manifest",
    "PerceptronRestorer",
    "PunckitError",
    "PunctuationLabeler",
    "PunctuationMark",
    "RawDocument",
    "Sentence",
    "SourceSpec",
    "SplitSpec",
    "StatsAccumulator",
    "TextNormalizer",
    "align_words",
    "canonical_key",
    "canonical_text",
    "check_content",
    "check_quality",
    "check_structural",
    "cooccurrence",
    "corpus_stats",
    "count_histogram",
    "count_marks",
    "coverage",
    "curate",
    "deduplicate",
    "evaluate_corpus",
    "evaluate_text",
    "extract_labels",
    "f1",
    "featurize",
    "filter_characters",
    "filter_sentence",
    "fsm",
    "iter_documents",
    "largest_remainder",
    "macro_metrics",
    "mark_percentages",
    "micro_metrics",
    "normalize",
    "normalize_whitespace",
    "parse_codepoint_ranges",
    "reconstruct",
    "render_report",
    "render_stats",
    "score_labels",
    "segment",
    "segment_text",
    "split",
    "standardize_punctuation",
    "stratified_sample",
    "strip_punctuation",
    "train",
    "__version__",
]
