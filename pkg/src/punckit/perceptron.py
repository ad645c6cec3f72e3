"""Windowed multiclass averaged perceptron for punctuation restoration.

A deliberately small trainable baseline: per-position classification over
sparse string features from a ±2 word window. It exercises the exact label
schema, data formats, and evaluation path an external model would use, and
its ``restore`` carries a structural guarantee: the output's words are the
input's words — the model can only insert marks, never edit text.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator

from .errors import PunckitError
from .labeling import Label, LabeledSample, as_label, reconstruct
from .normalize import TARGET_MARKS
from .validation import check_text, check_token_lists

#: Fixed class order; prediction ties resolve to the earliest.
CLASS_ORDER = (Label.EMPTY, Label.COMMA, Label.PERIOD, Label.QUESTION, Label.COLON)

#: Bumped whenever the feature template changes shape.
FEATURE_TEMPLATE = "window2+suffix123+position+lenbucket/v1"

MODEL_FORMAT = "punckit-perceptron"
MODEL_FORMAT_VERSION = 1

_BOUNDARY = "<pad>"


def _length_bucket(n: int) -> str:
    if n <= 2:
        return "1-2"
    if n <= 4:
        return "3-4"
    if n <= 7:
        return "5-7"
    return "8+"


def featurize(words: Sequence[str], i: int) -> tuple[str, ...]:
    """Sparse features for position ``i``: the word, its ±1/±2 neighbours
    (boundary sentinels at the edges), suffixes of lengths 1–3, first/last
    position flags, and a word-length bucket."""
    n = len(words)
    if not 0 <= i < n:
        raise PunckitError("INDEX", f"position {i} out of range for {n} words")
    w = words[i]
    feats = [
        "w0=" + w,
        "w-1=" + (words[i - 1] if i >= 1 else _BOUNDARY),
        "w+1=" + (words[i + 1] if i + 1 < n else _BOUNDARY),
        "w-2=" + (words[i - 2] if i >= 2 else _BOUNDARY),
        "w+2=" + (words[i + 2] if i + 2 < n else _BOUNDARY),
        "suf1=" + w[-1:],
        "suf2=" + w[-2:],
        "suf3=" + w[-3:],
        "len=" + _length_bucket(len(w)),
    ]
    if i == 0:
        feats.append("pos=first")
    if i == n - 1:
        feats.append("pos=last")
    return tuple(feats)


def _score(weights: dict[str, float], feats: Sequence[str]) -> float:
    s = 0.0
    for f in feats:
        v = weights.get(f)
        if v is not None:
            s += v
    return s


class PerceptronRestorer(BaseEstimator):
    """Averaged multiclass perceptron over :func:`featurize` features.

    Parameters
    ----------
    epochs : int, default=10
        Full passes over the (shuffled) training samples.
    seed : int, default=0
        Seed for the per-epoch sample shuffle (PCG64).

    Attributes
    ----------
    weights_ : dict[str, dict[str, float]]
        Averaged weights per class name, set by :meth:`fit`.
    """

    def __init__(self, epochs: int = 10, seed: int = 0) -> None:
        self.epochs = epochs
        self.seed = seed

    # -- training ----------------------------------------------------------

    def fit(
        self,
        X: Iterable[Sequence[str]],
        y: Iterable[Sequence[Union[Label, str]]],
    ) -> "PerceptronRestorer":
        """Train on parallel word/label sequences.

        Updates are margin-augmented: a position triggers an update not only
        on a mistake but whenever the gold class fails to beat the best
        other class by at least 1, which keeps the averaged weights from
        flipping zero-margin positions. Averaging uses lazy timestamped
        accumulation, so cost scales with the number of updates rather than
        the feature-space size.
        """
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        X = check_token_lists(X)
        y_list = [[as_label(l) for l in row] for row in y]
        if len(X) != len(y_list):
            raise PunckitError(
                "SHAPE", f"X/y sample count mismatch ({len(X)} vs {len(y_list)})"
            )
        for k, (words, labels) in enumerate(zip(X, y_list)):
            if len(words) != len(labels):
                raise PunckitError(
                    "SHAPE",
                    f"sample {k}: words/labels length mismatch "
                    f"({len(words)} vs {len(labels)})",
                )
        if not X:
            raise PunckitError("NO_DATA", "no training samples")

        w: dict[Label, dict[str, float]] = {c: {} for c in CLASS_ORDER}
        acc: dict[Label, dict[str, float]] = {c: {} for c in CLASS_ORDER}
        stamp: dict[Label, dict[str, int]] = {c: {} for c in CLASS_ORDER}

        def bump(cls: Label, feats: Sequence[str], delta: float, t: int) -> None:
            wc, ac, sc = w[cls], acc[cls], stamp[cls]
            for f in feats:
                cur = wc.get(f, 0.0)
                ac[f] = ac.get(f, 0.0) + cur * (t - sc.get(f, 0))
                sc[f] = t
                wc[f] = cur + delta

        rng = np.random.Generator(np.random.PCG64(self.seed))
        t = 1
        for _ in range(self.epochs):
            for k in rng.permutation(len(X)):
                words, labels = X[int(k)], y_list[int(k)]
                for i in range(len(words)):
                    feats = featurize(words, i)
                    gold = labels[i]
                    gold_score = _score(w[gold], feats)
                    runner, runner_score = None, None
                    for cls in CLASS_ORDER:
                        if cls is gold:
                            continue
                        s = _score(w[cls], feats)
                        if runner_score is None or s > runner_score:
                            runner, runner_score = cls, s
                    if gold_score - runner_score < 1.0:
                        bump(gold, feats, +1.0, t)
                        bump(runner, feats, -1.0, t)
                    t += 1

        averaged: dict[str, dict[str, float]] = {}
        for cls in CLASS_ORDER:
            wc, ac, sc = w[cls], acc[cls], stamp[cls]
            avg = {}
            for f, cur in wc.items():
                total = ac.get(f, 0.0) + cur * (t - sc[f])
                if total != 0.0:
                    avg[f] = total / t
            averaged[cls.name] = avg
        self.weights_ = averaged
        self.n_samples_fit_ = len(X)
        return self

    # -- inference ---------------------------------------------------------

    def _check_fitted(self) -> None:
        if not hasattr(self, "weights_"):
            raise PunckitError("NO_DATA", "model is not fitted; call fit() or load()")

    def predict(self, X: Iterable[Sequence[str]]) -> list[list[Label]]:
        """Per-position argmax labels for each word sequence."""
        self._check_fitted()
        X = check_token_lists(X)
        by_class = [(c, self.weights_[c.name]) for c in CLASS_ORDER]
        out: list[list[Label]] = []
        for words in X:
            labels: list[Label] = []
            for i in range(len(words)):
                feats = featurize(words, i)
                best, best_score = CLASS_ORDER[0], None
                for cls, wc in by_class:
                    s = _score(wc, feats)
                    if best_score is None or s > best_score:
                        best, best_score = cls, s
                labels.append(best)
            out.append(labels)
        return out

    def restore(self, plain_text: str) -> str:
        """Insert punctuation into mark-free text.

        The output's word sequence is exactly the input's (whitespace
        normalized); the model cannot add, drop, or change words.
        """
        check_text(plain_text, "plain_text")
        if any(c in TARGET_MARKS for c in plain_text):
            raise PunckitError(
                "ALREADY_PUNCTUATED", "restore() input must contain no target marks"
            )
        words = plain_text.split()
        if not words:
            return ""
        labels = self.predict([words])[0]
        return reconstruct(LabeledSample(words=words, labels=labels))

    # -- persistence -------------------------------------------------------

    def save(self, path: Union[str, Path]) -> None:
        """Serialize to a single self-describing JSON file (lossless)."""
        self._check_fitted()
        doc = {
            "format": MODEL_FORMAT,
            "format_version": MODEL_FORMAT_VERSION,
            "feature_template": FEATURE_TEMPLATE,
            "feature_config_hash": hashlib.sha256(
                FEATURE_TEMPLATE.encode("utf-8")
            ).hexdigest(),
            "classes": [c.name for c in CLASS_ORDER],
            "epochs": self.epochs,
            "seed": self.seed,
            "weights": {
                name: dict(sorted(table.items()))
                for name, table in self.weights_.items()
            },
        }
        Path(path).write_text(
            json.dumps(doc, ensure_ascii=False, sort_keys=True), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PerceptronRestorer":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if doc.get("format") != MODEL_FORMAT:
            raise ValueError(f"not a {MODEL_FORMAT} file: {path}")
        if doc.get("format_version") != MODEL_FORMAT_VERSION:
            raise ValueError(
                f"unsupported model format version {doc.get('format_version')}"
            )
        if doc.get("feature_template") != FEATURE_TEMPLATE:
            raise ValueError(
                "model was built with a different feature template: "
                f"{doc.get('feature_template')!r}"
            )
        expected = [c.name for c in CLASS_ORDER]
        if doc.get("classes") != expected:
            raise ValueError(f"model classes {doc.get('classes')} != {expected}")
        model = cls(epochs=doc.get("epochs", 10), seed=doc.get("seed", 0))
        model.weights_ = {
            name: {f: float(v) for f, v in table.items()}
            for name, table in doc["weights"].items()
        }
        return model


def train(
    samples: Sequence[LabeledSample], epochs: int = 10, seed: int = 0
) -> PerceptronRestorer:
    """Convenience wrapper: fit a restorer from labeled samples."""
    if not samples:
        raise PunckitError("NO_DATA", "no training samples")
    X = [list(s.words) for s in samples]
    y = [list(s.labels) for s in samples]
    return PerceptronRestorer(epochs=epochs, seed=seed).fit(X, y)
