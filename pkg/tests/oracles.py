"""Independent naive reference implementations for cross-checking.

Nothing here imports the package under test; every function is a separate,
deliberately unoptimized coding of the same contracts, so agreement between
the two is meaningful.
"""

from __future__ import annotations

import hashlib
import unicodedata
from fractions import Fraction

MARKS = {".", "،", "؟", ":", "!", "؛"}
TERMINALS = {".", "!", "؟"}
DIGITS = set("0123456789" + "".join(chr(c) for c in range(0x0660, 0x066A)) + "".join(chr(c) for c in range(0x06F0, 0x06FA)))
ARABIC_BLOCKS = ((0x0600, 0x06FF), (0x0750, 0x077F), (0xFB50, 0xFDFF), (0xFE70, 0xFEFF))
ZWNJ = "‌"
BULLETS = {"•", "-", "*", "▪"}


def is_letter(ch: str) -> bool:
    return unicodedata.category(ch).startswith("L")


def is_arabic_block(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in ARABIC_BLOCKS)


def is_word_forming(ch: str) -> bool:
    if ch == ZWNJ:
        return True
    cat = unicodedata.category(ch)
    return cat.startswith("L") or cat.startswith("M") or cat == "Nd"


# --- segmentation ----------------------------------------------------------


def naive_segment(text: str) -> list[str]:
    pieces: list[str] = []
    buf: list[str] = []
    for i, ch in enumerate(text):
        buf.append(ch)
        if ch in TERMINALS:
            if (
                ch == "."
                and 0 < i < len(text) - 1
                and text[i - 1] in DIGITS
                and text[i + 1] in DIGITS
            ):
                continue
            piece = "".join(buf).strip()
            if piece:
                pieces.append(piece)
            buf = []
    tail = "".join(buf).strip()
    if tail:
        pieces.append(tail)
    return pieces


# --- filter rules, one naive function each ---------------------------------


def naive_min_len(s: str) -> bool:
    return len(s) < 10


def naive_min_punct(s: str) -> bool:
    n = 0
    for ch in s:
        if ch in MARKS:
            n += 1
    return n < 2


def naive_termination(s: str) -> bool:
    return len(s) == 0 or s[-1] not in TERMINALS


def naive_url(s: str) -> bool:
    if "www." in s:
        return True
    at = s.find("://")
    while at != -1:
        j = at
        while j > 0 and (s[j - 1].isascii() and (s[j - 1].isalnum() or s[j - 1] in "+.-")):
            j -= 1
        # a scheme exists if any position in the run before "://" is a letter
        if any(c.isascii() and c.isalpha() for c in s[j:at]):
            return True
        at = s.find("://", at + 1)
    return False


def naive_email(s: str) -> bool:
    # local@domain.x with local/domain free of whitespace and "@", and the
    # char right after the matched dot being none of whitespace/"."/"@"
    for tok in s.split():
        for k in range(1, len(tok)):
            if tok[k] != "@" or tok[k - 1] == "@":
                continue
            rest = tok[k + 1 :]
            for d in range(1, len(rest) - 1):
                if rest[d] == "." and "@" not in rest[:d] and rest[d + 1] not in ".@":
                    return True
    return False


def naive_handle(s: str) -> bool:
    return any(tok.startswith("@") for tok in s.split())


def naive_emoji(s: str) -> bool:
    for ch in s:
        cp = ord(ch)
        if 0x2600 <= cp <= 0x27BF or cp == 0xFE0F or 0x1F300 <= cp <= 0x1FAFF:
            return True
    return False


def naive_symbol_ratio(s: str) -> bool:
    non_ws = 0
    symbols = 0
    for ch in s:
        if ch.isspace():
            continue
        non_ws += 1
        if not is_word_forming(ch) and ch not in MARKS:
            symbols += 1
    return non_ws > 0 and Fraction(symbols, non_ws) > Fraction(20, 100)


def naive_mixed_lang(s: str) -> bool:
    letters = 0
    foreign = 0
    for ch in s:
        if is_letter(ch):
            letters += 1
            if not is_arabic_block(ch):
                foreign += 1
    return letters > 0 and Fraction(foreign, letters) > Fraction(30, 100)


def naive_repeat_punct(s: str) -> bool:
    for a, b in zip(s, s[1:]):
        if a == b and a in MARKS:
            return True
    return False


def naive_enum(s: str) -> bool:
    if not s:
        return False
    if s[0] in BULLETS:
        return True
    k = 0
    while k < len(s) and s[k] in DIGITS:
        k += 1
    return k > 0 and k + 1 < len(s) and s[k] in ".)-:" and s[k + 1] == " "


def naive_fragment(s: str) -> bool:
    toks = s.split()
    if not toks:
        return False
    single = 0
    for tok in toks:
        if len([c for c in tok if c not in MARKS]) == 1:
            single += 1
    return Fraction(single, len(toks)) > Fraction(50, 100)


#: (rule name, predicate) in the registry order.
RULE_ORACLES = (
    ("MIN_LEN", naive_min_len),
    ("MIN_PUNCT", naive_min_punct),
    ("TERMINATION", naive_termination),
    ("URL", naive_url),
    ("EMAIL", naive_email),
    ("HANDLE", naive_handle),
    ("EMOJI", naive_emoji),
    ("SYMBOL_RATIO", naive_symbol_ratio),
    ("MIXED_LANG", naive_mixed_lang),
    ("REPEAT_PUNCT", naive_repeat_punct),
    ("ENUM", naive_enum),
    ("FRAGMENT", naive_fragment),
)


def naive_verdict(s: str) -> tuple[bool, list[str]]:
    failed = [name for name, pred in RULE_ORACLES if pred(s)]
    return (not failed, failed)


# --- dedup, sampling --------------------------------------------------------


def naive_canonical(text: str) -> str:
    return " ".join(text.lower().split())


def sha256_canonical_hex(text: str) -> str:
    return hashlib.sha256(naive_canonical(text).encode("utf-8")).hexdigest()


def naive_dedup_indices(texts: list[str]) -> list[int]:
    """First-wins dedup over canonical strings (a map, not digests)."""
    seen: dict[str, int] = {}
    keep: list[int] = []
    for i, t in enumerate(texts):
        c = naive_canonical(t)
        if c not in seen:
            seen[c] = i
            keep.append(i)
    return keep


def naive_largest_remainder(total: int, weights: list[int]) -> list[int]:
    W = sum(weights)
    exact = [Fraction(total * w, W) for w in weights]
    base = [int(e) for e in exact]
    order = sorted(range(len(weights)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[: total - sum(base)]:
        base[i] += 1
    return base


# --- analytics ---------------------------------------------------------------


def naive_mark_counts(texts: list[str]) -> dict[str, int]:
    counts = {m: 0 for m in sorted(MARKS)}
    for t in texts:
        for ch in t:
            if ch in MARKS:
                counts[ch] += 1
    return counts


def naive_coverage_counts(texts: list[str]) -> dict[str, int]:
    counts = {m: 0 for m in sorted(MARKS)}
    for t in texts:
        for m in MARKS:
            if m in t:
                counts[m] += 1
    return counts


def naive_pair_counts(texts: list[str]) -> dict[frozenset, int]:
    marks = sorted(MARKS)
    counts: dict[frozenset, int] = {}
    for i in range(len(marks)):
        for j in range(i + 1, len(marks)):
            counts[frozenset((marks[i], marks[j]))] = 0
    for t in texts:
        present = [m for m in marks if m in t]
        for i in range(len(present)):
            for j in range(i + 1, len(present)):
                counts[frozenset((present[i], present[j]))] += 1
    return counts


def naive_histogram(texts: list[str]) -> dict[str, int]:
    hist = {b: 0 for b in ("0", "1", "2", "3", "4", "5", "6+")}
    for t in texts:
        n = sum(1 for ch in t if ch in MARKS)
        hist["6+" if n >= 6 else str(n)] += 1
    return hist


def naive_percent(count: int, total: int) -> float:
    """Half-up 2-decimal percent via pure integer arithmetic."""
    if total == 0:
        return 0.0
    scaled = Fraction(count * 100 * 100, total)  # percent in hundredths
    floor = scaled.numerator // scaled.denominator
    rem = scaled - floor
    hundredths = floor + (1 if rem >= Fraction(1, 2) else 0)
    return hundredths / 100


# --- evaluation ---------------------------------------------------------------


def naive_edit_distance(a: list[str], b: list[str]) -> int:
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            cur[j] = min(
                prev[j - 1] + (a[i - 1] != b[j - 1]),
                prev[j] + 1,
                cur[j - 1] + 1,
            )
        prev = cur
    return prev[len(b)]


def naive_confusion(
    pairs: list[tuple[list[str], list[str]]], classes: tuple[str, ...]
) -> dict[str, dict[str, int]]:
    """Triple-loop tp/fp/fn per class over (pred, gold) label-name pairs."""
    table = {c: {"tp": 0, "fp": 0, "fn": 0} for c in classes}
    for pred, gold in pairs:
        for c in classes:
            for p, g in zip(pred, gold):
                if p == c and g == c:
                    table[c]["tp"] += 1
                if p == c and g != c:
                    table[c]["fp"] += 1
                if g == c and p != c:
                    table[c]["fn"] += 1
    return table
