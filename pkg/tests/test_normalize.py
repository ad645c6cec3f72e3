import random

import pytest
from sklearn.base import clone

from punckit.normalize import (
    TARGET_MARKS,
    ZWNJ,
    PunctuationMark,
    RawDocument,
    TextNormalizer,
    filter_characters,
    normalize,
    normalize_whitespace,
    parse_codepoint_ranges,
    standardize_punctuation,
)


def test_standardize_maps_the_three_ascii_marks():
    assert standardize_punctuation("سلام, خوبی?") == "سلام، خوبی؟"
    assert standardize_punctuation("الف;ب") == "الف؛ب"
    assert standardize_punctuation("a,b;c?") == "a،b؛c؟"


def test_standardize_is_total_and_length_preserving():
    rng = random.Random(11)
    soup = "ابج ,;?.!:،؟؛xyz09‌🙂\n"
    for _ in range(200):
        s = "".join(rng.choice(soup) for _ in range(rng.randint(0, 40)))
        out = standardize_punctuation(s)
        assert len(out) == len(s)
        # untouched everywhere except the three mapped codepoints
        for a, b in zip(s, out):
            if a in ",;?":
                assert b == {",": "،", ";": "؛", "?": "؟"}[a]
            else:
                assert b == a


def test_filter_drops_emoji():
    assert normalize("متن 🙂 تست.") == "متن تست."


def test_filter_inserts_space_only_between_word_characters():
    # quotes glued to letters on both sides -> space keeps the words apart
    assert normalize("کتاب«خوب»است.") == "کتاب خوب است."
    # bracket adjacent to a space or a mark -> plain removal, no new space
    assert normalize("متن (تست).") == "متن تست."


def test_ascii_letter_flag():
    s = "واژه GDP مهم است."
    assert normalize(s, keep_ascii_letters=True) == s
    assert normalize(s, keep_ascii_letters=False) == "واژه مهم است."


def test_all_three_digit_families_survive():
    s = "سال ۱۴۰۲ و ٢٣ و 45."
    assert normalize(s) == s


def test_zwnj_is_always_retained():
    s = "می‌روم و نمی‌دانم."
    assert normalize(s) == s
    assert normalize(s, keep_ascii_letters=False) == s


def test_extra_retained_characters():
    s = "قیمت €25 است."
    assert normalize(s) == "قیمت 25 است."
    assert normalize(s, extra_retained=("€",)) == s
    assert normalize(s, extra_retained=parse_codepoint_ranges("20AC")) == s


def test_parse_codepoint_ranges():
    chars = parse_codepoint_ranges("0041-0043,20AC")
    assert chars == ("A", "B", "C", "€")
    assert parse_codepoint_ranges("") == ()
    with pytest.raises(ValueError):
        parse_codepoint_ranges("zz")
    with pytest.raises(ValueError):
        parse_codepoint_ranges("0043-0041")


def test_whitespace_collapse():
    assert normalize_whitespace("  الف\t ب   ج\n") == "الف ب ج"
    assert normalize_whitespace("") == ""
    assert normalize("\tالف   ب ج.") == "الف ب ج."


def test_arabic_block_symbols_are_removed():
    # ★ U+066D (Arabic five-pointed star) lives inside the Arabic block but
    # is not a letter or combining mark, so it must go.
    assert normalize("الف ٭ ب.") == "الف ب."


def test_tatweel_and_diacritics_are_kept():
    s = "كتـاب مَدرسة."  # tatweel U+0640 (Lm) and fatha U+064E (Mn)
    assert normalize(s) == s


def test_normalize_is_idempotent_on_random_soup():
    rng = random.Random(23)
    soup = "ابپتث ابc XY ,;?.!:،؟؛ «»()🙂💡‌ \t\n09۱٢ @#€_~"
    for _ in range(1000):
        s = "".join(rng.choice(soup) for _ in range(rng.randint(0, 80)))
        once = normalize(s)
        assert normalize(once) == once
        # composition order is standardize -> filter -> collapse
        assert once == normalize_whitespace(
            filter_characters(standardize_punctuation(s))
        )


def test_target_marks_constant():
    assert TARGET_MARKS == frozenset(".!:،؟؛")
    assert PunctuationMark.PERSIAN_COMMA.char == "،"
    assert ZWNJ == "‌"


def test_raw_document_validation():
    doc = RawDocument("news", "متن.")
    assert (doc.source_id, doc.text) == ("news", "متن.")
    with pytest.raises(ValueError):
        RawDocument("", "متن.")
    with pytest.raises(TypeError):
        RawDocument("news", None)


def test_rejects_non_string_input():
    with pytest.raises(TypeError):
        normalize(None)
    with pytest.raises(TypeError):
        standardize_punctuation(42)


def test_transformer_roundtrip_and_clone():
    est = TextNormalizer(keep_ascii_letters=False, extra_retained=("€",))
    params = est.get_params()
    assert params["keep_ascii_letters"] is False
    assert params["extra_retained"] == ("€",)
    twin = clone(est)
    X = ["سلام,  دنیا?", "متن 🙂 Abc تست."]
    assert est.fit(X) is est
    assert est.transform(X) == twin.fit_transform(X)
    assert TextNormalizer().transform(["سلام,  دنیا?"]) == ["سلام، دنیا؟"]
    with pytest.raises(TypeError):
        TextNormalizer().transform("یک رشته تنها")
