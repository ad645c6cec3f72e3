import random

import pytest
from sklearn.base import clone

from punckit.errors import PunckitError
from punckit.labeling import (
    LABEL_MARKS,
    LabeledSample,
    Label,
    PunctuationLabeler,
    as_label,
    extract_labels,
    mark_label_mapping,
    reconstruct,
    strip_punctuation,
)

from conftest import make_canonical_sentence, make_sentence

E, C, P, Q, K = Label.EMPTY, Label.COMMA, Label.PERIOD, Label.QUESTION, Label.COLON


def test_label_order_is_tie_break_order():
    assert [l.name for l in Label] == ["EMPTY", "COMMA", "PERIOD", "QUESTION", "COLON"]


def test_basic_labeling():
    s = extract_labels("سلام، حالت چطور است؟")
    assert s.words == ["سلام", "حالت", "چطور", "است"]
    assert s.labels == [C, E, E, Q]


def test_exclamation_maps_to_period_by_default():
    s = extract_labels("عجب روزی!")
    assert s.words == ["عجب", "روزی"]
    assert s.labels == [E, P]


def test_semicolon_maps_to_comma_by_default():
    s = extract_labels("اول؛ دوم.")
    assert s.labels == [C, P]


def test_drop_mapping_sends_both_to_empty():
    s = extract_labels("عجب روزی! آری؛ خوب.", mapping="drop")
    assert s.words == ["عجب", "روزی", "آری", "خوب"]
    assert s.labels == [E, E, E, P]


def test_colon_and_comma():
    s = extract_labels("موارد: الف، ب.")
    assert s.words == ["موارد", "الف", "ب"]
    assert s.labels == [K, C, P]


def test_detached_mark_token_attaches_to_previous_word():
    s = extract_labels("کلمه ، بعد.")
    assert s.words == ["کلمه", "بعد"]
    assert s.labels == [C, P]


def test_first_non_empty_mark_wins_rest_discarded():
    s = extract_labels("خوب.، بد؟")
    assert s.words == ["خوب", "بد"]
    assert s.labels == [P, Q]
    # once a slot is filled, later detached marks are ignored
    s = extract_labels("خوب. ، بد؟")
    assert s.labels == [P, Q]


def test_empty_mapping_marks_do_not_close_the_slot():
    # in drop mode "!" maps to EMPTY and a later real mark may still attach
    s = extract_labels("خوب! ، بد.", mapping="drop")
    assert s.labels == [C, P]


def test_leading_marks_without_word_are_discarded():
    s = extract_labels("، سلام تو.")
    assert s.words == ["سلام", "تو"]
    assert s.labels == [E, P]


def test_interior_marks_are_deleted_from_the_word():
    s = extract_labels("قیمت 3.5 شد.")
    assert s.words == ["قیمت", "35", "شد"]
    assert s.labels == [E, E, P]


def test_mark_only_sentence_yields_no_words():
    s = extract_labels("... ؟؟")
    assert s.words == [] and s.labels == []


def test_empty_input_raises():
    for bad in ("", "   "):
        with pytest.raises(PunckitError) as e:
            extract_labels(bad)
        assert e.value.code == "EMPTY_INPUT"


def test_mapping_validation():
    with pytest.raises(ValueError):
        extract_labels("سلام.", mapping="nope")
    m = mark_label_mapping("map")
    assert m["!"] is P and m["؛"] is C
    d = mark_label_mapping("drop")
    assert d["!"] is E and d["؛"] is E
    assert d["،"] is C


def test_strip_punctuation_equals_joined_words():
    rng = random.Random(61)
    for _ in range(500):
        s = make_sentence(rng)
        sample = extract_labels(s)
        assert strip_punctuation(s) == " ".join(sample.words)
    assert strip_punctuation("... ؟") == ""


def test_reconstruct_inverts_labeling_on_canonical_sentences():
    rng = random.Random(67)
    for _ in range(500):
        s = make_canonical_sentence(rng)
        assert reconstruct(extract_labels(s)) == s


def test_reconstruct_marks():
    out = reconstruct(LabeledSample(["الف", "ب", "ج"], [K, C, P]))
    assert out == "الف: ب، ج."
    assert LABEL_MARKS[Q] == "؟"
    # wire names work too
    assert reconstruct(LabeledSample(["الف"], ["QUESTION"])) == "الف؟"


def test_reconstruct_shape_error():
    with pytest.raises(PunckitError) as e:
        reconstruct(LabeledSample(["الف"], [P, P]))
    assert e.value.code == "SHAPE"


def test_record_round_trip():
    sample = extract_labels("سلام، حالت چطور است؟")
    rec = sample.to_record(source_id="news")
    assert rec == {
        "words": ["سلام", "حالت", "چطور", "است"],
        "labels": ["COMMA", "EMPTY", "EMPTY", "QUESTION"],
        "source_id": "news",
    }
    back = LabeledSample.from_record(rec)
    assert back.words == sample.words and back.labels == sample.labels
    assert as_label("COLON") is K
    with pytest.raises(ValueError):
        as_label("BOGUS")


def test_labeler_estimator():
    est = PunctuationLabeler()
    assert est.get_params() == {"mapping": "map"}
    twin = clone(est)
    X = ["سلام، حالت چطور است؟", "عجب روزی!"]
    samples = est.fit(X).transform(X)
    assert [s.labels for s in samples] == [[C, E, E, Q], [E, P]]
    assert twin.fit_transform(X)[0].words == samples[0].words
    assert est.inverse_transform(samples) == [
        "سلام، حالت چطور است؟",
        "عجب روزی.",  # "!" has no class of its own
    ]
    with pytest.raises(ValueError):
        PunctuationLabeler(mapping="bad").fit(["سلام."])
