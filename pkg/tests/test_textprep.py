from __future__ import annotations

import string

import pytest
from hypothesis import given, strategies as st

from dischargekit.textprep import (
    TokenizedText,
    count_syllables,
    split_sentences,
    tokenize,
    word_count,
    words,
)


def test_simple_sentence_counts():
    t = tokenize("The cat sat on the mat.")
    assert t.n_sentences == 1
    assert t.n_words == 6
    assert t.n_letters == 17
    assert t.n_syllables == 6


def test_empty_input_all_zero():
    t = tokenize("")
    assert t == TokenizedText(sentences=(), n_sentences=0, n_words=0, n_syllables=0, n_letters=0)


def test_abbreviation_guard_suppresses_split():
    t = tokenize("Dr. Smith left. He returned.")
    assert t.n_sentences == 2
    assert t.sentences[0] == ("dr", "smith", "left")
    assert t.sentences[1] == ("he", "returned")


def test_multiple_terminators_and_tail():
    assert len(split_sentences("Really?! Yes. and a tail without a period")) == 3


def test_exclamation_and_question_split():
    t = tokenize("Stop! Why now? Go.")
    assert t.n_sentences == 3


@pytest.mark.parametrize(
    "word,expected",
    [
        ("cat", 1),
        ("generate", 3),
        ("table", 2),
        ("the", 1),
        ("see", 1),
        ("little", 2),
        ("hospital", 3),
    ],
)
def test_count_syllables_examples(word, expected):
    assert count_syllables(word) == expected


@given(st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=15))
def test_count_syllables_at_least_one(word):
    assert count_syllables(word) >= 1


@pytest.mark.parametrize(
    "text,expected",
    [("a b  c", 3), ("", 0), ("  ", 0), ("one\ntwo\tthree four", 4)],
)
def test_word_count_whitespace_rule(text, expected):
    assert word_count(text) == expected


def test_word_count_large_synthetic():
    text = " ".join(f"w{i}" for i in range(2500))
    assert word_count(text) == 2500


def test_words_strips_punctuation_and_lowercases():
    assert words("Take 2 pills, don't skip!") == ["take", "2", "pills", "don't", "skip"]


@given(
    st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta."]), min_size=0, max_size=20),
    st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta."]), min_size=0, max_size=20),
)
def test_word_counts_add_over_concatenation(a, b):
    left = " ".join(a)
    right = " ".join(b)
    joined = tokenize(left + " " + right)
    assert joined.n_words == tokenize(left).n_words + tokenize(right).n_words


def test_tokenize_is_pure():
    text = "Dr. Smith left. He returned."
    assert tokenize(text) == tokenize(text)


def test_custom_abbreviation_file(tmp_path):
    from dischargekit.textprep import load_abbreviations

    path = tmp_path / "abbrev.txt"
    path.write_text("approx.\nQty.\n", encoding="utf-8")
    abbrevs = load_abbreviations(path)
    assert abbrevs == frozenset({"approx.", "qty."})
    assert tokenize("Qty. ten pills. Take two.", abbreviations=abbrevs).n_sentences == 2
    assert tokenize("Qty. ten pills. Take two.", abbreviations=frozenset()).n_sentences == 3
