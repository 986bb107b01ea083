from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from dischargekit.readability import (
    DegenerateTextError,
    cli,
    dcrs,
    default_familiar_words,
    fkgl,
    is_familiar,
    readability_scores,
)
from dischargekit.textprep import TokenizedText, tokenize

EASY = "The cat sat on the mat."


def counts(n_sent, words_per_sent, syllables, letters):
    sentences = tuple(tuple(f"w{i}" for i in range(words_per_sent)) for _ in range(n_sent))
    return TokenizedText(
        sentences=sentences,
        n_sentences=n_sent,
        n_words=n_sent * words_per_sent,
        n_syllables=syllables,
        n_letters=letters,
    )


def test_fkgl_fixture():
    assert fkgl(tokenize(EASY)) == pytest.approx(-1.45, abs=1e-3)


def test_fkgl_single_word():
    assert fkgl(tokenize("cat.")) == pytest.approx(0.39 + 11.8 - 15.59, abs=1e-9)


def test_fkgl_needs_words_and_sentences():
    with pytest.raises(DegenerateTextError):
        fkgl(tokenize(""))


def test_cli_fixture():
    assert cli(tokenize(EASY)) == pytest.approx(-4.07, abs=1e-2)


def test_cli_exact_value():
    t = counts(1, 100, syllables=100, letters=100)
    # L = 100 letters per 100 words, S = 1 sentence per 100 words.
    assert cli(t) == pytest.approx(0.0588 * 100 - 0.296 * 1 - 15.8, abs=1e-9)


def test_dcrs_all_familiar_fixture():
    assert dcrs(tokenize(EASY)) == pytest.approx(0.2976, abs=1e-4)


def test_dcrs_all_difficult():
    # 10 unfamiliar words, one sentence.
    text = "Zyxwv " * 9 + "zyxwv."
    value = dcrs(tokenize(text), familiar_words=frozenset({"the"}))
    assert value == pytest.approx(0.1579 * 100 + 0.0496 * 10 + 3.6365, abs=1e-9)


def test_dcrs_threshold_is_exclusive():
    # Exactly 1 difficult word in 20 = 5.0%: no adjustment constant.
    familiar = frozenset(f"w{i}" for i in range(19))
    sentences = (tuple(f"w{i}" for i in range(19)) + ("zzzyx",),)
    t = TokenizedText(sentences=sentences, n_sentences=1, n_words=20, n_syllables=20, n_letters=60)
    assert dcrs(t, familiar) == pytest.approx(0.1579 * 5.0 + 0.0496 * 20, abs=1e-9)


def test_dcrs_empty_familiar_list_rejected():
    with pytest.raises(ValueError):
        dcrs(tokenize(EASY), familiar_words=frozenset())


def test_inflection_stripping():
    familiar = frozenset({"walk", "box"})
    for word in ("walk", "walks", "walked", "walking", "boxes"):
        assert is_familiar(word, familiar)
    assert not is_familiar("walker", familiar)


def test_shipped_list_is_large_and_lowercase():
    familiar = default_familiar_words()
    assert len(familiar) > 2000
    assert all(w == w.lower() for w in familiar)


def test_custom_familiar_word_file(tmp_path):
    from dischargekit.readability import load_familiar_words

    path = tmp_path / "familiar.txt"
    path.write_text("The\ncat\n\nmat\n", encoding="utf-8")
    loaded = load_familiar_words(path)
    assert loaded == frozenset({"the", "cat", "mat"})


@pytest.mark.parametrize("text", [EASY, "Stop! Why now? Go home soon.", "One two three. Four five six seven."])
def test_duplication_invariance(text):
    base = readability_scores(tokenize(text))
    doubled = readability_scores(tokenize(text + " " + text))
    assert doubled.fkgl == pytest.approx(base.fkgl, abs=1e-9)
    assert doubled.dcrs == pytest.approx(base.dcrs, abs=1e-9)
    assert doubled.cli == pytest.approx(base.cli, abs=1e-9)


@given(
    n_sent=st.integers(1, 8),
    wps=st.integers(1, 12),
    extra_syllables=st.integers(1, 30),
    extra_letters=st.integers(1, 60),
)
def test_fkgl_and_cli_monotone_in_complexity(n_sent, wps, extra_syllables, extra_letters):
    n_words = n_sent * wps
    base = counts(n_sent, wps, syllables=n_words, letters=3 * n_words)
    harder = counts(n_sent, wps, syllables=n_words + extra_syllables, letters=3 * n_words + extra_letters)
    assert fkgl(harder) > fkgl(base)
    assert cli(harder) > cli(base)
