"""Deterministic English tokenization: sentences, words, syllables, letters.

Two word definitions coexist on purpose:

* metric words (:func:`words`, :func:`tokenize`) are maximal alphanumeric or
  apostrophe runs, lowercased -- the substrate for readability formulas and
  n-gram metrics;
* whitespace words (:func:`word_count`) are plain ``str.split`` tokens -- the
  definition used by length-window selection and word-budget truncation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

_WORD_RE = re.compile(r"[a-z0-9']+")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_TOKEN_BEFORE_DOT_RE = re.compile(r"[A-Za-z'.]+$")


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset[str]:
    """Abbreviations whose trailing period never ends a sentence."""
    text = resources.files("dischargekit.data").joinpath("abbreviations.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


def load_abbreviations(path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip().lower() for line in fh if line.strip())


@dataclass(frozen=True)
class TokenizedText:
    """Sentence/word/syllable/letter counts for one text."""

    sentences: tuple[tuple[str, ...], ...]
    n_sentences: int
    n_words: int
    n_syllables: int
    n_letters: int


def count_syllables(word: str) -> int:
    """Heuristic syllable count for a lowercase word, always >= 1.

    Counts vowel-letter runs (aeiouy), subtracting one for a silent final
    "e" except when the word ends in "le" after a consonant or the count
    would drop to zero.
    """
    count = len(_VOWEL_GROUP_RE.findall(word))
    if word.endswith("e"):
        keeps_final_e = (
            word.endswith("le") and len(word) >= 3 and word[-3] not in "aeiouy"
        )
        if not keeps_final_e and count > 1:
            count -= 1
    return max(count, 1)


def word_count(text: str) -> int:
    """Whitespace-token count."""
    return len(text.split())


def words(text: str) -> list[str]:
    """Flat list of lowercase metric words."""
    return _WORD_RE.findall(text.lower())


def _is_abbreviation(text: str, dot_index: int, abbreviations: frozenset[str]) -> bool:
    match = _TOKEN_BEFORE_DOT_RE.search(text, 0, dot_index)
    if not match:
        return False
    return (match.group(0) + ".").lower() in abbreviations


def split_sentences(text: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split on ., ! or ? followed by whitespace or end of text.

    A single period directly after a guarded abbreviation does not end the
    sentence. Trailing text without terminal punctuation is its own sentence.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in ".!?":
            j = i + 1
            while j < n and text[j] in ".!?":
                j += 1
            at_boundary = j >= n or text[j].isspace()
            single_dot = text[i] == "." and j - i == 1
            if at_boundary and not (single_dot and _is_abbreviation(text, i, abbreviations)):
                sentences.append(text[start:j])
                start = j
            i = j
        else:
            i += 1
    tail = text[start:]
    if tail.strip():
        sentences.append(tail)
    return [s.strip() for s in sentences if s.strip()]


def tokenize(text: str, abbreviations: frozenset[str] | None = None) -> TokenizedText:
    """Tokenize into sentences of metric words and count syllables/letters.

    Sentences that contain no words (stray punctuation) are dropped, so
    empty input yields all-zero counts.
    """
    sentence_words: list[tuple[str, ...]] = []
    for sentence in split_sentences(text, abbreviations):
        tokens = tuple(_WORD_RE.findall(sentence.lower()))
        if tokens:
            sentence_words.append(tokens)
    all_words = [w for sent in sentence_words for w in sent]
    return TokenizedText(
        sentences=tuple(sentence_words),
        n_sentences=len(sentence_words),
        n_words=len(all_words),
        n_syllables=sum(count_syllables(w) for w in all_words),
        n_letters=sum(1 for w in all_words for ch in w if ch.isalpha()),
    )
