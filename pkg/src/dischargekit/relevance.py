"""Reference-based overlap metrics: BLEU-4, ROUGE-1/2/L, METEOR.

All metrics tokenize with :func:`dischargekit.textprep.words` (lowercase
alphanumeric runs) and return values in [0, 1]. METEOR matches in two
stages (exact, then Porter-stemmed); no synonym stage is applied.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from collections.abc import Sequence
from functools import lru_cache

from .stemmer import stem as _porter_stem
from .textprep import words

# Stemming dominates document-scale runs; the stemmer is pure, so a cache
# is safe.
stem = lru_cache(maxsize=1 << 16)(_porter_stem)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_matches(candidate: Counter, reference: Counter) -> int:
    return sum(min(count, reference[gram]) for gram, count in candidate.items())


def bleu4(candidate: str, reference: str) -> float:
    """BLEU with 4-gram precisions and brevity penalty.

    Higher-order precisions whose clipped match count is zero are smoothed
    to 1/(total+1); a candidate with no unigram matches scores 0.
    """
    c = words(candidate)
    r = words(reference)
    if not c or not r:
        return 0.0
    precisions = []
    for n in range(1, 5):
        cand_ngrams = _ngrams(c, n)
        total = sum(cand_ngrams.values())
        matched = _clipped_matches(cand_ngrams, _ngrams(r, n))
        if n == 1:
            if matched == 0:
                return 0.0
            precisions.append(matched / total)
        elif matched == 0:
            precisions.append(1.0 / (total + 1.0))
        else:
            precisions.append(matched / total)
    brevity = 1.0 if len(c) >= len(r) else math.exp(1.0 - len(r) / len(c))
    return brevity * math.prod(precisions) ** 0.25


def _overlap_f1(matches: int, n_candidate: int, n_reference: int) -> float:
    if matches == 0 or n_candidate == 0 or n_reference == 0:
        return 0.0
    precision = matches / n_candidate
    recall = matches / n_reference
    return 2.0 * precision * recall / (precision + recall)


def rouge_n(candidate: str, reference: str, n: int) -> float:
    """F1 of clipped n-gram overlap (n = 1 or 2)."""
    if n not in (1, 2):
        raise ValueError(f"rouge_n supports n in {{1, 2}}, got {n}")
    cand_ngrams = _ngrams(words(candidate), n)
    ref_ngrams = _ngrams(words(reference), n)
    matches = _clipped_matches(cand_ngrams, ref_ngrams)
    return _overlap_f1(matches, sum(cand_ngrams.values()), sum(ref_ngrams.values()))


def rouge_1(candidate: str, reference: str) -> float:
    return rouge_n(candidate, reference, 1)


def rouge_2(candidate: str, reference: str) -> float:
    return rouge_n(candidate, reference, 2)


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    # Bit-parallel contour recurrence; memory is one machine word per 64
    # reference tokens, so document-length inputs stay cheap.
    if not a or not b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    masks: dict[str, int] = {}
    for j, y in enumerate(b):
        masks[y] = masks.get(y, 0) | (1 << j)
    row = 0
    for x in a:
        match = masks.get(x)
        if match is None:
            continue
        candidates = row | match
        row = candidates & ~(candidates - ((row << 1) | 1))
    return row.bit_count()


def rouge_l(candidate: str, reference: str) -> float:
    """F1 over the longest common subsequence of word tokens."""
    c = words(candidate)
    r = words(reference)
    return _overlap_f1(_lcs_length(c, r), len(c), len(r))


def _match_stage(
    pairs: list[tuple[int, int]],
    cand: list[tuple[int, str]],
    ref: list[tuple[int, str]],
) -> tuple[list[tuple[int, int]], list[tuple[int, str]], list[tuple[int, str]]]:
    """Greedy matching: each candidate token takes the first unmatched
    reference token with an equal key, in reference order."""
    available: dict[str, deque[int]] = {}
    for ri, rkey in ref:
        available.setdefault(rkey, deque()).append(ri)
    cand_left = []
    taken: set[int] = set()
    for ci, ckey in cand:
        queue = available.get(ckey)
        if queue:
            ri = queue.popleft()
            pairs.append((ci, ri))
            taken.add(ri)
        else:
            cand_left.append((ci, ckey))
    ref_left = [(ri, rkey) for ri, rkey in ref if ri not in taken]
    return pairs, cand_left, ref_left


def _align(c: list[str], r: list[str]) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    cand = list(enumerate(c))
    ref = list(enumerate(r))
    pairs, cand, ref = _match_stage(pairs, cand, ref)
    cand = [(i, stem(w)) for i, w in cand]
    ref = [(i, stem(w)) for i, w in ref]
    pairs, _, _ = _match_stage(pairs, cand, ref)
    return sorted(pairs)


def _chunk_count(pairs: list[tuple[int, int]]) -> int:
    chunks = 0
    prev = None
    for ci, ri in pairs:
        if prev is None or ci != prev[0] + 1 or ri != prev[1] + 1:
            chunks += 1
        prev = (ci, ri)
    return chunks


def meteor(candidate: str, reference: str) -> float:
    """Unigram alignment score with a fragmentation penalty.

    Fmean = 10PR/(R+9P); penalty = 0.5 * (chunks/matches)^3.
    """
    c = words(candidate)
    r = words(reference)
    if not c or not r:
        return 0.0
    pairs = _align(c, r)
    matches = len(pairs)
    if matches == 0:
        return 0.0
    precision = matches / len(c)
    recall = matches / len(r)
    fmean = 10.0 * precision * recall / (recall + 9.0 * precision)
    penalty = 0.5 * (_chunk_count(pairs) / matches) ** 3
    return fmean * (1.0 - penalty)
