"""Score tables and the eight-metric overall score.

A :class:`ScoreTable` is a dense (document x model x metric) store for one
target kind, with NaN marking missing cells. Native metrics are computed
here; neural or licensed metrics (bertscore, alignscore, medcon, summac)
are ingested from external CSV files and merged into the same table.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import relevance
from .corpus import DischargeSummary, ExtractedTargets, GeneratedCandidate, TargetKind
from .readability import cli as cli_score
from .readability import dcrs as dcrs_score
from .readability import fkgl as fkgl_score
from .relevance import stem
from .textprep import tokenize, words


class ScoreError(ValueError):
    """Inconsistent score data or requests."""


REFERENCE_METRICS = ("bleu4", "rouge_1", "rouge_2", "rouge_l", "meteor")
READABILITY_METRICS = ("fkgl", "dcrs", "cli")
NATIVE_METRICS = REFERENCE_METRICS + READABILITY_METRICS
DS_SUFFIX = "_ds"
# Names external files may never use: every native metric and its
# whole-document-reference variant.
RESERVED_METRIC_NAMES = frozenset(NATIVE_METRICS) | {
    m + DS_SUFFIX for m in REFERENCE_METRICS
}

OVERALL_METRICS = (
    "bleu4",
    "rouge_1",
    "rouge_2",
    "rouge_l",
    "bertscore",
    "meteor",
    "alignscore",
    "medcon",
)

_REFERENCE_FUNCS = {
    "bleu4": relevance.bleu4,
    "rouge_1": relevance.rouge_1,
    "rouge_2": relevance.rouge_2,
    "rouge_l": relevance.rouge_l,
    "meteor": relevance.meteor,
}


@dataclass(frozen=True)
class ScoreTable:
    """Dense per-target score store; treat instances as immutable."""

    target: TargetKind
    documents: tuple[str, ...]
    models: tuple[str, ...]
    metrics: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (len(self.documents), len(self.models), len(self.metrics))
        if self.values.shape != expected:
            raise ScoreError(f"values shape {self.values.shape} != {expected}")
        if tuple(self.metrics) != tuple(sorted(self.metrics)):
            raise ScoreError("metrics must be sorted")

    @classmethod
    def empty(
        cls,
        target: TargetKind,
        documents: Sequence[str],
        models: Sequence[str],
        metrics: Sequence[str],
    ) -> "ScoreTable":
        metrics = tuple(sorted(metrics))
        values = np.full((len(documents), len(models), len(metrics)), np.nan)
        return cls(target, tuple(documents), tuple(models), metrics, values)

    def _index(self, doc: str, model: str, metric: str) -> tuple[int, int, int]:
        try:
            return (
                self.documents.index(doc),
                self.models.index(model),
                self.metrics.index(metric),
            )
        except ValueError:
            raise ScoreError(
                f"unknown cell (hadm_id={doc!r}, model_id={model!r}, metric={metric!r})"
            ) from None

    def get(self, doc: str, model: str, metric: str) -> float:
        return float(self.values[self._index(doc, model, metric)])

    def has(self, doc: str, model: str, metric: str) -> bool:
        return not math.isnan(self.get(doc, model, metric))

    def to_rows(self) -> list[tuple[str, str, str, str, float]]:
        """Non-missing cells as (hadm_id, model_id, target, metric, value)."""
        rows = []
        for i, doc in enumerate(self.documents):
            for j, model in enumerate(self.models):
                for k, metric in enumerate(self.metrics):
                    v = self.values[i, j, k]
                    if not math.isnan(v):
                        rows.append((doc, model, self.target.value, metric, float(v)))
        return rows

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[tuple[str, str, str, str, float]],
        target: TargetKind,
        documents: Sequence[str] | None = None,
        models: Sequence[str] | None = None,
    ) -> "ScoreTable":
        """Build a table from long-form rows, keeping only the given target.

        Document and model universes default to first-seen order in the
        rows; when given explicitly, rows outside them are an error.
        """
        kept = [r for r in rows if r[2] == target.value]
        docs = list(documents) if documents is not None else []
        mods = list(models) if models is not None else []
        if documents is None:
            for r in kept:
                if r[0] not in docs:
                    docs.append(r[0])
        if models is None:
            for r in kept:
                if r[1] not in mods:
                    mods.append(r[1])
        metrics = sorted({r[3] for r in kept})
        table = cls.empty(target, docs, mods, metrics)
        unknown = sorted(
            {r[0] for r in kept if r[0] not in set(docs)}
            | {r[1] for r in kept if r[1] not in set(mods)}
        )
        if unknown:
            raise ScoreError(f"rows reference unknown hadm_id/model_id: {', '.join(unknown)}")
        for doc, model, _, metric, value in kept:
            idx = table._index(doc, model, metric)
            if not math.isnan(table.values[idx]):
                raise ScoreError(
                    f"duplicate cell (hadm_id={doc!r}, model_id={model!r}, metric={metric!r})"
                )
            table.values[idx] = value
        return table

    def equals(self, other: "ScoreTable") -> bool:
        return (
            self.target == other.target
            and self.documents == other.documents
            and self.models == other.models
            and self.metrics == other.metrics
            and np.array_equal(self.values, other.values, equal_nan=True)
        )


def _infer_target(candidates: Sequence[GeneratedCandidate], target: TargetKind | None) -> TargetKind:
    kinds = {c.target for c in candidates}
    if target is not None:
        return target
    if len(kinds) == 1:
        return next(iter(kinds))
    raise ScoreError("candidates span multiple target kinds; pass target explicitly")


def _reference_for(
    references: Mapping[str, ExtractedTargets] | Mapping[str, str],
    hadm_id: str,
    target: TargetKind,
) -> str:
    if hadm_id not in references:
        raise ScoreError(f"no reference for hadm_id {hadm_id!r}")
    ref = references[hadm_id]
    if isinstance(ref, ExtractedTargets):
        return ref.bhc if target is TargetKind.BHC else ref.di
    return ref


def compute_native_scores(
    candidates: Sequence[GeneratedCandidate],
    references: Mapping[str, ExtractedTargets] | Mapping[str, str] | None = None,
    metrics: Sequence[str] | None = None,
    target: TargetKind | None = None,
) -> ScoreTable:
    """Score candidates with the native metric suite.

    Reference-based metrics need a reference per hadm_id; readability
    metrics are reference-free and may be requested alone.
    """
    if metrics is None:
        metrics = NATIVE_METRICS if references is not None else READABILITY_METRICS
    unknown = [m for m in metrics if m not in NATIVE_METRICS]
    if unknown:
        raise ScoreError(f"unknown native metrics: {', '.join(unknown)}")
    target = _infer_target(candidates, target)
    pool = [c for c in candidates if c.target is target]
    docs: list[str] = []
    mods: list[str] = []
    for c in pool:
        if c.hadm_id not in docs:
            docs.append(c.hadm_id)
        if c.model_id not in mods:
            mods.append(c.model_id)
    table = ScoreTable.empty(target, docs, mods, metrics)
    ref_metrics = [m for m in metrics if m in REFERENCE_METRICS]
    read_metrics = [m for m in metrics if m in READABILITY_METRICS]
    if ref_metrics and references is None:
        raise ScoreError(
            f"metrics {', '.join(ref_metrics)} need references but none were given"
        )
    for c in pool:
        if ref_metrics:
            ref = _reference_for(references, c.hadm_id, target)
            for m in ref_metrics:
                table.values[table._index(c.hadm_id, c.model_id, m)] = _REFERENCE_FUNCS[m](c.text, ref)
        if read_metrics:
            tok = tokenize(c.text)
            computed = {
                "fkgl": lambda t=tok: fkgl_score(t),
                "dcrs": lambda t=tok: dcrs_score(t),
                "cli": lambda t=tok: cli_score(t),
            }
            for m in read_metrics:
                table.values[table._index(c.hadm_id, c.model_id, m)] = computed[m]()
    return table


def compute_factuality_proxies(
    candidates: Sequence[GeneratedCandidate],
    summaries: Sequence[DischargeSummary],
    metrics: Sequence[str] = ("meteor",),
    target: TargetKind | None = None,
) -> ScoreTable:
    """Score candidates against the whole document body (targets removed).

    Metric names gain a ``_ds`` suffix so they never shadow the same metric
    computed against the gold target.
    """
    bad = [m for m in metrics if m not in REFERENCE_METRICS]
    if bad:
        raise ScoreError(f"metrics not usable against the document body: {', '.join(bad)}")
    target = _infer_target(candidates, target)
    pool = [c for c in candidates if c.target is target]
    bodies = {s.hadm_id: s.body_without_targets for s in summaries}
    docs: list[str] = []
    mods: list[str] = []
    for c in pool:
        if c.hadm_id not in docs:
            docs.append(c.hadm_id)
        if c.model_id not in mods:
            mods.append(c.model_id)
    table = ScoreTable.empty(target, docs, mods, [m + DS_SUFFIX for m in metrics])
    for c in pool:
        if c.hadm_id not in bodies:
            raise ScoreError(f"no discharge summary for hadm_id {c.hadm_id!r}")
        body = bodies[c.hadm_id]
        for m in metrics:
            table.values[table._index(c.hadm_id, c.model_id, m + DS_SUFFIX)] = (
                _REFERENCE_FUNCS[m](c.text, body)
            )
    return table


def merge_tables(base: ScoreTable, extra: ScoreTable) -> ScoreTable:
    """Union of two tables over the same target/documents/models."""
    if base.target != extra.target:
        raise ScoreError("cannot merge tables with different targets")
    if base.documents != extra.documents or base.models != extra.models:
        raise ScoreError("cannot merge tables with different document/model sets")
    metrics = sorted(set(base.metrics) | set(extra.metrics))
    merged = ScoreTable.empty(base.target, base.documents, base.models, metrics)
    for src in (base, extra):
        for doc, model, _, metric, value in src.to_rows():
            idx = merged._index(doc, model, metric)
            if not math.isnan(merged.values[idx]):
                raise ScoreError(
                    f"duplicate cell (hadm_id={doc!r}, model_id={model!r}, metric={metric!r})"
                )
            merged.values[idx] = value
    return merged


EXTERNAL_CSV_HEADER = ("hadm_id", "model_id", "target", "metric", "value")


def read_score_csv(path) -> list[tuple[str, str, str, str, float]]:
    """Read a long-form score CSV (hadm_id,model_id,target,metric,value)."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != EXTERNAL_CSV_HEADER:
            raise ScoreError(
                f"{path}: expected header {','.join(EXTERNAL_CSV_HEADER)}"
            )
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ScoreError(f"{path}: row {rowno}: expected 5 fields, got {len(row)}")
            hadm_id, model_id, target, metric, raw = row
            TargetKind.parse(target)
            try:
                value = float(raw)
            except ValueError:
                raise ScoreError(f"{path}: row {rowno}: value {raw!r} is not a number") from None
            if not math.isfinite(value):
                raise ScoreError(f"{path}: row {rowno}: value {raw!r} is not finite")
            rows.append((hadm_id, model_id, target, metric, value))
    return rows


def write_score_csv(path, rows: Iterable[tuple[str, str, str, str, float]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(EXTERNAL_CSV_HEADER)
        for hadm_id, model_id, target, metric, value in rows:
            writer.writerow([hadm_id, model_id, target, metric, f"{value:.10g}"])


def load_external_scores(path, table: ScoreTable) -> ScoreTable:
    """Merge an external score CSV into a table, returning a new table.

    External metric names must not shadow native ones; every row must
    address a known (document, model) pair of the table; cells may be
    assigned once. Rows for other target kinds are ignored.
    """
    rows = read_score_csv(path)
    kept = [r for r in rows if r[2] == table.target.value]
    offenders = sorted(
        {r[0] for r in kept if r[0] not in set(table.documents)}
        | {r[1] for r in kept if r[1] not in set(table.models)}
    )
    if offenders:
        raise ScoreError(f"{path}: unknown hadm_id/model_id: {', '.join(offenders)}")
    collisions = sorted({r[3] for r in kept if r[3] in RESERVED_METRIC_NAMES})
    if collisions:
        raise ScoreError(
            f"{path}: external metric names collide with native metrics: {', '.join(collisions)}"
        )
    metrics = sorted(set(table.metrics) | {r[3] for r in kept})
    merged = ScoreTable.empty(table.target, table.documents, table.models, metrics)
    merged.values[:, :, [metrics.index(m) for m in table.metrics]] = table.values
    for doc, model, _, metric, value in kept:
        idx = merged._index(doc, model, metric)
        if not math.isnan(merged.values[idx]):
            raise ScoreError(
                f"{path}: duplicate cell (hadm_id={doc!r}, model_id={model!r}, metric={metric!r})"
            )
        merged.values[idx] = value
    return merged


@dataclass(frozen=True)
class OverallScore:
    value: float
    components: dict[str, float]


def overall_score(components: Mapping[str, float]) -> OverallScore:
    """Arithmetic mean of exactly the eight leaderboard metrics."""
    missing = [m for m in OVERALL_METRICS if m not in components]
    extra = [m for m in components if m not in OVERALL_METRICS]
    if missing:
        raise ScoreError(f"missing overall-score metrics: {', '.join(missing)}")
    if extra:
        raise ScoreError(f"unexpected overall-score metrics: {', '.join(sorted(extra))}")
    ordered = {m: float(components[m]) for m in OVERALL_METRICS}
    return OverallScore(value=sum(ordered.values()) / len(ordered), components=ordered)


def _stemmed_unigram_f1(candidate: str, reference: str) -> float:
    ca = Counter(stem(w) for w in words(candidate))
    cb = Counter(stem(w) for w in words(reference))
    matches = sum(min(v, cb[g]) for g, v in ca.items())
    total_a = sum(ca.values())
    total_b = sum(cb.values())
    if matches == 0 or total_a == 0 or total_b == 0:
        return 0.0
    p = matches / total_a
    r = matches / total_b
    return 2.0 * p * r / (p + r)


def _stemmed_jaccard(candidate: str, reference: str) -> float:
    sa = {stem(w) for w in words(candidate)}
    sb = {stem(w) for w in words(reference)}
    union = sa | sb
    return len(sa & sb) / len(union) if union else 0.0


def synthetic_external_rows(
    candidates: Sequence[GeneratedCandidate],
    references: Mapping[str, ExtractedTargets],
    summaries: Sequence[DischargeSummary],
) -> list[tuple[str, str, str, str, float]]:
    """Deterministic stand-ins for the externally computed metrics.

    Intended for synthetic corpora only, so end-to-end runs can exercise
    the eight-metric overall score without neural scorers: bertscore is a
    stemmed unigram F1 against the reference, medcon a stemmed vocabulary
    Jaccard against the reference, alignscore a bigram F1 against the
    whole document body.
    """
    bodies = {s.hadm_id: s.body_without_targets for s in summaries}
    rows = []
    for c in candidates:
        ref = _reference_for(references, c.hadm_id, c.target)
        if c.hadm_id not in bodies:
            raise ScoreError(f"no discharge summary for hadm_id {c.hadm_id!r}")
        rows.append(
            (c.hadm_id, c.model_id, c.target.value, "bertscore", _stemmed_unigram_f1(c.text, ref))
        )
        rows.append(
            (c.hadm_id, c.model_id, c.target.value, "medcon", _stemmed_jaccard(c.text, ref))
        )
        rows.append(
            (
                c.hadm_id,
                c.model_id,
                c.target.value,
                "alignscore",
                relevance.rouge_2(c.text, bodies[c.hadm_id]),
            )
        )
    return rows


def overall_by_document(table: ScoreTable) -> dict[tuple[str, str], float]:
    """Per (document, model) overall score from a table with all 8 metrics."""
    missing_metrics = [m for m in OVERALL_METRICS if m not in table.metrics]
    if missing_metrics:
        raise ScoreError(f"table lacks overall-score metrics: {', '.join(missing_metrics)}")
    out: dict[tuple[str, str], float] = {}
    for doc in table.documents:
        for model in table.models:
            components = {}
            for m in OVERALL_METRICS:
                v = table.get(doc, model, m)
                if math.isnan(v):
                    raise ScoreError(
                        f"missing cell (hadm_id={doc!r}, model_id={model!r}, metric={m!r})"
                    )
                components[m] = v
            out[(doc, model)] = overall_score(components).value
    return out
