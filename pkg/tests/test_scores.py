from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np
import pytest

from dischargekit.corpus import (
    DischargeSummary,
    ExtractedTargets,
    GeneratedCandidate,
    TargetKind,
    generate_synthetic_corpus,
    corpus_targets,
)
from dischargekit.scores import (
    OVERALL_METRICS,
    ScoreError,
    ScoreTable,
    compute_factuality_proxies,
    compute_native_scores,
    load_external_scores,
    merge_tables,
    overall_by_document,
    overall_score,
    read_score_csv,
    synthetic_external_rows,
    write_score_csv,
)

FIXTURE = Path(__file__).parent / "data" / "leaderboard_rows.csv"


def cand(hadm_id="1", model_id="m", target=TargetKind.DI, text="rest at home"):
    return GeneratedCandidate(
        hadm_id=hadm_id,
        model_id=model_id,
        target=target,
        text=text,
        word_count=len(text.split()),
    )


def refs(**kwargs):
    return {
        h: ExtractedTargets(hadm_id=h, bhc=v.get("bhc", ""), di=v.get("di", ""))
        for h, v in kwargs.items()
    }


def test_identity_candidate_scores_one():
    table = compute_native_scores(
        [cand(text="rest at home now")],
        references=refs(**{"1": {"di": "rest at home now"}}),
        metrics=["rouge_1"],
    )
    assert table.get("1", "m", "rouge_1") == 1.0


def test_readability_only_needs_no_references():
    table = compute_native_scores([cand(text="Rest at home. Drink water.")], metrics=["fkgl", "cli", "dcrs"])
    assert not math.isnan(table.get("1", "m", "fkgl"))


def test_reference_metric_without_reference_errors():
    with pytest.raises(ScoreError, match="need references"):
        compute_native_scores([cand()], metrics=["bleu4"])
    with pytest.raises(ScoreError, match="no reference for hadm_id '1'"):
        compute_native_scores([cand()], references={}, metrics=["bleu4"])


def test_full_native_suite_fills_every_cell_on_100_docs():
    summaries, candidates = generate_synthetic_corpus(100, 1, seed=4)
    targets = {t.hadm_id: t for t in corpus_targets(summaries)}
    table = compute_native_scores(candidates, references=targets, target=TargetKind.DI)
    assert table.values.shape == (100, 1, 8)
    assert not np.isnan(table.values).any()
    assert table.metrics == tuple(sorted(["bleu4", "rouge_1", "rouge_2", "rouge_l", "meteor", "fkgl", "dcrs", "cli"]))


def test_factuality_proxies_use_ds_suffix():
    summary = DischargeSummary(hadm_id="1", full_text="x", body_without_targets="rest at home")
    table = compute_factuality_proxies([cand(text="rest at home")], [summary])
    assert table.metrics == ("meteor_ds",)
    assert table.get("1", "m", "meteor_ds") > 0.9


def test_factuality_proxy_zero_overlap():
    summary = DischargeSummary(hadm_id="1", full_text="x", body_without_targets="unrelated words only")
    table = compute_factuality_proxies([cand(text="rest at home")], [summary])
    assert table.get("1", "m", "meteor_ds") == 0.0


def test_factuality_proxy_unresolved_hadm_id():
    with pytest.raises(ScoreError, match="no discharge summary"):
        compute_factuality_proxies([cand()], [])


def test_reference_and_ds_variants_coexist():
    summary = DischargeSummary(hadm_id="1", full_text="x", body_without_targets="stay warm inside")
    native = compute_native_scores(
        [cand(text="rest at home")],
        references=refs(**{"1": {"di": "rest at home"}}),
        metrics=["meteor"],
    )
    proxy = compute_factuality_proxies([cand(text="rest at home")], [summary])
    merged = merge_tables(native, proxy)
    assert "meteor" in merged.metrics and "meteor_ds" in merged.metrics
    assert merged.get("1", "m", "meteor") != merged.get("1", "m", "meteor_ds")


def external_csv(tmp_path, rows, name="ext.csv"):
    path = tmp_path / name
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["hadm_id", "model_id", "target", "metric", "value"])
        writer.writerows(rows)
    return path


def base_table():
    return compute_native_scores(
        [cand(text="rest at home")],
        references=refs(**{"1": {"di": "rest at home"}}),
        metrics=["rouge_1"],
    )


def test_external_scores_merge_and_read_back(tmp_path):
    path = external_csv(tmp_path, [["1", "m", "di", "medcon", "0.4"]])
    merged = load_external_scores(path, base_table())
    assert merged.get("1", "m", "medcon") == 0.4
    assert merged.get("1", "m", "rouge_1") == 1.0


def test_external_collision_with_native_name(tmp_path):
    path = external_csv(tmp_path, [["1", "m", "di", "rouge_1", "0.5"]])
    with pytest.raises(ScoreError, match="collide"):
        load_external_scores(path, base_table())


def test_external_nan_rejected_with_row_number(tmp_path):
    path = external_csv(tmp_path, [["1", "m", "di", "medcon", "nan"]])
    with pytest.raises(ScoreError, match="row 2"):
        load_external_scores(path, base_table())


def test_external_unknown_ids_listed(tmp_path):
    path = external_csv(tmp_path, [["9", "mx", "di", "medcon", "0.1"]])
    with pytest.raises(ScoreError, match="9"):
        load_external_scores(path, base_table())


def test_external_duplicate_cell(tmp_path):
    path = external_csv(
        tmp_path,
        [["1", "m", "di", "medcon", "0.1"], ["1", "m", "di", "medcon", "0.2"]],
    )
    with pytest.raises(ScoreError, match="duplicate cell"):
        load_external_scores(path, base_table())


def test_external_rows_for_other_target_ignored(tmp_path):
    path = external_csv(tmp_path, [["1", "m", "bhc", "medcon", "0.4"]])
    merged = load_external_scores(path, base_table())
    assert "medcon" not in merged.metrics


def test_external_merge_is_order_independent(tmp_path):
    a = external_csv(tmp_path, [["1", "m", "di", "medcon", "0.4"]], name="a.csv")
    b = external_csv(tmp_path, [["1", "m", "di", "bertscore", "0.7"]], name="b.csv")
    t1 = load_external_scores(b, load_external_scores(a, base_table()))
    t2 = load_external_scores(a, load_external_scores(b, base_table()))
    assert t1.equals(t2)


def test_score_csv_roundtrip(tmp_path):
    table = base_table()
    path = tmp_path / "scores.csv"
    write_score_csv(path, table.to_rows())
    rows = read_score_csv(path)
    rebuilt = ScoreTable.from_rows(rows, TargetKind.DI)
    assert rebuilt.equals(table)


def test_overall_score_mean_and_validation():
    components = {m: 0.5 for m in OVERALL_METRICS}
    assert overall_score(components).value == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ScoreError, match="missing"):
        overall_score({m: 0.5 for m in OVERALL_METRICS[:-1]})
    with pytest.raises(ScoreError, match="unexpected"):
        overall_score({**components, "summac": 0.5})


def load_leaderboard_rows():
    with open(FIXTURE, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def test_leaderboard_fixture_shape():
    rows = load_leaderboard_rows()
    assert len(rows) == 18
    assert all(len(r) == 10 for r in rows)


@pytest.mark.parametrize(
    "label,expected",
    [("DES 5", 0.332), ("Mistral-7B-I-v0.2 + A.", 0.307)],
)
def test_overall_score_published_examples(label, expected):
    row = next(r for r in load_leaderboard_rows() if r["row_label"] == label)
    components = {m: float(row[m]) for m in OVERALL_METRICS}
    assert overall_score(components).value == pytest.approx(expected, abs=5e-4)


def test_overall_by_document_requires_all_metrics():
    table = base_table()
    with pytest.raises(ScoreError, match="lacks"):
        overall_by_document(table)


def test_overall_by_document_values():
    rows = [("1", "m", "di", metric, 0.25) for metric in OVERALL_METRICS]
    table = ScoreTable.from_rows(rows, TargetKind.DI)
    assert overall_by_document(table) == {("1", "m"): pytest.approx(0.25)}


def test_synthetic_external_rows_cover_all_candidates():
    summaries, candidates = generate_synthetic_corpus(4, 2, seed=9)
    targets = {t.hadm_id: t for t in corpus_targets(summaries)}
    rows = synthetic_external_rows(candidates, targets, summaries)
    assert len(rows) == len(candidates) * 3
    assert {r[3] for r in rows} == {"bertscore", "medcon", "alignscore"}
    assert all(0.0 <= r[4] <= 1.0 for r in rows)
