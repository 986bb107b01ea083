"""Command-line pipeline: extract, score, select, reorder, evaluate, correlate, simulate.

Every subcommand is deterministic given its inputs and flags, works purely
on local files, and writes a manifest (command, config hash, input digests)
next to its outputs. Exit codes: 0 success, 1 user or data error, 2
internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import traceback
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, analysis, corpus, des, readability, relevance, reorder, scores
from .corpus import TargetKind
from .textprep import tokenize

USER_ERRORS = (ValueError, OSError, json.JSONDecodeError)


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _config_hash(args: argparse.Namespace) -> str:
    payload = {k: str(v) for k, v in sorted(vars(args).items()) if k != "func"}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def _write_manifest(out_path: Path, command: str, args: argparse.Namespace, inputs: list) -> None:
    manifest = {
        "command": command,
        "version": __version__,
        "config_hash": _config_hash(args),
        "inputs": {str(p): _sha256(p) for p in inputs},
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if out_path.is_dir():
        target = out_path / "manifest.json"
    else:
        target = out_path.with_name(out_path.name + ".manifest.json")
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_target(value: str) -> TargetKind:
    return TargetKind.parse(value)


def _read_submission(path) -> list[tuple[str, str]]:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != ("hadm_id", "text"):
            raise corpus.CorpusError(f"{path}: expected header hadm_id,text")
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise corpus.CorpusError(f"{path}: malformed submission row: {row!r}")
            rows.append((row[0], row[1]))
    return rows


def _write_submission(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["hadm_id", "text"])
        for hadm_id, text in rows:
            writer.writerow([hadm_id, text])


def _read_overall_csv(path) -> dict[TargetKind, dict[tuple[str, str], float]]:
    out: dict[TargetKind, dict[tuple[str, str], float]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = ("hadm_id", "model_id", "target", "value")
        if header is None or tuple(h.strip() for h in header) != expected:
            raise scores.ScoreError(f"{path}: expected header {','.join(expected)}")
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise scores.ScoreError(f"{path}: row {rowno}: expected 4 fields")
            target = TargetKind.parse(row[2])
            try:
                value = float(row[3])
            except ValueError:
                raise scores.ScoreError(f"{path}: row {rowno}: bad value {row[3]!r}") from None
            if not math.isfinite(value):
                raise scores.ScoreError(f"{path}: row {rowno}: value is not finite")
            out.setdefault(target, {})[(row[0], row[1])] = value
    return out


def _load_score_rows(paths) -> list[tuple[str, str, str, str, float]]:
    rows = []
    for path in paths:
        rows.extend(scores.read_score_csv(path))
    return rows


# --- subcommands --------------------------------------------------------------


def cmd_extract(args) -> int:
    headers = corpus.load_known_headers(args.headers) if args.headers else None
    summaries = corpus.load_corpus(args.corpus, known_headers=headers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = corpus.corpus_targets(summaries, known_headers=headers)
    corpus.write_targets(out_dir / "targets.jsonl", targets)
    with open(out_dir / "bodies.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for s in summaries:
            fh.write(json.dumps({"hadm_id": s.hadm_id, "body": s.body_without_targets}))
            fh.write("\n")
    _write_manifest(out_dir, "extract", args, [args.corpus])
    print(f"extracted {len(summaries)} documents -> {out_dir}", file=sys.stderr)
    return 0


def _load_bodies(path) -> dict[str, str]:
    bodies: dict[str, str] = {}
    for lineno, record in corpus._parse_jsonl(path):
        hadm_id = record.get("hadm_id")
        body = record.get("body")
        if not isinstance(hadm_id, str) or not isinstance(body, str):
            raise corpus.CorpusError(f"{path}: line {lineno}: expected hadm_id and body strings")
        bodies[hadm_id] = body
    return bodies


def cmd_score(args) -> int:
    candidates = corpus.load_candidates(args.candidates)
    metrics = args.metrics.split(",") if args.metrics else None
    references = corpus.load_targets(args.references) if args.references else None
    inputs = [args.candidates]
    all_rows: list[tuple[str, str, str, str, float]] = []
    targets_present = sorted({c.target for c in candidates}, key=lambda t: t.value)
    for target in targets_present:
        if args.against_ds:
            bodies = _load_bodies(args.against_ds)
            summaries = [
                corpus.DischargeSummary(hadm_id=k, full_text=v, body_without_targets=v)
                for k, v in bodies.items()
            ]
            table = scores.compute_factuality_proxies(
                candidates,
                summaries,
                metrics=tuple(metrics) if metrics else ("meteor",),
                target=target,
            )
        else:
            table = scores.compute_native_scores(
                candidates, references=references, metrics=metrics, target=target
            )
        for path in args.external:
            table = scores.load_external_scores(path, table)
        all_rows.extend(table.to_rows())
    if args.against_ds:
        inputs.append(args.against_ds)
    if args.references:
        inputs.append(args.references)
    inputs.extend(args.external)
    scores.write_score_csv(args.out, all_rows)
    _write_manifest(Path(args.out), "score", args, inputs)
    print(f"wrote {len(all_rows)} score cells -> {args.out}", file=sys.stderr)
    return 0


def _resolve_config(args, table, target):
    """Map --config to either a DesConfig or a LengthSelectConfig."""
    name = args.config
    if name == "des5":
        if not args.ranking:
            raise des.DesConfigError("des5 needs --ranking model_a,model_b,...")
        return des.LengthSelectConfig(model_ranking=tuple(args.ranking.split(",")))
    if name == "des4":
        if not args.overall:
            raise des.DesConfigError("des4 needs --overall with per-document overall scores")
        overall = _read_overall_csv(args.overall).get(target)
        if not overall:
            raise des.DesConfigError(f"--overall has no rows for target {target.value}")
        return des.derive_des4_weights(table, overall)
    if name in des.PRESETS:
        return des.PRESETS[name]
    if Path(name).exists():
        return des.load_des_config(name)
    raise des.DesConfigError(
        f"unknown config {name!r}: expected one of {', '.join(des.PRESET_NAMES)} or a JSON path"
    )


def cmd_select(args) -> int:
    target = _parse_target(args.target)
    candidates = corpus.load_candidates(args.candidates)
    pool = [c for c in candidates if c.target is target]
    if not pool:
        raise corpus.CorpusError(f"no candidates for target {target.value}")
    docs: list[str] = []
    models: list[str] = []
    for c in pool:
        if c.hadm_id not in docs:
            docs.append(c.hadm_id)
        if c.model_id not in models:
            models.append(c.model_id)
    rows = _load_score_rows(args.scores)
    table = scores.ScoreTable.from_rows(rows, target, documents=docs, models=models)
    config = _resolve_config(args, table, target)
    if isinstance(config, des.LengthSelectConfig):
        result = des.select_by_length(pool, config, target=target)
    else:
        result = des.select_experts(
            table, config, target, candidates=pool, strict=not args.lenient
        )
        if config.name == "des4":
            derived_path = Path(args.out).with_name(Path(args.out).name + ".des4.json")
            with open(derived_path, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(des.des_config_to_json(config), fh, indent=2)
                fh.write("\n")
    missing_text = [s.hadm_id for s in result.selections if s.text is None]
    if missing_text:
        raise corpus.CorpusError(
            f"no candidate text for selected models on hadm_ids: {', '.join(missing_text[:5])}"
        )
    _write_submission(args.out, [(s.hadm_id, s.text) for s in result.selections])
    tally_path = Path(args.out).with_name(Path(args.out).name + ".tally.json")
    with open(tally_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(result.tally, fh, indent=2, sort_keys=True)
        fh.write("\n")
    inputs = [args.candidates, *args.scores]
    if args.overall:
        inputs.append(args.overall)
    _write_manifest(Path(args.out), "select", args, inputs)
    print(f"selected {len(result.selections)} texts -> {args.out}", file=sys.stderr)
    return 0


def cmd_reorder(args) -> int:
    target = _parse_target(args.target)
    headers = corpus.load_known_headers(args.headers) if args.headers else None
    summaries = corpus.load_corpus(args.corpus, known_headers=headers)
    docs = [reorder.split_sections(s, known_headers=headers) for s in summaries]
    if args.scorer == "external":
        if not args.section_scores:
            raise reorder.SectionScoreError("--scorer external needs --section-scores")
        scorer = reorder.ExternalSectionScores.from_csv(args.section_scores)
    else:
        scorer = reorder.rouge1_scorer

    def references() -> dict[str, str]:
        if not args.reference_targets:
            raise reorder.SectionScoreError(f"--mode {args.mode} needs --reference-targets")
        targets = corpus.load_targets(args.reference_targets)
        return {
            hadm_id: corpus.reference_text(targets, hadm_id, target) for hadm_id in targets
        }

    if args.apply_ranking:
        ranking = reorder.load_header_ranking(args.apply_ranking)
        ordered = [reorder.apply_header_ranking(d, ranking) for d in docs]
    elif args.mode == "global":
        ranking = reorder.global_header_ranking(docs, references(), scorer)
        ranking_path = Path(args.out).with_name(Path(args.out).name + ".ranking.json")
        reorder.write_header_ranking(ranking_path, ranking)
        ordered = [reorder.apply_header_ranking(d, ranking) for d in docs]
    else:
        refs = references()
        ordered = []
        for d in docs:
            if d.hadm_id not in refs:
                raise reorder.SectionScoreError(f"no reference text for hadm_id {d.hadm_id!r}")
            ordered.append(reorder.rank_sections(d, refs[d.hadm_id], scorer))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for doc in ordered:
            fh.write(
                json.dumps({"hadm_id": doc.hadm_id, "text": reorder.truncate_words(doc, args.budget)})
            )
            fh.write("\n")
    inputs = [args.corpus]
    for extra in (args.reference_targets, args.section_scores, args.apply_ranking):
        if extra:
            inputs.append(extra)
    _write_manifest(Path(args.out), "reorder", args, inputs)
    print(f"reordered {len(ordered)} documents -> {args.out}", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    target = _parse_target(args.target)
    submission = _read_submission(args.submission)
    targets = corpus.load_targets(args.references)
    missing = [hadm_id for hadm_id, _ in submission if hadm_id not in targets]
    if missing:
        raise corpus.CorpusError(
            f"submission hadm_ids missing from references: {', '.join(missing[:5])}"
        )
    candidates = [
        corpus.GeneratedCandidate(
            hadm_id=hadm_id,
            model_id=args.model_id,
            target=target,
            text=text,
            word_count=len(text.split()),
        )
        for hadm_id, text in submission
    ]
    table = scores.compute_native_scores(
        candidates, references=targets, metrics=scores.REFERENCE_METRICS, target=target
    )
    for path in args.external:
        table = scores.load_external_scores(path, table)
    overall = scores.overall_by_document(table)
    report_rows: list[tuple[str, str, float]] = []
    for doc in table.documents:
        for metric in table.metrics:
            value = table.get(doc, args.model_id, metric)
            if not math.isnan(value):
                report_rows.append((doc, metric, value))
        report_rows.append((doc, "overall", overall[(doc, args.model_id)]))
    metric_names = list(table.metrics) + ["overall"]
    means = {
        metric: sum(v for _, m, v in report_rows if m == metric)
        / max(sum(1 for _, m, v in report_rows if m == metric), 1)
        for metric in metric_names
    }
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["hadm_id", "metric", "value"])
        for doc, metric, value in report_rows:
            writer.writerow([doc, metric, f"{value:.10g}"])
        for metric in metric_names:
            writer.writerow(["MEAN", metric, f"{means[metric]:.10g}"])
    width = max(len(m) for m in metric_names)
    print(f"{'metric'.ljust(width)}  corpus mean")
    for metric in metric_names:
        print(f"{metric.ljust(width)}  {means[metric]:.4f}")
    _write_manifest(Path(args.out), "evaluate", args, [args.submission, args.references, *args.external])
    return 0


def cmd_correlate(args) -> int:
    rows = _load_score_rows(args.scores)
    overalls = _read_overall_csv(args.overall)
    if not overalls:
        raise scores.ScoreError(f"{args.overall}: no overall rows")
    metrics = tuple(args.metrics.split(",")) if args.metrics else None
    tables = {}
    for target in sorted(overalls, key=lambda t: t.value):
        tables[target] = scores.ScoreTable.from_rows(rows, target)
    out_rows: list[tuple[str, str, float]] = []
    if args.mode == "pooled":
        matrix = analysis.correlation_matrix(
            list(tables.values()),
            [{"overall_pooled": overalls[t]} for t in tables],
            metrics=metrics,
        )
        out_rows.extend(matrix.to_rows())
    else:
        for target, table in tables.items():
            matrix = analysis.correlation_matrix(
                table, {f"overall_{target.value}": overalls[target]}, metrics=metrics
            )
            out_rows.extend(matrix.to_rows())
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["metric", "overall_variant", "r"])
        for metric, variant, r in sorted(out_rows):
            writer.writerow([metric, variant, f"{r:.10g}"])
    _write_manifest(Path(args.out), "correlate", args, [*args.scores, args.overall])
    print(f"wrote {len(out_rows)} correlations -> {args.out}", file=sys.stderr)
    return 0


def _simulate_des_input_table(candidates, summaries, target):
    """Pre-calculated score table whose columns match the preset vocabulary."""
    bodies = {s.hadm_id: s.body_without_targets for s in summaries}
    rows = []
    for c in candidates:
        if c.target is not target:
            continue
        body = bodies[c.hadm_id]
        tok = tokenize(c.text)
        rows.extend(
            [
                (c.hadm_id, c.model_id, target.value, "meteor", relevance.meteor(c.text, body)),
                (c.hadm_id, c.model_id, target.value, "medcon", scores._stemmed_jaccard(c.text, body)),
                (c.hadm_id, c.model_id, target.value, "alignscore", relevance.rouge_2(c.text, body)),
                (c.hadm_id, c.model_id, target.value, "fkgl", readability.fkgl(tok)),
                (c.hadm_id, c.model_id, target.value, "dcrs", readability.dcrs(tok)),
                (c.hadm_id, c.model_id, target.value, "cli", readability.cli(tok)),
            ]
        )
    docs: list[str] = []
    models: list[str] = []
    for c in candidates:
        if c.target is not target:
            continue
        if c.hadm_id not in docs:
            docs.append(c.hadm_id)
        if c.model_id not in models:
            models.append(c.model_id)
    return scores.ScoreTable.from_rows(rows, target, documents=docs, models=models)


def cmd_simulate(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    summaries, candidates = corpus.generate_synthetic_corpus(args.docs, args.models, args.seed)
    targets_map = {t.hadm_id: t for t in corpus.corpus_targets(summaries)}
    corpus.write_corpus(out_dir / "corpus.jsonl", summaries)
    corpus.write_candidates(out_dir / "candidates.jsonl", candidates)
    leaderboard: list[tuple[str, float]] = []
    per_target_overall: dict[TargetKind, dict[tuple[str, str], float]] = {}
    model_ids: list[str] = []
    for c in candidates:
        if c.model_id not in model_ids:
            model_ids.append(c.model_id)
    for target in (TargetKind.BHC, TargetKind.DI):
        native = scores.compute_native_scores(
            candidates, references=targets_map, metrics=scores.REFERENCE_METRICS, target=target
        )
        proxy_rows = [
            r
            for r in scores.synthetic_external_rows(candidates, targets_map, summaries)
            if r[2] == target.value
        ]
        proxies = scores.ScoreTable.from_rows(
            proxy_rows, target, documents=native.documents, models=native.models
        )
        merged = scores.merge_tables(native, proxies)
        per_target_overall[target] = scores.overall_by_document(merged)
    for model in model_ids:
        means = []
        for target, overall in per_target_overall.items():
            docs = sorted({doc for doc, _ in overall})
            means.append(sum(overall[(doc, model)] for doc in docs) / len(docs))
        leaderboard.append((f"model:{model}", sum(means) / len(means)))

    def strategy_mean(select_fn) -> float:
        means = []
        for target, overall in per_target_overall.items():
            result = select_fn(target)
            chosen = result.by_document()
            docs = [s.hadm_id for s in result.selections]
            means.append(sum(overall[(doc, chosen[doc].model_id)] for doc in docs) / len(docs))
        return sum(means) / len(means)

    pool_by_target = {
        t: [c for c in candidates if c.target is t] for t in (TargetKind.BHC, TargetKind.DI)
    }
    if args.config == "oracle":
        def run(target):
            overall = per_target_overall[target]
            rows = [
                (doc, model, target.value, "overall", value)
                for (doc, model), value in overall.items()
            ]
            docs: list[str] = []
            for c in pool_by_target[target]:
                if c.hadm_id not in docs:
                    docs.append(c.hadm_id)
            table = scores.ScoreTable.from_rows(rows, target, documents=docs, models=model_ids)
            config = des.DesConfig("oracle", criteria=(des.Criterion("overall", 1.0),))
            return des.select_experts(table, config, target, candidates=pool_by_target[target])
    elif args.config == "des5":
        ranking = [
            name.removeprefix("model:")
            for name, _ in sorted(leaderboard, key=lambda kv: -kv[1])
        ]
        def run(target):
            return des.select_by_length(
                pool_by_target[target], des.LengthSelectConfig(model_ranking=tuple(ranking)), target
            )
    else:
        if args.config in des.PRESETS:
            config = des.PRESETS[args.config]
        elif Path(args.config).exists():
            config = des.load_des_config(args.config)
        else:
            raise des.DesConfigError(
                f"unknown config {args.config!r}: expected oracle, des1..des3, des5, or a JSON path"
            )
        def run(target):
            table = _simulate_des_input_table(pool_by_target[target], summaries, target)
            return des.select_experts(table, config, target, candidates=pool_by_target[target])

    leaderboard.append((f"des:{args.config}", strategy_mean(run)))
    leaderboard.sort(key=lambda kv: -kv[1])
    with open(out_dir / "leaderboard.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["strategy", "mean_overall"])
        for name, value in leaderboard:
            writer.writerow([name, f"{value:.10g}"])
    width = max(len(name) for name, _ in leaderboard)
    print(f"{'strategy'.ljust(width)}  mean overall")
    for name, value in leaderboard:
        print(f"{name.ljust(width)}  {value:.4f}")
    _write_manifest(out_dir, "simulate", args, [])
    return 0


# --- parser -------------------------------------------------------------------


def _add_threads(parser) -> None:
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="parallelism cap; results never depend on it (default 1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dischargekit",
        description="Deterministic evaluation and expert selection for generated discharge-summary sections.",
    )
    parser.add_argument("--version", action="version", version=f"dischargekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract BHC/DI targets from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--headers", help="custom known-header list file")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score", help="score candidates with the native metric suite")
    p.add_argument("--candidates", required=True)
    p.add_argument("--references", help="targets.jsonl with gold BHC/DI texts")
    p.add_argument("--against-ds", help="bodies.jsonl; score against the whole document body")
    p.add_argument("--metrics", help="comma-separated metric list")
    p.add_argument("--external", action="append", default=[], help="external score CSV (repeatable)")
    p.add_argument("--out", required=True)
    _add_threads(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("select", help="run an expert-selection strategy")
    p.add_argument("--scores", action="append", default=[], required=True, help="score CSV (repeatable)")
    p.add_argument("--candidates", required=True)
    p.add_argument("--config", required=True, help="preset name (des1..des5) or JSON path")
    p.add_argument("--target", required=True, choices=["bhc", "di"])
    p.add_argument("--ranking", help="comma-separated model ranking (des5)")
    p.add_argument("--overall", help="per-document overall CSV (des4)")
    p.add_argument("--lenient", action="store_true", help="drop criteria with missing cells")
    p.add_argument("--out", required=True, help="submission CSV path")
    _add_threads(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("reorder", help="split, rank, and truncate document sections")
    p.add_argument("--corpus", required=True)
    p.add_argument("--reference-targets", help="targets.jsonl used to score section relevance")
    p.add_argument("--target", default="di", choices=["bhc", "di"])
    p.add_argument("--scorer", default="rouge1", choices=["rouge1", "external"])
    p.add_argument("--section-scores", help="external per-section score CSV")
    p.add_argument("--mode", default="global", choices=["global", "per-doc"])
    p.add_argument("--apply-ranking", help="apply an existing header-ranking JSON")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--headers", help="custom known-header list file")
    p.add_argument("--out", required=True, help="output JSONL path")
    p.set_defaults(func=cmd_reorder)

    p = sub.add_parser("evaluate", help="score a submission and report the overall score")
    p.add_argument("--submission", required=True, help="CSV with hadm_id,text")
    p.add_argument("--references", required=True, help="targets.jsonl")
    p.add_argument("--target", required=True, choices=["bhc", "di"])
    p.add_argument("--external", action="append", default=[], help="external score CSV (repeatable)")
    p.add_argument("--model-id", default="submission")
    p.add_argument("--out", required=True, help="report CSV path")
    _add_threads(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("correlate", help="correlate score columns with overall scores")
    p.add_argument("--scores", action="append", default=[], required=True)
    p.add_argument("--overall", required=True, help="CSV with hadm_id,model_id,target,value")
    p.add_argument("--mode", default="pooled", choices=["pooled", "per-target"])
    p.add_argument("--metrics", help="comma-separated metric subset")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("simulate", help="synthetic end-to-end demo with a leaderboard")
    p.add_argument("--docs", type=int, default=50)
    p.add_argument("--models", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default="oracle", help="oracle, des1..des3, des5, or a JSON path")
    p.add_argument("--out", required=True, help="output directory")
    _add_threads(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
