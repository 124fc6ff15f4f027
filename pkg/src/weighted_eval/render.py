"""Text, JSON and CSV renderings of reports.

JSON and CSV carry full float precision; text rounds scores to 4 decimals and
percentages to 1 decimal.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from typing import Optional

from .dataset_stats import DatasetStats
from .report import (
    ClassificationReport,
    ComparisonReport,
    SchemeSummary,
    WeightTable,
    summarize,
)

FORMATS = ("text", "json", "csv")
SCORE_DECIMALS = 4


def fmt_score(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.{SCORE_DECIMALS}f}"


def fmt_p(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3g}"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = []
    for i, row in enumerate([header, *rows]):
        cells = [str(c).ljust(w) if j == 0 else str(c).rjust(w) for j, (c, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return lines


# -- classification reports ---------------------------------------------------


def report_to_dict(report: ClassificationReport, scale: float = 1.0) -> dict:
    return {
        "model_id": report.model_id,
        "run_id": report.run_id,
        "n_samples": report.n_samples,
        "per_class": [
            {
                "class": r.label,
                "support": r.support,
                "tp": r.tp,
                "fp": r.fp,
                "fn": r.fn,
                "precision": r.precision * scale,
                "recall": r.recall * scale,
                "f_beta": r.f_beta * scale,
                "zero_division": r.zero_division,
                "weighted": r.weighted,
            }
            for r in report.rows
        ],
        "aggregates": {k: v * scale for k, v in report.aggregates.items()},
        "weights": {k: dict(v) for k, v in report.weights.items()},
        "warnings": list(report.warnings),
        "config": {**report.config.as_dict(), "scale": scale},
    }


def summary_to_dict(summary: dict[str, SchemeSummary], scale: float = 1.0) -> dict:
    return {
        k: {
            "mean": s.mean * scale,
            "std": None if s.std is None else s.std * scale,
            "n_runs": s.n_runs,
        }
        for k, s in summary.items()
    }


def reports_to_json(reports: Sequence[ClassificationReport], scale: float = 1.0) -> str:
    if len(reports) == 1:
        obj = report_to_dict(reports[0], scale)
    else:
        obj = {
            "runs": [report_to_dict(r, scale) for r in reports],
            "summary": summary_to_dict(summarize(reports), scale),
        }
    return json.dumps(obj, indent=2, ensure_ascii=False)


def report_to_text(report: ClassificationReport, scale: float = 1.0) -> str:
    title = report.run_id or "run"
    if report.model_id:
        title = f"{report.model_id} / {title}"
    lines = [f"== {title} ({report.n_samples} samples) =="]
    rows = [
        [
            r.label + ("" if r.weighted else " *"),
            str(r.support),
            fmt_score(r.precision * scale),
            fmt_score(r.recall * scale),
            fmt_score(r.f_beta * scale),
            "yes" if r.zero_division else "",
        ]
        for r in report.rows
    ]
    f_name = "f1" if report.config.beta == 1 else f"f{report.config.beta:g}"
    lines += _table(["class", "support", "precision", "recall", f_name, "zero_div"], rows)
    if any(not r.weighted for r in report.rows):
        lines.append("* not weighted in aggregates")
    lines.append("")
    lines += _table(
        ["scheme", f_name],
        [[k, fmt_score(v * scale)] for k, v in report.aggregates.items()],
    )
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def reports_to_text(reports: Sequence[ClassificationReport], scale: float = 1.0) -> str:
    blocks = [report_to_text(r, scale) for r in reports]
    if len(reports) > 1:
        summary = summarize(reports)
        rows = [
            [k, fmt_score(s.mean * scale), fmt_score(None if s.std is None else s.std * scale)]
            for k, s in summary.items()
        ]
        blocks.append("\n".join([f"== mean over {len(reports)} runs =="] + _table(["scheme", "mean", "std"], rows)))
    cfg = reports[0].config
    blocks.append(
        f"beta={cfg.beta:g} na_label={cfg.na_label} include_na={cfg.include_na} "
        f"weights_from={cfg.weight_source}"
    )
    return "\n\n".join(blocks)


def reports_to_csv(reports: Sequence[ClassificationReport], scale: float = 1.0) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["run_id", "section", "class", "scheme", "field", "value"])
    for rep in reports:
        for r in rep.rows:
            for field, value in (
                ("support", r.support),
                ("precision", r.precision * scale),
                ("recall", r.recall * scale),
                ("f_beta", r.f_beta * scale),
                ("zero_division", int(r.zero_division)),
            ):
                writer.writerow([rep.run_id, "per_class", r.label, "", field, repr(value)])
        for scheme, value in rep.aggregates.items():
            writer.writerow([rep.run_id, "aggregate", "", scheme, "f_beta", repr(value * scale)])
        for scheme, w in rep.weights.items():
            for label, value in w.items():
                writer.writerow([rep.run_id, "weight", label, scheme, "weight", repr(value)])
    if len(reports) > 1:
        for scheme, s in summarize(reports).items():
            writer.writerow(["", "summary", "", scheme, "mean", repr(s.mean * scale)])
            writer.writerow(["", "summary", "", scheme, "std", repr(s.std * scale)])
    return buf.getvalue()


def render_reports(reports: Sequence[ClassificationReport], fmt: str, scale: float = 1.0) -> str:
    return {"text": reports_to_text, "json": reports_to_json, "csv": reports_to_csv}[fmt](reports, scale)


# -- comparisons ----------------------------------------------------------------


def comparison_to_dict(comp: ComparisonReport) -> dict:
    def side(s: SchemeSummary) -> dict:
        return {"mean": s.mean, "std": s.std, "n_runs": s.n_runs}

    return {
        "model_a": comp.model_a,
        "model_b": comp.model_b,
        "schemes": {
            row.scheme: {
                comp.model_a: side(row.a),
                comp.model_b: side(row.b),
                "t": row.t,
                "df": row.df,
                "p_value": row.p_value,
                "cohens_d": row.cohens_d,
                "effect_label": row.effect_label,
            }
            for row in comp.rows
        },
        "warnings": list(comp.notices),
        "config": {**(comp.config.as_dict() if comp.config else {}), "scale": comp.scale},
    }


def comparison_to_text(comp: ComparisonReport) -> str:
    def pm(s: SchemeSummary) -> str:
        return f"{fmt_score(s.mean)} ± {fmt_score(s.std)}"

    header = ["", *(r.scheme for r in comp.rows)]
    rows = [
        [comp.model_a, *(pm(r.a) for r in comp.rows)],
        [comp.model_b, *(pm(r.b) for r in comp.rows)],
        ["p-value", *(fmt_p(r.p_value) for r in comp.rows)],
        ["Cohen's d", *(fmt_score(r.cohens_d) for r in comp.rows)],
        ["effect", *(r.effect_label or "-" for r in comp.rows)],
    ]
    lines = _table(header, rows)
    lines.append(f"positive d: {comp.model_a} scores higher than {comp.model_b}")
    lines += [f"warning: {n}" for n in comp.notices]
    return "\n".join(lines)


def comparison_to_csv(comp: ComparisonReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scheme", "field", "value"])
    for row in comp.rows:
        for name, s in ((comp.model_a, row.a), (comp.model_b, row.b)):
            writer.writerow([row.scheme, f"{name}.mean", repr(s.mean)])
            writer.writerow([row.scheme, f"{name}.std", repr(s.std)])
        for field in ("t", "df", "p_value", "cohens_d", "effect_label"):
            value = getattr(row, field)
            writer.writerow([row.scheme, field, "" if value is None else repr(value) if isinstance(value, float) else value])
    return buf.getvalue()


def render_comparison(comp: ComparisonReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(comparison_to_dict(comp), indent=2, ensure_ascii=False)
    if fmt == "csv":
        return comparison_to_csv(comp)
    return comparison_to_text(comp)


# -- weight tables ----------------------------------------------------------------


def render_weights(table: WeightTable, fmt: str) -> str:
    schemes = list(table.columns)
    if fmt == "json":
        obj = {
            "classes": [
                {"class": c, "count": n, "weights": {s: table.columns[s][c] for s in schemes}}
                for c, n in table.counts.items()
            ],
            "schemes": schemes,
            "excluded": table.excluded,
        }
        return json.dumps(obj, indent=2, ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "count", *schemes])
        for c, n in table.counts.items():
            writer.writerow([c, n, *(repr(table.columns[s][c]) for s in schemes)])
        return buf.getvalue()
    rows = [[c, str(n), *(fmt_score(table.columns[s][c]) for s in schemes)] for c, n in table.counts.items()]
    lines = _table(["class", "count", *schemes], rows)
    if table.excluded is not None:
        lines.append(f"negative class {table.excluded!r} not listed")
    return "\n".join(lines)


# -- dataset statistics -------------------------------------------------------------


def stats_to_dict(stats: DatasetStats) -> dict:
    return {
        "split": stats.split,
        "na_label": stats.na_label,
        "n_classes": stats.n_classes,
        "n_samples": stats.n_samples,
        "pct_na": stats.pct_na,
        "perplexity_with_na": stats.perplexity_with_na,
        "perplexity_without_na": stats.perplexity_without_na,
        "ratio": stats.ratio,
    }


def render_stats(stats: DatasetStats, fmt: str) -> str:
    obj = stats_to_dict(stats)
    if fmt == "json":
        return json.dumps(obj, indent=2, ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(obj))
        writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in obj.values()])
        return buf.getvalue()

    def num(v, spec):
        return "undefined" if v is None else format(v, spec)

    lines = [
        f"split                  {stats.split}",
        f"negative class         {stats.na_label if stats.na_label is not None else '-'}",
        f"classes                {stats.n_classes}",
        f"samples                {stats.n_samples}",
        f"% negative             {stats.pct_na:.1f}",
        f"perplexity with NA     {num(stats.perplexity_with_na, '.4f')}",
        f"perplexity without NA  {num(stats.perplexity_without_na, '.4f')}",
        f"ratio                  {num(stats.ratio, '.4g')}",
    ]
    return "\n".join(lines)
