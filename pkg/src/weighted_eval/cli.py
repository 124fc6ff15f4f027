"""Command-line interface: ``report``, ``compare``, ``weights`` and ``dataset-stats``."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from . import io as runio
from .dataset_stats import dataset_stats, label_counts
from .errors import EvaluationError
from .render import FORMATS, render_comparison, render_reports, render_stats, render_weights
from .report import ReportConfig, build_report, compare_runs, weight_table
from .weighting import DEFAULT_SCHEMES, parse_scheme

log = logging.getLogger("weighted_eval")


def _schemes(text: str):
    try:
        return tuple(parse_scheme(part) for part in text.split(",") if part.strip())
    except EvaluationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _beta(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid beta {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("beta must be positive")
    return value


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--na-label", help="label of the negative class (e.g. no_relation, NA, Other)")
    p.add_argument("--beta", type=_beta, default=1.0, help="F-beta trade-off (default 1)")
    p.add_argument(
        "--schemes",
        type=_schemes,
        default=DEFAULT_SCHEMES,
        help="comma-separated subset of micro,weighted,dodrans,entropy,macro,power:<p> (default: all five)",
    )
    p.add_argument(
        "--include-na",
        action="store_true",
        help="treat the negative class like any other class (micro becomes accuracy)",
    )
    p.add_argument(
        "--counts-from",
        metavar="FILE",
        help="take class weights from a <label>\\t<count> file instead of the evaluated gold labels",
    )
    p.add_argument(
        "--entropy-na-denominator",
        action="store_true",
        help="count negative samples in the entropy proportions (the class itself stays unweighted)",
    )
    p.add_argument("--labels", metavar="FILE", help="allowed labels, one per line; others are errors")
    p.add_argument("--input-format", choices=runio.FORMATS, help="override format inferred from extension")
    p.add_argument("--percent", action="store_true", help="report scores multiplied by 100")
    p.add_argument("--format", choices=FORMATS, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weighted-eval",
        description="Evaluate multi-class predictions under several class-weighting schemes.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="per-class scores and one aggregate per scheme")
    p.add_argument("runs", nargs="+", metavar="RUN_FILE")
    p.add_argument("--model-id", default="", help="model name echoed in the report")
    _add_scoring_flags(p)

    p = sub.add_parser("compare", help="Welch's t-test and Cohen's d between two models' runs")
    p.add_argument("-a", "--runs-a", nargs="+", required=True, metavar="RUN_FILE")
    p.add_argument("-b", "--runs-b", nargs="+", required=True, metavar="RUN_FILE")
    p.add_argument("--name-a", default="A")
    p.add_argument("--name-b", default="B")
    _add_scoring_flags(p)

    p = sub.add_parser("weights", help="normalized class weights per scheme, for plotting")
    p.add_argument("source", metavar="FILE")
    p.add_argument(
        "--input-kind",
        choices=("run", "labels", "counts"),
        default="run",
        help="run file (gold column used), one label per line, or <label>\\t<count> lines",
    )
    p.add_argument("--input-format", choices=runio.FORMATS)
    p.add_argument("--na-label")
    p.add_argument(
        "--schemes",
        type=_schemes,
        default=tuple(s for s in DEFAULT_SCHEMES if s.has_weights),
    )
    p.add_argument("--entropy-na-denominator", action="store_true")
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("dataset-stats", help="perplexity, negative share and imbalance ratio")
    p.add_argument("source", metavar="FILE")
    p.add_argument("--input-kind", choices=("labels", "run"), default="labels")
    p.add_argument("--input-format", choices=runio.FORMATS)
    p.add_argument("--na-label")
    p.add_argument("--split", required=True, help="name of the split the labels come from, e.g. test")
    p.add_argument("--format", choices=FORMATS, default="text")
    return parser


def _config(args) -> ReportConfig:
    return ReportConfig(
        beta=args.beta,
        na_label=args.na_label,
        include_na=args.include_na,
        schemes=args.schemes,
        weight_source=args.counts_from or "gold",
        entropy_na_in_denominator=args.entropy_na_denominator,
    )


def _load_runs(paths, args, model_id=""):
    allowed = runio.read_labels(args.labels) if args.labels else None
    runs = []
    for path in paths:
        desc = runio.RunFileDescriptor(path, args.input_format, model_id=model_id)
        run = runio.load_run(desc, args.na_label)
        if allowed is not None:
            run.check_labels(allowed)
        runs.append(run)
    return runs


def _external_counts(args):
    return runio.read_counts(args.counts_from) if args.counts_from else None


def cmd_report(args) -> str:
    config = _config(args)
    counts = _external_counts(args)
    runs = _load_runs(args.runs, args, args.model_id)
    reports = [build_report(run, config, counts) for run in runs]
    return render_reports(reports, args.format, 100.0 if args.percent else 1.0)


def cmd_compare(args) -> str:
    config = _config(args)
    counts = _external_counts(args)
    runs_a = _load_runs(args.runs_a, args, args.name_a)
    runs_b = _load_runs(args.runs_b, args, args.name_b)
    comp = compare_runs(
        runs_a, runs_b, config, counts, args.name_a, args.name_b,
        scale=100.0 if args.percent else 1.0,
    )
    return render_comparison(comp, args.format)


def _source_labels(args) -> list[str]:
    if args.input_kind == "run":
        return [p.gold for p in runio.read_pairs(args.source, args.input_format)]
    return runio.read_labels(args.source)


def cmd_weights(args) -> str:
    if args.input_kind == "counts":
        counts = runio.read_counts(args.source)
    else:
        counts = label_counts(_source_labels(args))
    table = weight_table(counts, args.schemes, args.na_label, args.entropy_na_denominator)
    return render_weights(table, args.format)


def cmd_dataset_stats(args) -> str:
    stats = dataset_stats(_source_labels(args), args.na_label, split=args.split)
    return render_stats(stats, args.format)


COMMANDS = {
    "report": cmd_report,
    "compare": cmd_compare,
    "weights": cmd_weights,
    "dataset-stats": cmd_dataset_stats,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        out = COMMANDS[args.command](args)
    except (EvaluationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
