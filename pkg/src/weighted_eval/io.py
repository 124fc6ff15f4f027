"""Reading and writing prediction files.

Two formats are supported, both UTF-8 with one sample per line:

* ``tsv``: ``<gold>\\t<pred>``, no header.
* ``jsonl``: ``{"gold": "...", "pred": "..."}``.

LF and CRLF line endings are both accepted.
"""

from __future__ import annotations

import json
import os
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import EvaluationError, ParseError
from .metrics import EvaluationRun, LabeledPair
from .stattest import RunGroup

PathLike = Union[str, os.PathLike]

FORMATS = ("tsv", "jsonl")
_EXTENSIONS = {".tsv": "tsv", ".txt": "tsv", ".jsonl": "jsonl", ".ndjson": "jsonl"}


def infer_format(path: PathLike) -> str:
    suffix = Path(path).suffix.lower()
    try:
        return _EXTENSIONS[suffix]
    except KeyError:
        raise EvaluationError(
            f"cannot infer format of {path} from extension {suffix!r}; pass format explicitly"
        ) from None


@dataclass(frozen=True)
class RunFileDescriptor:
    path: Path
    format: Optional[str] = None
    model_id: str = ""
    run_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        fmt = self.format or infer_format(self.path)
        if fmt not in FORMATS:
            raise EvaluationError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
        object.__setattr__(self, "format", fmt)
        if not self.run_id:
            object.__setattr__(self, "run_id", self.path.stem)


def read_lines(path: PathLike) -> list[str]:
    """Lines of a UTF-8 file without terminators; a final terminator is optional."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(path, None, f"not valid UTF-8 ({exc.reason} at byte {exc.start})") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def _parse_tsv(path, lineno: int, line: str) -> LabeledPair:
    fields = line.split("\t")
    if len(fields) != 2:
        raise ParseError(path, lineno, f"expected 2 tab-separated columns, found {len(fields)}")
    gold, pred = fields
    if not gold or not pred:
        raise ParseError(path, lineno, "empty label")
    return LabeledPair(gold, pred)


def _parse_jsonl(path, lineno: int, line: str) -> LabeledPair:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(path, lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError(path, lineno, "expected a JSON object")
    gold, pred = obj.get("gold"), obj.get("pred")
    if not isinstance(gold, str) or not isinstance(pred, str) or not gold or not pred:
        raise ParseError(path, lineno, 'expected non-empty string fields "gold" and "pred"')
    return LabeledPair(gold, pred)


def read_pairs(path: PathLike, format: Optional[str] = None) -> list[LabeledPair]:
    fmt = format or infer_format(path)
    parse = _parse_tsv if fmt == "tsv" else _parse_jsonl
    lines = read_lines(path)
    if not lines:
        raise ParseError(path, None, "file is empty")
    return [parse(path, lineno, line) for lineno, line in enumerate(lines, start=1)]


def load_run(desc: RunFileDescriptor, na_label: Optional[str] = None) -> EvaluationRun:
    pairs = read_pairs(desc.path, desc.format)
    return EvaluationRun(pairs, na_label=na_label, model_id=desc.model_id, run_id=desc.run_id)


def load_run_group(
    descs: Sequence[RunFileDescriptor],
    score_extractor: Callable[[EvaluationRun], float],
    na_label: Optional[str] = None,
) -> RunGroup:
    """Score every run file of one model with ``score_extractor``, in input order."""
    if len(descs) < 2:
        raise EvaluationError(f"a run group needs at least 2 run files, got {len(descs)}")
    model_ids = {d.model_id for d in descs}
    if len(model_ids) > 1:
        raise EvaluationError(f"run files belong to different models: {sorted(model_ids)}")
    scores = [score_extractor(load_run(d, na_label)) for d in descs]
    return RunGroup(descs[0].model_id, scores)


def dump_run(run: EvaluationRun, path: PathLike, format: Optional[str] = None) -> None:
    fmt = format or infer_format(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for pair in run.pairs:
            if fmt == "tsv":
                for label in (pair.gold, pair.predicted):
                    if any(ch in label for ch in "\t\r\n"):
                        raise EvaluationError(f"label {label!r} cannot be written as TSV")
                fh.write(f"{pair.gold}\t{pair.predicted}\n")
            else:
                fh.write(json.dumps({"gold": pair.gold, "pred": pair.predicted}, ensure_ascii=False))
                fh.write("\n")


def read_labels(path: PathLike) -> list[str]:
    """One label per line; blank lines are rejected."""
    labels = read_lines(path)
    for lineno, label in enumerate(labels, start=1):
        if not label:
            raise ParseError(path, lineno, "empty label")
    if not labels:
        raise ParseError(path, None, "file is empty")
    return labels


def read_counts(path: PathLike) -> dict[str, int]:
    """``<label>\\t<count>`` per line."""
    counts: dict[str, int] = {}
    lines = read_lines(path)
    if not lines:
        raise ParseError(path, None, "file is empty")
    for lineno, line in enumerate(lines, start=1):
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0]:
            raise ParseError(path, lineno, "expected <label>\\t<count>")
        try:
            n = int(fields[1])
        except ValueError:
            raise ParseError(path, lineno, f"count {fields[1]!r} is not an integer") from None
        if n < 0:
            raise ParseError(path, lineno, "count must be non-negative")
        if fields[0] in counts:
            raise ParseError(path, lineno, f"duplicate label {fields[0]!r}")
        counts[fields[0]] = n
    return counts


def write_counts(counts: Iterable[tuple[str, int]], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for label, n in counts:
            fh.write(f"{label}\t{n}\n")
