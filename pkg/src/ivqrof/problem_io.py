"""Problem documents (JSON, or YAML for hand-edited files) and report emission.

A document looks like::

    {
      "alternatives": ["A1", "A2"],
      "criteria": ["C1", "C2"],
      "criteria_weights": [0.5, 0.5],
      "params": {"q": 3, "phi": 3, "x": 3, "y": 3},
      "experts": [
        {"label": "E1", "weight": 1.0,
         "matrix": [[[0.4, 0.5, 0.3, 0.4], [0.6, 0.7, 0.1, 0.2]],
                    [[0.5, 0.6, 0.2, 0.3], [0.3, 0.4, 0.5, 0.6]]]}
      ],
      "reference": {"R": [...], "aggregated": [...], "scores": [...], "ranking": [...]}
    }

Cells are [mu_lo, mu_hi, nu_lo, nu_hi] or [[mu_lo, mu_hi], [nu_lo, nu_hi]].
``q`` may be "auto". ``reference`` is optional and only read by ``regress``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Mapping, Sequence

import pandas as pd
import yaml

from .errors import (
    CellError,
    DocumentSyntaxError,
    IntervalOrderViolation,
    IVqROFError,
    SchemaError,
)
from .fuzzy_core import IVqROFN, WeightVector
from .mcgdm import DecisionProblem, Expert, Matrix, ProblemParams, RankingReport
from .regression import PublishedReference

ReportFormat = Literal["text", "csv"]

NUMBER_FORMAT = "%.10g"
_PARAM_KEYS = {
    "q",
    "phi",
    "x",
    "y",
    "score",
    "criteria_operator",
    "criteria_mode",
    "criteria_phi",
    "criteria_x",
    "criteria_y",
}
_TOP_KEYS = {"alternatives", "criteria", "criteria_weights", "params", "experts", "reference"}


@dataclass(frozen=True, slots=True)
class ProblemDocument:
    problem: DecisionProblem
    reference: PublishedReference | None = None


def _load_tree(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as json_exc:
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise DocumentSyntaxError(
                f"not valid JSON ({json_exc}) or YAML ({exc})"
            ) from exc


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise SchemaError(f"{where}: expected a finite number, got {value!r}")
    return v


def _labels(value: Any, key: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"'{key}' must be a list of strings")
    if len(set(value)) != len(value):
        raise SchemaError(f"'{key}' contains duplicate labels")
    return tuple(value)


def _cell_values(raw: Any) -> list[Any]:
    if isinstance(raw, list) and len(raw) == 2 and all(isinstance(r, list) for r in raw):
        return [*raw[0], *raw[1]]
    if isinstance(raw, list):
        return raw
    raise SchemaError(f"expected a 4-element list, got {raw!r}")


def parse_number(raw: Any, where: str = "value") -> IVqROFN:
    values = _cell_values(raw)
    if len(values) != 4:
        raise SchemaError(f"{where}: expected [mu_lo, mu_hi, nu_lo, nu_hi], got {raw!r}")
    a = IVqROFN(*(_number(v, where) for v in values))
    if a.mu_lo > a.mu_hi:
        raise IntervalOrderViolation(f"membership [{a.mu_lo}, {a.mu_hi}] has lo > hi")
    if a.nu_lo > a.nu_hi:
        raise IntervalOrderViolation(f"non-membership [{a.nu_lo}, {a.nu_hi}] has lo > hi")
    return a


def _matrix(raw: Any, expert: str) -> Matrix:
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise SchemaError(f"expert {expert!r}: 'matrix' must be a list of rows")
    rows: list[tuple[IVqROFN, ...]] = []
    for r, row in enumerate(raw, start=1):
        cells: list[IVqROFN] = []
        for c, cell in enumerate(row, start=1):
            try:
                cells.append(parse_number(cell))
            except IVqROFError as exc:
                raise CellError(str(exc), expert=expert, row=r, col=c) from exc
        rows.append(tuple(cells))
    return tuple(rows)


def _experts(raw: Any) -> tuple[Expert, ...]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError("'experts' must be a non-empty list")
    out: list[Expert] = []
    for k, item in enumerate(raw, start=1):
        if not isinstance(item, Mapping) or "matrix" not in item:
            raise SchemaError(f"expert #{k} must be a mapping with a 'matrix'")
        label = str(item.get("label", f"E{k}"))
        weight = item.get("weight")
        out.append(
            Expert(
                label=label,
                matrix=_matrix(item["matrix"], label),
                weight=None if weight is None else _number(weight, f"expert {label!r} weight"),
            )
        )
    return tuple(out)


def _params(raw: Any) -> ProblemParams:
    if raw is None:
        return ProblemParams()
    if not isinstance(raw, Mapping):
        raise SchemaError("'params' must be a mapping")
    unknown = sorted(set(raw) - _PARAM_KEYS)
    if unknown:
        raise SchemaError(f"unknown params: {', '.join(unknown)}")
    fields = dict(raw)
    for key in ("q", "phi", "x", "y", "criteria_phi", "criteria_x", "criteria_y"):
        value = fields.get(key)
        if value is None or (key == "q" and value == "auto"):
            continue
        fields[key] = _number(value, f"params.{key}")
    return ProblemParams(**fields)


def _reference(raw: Any) -> PublishedReference | None:
    if raw is None:
        return None
    if not isinstance(raw, Mapping):
        raise SchemaError("'reference' must be a mapping")
    r_matrix = None
    if raw.get("R") is not None:
        rows = raw["R"]
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise SchemaError("'reference.R' must be a list of rows")
        r_matrix = tuple(tuple(parse_number(cell, "reference.R") for cell in row) for row in rows)
    aggregated = None
    if isinstance(raw.get("aggregated"), list):
        aggregated = tuple(parse_number(v, "reference.aggregated") for v in raw["aggregated"])
    scores = None
    if isinstance(raw.get("scores"), list):
        scores = tuple(_number(v, "reference.scores") for v in raw["scores"])
    ranking = None
    if raw.get("ranking") is not None:
        ranking = _labels(raw["ranking"], "reference.ranking")
    return PublishedReference(r_matrix, aggregated, scores, ranking)


def parse_document(text: str) -> ProblemDocument:
    tree = _load_tree(text)
    if not isinstance(tree, Mapping):
        raise SchemaError("problem document must be a mapping at the top level")
    unknown = sorted(set(tree) - _TOP_KEYS)
    if unknown:
        raise SchemaError(f"unknown top-level keys: {', '.join(unknown)}")
    experts = _experts(tree.get("experts"))
    first = experts[0].matrix
    if "alternatives" in tree:
        alternatives = _labels(tree["alternatives"], "alternatives")
    else:
        alternatives = tuple(f"A{k + 1}" for k in range(len(first)))
    if "criteria" in tree:
        criteria = _labels(tree["criteria"], "criteria")
    else:
        criteria = tuple(f"C{k + 1}" for k in range(len(first[0]) if first else 0))
    raw_weights = tree.get("criteria_weights")
    if not isinstance(raw_weights, list):
        raise SchemaError("'criteria_weights' must be a list of numbers")
    omega = WeightVector(tuple(_number(w, "criteria_weights") for w in raw_weights))
    problem = DecisionProblem(
        alternatives=alternatives,
        criteria=criteria,
        experts=experts,
        criteria_weights=omega,
        params=_params(tree.get("params")),
    )
    return ProblemDocument(problem, _reference(tree.get("reference")))


def parse_problem(text: str) -> DecisionProblem:
    return parse_document(text).problem


def load_document(path: Path | str) -> ProblemDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def load_problem(path: Path | str) -> DecisionProblem:
    return load_document(path).problem


def _cell_out(a: IVqROFN) -> list[float]:
    return list(a.as_tuple())


def _params_out(p: ProblemParams) -> dict[str, Any]:
    out: dict[str, Any] = {
        "q": p.q,
        "phi": p.phi,
        "x": p.x,
        "y": p.y,
        "score": p.score,
        "criteria_operator": p.criteria_operator,
        "criteria_mode": p.criteria_mode,
    }
    for key in ("criteria_phi", "criteria_x", "criteria_y"):
        if getattr(p, key) is not None:
            out[key] = getattr(p, key)
    return out


def dump_problem(problem: DecisionProblem, reference: PublishedReference | None = None) -> str:
    """JSON text that parses back to an equal problem."""
    tree: dict[str, Any] = {
        "alternatives": list(problem.alternatives),
        "criteria": list(problem.criteria),
        "criteria_weights": list(problem.criteria_weights),
        "params": _params_out(problem.params),
        "experts": [
            {
                "label": ex.label,
                **({} if ex.weight is None else {"weight": ex.weight}),
                "matrix": [[_cell_out(a) for a in row] for row in ex.matrix],
            }
            for ex in problem.experts
        ],
    }
    if reference is not None and not reference.empty:
        ref: dict[str, Any] = {}
        if reference.r_matrix is not None:
            ref["R"] = [[_cell_out(a) for a in row] for row in reference.r_matrix]
        if reference.aggregated is not None:
            ref["aggregated"] = [_cell_out(a) for a in reference.aggregated]
        if reference.scores is not None:
            ref["scores"] = list(reference.scores)
        if reference.ranking is not None:
            ref["ranking"] = list(reference.ranking)
        tree["reference"] = ref
    return json.dumps(tree, indent=2) + "\n"


def _fmt(v: float) -> str:
    return NUMBER_FORMAT % v


def format_number(a: IVqROFN) -> str:
    return f"([{_fmt(a.mu_lo)}, {_fmt(a.mu_hi)}], [{_fmt(a.nu_lo)}, {_fmt(a.nu_hi)}])"


def _matrix_block(matrix: Matrix, rows: Sequence[str], cols: Sequence[str]) -> list[str]:
    frame = pd.DataFrame(
        [[format_number(a) for a in row] for row in matrix],
        index=list(rows),
        columns=list(cols),
    )
    return frame.to_string().splitlines()


def emit_report(report: RankingReport, fmt: ReportFormat = "text") -> str:
    frame = report.to_frame()
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=NUMBER_FORMAT, lineterminator="\n")
    if fmt != "text":
        raise SchemaError(f"unknown report format {fmt!r} (expected 'text' or 'csv')")
    ep, cp = report.expert_params, report.criteria_params
    lines = [
        report.ranking_string,
        "",
        frame.to_string(index=False, float_format=_fmt),
        "",
        f"q={report.q:g} phi={ep.phi:g} x={ep.x:g} y={ep.y:g} score={report.params.score}",
        f"criteria stage: {report.params.criteria_operator}"
        + (f"[{report.params.criteria_mode}]" if report.params.criteria_operator == "hhmga" else "")
        + f" phi={cp.phi:g} x={cp.x:g} y={cp.y:g}",
    ]
    if report.intermediates is not None:
        labels = [e.label for e in report.by_input()]
        lines += ["", "R (experts fused per cell):"]
        lines += _matrix_block(report.intermediates, labels, report.criteria)
    return "\n".join(lines) + "\n"


__all__ = [
    "ProblemDocument",
    "NUMBER_FORMAT",
    "parse_number",
    "parse_document",
    "parse_problem",
    "load_document",
    "load_problem",
    "dump_problem",
    "format_number",
    "emit_report",
]
