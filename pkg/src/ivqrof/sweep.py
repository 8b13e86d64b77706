"""Ranking stability under a swept parameter."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Sequence

import pandas as pd

from .errors import DomainError, IVqROFError, NumericalDegeneracy
from .mcgdm import DecisionProblem, solve

log = logging.getLogger(__name__)

SweepParam = Literal["q", "phi", "x", "y"]
SWEEP_PARAMS: tuple[str, ...] = ("q", "phi", "x", "y")

SweepValue = float | Literal["auto"]


@dataclass(frozen=True, slots=True)
class SweepSpec:
    param: SweepParam
    values: tuple[SweepValue, ...]
    problem: DecisionProblem

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if self.param not in SWEEP_PARAMS:
            raise DomainError(f"cannot sweep {self.param!r}; choose one of {SWEEP_PARAMS}")
        if not self.values:
            raise DomainError("sweep needs at least one value")
        if any(v == "auto" for v in self.values) and self.param != "q":
            raise DomainError("only q accepts 'auto'")


@dataclass(frozen=True)
class SweepResult:
    param: str
    table: pd.DataFrame
    stable: bool
    verdict: str


def parse_sweep_values(text: str) -> tuple[SweepValue, ...]:
    """Comma-separated numbers, e.g. "3,4,5,6"; "auto" is kept as is."""
    out: list[SweepValue] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if token == "auto":
            out.append("auto")
            continue
        try:
            out.append(float(token))
        except ValueError as exc:
            raise DomainError(f"sweep value {token!r} is not a number") from exc
    if not out:
        raise DomainError("no sweep values given")
    return tuple(out)


def _verdict(param: str, values: Sequence[SweepValue], rankings: Sequence[str]) -> tuple[bool, str]:
    solved = [(v, r) for v, r in zip(values, rankings) if r]
    if not solved:
        return False, "no value produced a ranking"
    base_value, base = solved[0]
    for value, ranking in solved[1:]:
        if ranking != base:
            return False, f"ranking changes at {param}={value}: {base} -> {ranking}"
    skipped = len(values) - len(solved)
    tail = f" ({skipped} value(s) failed)" if skipped else ""
    return True, f"stable: {base} for {len(solved)} value(s) from {param}={base_value}{tail}"


def run_sweep(spec: SweepSpec) -> SweepResult:
    problem = spec.problem
    rows: list[dict[str, object]] = []
    for value in spec.values:
        row: dict[str, object] = {"value": value, "resolved_q": None, "ranking": "", "error": ""}
        try:
            report = solve(problem.with_params(**{spec.param: value}), keep_intermediates=False)
        except (IVqROFError, NumericalDegeneracy) as exc:
            log.info("[sweep] %s=%s failed: %s", spec.param, value, exc)
            row["error"] = f"{type(exc).__name__}: {exc}"
        else:
            row["resolved_q"] = report.q
            row["ranking"] = report.ranking_string
            for entry in report.by_input():
                row[f"score_{entry.label}"] = entry.score
        rows.append(row)
    table = pd.DataFrame(rows)
    score_cols = [f"score_{label}" for label in problem.alternatives]
    for col in score_cols:
        if col not in table.columns:
            table[col] = float("nan")
    table = table[["value", "resolved_q", "ranking", *score_cols, "error"]]
    table = table.rename(columns={"value": spec.param})
    stable, verdict = _verdict(spec.param, spec.values, [str(r["ranking"]) for r in rows])
    log.info("[sweep] %s", verdict)
    return SweepResult(spec.param, table, stable, verdict)


__all__ = ["SweepSpec", "SweepResult", "SWEEP_PARAMS", "parse_sweep_values", "run_sweep"]
