"""Comparison of a solved problem against published reference values."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import pandas as pd

from .errors import SchemaError
from .fuzzy_core import IVqROFN, WeightVector
from .mcgdm import DecisionProblem, Matrix, RankingReport
from .oracle import fold_hhmga, fold_hhmwa

log = logging.getLogger(__name__)

REFERENCE_TOL = 0.02
ENDPOINTS = ("mu_lo", "mu_hi", "nu_lo", "nu_hi")
REGRESSION_COLUMNS = [
    "quantity",
    "alternative",
    "criterion",
    "endpoint",
    "computed",
    "published",
    "oracle",
    "deviation",
    "within_tolerance",
]


@dataclass(frozen=True, slots=True)
class PublishedReference:
    """Values printed alongside a worked example; every part is optional."""

    r_matrix: Matrix | None = None
    aggregated: tuple[IVqROFN, ...] | None = None
    scores: tuple[float, ...] | None = None
    ranking: tuple[str, ...] | None = None

    @property
    def empty(self) -> bool:
        return all(
            v is None for v in (self.r_matrix, self.aggregated, self.scores, self.ranking)
        )


def _row(
    quantity: str,
    alternative: str,
    criterion: str,
    endpoint: str,
    computed: float,
    published: float,
    oracle: float,
    tolerance: float,
) -> dict[str, object]:
    deviation = abs(computed - published)
    return {
        "quantity": quantity,
        "alternative": alternative,
        "criterion": criterion,
        "endpoint": endpoint,
        "computed": computed,
        "published": published,
        "oracle": oracle,
        "deviation": deviation,
        "within_tolerance": bool(deviation <= tolerance),
    }


def _r_oracle(problem: DecisionProblem, report: RankingReport, r: int, c: int) -> IVqROFN:
    values = [ex.matrix[r][c] for ex in problem.experts]
    return fold_hhmwa(values, problem.expert_weights(), report.expert_params)


def _x_oracle(
    problem: DecisionProblem, report: RankingReport, row: Sequence[IVqROFN]
) -> IVqROFN:
    omega: WeightVector = problem.criteria_weights
    if report.params.criteria_operator == "hhmga":
        return fold_hhmga(row, omega, report.criteria_params, report.params.criteria_mode)
    return fold_hhmwa(row, omega, report.criteria_params)


def _check_shape(name: str, got: int, want: int) -> None:
    if got != want:
        raise SchemaError(f"reference {name} has {got} entries, the report has {want}")


def compare_to_reference(
    report: RankingReport,
    reference: PublishedReference,
    problem: DecisionProblem | None = None,
    *,
    oracle_cells: bool = True,
    tolerance: float = REFERENCE_TOL,
) -> pd.DataFrame:
    """One row per published value; the oracle column needs ``problem``."""
    source = problem if oracle_cells else None
    labels = {e.index: e.label for e in report.entries}
    by_input = report.by_input()
    rows: list[dict[str, object]] = []

    if reference.r_matrix is not None:
        if report.intermediates is None:
            raise SchemaError("report was solved without intermediates; R cannot be compared")
        _check_shape("R", len(reference.r_matrix), len(report.intermediates))
        for r, (published_row, computed_row) in enumerate(
            zip(reference.r_matrix, report.intermediates)
        ):
            _check_shape(f"R row {r + 1}", len(published_row), len(computed_row))
            for c, (pub, got) in enumerate(zip(published_row, computed_row)):
                folded = _r_oracle(source, report, r, c) if source is not None else None
                criterion = report.criteria[c] if c < len(report.criteria) else f"C{c + 1}"
                for k, name in enumerate(ENDPOINTS):
                    rows.append(
                        _row(
                            "R", labels[r], criterion, name,
                            got.as_tuple()[k], pub.as_tuple()[k],
                            folded.as_tuple()[k] if folded else math.nan,
                            tolerance,
                        )
                    )

    if reference.aggregated is not None:
        _check_shape("aggregated values", len(reference.aggregated), len(by_input))
        for entry, pub in zip(by_input, reference.aggregated):
            folded = None
            if source is not None and report.intermediates is not None:
                folded = _x_oracle(source, report, report.intermediates[entry.index])
            for k, name in enumerate(ENDPOINTS):
                rows.append(
                    _row(
                        "x", entry.label, "", name,
                        entry.value.as_tuple()[k], pub.as_tuple()[k],
                        folded.as_tuple()[k] if folded else math.nan,
                        tolerance,
                    )
                )

    if reference.scores is not None:
        _check_shape("scores", len(reference.scores), len(by_input))
        for entry, pub_score in zip(by_input, reference.scores):
            rows.append(
                _row("score", entry.label, "", "", entry.score, pub_score, math.nan, tolerance)
            )

    if reference.ranking is not None:
        published_rank = {label: pos + 1 for pos, label in enumerate(reference.ranking)}
        for entry in by_input:
            pub_rank = published_rank.get(entry.label)
            if pub_rank is None:
                raise SchemaError(f"published ranking does not list {entry.label!r}")
            # ranks must agree exactly
            rows.append(
                _row("rank", entry.label, "", "", float(entry.rank), float(pub_rank), math.nan, 0.0)
            )

    frame = pd.DataFrame(rows, columns=REGRESSION_COLUMNS)
    if not frame.empty:
        within = int(frame["within_tolerance"].sum())
        log.info(
            "[regress] %d/%d published values reproduced within %.3g",
            within, len(frame), tolerance,
        )
    return frame


__all__ = [
    "PublishedReference",
    "REFERENCE_TOL",
    "REGRESSION_COLUMNS",
    "compare_to_reference",
]
