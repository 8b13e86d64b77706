"""Group decision pipeline: rung, expert fusion, criteria fusion, scoring, ranking."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import cmp_to_key
from typing import Iterator, Literal, Sequence

import pandas as pd

from .errors import (
    DomainError,
    EmptyInput,
    IntervalOrderViolation,
    IVqROFError,
    RungConstraintViolation,
    SchemaError,
    WeightDimensionMismatch,
)
from .fuzzy_core import (
    SCORE_ALIASES,
    AggParams,
    IVqROFN,
    ScoreKind,
    WeightVector,
    accuracy,
    check_rung,
    compare,
    infer_q,
    scorer_for,
    validate,
)
from .heronian import HhmgaMode, hhmga, hhmwa

log = logging.getLogger(__name__)

CriteriaOperator = Literal["hhmwa", "hhmga"]
Matrix = tuple[tuple[IVqROFN, ...], ...]

SCORE_KINDS = ("eq6", "qpow")
CRITERIA_OPERATORS = ("hhmwa", "hhmga")
HHMGA_MODES = ("dual", "literal")
REPORT_COLUMNS = ["alternative", "rank", "score", "accuracy", "mu_lo", "mu_hi", "nu_lo", "nu_hi"]


@dataclass(frozen=True, slots=True)
class Expert:
    label: str
    matrix: Matrix
    weight: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))


@dataclass(frozen=True, slots=True)
class ProblemParams:
    """Pipeline settings; q may be "auto" (smallest feasible integer rung)."""

    q: float | Literal["auto"] = "auto"
    phi: float = 3.0
    x: float = 3.0
    y: float = 3.0
    score: ScoreKind = "eq6"
    criteria_operator: CriteriaOperator = "hhmwa"
    criteria_mode: HhmgaMode = "dual"  # only used when criteria_operator == "hhmga"
    # criteria-stage overrides; None means "same as the expert stage"
    criteria_phi: float | None = None
    criteria_x: float | None = None
    criteria_y: float | None = None

    def __post_init__(self) -> None:
        if self.q != "auto":
            object.__setattr__(self, "q", check_rung(self.q))
        if isinstance(self.score, str):
            object.__setattr__(self, "score", SCORE_ALIASES.get(self.score, self.score))
        if self.score not in SCORE_KINDS:
            raise DomainError(f"score must be one of {SCORE_KINDS}, got {self.score!r}")
        if self.criteria_operator not in CRITERIA_OPERATORS:
            raise DomainError(
                f"criteria operator must be one of {CRITERIA_OPERATORS}, "
                f"got {self.criteria_operator!r}"
            )
        if self.criteria_mode not in HHMGA_MODES:
            raise DomainError(f"hhmga mode must be one of {HHMGA_MODES}")
        # surface phi/x/y errors at construction rather than mid-pipeline
        self.expert_stage(1.0)
        self.criteria_stage(1.0)

    @property
    def explicit_q(self) -> float | None:
        return None if self.q == "auto" else float(self.q)

    def expert_stage(self, q: float) -> AggParams:
        return AggParams(q=q, phi=self.phi, x=self.x, y=self.y)

    def criteria_stage(self, q: float) -> AggParams:
        return AggParams(
            q=q,
            phi=self.phi if self.criteria_phi is None else self.criteria_phi,
            x=self.x if self.criteria_x is None else self.criteria_x,
            y=self.y if self.criteria_y is None else self.criteria_y,
        )


@dataclass(frozen=True, slots=True)
class DecisionProblem:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    experts: tuple[Expert, ...]
    criteria_weights: WeightVector
    params: ProblemParams = field(default_factory=ProblemParams)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "experts", tuple(self.experts))
        if not self.alternatives:
            raise EmptyInput("problem has no alternatives")
        if not self.criteria:
            raise EmptyInput("problem has no criteria")
        if not self.experts:
            raise EmptyInput("problem has no experts")
        m, n = len(self.alternatives), len(self.criteria)
        for ex in self.experts:
            if len(ex.matrix) != m or any(len(row) != n for row in ex.matrix):
                shape = f"{len(ex.matrix)}x{[len(r) for r in ex.matrix]}"
                raise SchemaError(
                    f"expert {ex.label!r} matrix has shape {shape}, expected {m}x{n}"
                )
        if len(self.criteria_weights) != n:
            raise WeightDimensionMismatch(
                f"{len(self.criteria_weights)} criteria weights for {n} criteria"
            )
        given = [ex.weight is not None for ex in self.experts]
        if any(given) and not all(given):
            raise SchemaError("expert weights must be given for every expert or for none")
        self.expert_weights()

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return len(self.criteria)

    @property
    def t(self) -> int:
        return len(self.experts)

    def expert_weights(self) -> WeightVector:
        """Given expert weights, or uniform 1/t when none are given."""
        given = [ex.weight for ex in self.experts]
        if all(w is not None for w in given):
            return WeightVector(tuple(float(w) for w in given if w is not None))
        return WeightVector.uniform(self.t)

    def entries(self) -> Iterator[tuple[Expert, int, int, IVqROFN]]:
        for ex in self.experts:
            for r, row in enumerate(ex.matrix):
                for c, a in enumerate(row):
                    yield ex, r, c, a

    def with_params(self, **changes: object) -> DecisionProblem:
        return replace(self, params=replace(self.params, **changes))

    def permuted_experts(self, order: Sequence[int]) -> DecisionProblem:
        return replace(self, experts=tuple(self.experts[k] for k in order))

    def permuted_criteria(self, order: Sequence[int]) -> DecisionProblem:
        experts = tuple(
            replace(ex, matrix=tuple(tuple(row[k] for k in order) for row in ex.matrix))
            for ex in self.experts
        )
        return replace(
            self,
            criteria=tuple(self.criteria[k] for k in order),
            experts=experts,
            criteria_weights=self.criteria_weights.permuted(order),
        )


@dataclass(frozen=True, slots=True)
class RankEntry:
    index: int  # 0-based position in the input
    label: str
    value: IVqROFN
    score: float
    accuracy: float
    rank: int  # 1 = best


@dataclass(frozen=True, slots=True)
class RankingReport:
    entries: tuple[RankEntry, ...]  # best first
    q: float
    params: ProblemParams
    expert_params: AggParams
    criteria_params: AggParams
    criteria: tuple[str, ...] = ()
    intermediates: Matrix | None = None

    @property
    def order(self) -> list[str]:
        return [e.label for e in self.entries]

    @property
    def ranking_string(self) -> str:
        return " > ".join(self.order)

    def by_input(self) -> list[RankEntry]:
        return sorted(self.entries, key=lambda e: e.index)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "alternative": e.label,
                "rank": e.rank,
                "score": e.score,
                "accuracy": e.accuracy,
                "mu_lo": e.value.mu_lo,
                "mu_hi": e.value.mu_hi,
                "nu_lo": e.value.nu_lo,
                "nu_hi": e.value.nu_hi,
            }
            for e in self.entries
        ]
        return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def _located(exc: IVqROFError, ex: Expert, r: int, c: int) -> IVqROFError:
    where = f"expert {ex.label!r} row {r + 1} col {c + 1}"
    if isinstance(exc, RungConstraintViolation):
        return RungConstraintViolation(f"{where}: {exc}", excess=exc.excess)
    if isinstance(exc, IntervalOrderViolation):
        return IntervalOrderViolation(f"{where}: {exc}")
    return type(exc)(f"{where}: {exc}")


def resolve_q(problem: DecisionProblem) -> float:
    """The explicit rung (after validating every entry at it) or the inferred one."""
    q = problem.params.explicit_q
    if q is None:
        inferred = infer_q(a for _, _, _, a in problem.entries())
        log.info("[solve] inferred q=%d", inferred)
        return float(inferred)
    for ex, r, c, a in problem.entries():
        try:
            validate(a, q)
        except IVqROFError as exc:
            raise _located(exc, ex, r, c) from exc
    return q


def aggregate_experts(problem: DecisionProblem, q: float) -> Matrix:
    """Fuse the experts cell by cell with hhmwa under the expert weights."""
    p = problem.params.expert_stage(q)
    weights = problem.expert_weights()
    return tuple(
        tuple(
            hhmwa([ex.matrix[r][c] for ex in problem.experts], weights, p)
            for c in range(problem.n)
        )
        for r in range(problem.m)
    )


def aggregate_criteria(
    matrix: Sequence[Sequence[IVqROFN]],
    omega: WeightVector | Sequence[float],
    p: AggParams,
    *,
    operator: CriteriaOperator = "hhmwa",
    mode: HhmgaMode = "dual",
) -> list[IVqROFN]:
    """Fuse each alternative's row across criteria."""
    if operator == "hhmwa":
        return [hhmwa(list(row), omega, p) for row in matrix]
    if operator == "hhmga":
        return [hhmga(list(row), omega, p, mode) for row in matrix]
    raise DomainError(f"unknown criteria operator {operator!r}")


def rank(
    xs: Sequence[IVqROFN],
    q: float,
    *,
    labels: Sequence[str] | None = None,
    score_kind: ScoreKind = "eq6",
) -> tuple[RankEntry, ...]:
    """Descending order by score then accuracy; full ties keep input order."""
    values = list(xs)
    if not values:
        raise EmptyInput("nothing to rank")
    names = list(labels) if labels is not None else [f"A{k + 1}" for k in range(len(values))]
    if len(names) != len(values):
        raise WeightDimensionMismatch(f"{len(names)} labels for {len(values)} values")
    f = scorer_for(score_kind, q)

    def _desc(i: int, j: int) -> int:
        return -int(compare(values[i], values[j], q, score_kind=score_kind))

    order = sorted(range(len(values)), key=cmp_to_key(_desc))
    return tuple(
        RankEntry(
            index=k,
            label=names[k],
            value=values[k],
            score=f(values[k]),
            accuracy=accuracy(values[k], q),
            rank=pos + 1,
        )
        for pos, k in enumerate(order)
    )


def solve(problem: DecisionProblem, *, keep_intermediates: bool = True) -> RankingReport:
    q = resolve_q(problem)
    settings = problem.params
    expert_p = settings.expert_stage(q)
    criteria_p = settings.criteria_stage(q)
    log.info(
        "[solve] m=%d n=%d t=%d q=%g phi=%g x=%g y=%g",
        problem.m, problem.n, problem.t, q, expert_p.phi, expert_p.x, expert_p.y,
    )
    fused = aggregate_experts(problem, q)
    xs = aggregate_criteria(
        fused,
        problem.criteria_weights,
        criteria_p,
        operator=settings.criteria_operator,
        mode=settings.criteria_mode,
    )
    entries = rank(xs, q, labels=problem.alternatives, score_kind=settings.score)
    log.info("[solve] ranking %s", " > ".join(e.label for e in entries))
    return RankingReport(
        entries=entries,
        q=q,
        params=settings,
        expert_params=expert_p,
        criteria_params=criteria_p,
        criteria=problem.criteria,
        intermediates=fused if keep_intermediates else None,
    )


__all__ = [
    "Expert",
    "ProblemParams",
    "DecisionProblem",
    "RankEntry",
    "RankingReport",
    "REPORT_COLUMNS",
    "WeightVector",
    "resolve_q",
    "aggregate_experts",
    "aggregate_criteria",
    "rank",
    "solve",
]
