from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from .errors import (
    BothExponentsZero,
    DomainError,
    EmptyInput,
    Infeasible,
    IntervalOrderViolation,
    NonPositivePhi,
    NonPositiveScalar,
    RungConstraintViolation,
    WeightSumViolation,
)

# Slack on mu_hi^q + nu_hi^q <= 1 so that values produced by root/power round trips validate.
RUNG_SLACK = 1e-12
# Absolute tolerance for score/accuracy equality in compare().
COMPARE_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-9

ScoreKind = Literal["eq6", "qpow"]
# accepted spellings for the default score
SCORE_ALIASES: dict[str, ScoreKind] = {"linear": "eq6"}


def _unit_float(name: str, value: float) -> float:
    v = float(value)
    if not math.isfinite(v) or v < 0.0 or v > 1.0:
        raise DomainError(f"{name}={value!r} is not a real number in [0, 1]")
    return v


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise IntervalOrderViolation(f"interval [{self.lo}, {self.hi}] has lo > hi")


@dataclass(frozen=True, slots=True)
class IVqROFN:
    """Interval membership [mu_lo, mu_hi] and non-membership [nu_lo, nu_hi].

    Construction only checks that each endpoint is a finite number in [0, 1];
    interval order and the rung constraint depend on q and are checked by validate().
    """

    mu_lo: float
    mu_hi: float
    nu_lo: float
    nu_hi: float

    def __post_init__(self) -> None:
        for name in ("mu_lo", "mu_hi", "nu_lo", "nu_hi"):
            object.__setattr__(self, name, _unit_float(name, getattr(self, name)))

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> IVqROFN:
        if len(values) != 4:
            raise DomainError(
                f"expected [mu_lo, mu_hi, nu_lo, nu_hi], got {len(values)} values"
            )
        return cls(*values)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @property
    def membership(self) -> Interval:
        return Interval(self.mu_lo, self.mu_hi)

    @property
    def non_membership(self) -> Interval:
        return Interval(self.nu_lo, self.nu_hi)

    def swap(self) -> IVqROFN:
        """Exchange the membership and non-membership intervals."""
        return IVqROFN(self.nu_lo, self.nu_hi, self.mu_lo, self.mu_hi)

    def __str__(self) -> str:
        return f"([{self.mu_lo:.6g}, {self.mu_hi:.6g}], [{self.nu_lo:.6g}, {self.nu_hi:.6g}])"


SUM_NEUTRAL = IVqROFN(0.0, 0.0, 1.0, 1.0)
PROD_NEUTRAL = IVqROFN(1.0, 1.0, 0.0, 0.0)


def check_rung(q: float) -> float:
    qf = float(q)
    if not math.isfinite(qf) or qf < 1.0:
        raise DomainError(f"rung q={q!r} must be a real number >= 1")
    return qf


@dataclass(frozen=True, slots=True)
class AggParams:
    q: float = 3.0  # rung
    phi: float = 3.0  # Hamacher parameter; 1 = algebraic, 2 = Einstein
    x: float = 3.0  # Heronian exponent on the earlier argument of each pair
    y: float = 3.0  # Heronian exponent on the later argument of each pair

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", check_rung(self.q))
        phi = float(self.phi)
        if not math.isfinite(phi) or phi <= 0.0:
            raise NonPositivePhi(f"phi={self.phi!r} must be > 0")
        object.__setattr__(self, "phi", phi)
        for name in ("x", "y"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"{name}={getattr(self, name)!r} must be >= 0")
            object.__setattr__(self, name, v)
        if self.x == 0.0 and self.y == 0.0:
            raise BothExponentsZero("x and y cannot both be 0")

    def with_changes(self, **changes: float) -> AggParams:
        return replace(self, **changes)


@dataclass(frozen=True, slots=True)
class WeightVector:
    """Nonnegative weights summing to 1 (expert weights or criteria weights)."""

    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.entries)
        if not values:
            raise EmptyInput("weight vector is empty")
        for k, v in enumerate(values):
            if not math.isfinite(v) or v < 0.0 or v > 1.0:
                raise DomainError(f"weight #{k + 1}={v!r} is not in [0, 1]")
        total = math.fsum(values)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumViolation(f"weights sum to {total:.12g}, expected 1")
        object.__setattr__(self, "entries", values)

    @classmethod
    def uniform(cls, n: int) -> WeightVector:
        if n < 1:
            raise EmptyInput("weight vector is empty")
        return cls(tuple([1.0 / n] * n))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    def permuted(self, order: Sequence[int]) -> WeightVector:
        return WeightVector(tuple(self.entries[i] for i in order))


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def validate(a: IVqROFN, q: float) -> None:
    """Raise unless ``a`` is an IVq-ROFN at rung ``q``."""
    qf = check_rung(q)
    if a.mu_lo > a.mu_hi:
        raise IntervalOrderViolation(
            f"membership interval [{a.mu_lo}, {a.mu_hi}] has lo > hi"
        )
    if a.nu_lo > a.nu_hi:
        raise IntervalOrderViolation(
            f"non-membership interval [{a.nu_lo}, {a.nu_hi}] has lo > hi"
        )
    excess = a.mu_hi**qf + a.nu_hi**qf - 1.0
    if excess > RUNG_SLACK:
        raise RungConstraintViolation(
            f"mu_hi^q + nu_hi^q = {1.0 + excess:.12g} exceeds 1 by {excess:.3g} at q={qf:g}",
            excess=excess,
        )


def rung_powers(a: IVqROFN, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Return the q-th powers ([mu_lo, mu_hi], [nu_lo, nu_hi]) as arrays."""
    arr = np.power(a.as_array(), q)
    return arr[:2].copy(), arr[2:].copy()


def from_rung_powers(s: np.ndarray, t: np.ndarray, q: float) -> IVqROFN:
    """Build an IVqROFN from q-th powers of its endpoints (clipped to [0, 1])."""
    s = np.clip(np.asarray(s, dtype=float), 0.0, 1.0)
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    mu = np.power(s, 1.0 / q)
    nu = np.power(t, 1.0 / q)
    return IVqROFN(float(mu[0]), float(mu[1]), float(nu[0]), float(nu[1]))


def hesitancy(a: IVqROFN, q: float) -> Interval:
    validate(a, q)
    lo = max(0.0, 1.0 - a.mu_hi**q - a.nu_hi**q) ** (1.0 / q)
    hi = max(0.0, 1.0 - a.mu_lo**q - a.nu_lo**q) ** (1.0 / q)
    return Interval(lo, max(lo, hi))


def alg_sum(a: IVqROFN, b: IVqROFN, q: float) -> IVqROFN:
    validate(a, q)
    validate(b, q)
    sa, ta = rung_powers(a, q)
    sb, tb = rung_powers(b, q)
    return from_rung_powers(1.0 - (1.0 - sa) * (1.0 - sb), ta * tb, q)


def alg_prod(a: IVqROFN, b: IVqROFN, q: float) -> IVqROFN:
    validate(a, q)
    validate(b, q)
    sa, ta = rung_powers(a, q)
    sb, tb = rung_powers(b, q)
    return from_rung_powers(sa * sb, 1.0 - (1.0 - ta) * (1.0 - tb), q)


def _positive_scalar(lam: float) -> float:
    v = float(lam)
    if not math.isfinite(v) or v <= 0.0:
        raise NonPositiveScalar(f"scalar {lam!r} must be > 0")
    return v


def alg_scalar_mul(lam: float, a: IVqROFN, q: float) -> IVqROFN:
    lam = _positive_scalar(lam)
    validate(a, q)
    s, t = rung_powers(a, q)
    with np.errstate(divide="ignore"):
        return from_rung_powers(-np.expm1(lam * np.log1p(-s)), np.power(t, lam), q)


def alg_power(a: IVqROFN, lam: float, q: float) -> IVqROFN:
    lam = _positive_scalar(lam)
    validate(a, q)
    s, t = rung_powers(a, q)
    with np.errstate(divide="ignore"):
        return from_rung_powers(np.power(s, lam), -np.expm1(lam * np.log1p(-t)), q)


def score(a: IVqROFN) -> float:
    """Score in [-1, 1]; the pipeline default."""
    return 0.5 * (
        a.mu_lo - a.nu_hi * (1.0 - a.mu_hi) + a.mu_hi - a.nu_lo * (1.0 - a.mu_lo)
    )


def score_qpow(a: IVqROFN, q: float) -> float:
    """Alternative score on q-th powers: half the membership minus non-membership mass."""
    return 0.5 * (a.mu_lo**q + a.mu_hi**q - a.nu_lo**q - a.nu_hi**q)


def accuracy(a: IVqROFN, q: float) -> float:
    return 0.5 * (a.mu_lo**q + a.mu_hi**q + a.nu_lo**q + a.nu_hi**q)


def scorer_for(kind: ScoreKind | str, q: float) -> Callable[[IVqROFN], float]:
    if isinstance(kind, str):
        kind = SCORE_ALIASES.get(kind, kind)
    if kind == "eq6":
        return score
    if kind == "qpow":
        return lambda a: score_qpow(a, q)
    raise DomainError(f"unknown score kind {kind!r} (expected 'eq6' or 'qpow')")


def compare(a: IVqROFN, b: IVqROFN, q: float, *, score_kind: ScoreKind = "eq6") -> Ordering:
    """Order by score, then accuracy; equal only when both agree within COMPARE_TOL."""
    f = scorer_for(score_kind, q)
    sa, sb = f(a), f(b)
    if abs(sa - sb) > COMPARE_TOL:
        return Ordering.GREATER if sa > sb else Ordering.LESS
    ha, hb = accuracy(a, q), accuracy(b, q)
    if abs(ha - hb) > COMPARE_TOL:
        return Ordering.GREATER if ha > hb else Ordering.LESS
    return Ordering.EQUAL


def _smallest_rung(mu: float, nu: float) -> int:
    """Smallest integer q with mu^q + nu^q <= 1, by doubling and then bisection."""

    def fits(q: int) -> bool:
        return mu**q + nu**q - 1.0 <= RUNG_SLACK

    if fits(1):
        return 1
    lo, hi = 1, 2
    while not fits(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return hi


def infer_q(numbers: Iterable[IVqROFN]) -> int:
    """Smallest integer rung at which every number is valid."""
    items = list(numbers)
    if not items:
        raise EmptyInput("cannot infer q from an empty collection")
    rung = 1
    for a in items:
        if a.mu_lo > a.mu_hi or a.nu_lo > a.nu_hi:
            raise IntervalOrderViolation(f"{a} has an interval with lo > hi")
        if (a.mu_hi == 1.0 and a.nu_hi > 0.0) or (a.nu_hi == 1.0 and a.mu_hi > 0.0):
            raise Infeasible(f"{a}: mu_hi^q + nu_hi^q > 1 for every finite q")
        rung = max(rung, _smallest_rung(a.mu_hi, a.nu_hi))
    return rung


__all__ = [
    "IVqROFN",
    "Interval",
    "AggParams",
    "WeightVector",
    "Ordering",
    "ScoreKind",
    "SCORE_ALIASES",
    "SUM_NEUTRAL",
    "PROD_NEUTRAL",
    "RUNG_SLACK",
    "COMPARE_TOL",
    "check_rung",
    "validate",
    "rung_powers",
    "from_rung_powers",
    "hesitancy",
    "alg_sum",
    "alg_prod",
    "alg_scalar_mul",
    "alg_power",
    "score",
    "score_qpow",
    "accuracy",
    "scorer_for",
    "compare",
    "infer_q",
]
