"""Heronian means: the real-valued mean and the three Hamacher-Heronian fusions.

All double sums and products run over index pairs (i, j) with i <= j, in row-major
order (i ascending, then j); ``2 / (n(n + 1))`` is the pair-count normaliser.

The closed forms are evaluated in generator space (see ``hamacher``), where every
Hamacher operation is additive: x-multiples scale the t-conorm generator, powers
scale the t-norm generator and ``swap_generator`` moves between the two. This is the
pair-helper/accumulator closed form rewritten as sums of generators, which avoids
the cancellation in a - b and c - d that the raw products suffer when pair
memberships saturate. ``accumulators`` still reports the raw a, b, c, d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import (
    BothExponentsZero,
    DomainError,
    EmptyInput,
    NumericalDegeneracy,
    WeightDimensionMismatch,
)
from .fuzzy_core import AggParams, IVqROFN, WeightVector, from_rung_powers, validate
from .hamacher import (
    conorm_generator,
    conorm_inverse,
    norm_generator,
    norm_inverse,
    scale,
    swap_generator,
)

HhmgaMode = Literal["dual", "literal"]
SpecialCase = Literal["x1y0", "x0y1"]

# Relative slack for the V >= W and N >= M helper invariants.
_HELPER_SLACK = 1e-12


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n)


def _pair_weight(n: int) -> float:
    return 2.0 / (n * (n + 1))


def hm_real(values: Sequence[float], x: float, y: float) -> float:
    """Heronian mean of nonnegative reals."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise EmptyInput("Heronian mean of an empty list")
    if x < 0 or y < 0:
        raise DomainError(f"exponents must be >= 0, got x={x}, y={y}")
    if x == 0 and y == 0:
        raise BothExponentsZero("x and y cannot both be 0")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("Heronian mean is defined for finite nonnegative values")
    i, j = _pairs(arr.size)
    mean = _pair_weight(arr.size) * float(np.sum(arr[i] ** x * arr[j] ** y))
    return mean ** (1.0 / (x + y))


@dataclass(frozen=True, slots=True)
class HelperTerms:
    """Pair helpers for pair (i, j) (0-based).

    v/w: ratio v/w is the t-conorm generator ratio of the pair's membership term;
    n/m: ratio n/m is the t-norm generator ratio of its non-membership term.
    """

    i: int
    j: int
    v_lo: float
    v_hi: float
    w_lo: float
    w_hi: float
    n_lo: float
    n_hi: float
    m_lo: float
    m_hi: float


@dataclass(frozen=True, slots=True)
class Accumulators:
    """Closed-form accumulators a, b (membership) and c, d (non-membership)."""

    a_lo: float
    a_hi: float
    b_lo: float
    b_hi: float
    c_lo: float
    c_hi: float
    d_lo: float
    d_hi: float

    def quotients(self, phi: float) -> tuple[np.ndarray, np.ndarray]:
        """q-th powers of the aggregate per endpoint.

        Membership is (a - b) / (a + (phi - 1) b); non-membership is phi d / (c + (phi - 1) d).
        """
        a = np.array([self.a_lo, self.a_hi])
        b = np.array([self.b_lo, self.b_hi])
        c = np.array([self.c_lo, self.c_hi])
        d = np.array([self.d_lo, self.d_hi])
        return (a - b) / (a + (phi - 1.0) * b), phi * d / (c + (phi - 1.0) * d)


def _stack(values: Sequence[IVqROFN], q: float) -> tuple[np.ndarray, np.ndarray]:
    items = list(values)
    if not items:
        raise EmptyInput("aggregation of an empty list")
    for a in items:
        validate(a, q)
    arr = np.power(np.array([a.as_tuple() for a in items], dtype=float), q)
    return arr[:, :2], arr[:, 2:]


def _stack_with_rest(
    values: Sequence[IVqROFN], q: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """q-th powers plus their complements 1 - v^q, taken as -expm1(q log v)."""
    items = list(values)
    s, t = _stack(items, q)
    ends = np.array([a.as_tuple() for a in items], dtype=float)
    with np.errstate(divide="ignore"):
        # + 0.0 turns the -0.0 of a saturated endpoint into 0.0
        rest = -np.expm1(q * np.log(ends)) + 0.0
    return s, t, rest[:, :2], rest[:, 2:]


def _weights_array(weights: WeightVector | Sequence[float], n: int) -> np.ndarray:
    wv = weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))
    if len(wv) != n:
        raise WeightDimensionMismatch(f"{len(wv)} weights for {n} values")
    return wv.as_array()[:, None]


def _finish(s: np.ndarray, t: np.ndarray, q: float, what: str) -> IVqROFN:
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(t))):
        raise NumericalDegeneracy(f"{what}: non-finite closed-form result s={s}, t={t}")
    return from_rung_powers(s, t, q)


def _arithmetic_sides(
    s: np.ndarray,
    t: np.ndarray,
    w: np.ndarray | None,
    phi: float,
    rests: tuple[np.ndarray, np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    """Membership t-conorm and non-membership t-norm generators of a_i^{w_i}."""
    s_rest, t_rest = rests
    if w is None:
        return conorm_generator(s, phi, s_rest), norm_generator(t, phi, t_rest)
    member = swap_generator(scale(w, norm_generator(s, phi, s_rest)), phi)
    nonmember = swap_generator(scale(w, conorm_generator(t, phi, t_rest)), phi)
    return member, nonmember


def _geometric_sides(
    s: np.ndarray,
    t: np.ndarray,
    w: np.ndarray,
    phi: float,
    rests: tuple[np.ndarray, np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    """Membership t-norm and non-membership t-conorm generators of a_i^{w_i}."""
    s_rest, t_rest = rests
    return scale(w, norm_generator(s, phi, s_rest)), scale(w, conorm_generator(t, phi, t_rest))


def _pair_totals(z: np.ndarray, x: float, y: float, phi: float) -> np.ndarray:
    """Normalised pair sum on the opposite generator side: e * sum_{i<=j} c(x z_i + y z_j)."""
    n = z.shape[0]
    i, j = _pairs(n)
    pair = scale(x, z[i]) + scale(y, z[j])
    return _pair_weight(n) * np.sum(swap_generator(pair, phi), axis=0)


def _mean_kernel(z: np.ndarray, x: float, y: float, phi: float) -> np.ndarray:
    total = _pair_totals(z, x, y, phi)
    if np.any(np.isnan(total)) or np.any(total < 0):
        raise NumericalDegeneracy(f"accumulator exponent {total} violates a >= b >= 0")
    return swap_generator(total, phi) / (x + y)


def _literal_kernel(z: np.ndarray, x: float, y: float, phi: float) -> np.ndarray:
    n = z.shape[0]
    i, j = _pairs(n)
    pair = swap_generator(scale(x, z[i]), phi) + swap_generator(scale(y, z[j]), phi)
    total = np.sum(swap_generator(_pair_weight(n) * pair, phi), axis=0)
    return total / (x + y)


def hmm(values: Sequence[IVqROFN], p: AggParams) -> IVqROFN:
    """Hamacher-Heronian mean (unweighted)."""
    s, t, s_rest, t_rest = _stack_with_rest(values, p.q)
    zm, zn = _arithmetic_sides(s, t, None, p.phi, (s_rest, t_rest))
    s_out = conorm_inverse(_mean_kernel(zm, p.x, p.y, p.phi), p.phi)
    t_out = norm_inverse(_mean_kernel(zn, p.x, p.y, p.phi), p.phi)
    return _finish(s_out, t_out, p.q, "hmm")


def _log1mexp(z: np.ndarray) -> np.ndarray:
    """log(1 - exp(z)) for z <= 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(z > -math.log(2.0), np.log(-np.expm1(z)), np.log1p(-np.exp(z)))


def hmm_phi1(values: Sequence[IVqROFN], q: float, x: float, y: float) -> IVqROFN:
    """Algebraic (phi = 1) Heronian mean, written directly in products of powers."""
    p = AggParams(q=q, phi=1.0, x=x, y=y)
    s, t = _stack(values, p.q)
    n = s.shape[0]
    i, j = _pairs(n)
    e = _pair_weight(n)
    inv = 1.0 / (p.x + p.y)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_rest = np.log1p(-s)
        rest_pair = np.exp(scale(p.x, log_rest[i]) + scale(p.y, log_rest[j]))
        log_prod = e * np.sum(np.log1p(-rest_pair), axis=0)
        s_out = -np.expm1(inv * _log1mexp(log_prod))

        log_t = np.log(t)
        t_pair = np.exp(scale(p.x, log_t[i]) + scale(p.y, log_t[j]))
        log_keep = e * np.sum(np.log1p(-t_pair), axis=0)
        t_out = np.exp(inv * _log1mexp(log_keep))
    return _finish(s_out, t_out, p.q, "hmm_phi1")


def hhmwa(
    values: Sequence[IVqROFN], weights: WeightVector | Sequence[float], p: AggParams
) -> IVqROFN:
    """Weighted arithmetic Hamacher-Heronian mean; each a_i is first raised to w_i."""
    s, t, s_rest, t_rest = _stack_with_rest(values, p.q)
    w = _weights_array(weights, s.shape[0])
    zm, zn = _arithmetic_sides(s, t, w, p.phi, (s_rest, t_rest))
    s_out = conorm_inverse(_mean_kernel(zm, p.x, p.y, p.phi), p.phi)
    t_out = norm_inverse(_mean_kernel(zn, p.x, p.y, p.phi), p.phi)
    return _finish(s_out, t_out, p.q, "hhmwa")


def hhmga(
    values: Sequence[IVqROFN],
    weights: WeightVector | Sequence[float],
    p: AggParams,
    mode: HhmgaMode = "dual",
) -> IVqROFN:
    """Weighted geometric Hamacher-Heronian mean.

    ``dual``: (sum_{i<=j} e * (b_i^x (x) b_j^y))^(1/(x+y)) with b_i = a_i^{w_i}.
    ``literal``: (1/(x+y)) * sum_{i<=j} ((x b_i) (x) (y b_j))^e.
    """
    s, t, s_rest, t_rest = _stack_with_rest(values, p.q)
    w = _weights_array(weights, s.shape[0])
    if mode == "dual":
        zm, zn = _geometric_sides(s, t, w, p.phi, (s_rest, t_rest))
        s_out = norm_inverse(_mean_kernel(zm, p.x, p.y, p.phi), p.phi)
        t_out = conorm_inverse(_mean_kernel(zn, p.x, p.y, p.phi), p.phi)
    elif mode == "literal":
        zm, zn = _arithmetic_sides(s, t, w, p.phi, (s_rest, t_rest))
        s_out = conorm_inverse(_literal_kernel(zm, p.x, p.y, p.phi), p.phi)
        t_out = norm_inverse(_literal_kernel(zn, p.x, p.y, p.phi), p.phi)
    else:
        raise DomainError(f"unknown hhmga mode {mode!r} (expected 'dual' or 'literal')")
    return _finish(s_out, t_out, p.q, f"hhmga[{mode}]")


def hmm_special_xy(values: Sequence[IVqROFN], p: AggParams, which: SpecialCase) -> IVqROFN:
    """hmm at (x, y) = (1, 0) or (0, 1); p.x and p.y are ignored.

    The two cases are mirror images: hmm_special_xy(a, x1y0) equals
    hmm_special_xy(reversed(a), x0y1).
    """
    if which == "x1y0":
        return hmm(values, p.with_changes(x=1.0, y=0.0))
    if which == "x0y1":
        return hmm(values, p.with_changes(x=0.0, y=1.0))
    raise DomainError(f"unknown special case {which!r} (expected 'x1y0' or 'x0y1')")


def _helper_factors(
    s: np.ndarray, t: np.ndarray, w: np.ndarray | None, phi: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if w is None:
        return 1.0 + (phi - 1.0) * s, 1.0 - s, 1.0 + (phi - 1.0) * (1.0 - t), t
    kw = np.power(phi + (1.0 - phi) * s, w)
    sw = np.power(s, w)
    lw = np.power(1.0 + (phi - 1.0) * t, w)
    rw = np.power(1.0 - t, w)
    sq = phi * phi - 1.0
    return kw + sq * sw, kw - sw, lw + sq * rw, lw - rw


def helper_terms(
    values: Sequence[IVqROFN],
    p: AggParams,
    weights: WeightVector | Sequence[float] | None = None,
) -> list[HelperTerms]:
    """Pair helper products for hmm (weights=None) or hhmwa, in pair order."""
    s, t = _stack(values, p.q)
    w = None if weights is None else _weights_array(weights, s.shape[0])
    v, wf, nf, mf = _helper_factors(s, t, w, p.phi)
    out: list[HelperTerms] = []
    for i, j in zip(*_pairs(s.shape[0])):
        big_v = v[i] ** p.x * v[j] ** p.y
        big_w = wf[i] ** p.x * wf[j] ** p.y
        big_n = nf[i] ** p.x * nf[j] ** p.y
        big_m = mf[i] ** p.x * mf[j] ** p.y
        if np.any(big_v < big_w * (1.0 - _HELPER_SLACK)) or np.any(
            big_n < big_m * (1.0 - _HELPER_SLACK)
        ):
            raise NumericalDegeneracy(f"pair ({i}, {j}) helpers violate V >= W or N >= M")
        out.append(
            HelperTerms(
                int(i), int(j),
                float(big_v[0]), float(big_v[1]), float(big_w[0]), float(big_w[1]),
                float(big_n[0]), float(big_n[1]), float(big_m[0]), float(big_m[1]),
            )
        )
    return out


def accumulators(
    values: Sequence[IVqROFN],
    p: AggParams,
    weights: WeightVector | Sequence[float] | None = None,
) -> Accumulators:
    """Closed-form accumulators for hmm (weights=None) or hhmwa.

    With A = prod (V + (phi^2 - 1) W)^e and B = prod (V - W)^e over the pairs,
    a = (A + (phi^2 - 1) B)^(1/(x+y)) and b = (A - B)^(1/(x+y)); c and d are the
    same combinations of N and M. ``Accumulators.quotients`` maps them back to the
    q-th powers of the aggregate.
    """
    terms = helper_terms(values, p, weights)
    e = 1.0 / len(terms)
    sq = p.phi * p.phi - 1.0
    v = np.array([[h.v_lo, h.v_hi] for h in terms])
    w = np.array([[h.w_lo, h.w_hi] for h in terms])
    nf = np.array([[h.n_lo, h.n_hi] for h in terms])
    mf = np.array([[h.m_lo, h.m_hi] for h in terms])
    with np.errstate(divide="ignore"):
        big_a = np.exp(e * np.sum(np.log(v + sq * w), axis=0))
        big_b = np.exp(e * np.sum(np.log(np.maximum(v - w, 0.0)), axis=0))
        big_c = np.exp(e * np.sum(np.log(nf + sq * mf), axis=0))
        big_d = np.exp(e * np.sum(np.log(np.maximum(nf - mf, 0.0)), axis=0))
    if np.any(big_a < big_b * (1.0 - _HELPER_SLACK)) or np.any(
        big_c < big_d * (1.0 - _HELPER_SLACK)
    ):
        raise NumericalDegeneracy("accumulator products violate a >= b or c >= d")
    root = 1.0 / (p.x + p.y)
    a = np.power(big_a + sq * big_b, root)
    b = np.power(np.maximum(big_a - big_b, 0.0), root)
    c = np.power(big_c + sq * big_d, root)
    d = np.power(np.maximum(big_c - big_d, 0.0), root)
    return Accumulators(
        float(a[0]), float(a[1]), float(b[0]), float(b[1]),
        float(c[0]), float(c[1]), float(d[0]), float(d[1]),
    )


__all__ = [
    "HelperTerms",
    "Accumulators",
    "hm_real",
    "hmm",
    "hmm_phi1",
    "hhmwa",
    "hhmga",
    "hmm_special_xy",
    "helper_terms",
    "accumulators",
]
