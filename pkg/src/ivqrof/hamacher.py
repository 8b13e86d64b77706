"""Hamacher t-conorm/t-norm on [0, 1] and the Hamacher operations on IVq-ROFNs.

The IVq-ROFN operations share one code path: endpoints are raised to the rung,
mapped through the additive generator of the Hamacher t-conorm (membership side of
sums and multiples) or t-norm (membership side of products and powers), combined
additively, mapped back and rooted. With phi > 0 the generators are

    conorm: h(s) = log(1 + phi * s / (1 - s))      h(0) = 0, h(1) = inf
    norm:   g(s) = log(1 + phi * (1 - s) / s)      g(1) = 0, g(0) = inf

and they are linked by the involution ``swap_generator`` (``g = c(h)``, ``h = c(g)``).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NonPositivePhi, NonPositiveScalar, NumericalDegeneracy
from .fuzzy_core import AggParams, IVqROFN, from_rung_powers, rung_powers, validate


def _check_phi(phi: float) -> float:
    v = float(phi)
    if not math.isfinite(v) or v <= 0.0:
        raise NonPositivePhi(f"phi={phi!r} must be > 0")
    return v


def _check_unit(name: str, value: float) -> float:
    v = float(value)
    if not math.isfinite(v) or v < 0.0 or v > 1.0:
        raise DomainError(f"{name}={value!r} is outside [0, 1]")
    return v


def h_sum_scalar(a: float, b: float, phi: float) -> float:
    """Hamacher t-conorm (a + b + (phi - 2)ab) / (1 + (phi - 1)ab); neutral element 0."""
    phi = _check_phi(phi)
    a, b = _check_unit("a", a), _check_unit("b", b)
    den = 1.0 + (phi - 1.0) * a * b
    if den <= 0.0:
        raise NumericalDegeneracy(f"t-conorm denominator {den!r} <= 0 for a={a}, b={b}")
    return min(1.0, (a + b + (phi - 2.0) * a * b) / den)


def h_prod_scalar(a: float, b: float, phi: float) -> float:
    """Hamacher t-norm ab / (phi + (1 - phi)(a + b - ab)); neutral element 1."""
    phi = _check_phi(phi)
    a, b = _check_unit("a", a), _check_unit("b", b)
    den = phi + (1.0 - phi) * (a + b - a * b)
    if den <= 0.0:
        raise NumericalDegeneracy(f"t-norm denominator {den!r} <= 0 for a={a}, b={b}")
    return min(1.0, a * b / den)


def conorm_generator(
    s: np.ndarray, phi: float, rest: np.ndarray | None = None
) -> np.ndarray:
    """h(s); ``rest`` is 1 - s when the caller has it more accurately than the subtraction."""
    r = 1.0 - s if rest is None else rest
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log1p(phi * s / r)


def conorm_inverse(z: np.ndarray, phi: float) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        return 1.0 / (1.0 + phi / np.expm1(z))


def norm_generator(
    s: np.ndarray, phi: float, rest: np.ndarray | None = None
) -> np.ndarray:
    r = 1.0 - s if rest is None else rest
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log1p(phi * r / s)


def norm_inverse(z: np.ndarray, phi: float) -> np.ndarray:
    with np.errstate(over="ignore"):
        return phi / (np.expm1(z) + phi)


def swap_generator(z: np.ndarray, phi: float) -> np.ndarray:
    """Map a t-conorm generator value to the t-norm generator of the same point (and back)."""
    with np.errstate(divide="ignore", over="ignore"):
        return np.log1p(phi * phi / np.expm1(z))


def scale(theta: float | np.ndarray, z: np.ndarray) -> np.ndarray:
    """theta * z with 0 * inf taken as 0 (a zero coefficient yields the neutral element)."""
    theta = np.asarray(theta, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.where(theta == 0.0, 0.0, theta * z)


def _finished(s: np.ndarray, t: np.ndarray, q: float, what: str) -> IVqROFN:
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(t))):
        raise NumericalDegeneracy(f"{what} produced non-finite endpoints s={s}, t={t}")
    return from_rung_powers(s, t, q)


def h_sum(a: IVqROFN, b: IVqROFN, p: AggParams) -> IVqROFN:
    validate(a, p.q)
    validate(b, p.q)
    sa, ta = rung_powers(a, p.q)
    sb, tb = rung_powers(b, p.q)
    s = conorm_inverse(conorm_generator(sa, p.phi) + conorm_generator(sb, p.phi), p.phi)
    t = norm_inverse(norm_generator(ta, p.phi) + norm_generator(tb, p.phi), p.phi)
    return _finished(s, t, p.q, "h_sum")


def h_prod(a: IVqROFN, b: IVqROFN, p: AggParams) -> IVqROFN:
    validate(a, p.q)
    validate(b, p.q)
    sa, ta = rung_powers(a, p.q)
    sb, tb = rung_powers(b, p.q)
    s = norm_inverse(norm_generator(sa, p.phi) + norm_generator(sb, p.phi), p.phi)
    t = conorm_inverse(conorm_generator(ta, p.phi) + conorm_generator(tb, p.phi), p.phi)
    return _finished(s, t, p.q, "h_prod")


def _positive(theta: float) -> float:
    v = float(theta)
    if not math.isfinite(v) or v <= 0.0:
        raise NonPositiveScalar(f"theta={theta!r} must be > 0")
    return v


def h_scalar_mul(theta: float, a: IVqROFN, p: AggParams) -> IVqROFN:
    theta = _positive(theta)
    validate(a, p.q)
    s, t = rung_powers(a, p.q)
    s2 = conorm_inverse(scale(theta, conorm_generator(s, p.phi)), p.phi)
    t2 = norm_inverse(scale(theta, norm_generator(t, p.phi)), p.phi)
    return _finished(s2, t2, p.q, "h_scalar_mul")


def h_power(a: IVqROFN, theta: float, p: AggParams) -> IVqROFN:
    theta = _positive(theta)
    validate(a, p.q)
    s, t = rung_powers(a, p.q)
    s2 = norm_inverse(scale(theta, norm_generator(s, p.phi)), p.phi)
    t2 = conorm_inverse(scale(theta, conorm_generator(t, p.phi)), p.phi)
    return _finished(s2, t2, p.q, "h_power")


__all__ = [
    "h_sum_scalar",
    "h_prod_scalar",
    "conorm_generator",
    "conorm_inverse",
    "norm_generator",
    "norm_inverse",
    "swap_generator",
    "scale",
    "h_sum",
    "h_prod",
    "h_scalar_mul",
    "h_power",
]
