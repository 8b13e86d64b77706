"""Reference evaluation of the aggregation operators by literal fold.

Every operator is rebuilt term by term from the four binary/scalar operations
(sum, product, multiple, power) in their printed quotient forms, evaluated over
the q-th powers of the endpoints in high-precision decimal arithmetic. The q-th
root is taken once, at the end. Slow (O(n^2) primitive calls, each a handful of
decimal powers) and independent of the generator arithmetic used by the closed
forms in ``heronian``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Literal, Sequence

from .errors import DomainError, EmptyInput, WeightDimensionMismatch
from .fuzzy_core import AggParams, IVqROFN, WeightVector, validate

FoldKind = Literal["hmm", "hhmwa", "hhmga_dual", "hhmga_literal"]
Algebra = Literal["hamacher", "algebraic"]

FOLD_KINDS: tuple[str, ...] = ("hmm", "hhmwa", "hhmga_dual", "hhmga_literal")
ORACLE_PRECISION = 50

# (s_lo, s_hi, t_lo, t_hi): q-th powers of (mu_lo, mu_hi, nu_lo, nu_hi)
_Powers = tuple[Decimal, Decimal, Decimal, Decimal]

_ZERO = Decimal(0)
_ONE = Decimal(1)


def _clamped(*ends: Decimal) -> _Powers:
    lo_s, hi_s, lo_t, hi_t = (min(max(v, _ZERO), _ONE) for v in ends)
    return (lo_s, hi_s, lo_t, hi_t)


@dataclass(frozen=True, slots=True)
class FoldSpec:
    kind: FoldKind
    values: tuple[IVqROFN, ...]
    params: AggParams
    weights: WeightVector | None = None
    algebra: Algebra = "hamacher"

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if self.kind not in FOLD_KINDS:
            raise DomainError(f"unknown fold kind {self.kind!r}")
        if self.algebra not in ("hamacher", "algebraic"):
            raise DomainError(f"unknown algebra {self.algebra!r}")
        if not self.values:
            raise EmptyInput("fold over an empty list")
        if self.kind == "hmm":
            if self.weights is not None:
                raise DomainError("hmm takes no weights")
        elif self.weights is None:
            raise WeightDimensionMismatch(f"{self.kind} requires weights")
        elif len(self.weights) != len(self.values):
            raise WeightDimensionMismatch(
                f"{len(self.weights)} weights for {len(self.values)} values"
            )


class _Primitives:
    """Endpoint-wise operations on q-th powers; membership first, then non-membership."""

    def __init__(self, phi: Decimal, algebra: Algebra) -> None:
        self.phi = phi
        self.algebraic = algebra == "algebraic"

    # scalar t-conorm / t-norm and their scalings
    def _s(self, a: Decimal, b: Decimal) -> Decimal:
        if self.algebraic:
            return a + b - a * b
        phi = self.phi
        return (a + b + (phi - 2) * a * b) / (1 + (phi - 1) * a * b)

    def _t(self, a: Decimal, b: Decimal) -> Decimal:
        if self.algebraic:
            return a * b
        phi = self.phi
        return a * b / (phi + (1 - phi) * (a + b - a * b))

    def _s_scaled(self, theta: Decimal, s: Decimal) -> Decimal:
        if self.algebraic:
            return _ONE - (_ONE - s) ** theta
        phi = self.phi
        big = (1 + (phi - 1) * s) ** theta
        small = (_ONE - s) ** theta
        return (big - small) / (big + (phi - 1) * small)

    def _t_scaled(self, theta: Decimal, t: Decimal) -> Decimal:
        if self.algebraic:
            return t**theta
        phi = self.phi
        big = (1 + (phi - 1) * (1 - t)) ** theta
        small = t**theta
        return phi * small / (big + (phi - 1) * small)

    def add(self, a: _Powers, b: _Powers) -> _Powers:
        return _clamped(
            self._s(a[0], b[0]), self._s(a[1], b[1]),
            self._t(a[2], b[2]), self._t(a[3], b[3]),
        )

    def mul(self, a: _Powers, b: _Powers) -> _Powers:
        return _clamped(
            self._t(a[0], b[0]), self._t(a[1], b[1]),
            self._s(a[2], b[2]), self._s(a[3], b[3]),
        )

    def times(self, theta: Decimal, a: _Powers) -> _Powers:
        if theta == 0:
            return (_ZERO, _ZERO, _ONE, _ONE)
        return _clamped(
            self._s_scaled(theta, a[0]), self._s_scaled(theta, a[1]),
            self._t_scaled(theta, a[2]), self._t_scaled(theta, a[3]),
        )

    def power(self, a: _Powers, theta: Decimal) -> _Powers:
        if theta == 0:
            return (_ONE, _ONE, _ZERO, _ZERO)
        return _clamped(
            self._t_scaled(theta, a[0]), self._t_scaled(theta, a[1]),
            self._s_scaled(theta, a[2]), self._s_scaled(theta, a[3]),
        )


def _to_powers(a: IVqROFN, q: Decimal) -> _Powers:
    lo_mu, hi_mu, lo_nu, hi_nu = (Decimal(v) ** q for v in a.as_tuple())
    return (lo_mu, hi_mu, lo_nu, hi_nu)


def _from_powers(a: _Powers, q: Decimal) -> IVqROFN:
    inv = _ONE / q
    ends = [min(max(v, _ZERO), _ONE) ** inv for v in a]
    return IVqROFN(*(float(v) for v in ends))


def fold_eval(spec: FoldSpec) -> IVqROFN:
    """Evaluate ``spec`` by folding over pairs i <= j in row-major order."""
    p = spec.params
    for a in spec.values:
        validate(a, p.q)
    with localcontext() as ctx:
        ctx.prec = ORACLE_PRECISION
        q = Decimal(p.q)
        x, y = Decimal(p.x), Decimal(p.y)
        ops = _Primitives(Decimal(p.phi), spec.algebra)
        args = [_to_powers(a, q) for a in spec.values]
        if spec.weights is not None:
            args = [ops.power(a, Decimal(w)) for a, w in zip(args, spec.weights)]
        n = len(args)
        e = Decimal(2) / Decimal(n * (n + 1))
        inv = _ONE / (x + y)

        acc: _Powers | None = None
        for i in range(n):
            for j in range(i, n):
                if spec.kind in ("hmm", "hhmwa"):
                    term = ops.power(ops.add(ops.times(x, args[i]), ops.times(y, args[j])), e)
                    acc = term if acc is None else ops.mul(acc, term)
                elif spec.kind == "hhmga_dual":
                    term = ops.times(e, ops.mul(ops.power(args[i], x), ops.power(args[j], y)))
                    acc = term if acc is None else ops.add(acc, term)
                else:
                    term = ops.power(ops.mul(ops.times(x, args[i]), ops.times(y, args[j])), e)
                    acc = term if acc is None else ops.add(acc, term)
        assert acc is not None
        if spec.kind == "hhmga_dual":
            result = ops.power(acc, inv)
        else:
            result = ops.times(inv, acc)
        return _from_powers(result, q)


def fold_hmm(values: Sequence[IVqROFN], p: AggParams) -> IVqROFN:
    return fold_eval(FoldSpec("hmm", tuple(values), p))


def fold_hhmwa(
    values: Sequence[IVqROFN], weights: WeightVector | Sequence[float], p: AggParams
) -> IVqROFN:
    wv = weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))
    return fold_eval(FoldSpec("hhmwa", tuple(values), p, wv))


def fold_hhmga(
    values: Sequence[IVqROFN],
    weights: WeightVector | Sequence[float],
    p: AggParams,
    mode: Literal["dual", "literal"] = "dual",
) -> IVqROFN:
    wv = weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))
    kind: FoldKind = "hhmga_dual" if mode == "dual" else "hhmga_literal"
    return fold_eval(FoldSpec(kind, tuple(values), p, wv))


__all__ = [
    "FoldSpec",
    "FoldKind",
    "FOLD_KINDS",
    "ORACLE_PRECISION",
    "fold_eval",
    "fold_hmm",
    "fold_hhmwa",
    "fold_hhmga",
]
