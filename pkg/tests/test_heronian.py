from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from ivqrof.errors import BothExponentsZero, DomainError, EmptyInput, WeightDimensionMismatch
from ivqrof.fuzzy_core import AggParams, IVqROFN, WeightVector, rung_powers, score, validate
from ivqrof.hamacher import h_power
from ivqrof.heronian import (
    accumulators,
    helper_terms,
    hhmga,
    hhmwa,
    hm_real,
    hmm,
    hmm_phi1,
    hmm_special_xy,
)
from ivqrof.oracle import fold_hhmga, fold_hhmwa, fold_hmm
from strategies import numbers, problems


def _gap(a: IVqROFN, b: IVqROFN) -> float:
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def test_hm_real() -> None:
    assert hm_real([2.0, 2.0, 2.0], 1, 1) == pytest.approx(2.0)
    # pairs (0,0), (0,1), (1,1) with only the earlier argument counted
    assert hm_real([1.0, 4.0], 1, 0) == pytest.approx(2.0)
    with pytest.raises(EmptyInput):
        hm_real([], 1, 1)
    with pytest.raises(BothExponentsZero):
        hm_real([1.0], 0, 0)
    with pytest.raises(DomainError):
        hm_real([-1.0], 1, 1)


def test_single_value_is_returned_unchanged(a1c1: list[IVqROFN]) -> None:
    p = AggParams()
    a = a1c1[0]
    assert _gap(hmm([a], p), a) < 1e-12
    assert _gap(hhmwa([a], [1.0], p), a) < 1e-12
    assert _gap(hhmga([a], [1.0], p), a) < 1e-12


def test_repeated_value_is_a_fixed_point() -> None:
    a = IVqROFN(0.3, 0.6, 0.2, 0.5)
    for phi in (0.5, 1.0, 3.0):
        p = AggParams(q=3, phi=phi, x=2, y=3)
        assert _gap(hmm([a] * 4, p), a) < 1e-9


def test_score_bound_fails_for_skewed_exponents() -> None:
    # both arguments score 0.1, the mean scores well below
    p = AggParams(q=2, phi=1, x=1, y=0)
    vs = [IVqROFN(0.5, 0.5, 0.8, 0.8), IVqROFN(0.1, 0.1, 0.0, 0.0)]
    assert score(vs[0]) == pytest.approx(0.1)
    assert score(vs[1]) == pytest.approx(0.1)
    out = hmm(vs, p)
    assert score(out) < 0.0
    # the componentwise envelope still holds
    assert 0.1 <= out.mu_lo <= 0.5 and 0.0 <= out.nu_hi <= 0.8


def test_special_cases_mirror_each_other(a1c1: list[IVqROFN]) -> None:
    p = AggParams()
    forward = hmm_special_xy(a1c1, p, "x1y0")
    backward = hmm_special_xy(list(reversed(a1c1)), p, "x0y1")
    assert _gap(forward, backward) < 1e-12
    with pytest.raises(DomainError):
        hmm_special_xy(a1c1, p, "x2y2")  # type: ignore[arg-type]


def test_phi_one_closed_form(a1c1: list[IVqROFN]) -> None:
    for x, y in ((1, 0), (0, 1), (1, 1), (2, 3), (3, 3)):
        p = AggParams(q=3, phi=1, x=x, y=y)
        assert _gap(hmm(a1c1, p), hmm_phi1(a1c1, 3, x, y)) < 1e-9


def test_weight_checks(a1c1: list[IVqROFN]) -> None:
    with pytest.raises(WeightDimensionMismatch):
        hhmwa(a1c1, [0.5, 0.5], AggParams())
    with pytest.raises(EmptyInput):
        hmm([], AggParams())
    with pytest.raises(DomainError):
        hhmga(a1c1, WeightVector.uniform(3), AggParams(), "mixed")  # type: ignore[arg-type]


def test_literal_geometric_form_differs_from_dual(a1c1: list[IVqROFN]) -> None:
    w = WeightVector((0.330, 0.334, 0.336))
    dual = hhmga(a1c1, w, AggParams())
    literal = hhmga(a1c1, w, AggParams(), "literal")
    validate(dual, 3)
    validate(literal, 3)
    assert _gap(dual, literal) > 1e-6


def test_helper_terms_and_accumulators(a1c1: list[IVqROFN]) -> None:
    p = AggParams()
    terms = helper_terms(a1c1, p)
    assert [(h.i, h.j) for h in terms] == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    for h in terms:
        assert h.v_lo >= h.w_lo and h.v_hi >= h.w_hi
        assert h.n_lo >= h.m_lo and h.n_hi >= h.m_hi
    weighted = helper_terms(a1c1, p, WeightVector((0.330, 0.334, 0.336)))
    assert len(weighted) == 6


@pytest.mark.parametrize("phi", [0.5, 1.0, 2.0, 3.0])
def test_accumulator_quotients_give_the_aggregate(a1c1: list[IVqROFN], phi: float) -> None:
    p = AggParams(phi=phi)
    w = WeightVector((0.330, 0.334, 0.336))
    for acc, expected in (
        (accumulators(a1c1, p), hmm(a1c1, p)),
        (accumulators(a1c1, p, w), hhmwa(a1c1, w, p)),
    ):
        assert acc.a_lo >= acc.b_lo >= 0.0 and acc.a_hi >= acc.b_hi >= 0.0
        assert acc.c_lo >= acc.d_lo >= 0.0 and acc.c_hi >= acc.d_hi >= 0.0
        member, nonmember = acc.quotients(phi)
        s, t = rung_powers(expected, p.q)
        np.testing.assert_allclose(member, s, rtol=0.0, atol=1e-9)
        np.testing.assert_allclose(nonmember, t, rtol=0.0, atol=1e-9)


def test_saturated_endpoints_match_the_fold() -> None:
    values = [
        IVqROFN(0.9999, 0.9999999, 0.0, 0.001),
        IVqROFN(0.0, 0.001, 0.9999, 0.9999999),
        IVqROFN(0.5, 0.6, 0.3, 0.4),
    ]
    w = WeightVector((0.3, 0.3, 0.4))
    p = AggParams()
    for mode in ("dual", "literal"):
        assert _gap(hhmga(values, w, p, mode), fold_hhmga(values, w, p, mode)) < 1e-9
    assert _gap(hmm(values, p), fold_hmm(values, p)) < 1e-9
    assert _gap(hhmwa(values, w, p), fold_hhmwa(values, w, p)) < 1e-9


@settings(max_examples=50, deadline=None)
@given(case=problems(symmetric=True))
def test_permutation_invariance_for_equal_exponents(case) -> None:
    p, values, w = case
    order = list(reversed(range(len(values))))
    shuffled = [values[k] for k in order]
    assert _gap(hmm(values, p), hmm(shuffled, p)) < 1e-12
    assert _gap(hhmwa(values, w, p), hhmwa(shuffled, w.permuted(order), p)) < 1e-12
    assert _gap(hhmga(values, w, p), hhmga(shuffled, w.permuted(order), p)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(case=problems())
def test_results_are_valid_and_inside_the_envelope(case) -> None:
    p, values, w = case
    raised = [h_power(a, wi, p) for a, wi in zip(values, w)]
    for out, args in (
        (hmm(values, p), values),
        (hhmwa(values, w, p), raised),
        (hhmga(values, w, p), raised),
    ):
        validate(out, p.q)
        lo = np.min([a.as_array() for a in args], axis=0)
        hi = np.max([a.as_array() for a in args], axis=0)
        assert np.all(out.as_array() >= lo - 1e-10)
        assert np.all(out.as_array() <= hi + 1e-10)


@settings(max_examples=40, deadline=None)
@given(case=problems(), b=numbers(1.0))
def test_raising_one_membership_never_lowers_the_mean(case, b: IVqROFN) -> None:
    p, values, w = case
    first = values[0]
    # lift the membership of the first argument as far as the rung allows
    cap = (1.0 - first.nu_hi**p.q) ** (1.0 / p.q)
    mu_hi = max(first.mu_hi, min(cap, first.mu_hi + b.mu_lo / 4))
    lifted = IVqROFN(first.mu_lo, mu_hi, first.nu_lo, first.nu_hi)
    better = [lifted, *values[1:]]
    for op in (lambda vs: hmm(vs, p), lambda vs: hhmwa(vs, w, p), lambda vs: hhmga(vs, w, p)):
        before, after = op(values), op(better)
        assert after.mu_hi >= before.mu_hi - 1e-12
        assert after.mu_lo >= before.mu_lo - 1e-12
