from __future__ import annotations

from functools import cmp_to_key

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivqrof.errors import (
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
from ivqrof.fuzzy_core import (
    PROD_NEUTRAL,
    SUM_NEUTRAL,
    AggParams,
    Interval,
    IVqROFN,
    Ordering,
    WeightVector,
    accuracy,
    alg_power,
    alg_prod,
    alg_scalar_mul,
    alg_sum,
    compare,
    hesitancy,
    infer_q,
    score,
    score_qpow,
    scorer_for,
    validate,
)
from strategies import numbers


def test_score_unit_values() -> None:
    assert score(IVqROFN(1, 1, 0, 0)) == 1.0
    assert score(IVqROFN(0, 0, 1, 1)) == -1.0
    assert score(IVqROFN(0.35, 0.45, 0.5, 0.65)) == pytest.approx(0.05875, abs=1e-12)


def test_accuracy_unit_value() -> None:
    assert accuracy(IVqROFN(0.5, 0.5, 0.5, 0.5), 3) == pytest.approx(0.25, abs=1e-12)


def test_score_qpow_is_half_the_mass_difference() -> None:
    a = IVqROFN(0.5, 0.5, 0.5, 0.5)
    assert score_qpow(a, 3) == 0.0
    assert score_qpow(IVqROFN(1, 1, 0, 0), 2) == 1.0
    assert scorer_for("qpow", 2)(IVqROFN(1, 1, 0, 0)) == 1.0
    assert scorer_for("linear", 2) is scorer_for("eq6", 2)
    with pytest.raises(DomainError):
        scorer_for("median", 2)  # type: ignore[arg-type]


def test_construction_checks_unit_range_only() -> None:
    with pytest.raises(DomainError):
        IVqROFN(0.2, 1.2, 0.1, 0.2)
    with pytest.raises(DomainError):
        IVqROFN(float("nan"), 0.5, 0.1, 0.2)
    # order is a validate() concern
    a = IVqROFN(0.6, 0.5, 0.1, 0.2)
    with pytest.raises(IntervalOrderViolation):
        validate(a, 2)
    with pytest.raises(IntervalOrderViolation):
        Interval(0.6, 0.5)


def test_validate_reports_rung_excess() -> None:
    a = IVqROFN(0.9, 0.95, 0.1, 0.2)
    validate(a, 2)
    with pytest.raises(RungConstraintViolation) as info:
        validate(a, 1)
    assert info.value.excess == pytest.approx(0.15)
    with pytest.raises(DomainError):
        validate(a, 0.5)


def test_swap_and_neutral_elements() -> None:
    a = IVqROFN(0.1, 0.2, 0.3, 0.4)
    assert a.swap() == IVqROFN(0.3, 0.4, 0.1, 0.2)
    assert a.swap().swap() == a
    assert SUM_NEUTRAL.as_tuple() == (0.0, 0.0, 1.0, 1.0)
    assert PROD_NEUTRAL.as_tuple() == (1.0, 1.0, 0.0, 0.0)
    assert IVqROFN.from_sequence([0.1, 0.2, 0.3, 0.4]) == a
    with pytest.raises(DomainError):
        IVqROFN.from_sequence([0.1, 0.2])


def test_hesitancy_interval() -> None:
    h = hesitancy(IVqROFN(0.5, 0.5, 0.5, 0.5), 2)
    assert h.lo == pytest.approx(0.5 ** 0.5)
    assert h.hi == pytest.approx(h.lo)
    full = hesitancy(IVqROFN(0, 0, 0, 0), 3)
    assert (full.lo, full.hi) == (1.0, 1.0)


def test_agg_params_validation() -> None:
    assert AggParams() == AggParams(q=3, phi=3, x=3, y=3)
    with pytest.raises(NonPositivePhi):
        AggParams(phi=0)
    with pytest.raises(BothExponentsZero):
        AggParams(x=0, y=0)
    with pytest.raises(DomainError):
        AggParams(x=-1)
    with pytest.raises(DomainError):
        AggParams(q=0.5)
    assert AggParams().with_changes(phi=1).phi == 1.0


def test_weight_vector_checks_sum() -> None:
    assert len(WeightVector.uniform(4)) == 4
    assert sum(WeightVector((0.194, 0.234, 0.218, 0.183, 0.171))) == pytest.approx(1.0)
    with pytest.raises(WeightSumViolation):
        WeightVector((0.5, 0.4))
    with pytest.raises(DomainError):
        WeightVector((1.5, -0.5))
    with pytest.raises(EmptyInput):
        WeightVector(())
    assert WeightVector((0.2, 0.8)).permuted([1, 0]).entries == (0.8, 0.2)


def test_compare_uses_accuracy_on_score_ties() -> None:
    q = 2
    a = IVqROFN(0.5, 0.5, 0.0, 0.0)
    b = IVqROFN(0.6, 0.6, 0.0, 0.0)
    assert compare(a, b, q) is Ordering.LESS
    assert compare(b, a, q) is Ordering.GREATER
    assert compare(a, a, q) is Ordering.EQUAL
    # both score 0 under eq6, accuracy differs
    c = IVqROFN(0.0, 0.0, 0.0, 0.0)
    d = IVqROFN(0.5, 0.5, 1.0, 1.0)
    assert score(c) == score(d) == pytest.approx(0.0)
    assert compare(c, d, q) is Ordering.LESS


def test_infer_q() -> None:
    assert infer_q([IVqROFN(0.3, 0.4, 0.2, 0.5)]) == 1
    assert infer_q([IVqROFN(0.9, 0.9, 0.5, 0.5)]) == 3
    with pytest.raises(Infeasible):
        infer_q([IVqROFN(1, 1, 0.5, 0.5)])
    with pytest.raises(EmptyInput):
        infer_q([])


def test_algebraic_neutral_elements() -> None:
    a = IVqROFN(0.3, 0.5, 0.2, 0.4)
    assert alg_sum(a, SUM_NEUTRAL, 3).as_tuple() == pytest.approx(a.as_tuple())
    assert alg_prod(a, PROD_NEUTRAL, 3).as_tuple() == pytest.approx(a.as_tuple())
    assert alg_scalar_mul(1.0, a, 3).as_tuple() == pytest.approx(a.as_tuple())
    assert alg_power(a, 1.0, 3).as_tuple() == pytest.approx(a.as_tuple())
    with pytest.raises(NonPositiveScalar):
        alg_scalar_mul(0.0, a, 3)


@settings(max_examples=60, deadline=None)
@given(a=numbers(3.0), b=numbers(3.0), lam=st.floats(min_value=0.05, max_value=5.0))
def test_algebraic_ops_stay_valid(a: IVqROFN, b: IVqROFN, lam: float) -> None:
    for out in (
        alg_sum(a, b, 3),
        alg_prod(a, b, 3),
        alg_scalar_mul(lam, a, 3),
        alg_power(a, lam, 3),
    ):
        validate(out, 3)
    assert alg_sum(a, b, 3).as_tuple() == pytest.approx(alg_sum(b, a, 3).as_tuple())


@settings(max_examples=60, deadline=None)
@given(a=numbers(2.0))
def test_score_and_accuracy_ranges(a: IVqROFN) -> None:
    assert -1.0 <= score(a) <= 1.0
    assert 0.0 <= accuracy(a, 2) <= 1.0
    assert infer_q([a]) <= 2


def test_worked_examples() -> None:
    a = IVqROFN(0.6, 0.7, 0.3, 0.4)
    h = hesitancy(a, 2)
    assert h.lo == pytest.approx(0.35**0.5, abs=1e-12)
    assert h.hi == pytest.approx(0.55**0.5, abs=1e-12)
    total = alg_sum(a, IVqROFN(0.5, 0.6, 0.5, 0.6), 2)
    assert total.as_tuple() == pytest.approx((0.52**0.5, 0.6736**0.5, 0.15, 0.24), abs=1e-12)


def test_infer_q_has_no_upper_cap() -> None:
    # 2 * 0.999999^q <= 1 first holds at q = 693147
    q = infer_q([IVqROFN(0.999999, 0.999999, 0.999999, 0.999999)])
    assert q == 693147
    validate(IVqROFN(0.999999, 0.999999, 0.999999, 0.999999), q)
    assert infer_q([IVqROFN(1.0, 1.0, 0.0, 0.0), IVqROFN(0.0, 0.0, 1.0, 1.0)]) == 1


@settings(max_examples=60, deadline=None)
@given(
    values=st.lists(numbers(3.0, corners=True), min_size=1, max_size=4),
    extra=numbers(3.0, corners=True),
)
def test_infer_q_never_drops_when_numbers_are_added(
    values: list[IVqROFN], extra: IVqROFN
) -> None:
    assert infer_q([*values, extra]) >= infer_q(values)


@settings(max_examples=60, deadline=None)
@given(a=numbers(2.0, corners=True), f=st.floats(min_value=0.0, max_value=1.0))
def test_score_is_monotone_in_each_endpoint(a: IVqROFN, f: float) -> None:
    base = score(a)
    cap = (1.0 - a.nu_hi**2) ** 0.5
    raised = (
        IVqROFN(a.mu_lo + f * (a.mu_hi - a.mu_lo), a.mu_hi, a.nu_lo, a.nu_hi),
        IVqROFN(a.mu_lo, a.mu_hi + f * max(cap - a.mu_hi, 0.0), a.nu_lo, a.nu_hi),
    )
    lowered = (
        IVqROFN(a.mu_lo, a.mu_hi, a.nu_lo * f, a.nu_hi),
        IVqROFN(a.mu_lo, a.mu_hi, a.nu_lo, a.nu_lo + f * (a.nu_hi - a.nu_lo)),
    )
    for b in (*raised, *lowered):
        assert score(b) >= base - 1e-12


@settings(max_examples=60, deadline=None)
@given(a=numbers(2.0, corners=True), b=numbers(2.0, corners=True), c=numbers(2.0, corners=True))
def test_compare_is_a_total_preorder(a: IVqROFN, b: IVqROFN, c: IVqROFN) -> None:
    q = 2
    assert compare(a, a, q) is Ordering.EQUAL
    assert compare(a, b, q) == -compare(b, a, q)
    ordered = sorted([a, b, c], key=cmp_to_key(lambda u, v: int(compare(u, v, q))))
    for i in range(3):
        for j in range(i + 1, 3):
            assert compare(ordered[i], ordered[j], q) is not Ordering.GREATER
