from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from ivqrof.errors import DomainError, EmptyInput, RungConstraintViolation, WeightDimensionMismatch
from ivqrof.fuzzy_core import AggParams, IVqROFN, WeightVector
from ivqrof.heronian import hhmga, hhmwa, hmm
from ivqrof.oracle import FoldSpec, fold_eval, fold_hhmga, fold_hhmwa, fold_hmm
from strategies import problems

EXPERT_WEIGHTS = WeightVector((0.330, 0.334, 0.336))


def _gap(a: IVqROFN, b: IVqROFN) -> float:
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def test_closed_forms_match_the_fold_on_a_case_study_cell(a1c1: list[IVqROFN]) -> None:
    p = AggParams()
    assert _gap(hmm(a1c1, p), fold_hmm(a1c1, p)) < 1e-9
    assert _gap(hhmwa(a1c1, EXPERT_WEIGHTS, p), fold_hhmwa(a1c1, EXPERT_WEIGHTS, p)) < 1e-9
    assert _gap(hhmga(a1c1, EXPERT_WEIGHTS, p), fold_hhmga(a1c1, EXPERT_WEIGHTS, p)) < 1e-9
    literal = fold_hhmga(a1c1, EXPERT_WEIGHTS, p, "literal")
    assert _gap(hhmga(a1c1, EXPERT_WEIGHTS, p, "literal"), literal) < 1e-9


def test_fold_of_one_value_is_that_value() -> None:
    a = IVqROFN(0.35, 0.45, 0.5, 0.65)
    for phi in (0.5, 1.0, 3.0):
        p = AggParams(q=3, phi=phi, x=2, y=1)
        assert _gap(fold_hmm([a], p), a) < 1e-12
        assert _gap(fold_hhmwa([a], [1.0], p), a) < 1e-12
        assert _gap(fold_hhmga([a], [1.0], p), a) < 1e-12


def test_phi_one_hamacher_fold_equals_algebraic_fold(a1c1: list[IVqROFN]) -> None:
    p = AggParams(q=3, phi=1, x=2, y=3)
    for kind in ("hmm", "hhmwa", "hhmga_dual"):
        w = None if kind == "hmm" else EXPERT_WEIGHTS
        hamacher = fold_eval(FoldSpec(kind, tuple(a1c1), p, w))  # type: ignore[arg-type]
        algebraic = fold_eval(
            FoldSpec(kind, tuple(a1c1), p, w, algebra="algebraic")  # type: ignore[arg-type]
        )
        assert _gap(hamacher, algebraic) < 1e-12


def test_fold_spec_rejects_bad_requests(a1c1: list[IVqROFN]) -> None:
    p = AggParams()
    values = tuple(a1c1)
    with pytest.raises(DomainError):
        FoldSpec("median", values, p)  # type: ignore[arg-type]
    with pytest.raises(DomainError):
        FoldSpec("hmm", values, p, algebra="einstein")  # type: ignore[arg-type]
    with pytest.raises(EmptyInput):
        FoldSpec("hmm", (), p)
    with pytest.raises(DomainError):
        FoldSpec("hmm", values, p, EXPERT_WEIGHTS)
    with pytest.raises(WeightDimensionMismatch):
        FoldSpec("hhmwa", values, p)
    with pytest.raises(WeightDimensionMismatch):
        FoldSpec("hhmga_dual", values, p, WeightVector((0.5, 0.5)))


def test_fold_validates_its_inputs() -> None:
    with pytest.raises(RungConstraintViolation):
        fold_hmm([IVqROFN(0.9, 0.95, 0.1, 0.2)], AggParams(q=1))


@settings(max_examples=25, deadline=None)
@given(case=problems(max_n=4))
def test_closed_forms_match_the_fold(case) -> None:
    p, values, w = case
    assert _gap(hmm(values, p), fold_hmm(values, p)) < 1e-9
    assert _gap(hhmwa(values, w, p), fold_hhmwa(values, w, p)) < 1e-9
    assert _gap(hhmga(values, w, p), fold_hhmga(values, w, p)) < 1e-9
