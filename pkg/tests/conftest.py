from __future__ import annotations

from pathlib import Path

import pytest

from ivqrof.fuzzy_core import IVqROFN
from ivqrof.mcgdm import DecisionProblem
from ivqrof.problem_io import ProblemDocument, load_document

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def case_study_path() -> Path:
    return FIXTURES / "case_study.json"


@pytest.fixture
def case_study(case_study_path: Path) -> ProblemDocument:
    return load_document(case_study_path)


@pytest.fixture
def case_problem(case_study: ProblemDocument) -> DecisionProblem:
    return case_study.problem


@pytest.fixture
def a1c1() -> list[IVqROFN]:
    """Alternative A1 under the first criterion, one value per expert."""
    return [
        IVqROFN(0.35, 0.45, 0.50, 0.65),
        IVqROFN(0.40, 0.45, 0.50, 0.60),
        IVqROFN(0.40, 0.50, 0.50, 0.60),
    ]
