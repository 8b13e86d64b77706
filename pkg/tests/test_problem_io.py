from __future__ import annotations

import io
import json
from pathlib import Path

import pandas as pd
import pytest

from ivqrof.errors import (
    CellError,
    DocumentSyntaxError,
    DomainError,
    IntervalOrderViolation,
    SchemaError,
    WeightSumViolation,
)
from ivqrof.fuzzy_core import IVqROFN
from ivqrof.mcgdm import REPORT_COLUMNS, solve
from ivqrof.problem_io import (
    dump_problem,
    emit_report,
    format_number,
    load_document,
    parse_document,
    parse_number,
    parse_problem,
)

SMALL = {
    "alternatives": ["A1", "A2"],
    "criteria": ["C1"],
    "criteria_weights": [1.0],
    "params": {"q": 2, "phi": 2, "x": 1, "y": 1},
    "experts": [
        {"label": "E1", "matrix": [[[0.6, 0.7, 0.2, 0.3]], [[[0.3, 0.4], [0.5, 0.6]]]]},
    ],
}

SMALL_YAML = """\
criteria_weights: [0.5, 0.5]
params:
  q: auto
experts:
  - matrix:
      - [[0.6, 0.7, 0.2, 0.3], [0.5, 0.6, 0.3, 0.4]]
"""


def _with_cell(cell: object) -> str:
    doc = json.loads(json.dumps(SMALL))
    doc["experts"][0]["matrix"][1][0] = cell
    return json.dumps(doc)


def test_parse_json_with_nested_cells() -> None:
    problem = parse_problem(json.dumps(SMALL))
    assert problem.alternatives == ("A1", "A2")
    assert problem.experts[0].matrix[1][0] == IVqROFN(0.3, 0.4, 0.5, 0.6)
    assert problem.params.explicit_q == 2.0
    assert problem.params.phi == 2.0


def test_score_names_in_params() -> None:
    for name, expected in (("eq6", "eq6"), ("linear", "eq6"), ("qpow", "qpow")):
        doc = {**SMALL, "params": {"q": 2, "score": name}}
        assert parse_problem(json.dumps(doc)).params.score == expected
    with pytest.raises(DomainError):
        parse_problem(json.dumps({**SMALL, "params": {"score": "median"}}))


def test_parse_yaml_with_defaults() -> None:
    problem = parse_problem(SMALL_YAML)
    assert problem.alternatives == ("A1",)
    assert problem.criteria == ("C1", "C2")
    assert problem.experts[0].label == "E1"
    assert problem.params.q == "auto"
    assert problem.params.x == 3.0


def test_parse_number_forms() -> None:
    assert parse_number([0.1, 0.2, 0.3, 0.4]) == parse_number([[0.1, 0.2], [0.3, 0.4]])
    with pytest.raises(SchemaError):
        parse_number([0.1, 0.2, 0.3])
    with pytest.raises(SchemaError):
        parse_number([0.1, "x", 0.3, 0.4])
    with pytest.raises(IntervalOrderViolation):
        parse_number([0.3, 0.2, 0.3, 0.4])


def test_syntax_errors() -> None:
    with pytest.raises(DocumentSyntaxError):
        parse_document("{not: [valid")
    with pytest.raises(SchemaError):
        parse_document("- just\n- a list\n")


def test_schema_errors() -> None:
    for change in (
        {"surprise": 1},
        {"params": {"q": 3, "rung": 3}},
        {"criteria_weights": "equal"},
        {"experts": []},
        {"alternatives": ["A1", "A1"]},
    ):
        doc = {**SMALL, **change}
        with pytest.raises(SchemaError):
            parse_document(json.dumps(doc))


def test_criteria_weights_must_sum_to_one() -> None:
    with pytest.raises(WeightSumViolation):
        parse_document(json.dumps({**SMALL, "criteria_weights": [0.9]}))


def test_cell_errors_carry_their_position() -> None:
    with pytest.raises(CellError) as info:
        parse_document(_with_cell([0.5, 0.4, 0.1, 0.2]))
    err = info.value
    assert (err.expert, err.row, err.col) == ("E1", 2, 1)
    assert "row 2 col 1" in str(err)
    with pytest.raises(CellError):
        parse_document(_with_cell([0.5, 1.4, 0.1, 0.2]))


def test_dump_round_trip(case_study_path: Path) -> None:
    doc = load_document(case_study_path)
    text = dump_problem(doc.problem, doc.reference)
    again = parse_document(text)
    assert again.problem == doc.problem
    assert again.reference == doc.reference


def test_text_report_leads_with_the_ranking() -> None:
    report = solve(parse_problem(json.dumps(SMALL)))
    text = emit_report(report)
    assert text.splitlines()[0] == "A1 > A2"
    assert "R (experts fused per cell):" in text
    assert "q=2 phi=2 x=1 y=1 score=eq6" in text
    bare = emit_report(solve(parse_problem(json.dumps(SMALL)), keep_intermediates=False))
    assert "R (experts" not in bare


def test_csv_report_reads_back() -> None:
    report = solve(parse_problem(json.dumps(SMALL)))
    frame = pd.read_csv(io.StringIO(emit_report(report, "csv")))
    assert list(frame.columns) == REPORT_COLUMNS
    assert list(frame["alternative"]) == ["A1", "A2"]
    assert frame["score"].iloc[0] == pytest.approx(report.entries[0].score, abs=1e-9)
    with pytest.raises(SchemaError):
        emit_report(report, "xml")  # type: ignore[arg-type]


def test_format_number() -> None:
    assert format_number(IVqROFN(0.5, 0.75, 0.1, 0.2)) == "([0.5, 0.75], [0.1, 0.2])"
