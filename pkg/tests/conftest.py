import json

import pytest

from dcfpr import DNumber, Problem

# Worked 4-alternative cases used across the suite: one fully certain chain,
# one with an incomplete judgment (mass 0.8) and an uncertain one (two values).
CERTAIN_VALUES = (0.55, 0.65, 0.75)


@pytest.fixture
def certain_problem() -> Problem:
    return Problem(
        ("A1", "A2", "A3", "A4"),
        tuple(DNumber(((v, 1.0),)) for v in CERTAIN_VALUES),
    )


@pytest.fixture
def uncertain_problem() -> Problem:
    return Problem(
        ("A1", "A2", "A3", "A4"),
        (
            DNumber(((0.55, 0.8),)),
            DNumber(((0.65, 1.0),)),
            DNumber(((0.75, 0.9), (0.85, 0.1))),
        ),
    )


def problem_doc(problem: Problem) -> dict:
    return {
        "version": 1,
        "alternatives": list(problem.alternatives),
        "comparisons": [
            {
                "left": k + 1,
                "right": k + 2,
                "components": [{"b": c.b, "v": c.v} for c in d.components],
            }
            for k, d in enumerate(problem.judgments)
        ],
    }


@pytest.fixture
def certain_doc(certain_problem) -> dict:
    return problem_doc(certain_problem)


@pytest.fixture
def uncertain_doc(uncertain_problem) -> dict:
    return problem_doc(uncertain_problem)


@pytest.fixture
def certain_file(tmp_path, certain_doc) -> str:
    path = tmp_path / "certain.json"
    path.write_text(json.dumps(certain_doc))
    return str(path)


@pytest.fixture
def uncertain_file(tmp_path, uncertain_doc) -> str:
    path = tmp_path / "uncertain.json"
    path.write_text(json.dumps(uncertain_doc))
    return str(path)
