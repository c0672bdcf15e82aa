"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``pytest -s``)
and then checks a few frozen values from the criterion details on top of the
overall verdict.
"""

import pytest

from ghostcalc.verify import CRITERIA, run_criterion

LEVEL = "full"
_cache = {}


def _run(number):
    if number not in _cache:
        _cache[number] = run_criterion(CRITERIA[number - 1], LEVEL, seed=0)
        print(_cache[number].line())
    return _cache[number]


def test_closed_forms_match_solver():
    res = _run(1)
    assert res.passed, res.details
    assert res.details["gl(1|1)"]["closed_form"] == "y*x"
    assert res.details["osp(1|2)"]["closed_form"] == "u1*v1 + 1"
    assert all(entry["ratio_to_solver"] == 1 for entry in res.details.values())


def test_semisimplicity_by_counit():
    res = _run(2)
    assert res.passed, res.details
    assert res.details["osp(1|2)"]["counit"] == 1
    assert res.details["osp(1|4)"]["counit"] == 3
    assert res.details["gl(2|1)"]["counit"] == 0


def test_projectivity_polynomial_vanishes_on_atypicals():
    res = _run(3)
    assert res.passed, res.details
    assert res.details["gl(1|1)"]["grid_mismatches"] == []
    assert res.details["gl(2|1)"]["grid_mismatches"] == []


def test_hc_degree_bound():
    res = _run(4)
    assert res.passed, res.details
    assert res.details["q(1)"]["route"] == "diagonal pair"
    assert all(d["samples"] == 200 for d in res.details.values())


def test_ghost_centre_images():
    res = _run(5)
    assert res.passed, res.details
    assert all(not d["failures"] for d in res.details.values())


def test_vandermonde_decomposition():
    res = _run(6)
    assert res.passed, res.details
    assert res.details["M=1"]["fails"]
    assert res.details["minimal_M"] == 2
    assert res.details["M=2"]["automorphisms"] == ["identity", "delta"]


def test_central_elements_and_limit():
    res = _run(7)
    assert res.passed, res.details
    assert res.details["gl(2|1)"]["hc_ratio_to_t_g"] == -1


def test_representation_oracle():
    res = _run(8)
    assert res.passed, res.details
    assert res.details["gl(1|1)"]["failure_count"] == 0
    assert res.details["gl(2|1)"]["failure_count"] == 0
    assert res.details["gl(2|1)"]["typical"] > 0


def test_non_cartan_even_q1():
    res = _run(9)
    assert res.passed, res.details
    assert res.details["zero_set_on_grid"] == [0]
    assert res.details["p"] == "4*h"


def test_pbw_engine_oracle():
    res = _run(10)
    assert res.passed, res.details
    assert res.details["validation_failures"] == []
    assert res.details["gl(2|1)"]["matrix_mismatches"] == 0


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion_line_format(number):
    line = _run(number).line()
    assert line.startswith(("[PASS] ", "[FAIL] "))
    assert f" {number}. " in line
