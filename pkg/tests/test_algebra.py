import json

import pytest

from ghostcalc.algebra import BasisVector, LieSuperalgebra, validate_algebra
from ghostcalc.errors import InvalidAlgebra, UnsupportedAlgebra
from ghostcalc.families import build_algebra, parse_algebra_name
from ghostcalc.fields import Q
from ghostcalc.verify import BUILT_INS


@pytest.mark.parametrize("name", BUILT_INS)
def test_built_ins_validate(name):
    report = validate_algebra(build_algebra(name))
    assert report.ok, report.failures()


@pytest.mark.parametrize("name, dim, odd", [
    ("gl(1|1)", 4, 2), ("gl(2|1)", 9, 4), ("sl(2|1)", 8, 4), ("osp(1|2)", 5, 2),
    ("osp(1|4)", 14, 4), ("q(1)", 2, 1), ("abelian(3|2)", 5, 2),
])
def test_dimensions(name, dim, odd):
    g = build_algebra(name)
    assert g.dim == dim
    assert len(g.odd_indices) == odd


def test_name_parsing():
    assert parse_algebra_name("gl(2|1)") == ("gl", (2, 1))
    assert parse_algebra_name("gl,2,1") == ("gl", (2, 1))
    assert parse_algebra_name("q(1)") == ("q", (1,))
    with pytest.raises(UnsupportedAlgebra):
        build_algebra("q(2)")


def test_type_one_gradings():
    assert build_algebra("gl(2|1)").is_type_one
    assert not build_algebra("osp(1|2)").is_type_one


def test_cartan_even_flag():
    assert build_algebra("gl(2|1)").is_cartan_even
    assert not build_algebra("q(1)").is_cartan_even


def test_json_round_trip_keeps_fingerprint():
    for name in ("gl(2|1)", "osp(1|2)", "q(1)"):
        g = build_algebra(name)
        doc = json.loads(json.dumps(g.to_json()))
        h = LieSuperalgebra.from_json(doc)
        assert h.fingerprint() == g.fingerprint()
        assert h.names == g.names


def _gl11_doc():
    return json.loads(json.dumps(build_algebra("gl(1|1)").to_json()))


def test_wrong_bracket_sign_is_rejected():
    doc = _gl11_doc()
    # flip [x, y] but keep [y, x], breaking supersymmetry
    for entry in doc["brackets"]:
        if (entry[0], entry[1]) == (2, 3):
            entry[2] = {k: str(-Q(v)) for k, v in entry[2].items()}
    with pytest.raises(InvalidAlgebra) as info:
        LieSuperalgebra.from_json(doc)
    assert not info.value.report.ok


def test_jacobi_failure_is_reported():
    basis = [BasisVector(0, "a", 0), BasisVector(1, "b", 0), BasisVector(2, "c", 0)]
    # [a,b]=c, [b,c]=a, [a,c]=a is not a Lie algebra
    brackets = {(0, 1): {2: Q(1)}, (1, 2): {0: Q(1)}, (0, 2): {0: Q(1)}}
    g = LieSuperalgebra("broken", basis, brackets)
    report = validate_algebra(g)
    assert not report.ok
    assert report.to_dict()["ok"] is False


def test_unknown_format_rejected():
    with pytest.raises(InvalidAlgebra):
        LieSuperalgebra.from_json({"format": "something-else"})


def test_weights_of_gl21():
    g = build_algebra("gl(2|1)")
    assert g.basis[g.index("e13")].weight == (1, 0, -1)
    assert g.basis[g.index("e21")].weight == (-1, 1, 0)
