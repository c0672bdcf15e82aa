import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from ghostcalc.cli import run
from ghostcalc.errors import ParseError
from ghostcalc.families import build_algebra
from ghostcalc.fields import Q, Cyclotomic, RatFun
from ghostcalc.parsing import parse_element, parse_scalar, parse_serialized, serialize_element
from ghostcalc.pbw import default_uea, named_ordering


def _elements(name):
    g = build_algebra(name)
    U = default_uea(g)
    word = st.lists(st.integers(0, g.dim - 1), max_size=4).map(tuple)
    coeff = st.builds(Q, st.integers(-9, 9), st.integers(1, 6))
    return st.lists(st.tuples(word, coeff), max_size=4).map(
        lambda ts: sum((U.word(w, c) for w, c in ts), U.zero()))


@pytest.mark.parametrize("name", ["gl(1|1)", "gl(2|1)", "osp(1|2)", "q(1)"])
@given(data=st.data())
def test_serialize_round_trip(name, data):
    g = build_algebra(name)
    a = data.draw(_elements(name))
    doc = json.loads(json.dumps(serialize_element(a)))
    assert parse_serialized(doc, g) == a
    assert parse_element(str(a), g) == a


@given(st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5))
def test_ratfun_coefficients_round_trip(a, b, k):
    g = build_algebra("gl(1|1)")
    c = RatFun.c()
    U = default_uea(g)
    e = U.word(("y", "x"), (c + Q(a, b)) / (c - k) if k else c + Q(a, b)) + U.gen("h1", c)
    assert parse_element(str(e), g, "ratfun-c") == e
    assert parse_serialized(serialize_element(e), g, "ratfun-c") == e


def test_cyclotomic_literals():
    z = parse_scalar("zeta^2 + 1", "cyclotomic:5")
    assert z == Cyclotomic.zeta(5) ** 2 + 1
    assert parse_scalar("cyc5[1, 0, 1]", "cyclotomic:5") == z
    assert parse_scalar("zeta^3", "cyclotomic:3") == 1


def test_orderings_parse_consistently():
    g = build_algebra("gl(2|1)")
    a = parse_element("e13*e31 + 2*h1", g, ordering="hc")
    b = parse_element("e13*e31 + 2*h1", g, ordering="kac")
    assert b.reorder(named_ordering(g, "hc")) == a


def test_arithmetic_forms():
    g = build_algebra("gl(1|1)")
    assert str(parse_element("x*y", g)) == "-y*x + h1 + h2"
    assert str(parse_element("(h1 + h2)^2 / 2", g)) == "1/2*h1^2 + h1*h2 + 1/2*h2^2"
    assert parse_element("x^2", g).is_zero()
    assert str(parse_element("-3/4*h1 - (-h2)", g)) == "-3/4*h1 + h2"
    with pytest.raises(ParseError):
        parse_element("h1 - -h2", g)


@pytest.mark.parametrize("text, position", [
    ("x*", 2), ("x + q", 4), ("(x", 2), ("x / y", 2), ("h1^x", 3), ("1/0", 0), ("x $ y", 2), ("", 0),
])
def test_parse_error_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_element(text, build_algebra("gl(1|1)"))
    assert info.value.position == position
    assert info.value.expected


def test_field_specific_literals_are_rejected():
    g = build_algebra("gl(1|1)")
    with pytest.raises(ParseError):
        parse_element("c*x", g)
    with pytest.raises(ParseError):
        parse_element("zeta*x", g, "ratfun-c")
    with pytest.raises(ParseError):
        parse_scalar("cyc3[1, 1]", "cyclotomic:5")


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_cli_text_output():
    code, out, _ = cli("vg", "--algebra", "gl(1|1)")
    assert code == 0 and out.strip() == "element: y*x"
    code, out, _ = cli("hc", "--algebra", "gl(1|1)", "--element", "x*y")
    assert code == 0 and "hc: h1 + h2" in out
    code, out, _ = cli("ptrace", "--algebra", "gl(2|1)", "--weight", "1,0,0")
    assert out.strip() == "text: -c + 2"


def test_cli_json_report():
    code, out, _ = cli("aphi", "--algebra", "gl(1|1)", "--phi", "delta", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert doc["algebra"]["name"] == "gl(1|1)"
    assert "timing_seconds" not in doc
    code, out, _ = cli("tg", "--algebra", "gl(1|1)", "--json", "--timing")
    assert "timing_seconds" in json.loads(out)


@pytest.mark.parametrize("argv, expected", [
    (["hc", "--algebra", "gl(1|1)", "--element", "x*"], 2),
    (["kac", "--algebra", "gl(2|1)", "--weight", "0,1,0"], 2),
    (["vg", "--algebra", "foo(1)"], 2),
    (["frobnicate"], 2),
    (["zfull-decompose", "--algebra", "gl(1|1)"], 2),
    (["aphi", "--algebra", "gl(1|1)", "--phi", "rotate"], 2),
    (["check-graded", "--algebra", "gl(2|1)", "--weight", "3,0,1", "--element", "e21*e12"], 1),
    (["zfull-decompose", "--algebra", "gl(1|1)", "--phi", "c", "--M", "1",
      "--element", "y*x + (c/(1-c))*(h1+h2)"], 1),
    (["zfull-decompose", "--algebra", "gl(1|1)", "--phi", "scale(c)", "--field", "ratfun-c",
      "--element", "y*x + (c/(1-c))*(h1+h2)"], 0),
    (["semisimple", "--algebra", "osp(1|2)"], 0),
])
def test_cli_exit_codes(argv, expected, capsys):
    assert run(argv, io.StringIO(), io.StringIO()) == expected


def test_cli_json_is_byte_stable():
    argv = ["central-element", "--algebra", "gl(2|1)", "--json"]
    first, second = cli(*argv)[1], cli(*argv)[1]
    assert first == second
    assert json.loads(first)["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ghostcalc", "tg", "--algebra", "gl(1|1)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "t_g: h1 + h2"


def test_verify_suite_subset():
    code, out, _ = cli("verify-suite", "--level", "quick")
    assert code == 0
    assert len(out.strip().splitlines()) == 10
