"""Canonical text rendering and bit-exact parsing."""

import json
import random

import pytest

from laxkit.algebra import AlgebraSignature, mat_equal
from laxkit.errors import ParseError
from laxkit.lax_rational import build_lax, fuse
from laxkit.lax_trig import build_lax_trig
from laxkit.ratfun import RatFun, Z, p_var, x_var
from laxkit.suite import (
    dst_divisor,
    random_element,
    random_ratfun,
    toda_divisor,
    trig_case_divisor,
)
from laxkit.textio import (
    matrix_from_json,
    matrix_to_json,
    parse_element,
    parse_ratfun,
    render_element,
    render_ratfun,
)


def test_documented_form():
    f = (
        RatFun.variable(Z)
        - RatFun.variable(p_var(1, 1))
        + 1
    ) / (
        (RatFun.variable(p_var(1, 1)) - RatFun.variable(p_var(1, 2)))
        * (RatFun.variable(Z) - RatFun.variable(x_var("1")))
    )
    text = render_ratfun(f)
    assert text == "(z - p[1,1] + 1) / ((p[1,1] - p[1,2]) * (z - x[1]))"
    assert parse_ratfun(text).equals(f)
    assert render_ratfun(parse_ratfun(text)) == text


def test_random_ratfun_roundtrip():
    rng = random.Random(31)
    for idx in range(120):
        f = random_ratfun(rng, "rational" if idx % 2 == 0 else "trig")
        text = render_ratfun(f)
        g = parse_ratfun(text)
        assert g.equals(f), text
        assert render_ratfun(g) == text, text


def test_random_element_roundtrip():
    rng = random.Random(32)
    for mode, a in (("rational", (2,)), ("trig", (2,))):
        sig = AlgebraSignature(2, mode, (a,), ("x1",))
        for _ in range(40):
            e = random_element(rng, sig)
            text = render_element(e)
            e2 = parse_element(text, sig)
            assert e2.equals(e), text
            assert render_element(e2) == text, text


def test_matrix_json_bit_exact():
    for mat in (
        build_lax(dst_divisor()),
        build_lax_trig(trig_case_divisor(4)),
        fuse(build_lax(toda_divisor()), build_lax(toda_divisor())),
    ):
        blob = json.dumps(matrix_to_json(mat), sort_keys=True)
        back = matrix_from_json(json.loads(blob))
        assert mat_equal(back.entries, mat.entries)
        assert json.dumps(matrix_to_json(back), sort_keys=True) == blob


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_ratfun("z +")
    with pytest.raises(ParseError):
        parse_ratfun("q[1]")
    sig = AlgebraSignature(2, "rational", ((1,),), ())
    with pytest.raises(ParseError):
        parse_element("(1) * e^{q[1,1]} trailing", sig)
