"""Coweight lattice, diagrams, divisors, admissibility."""

import json
import random

import pytest

from laxkit.coweight import (
    Coweight,
    Divisor,
    PseudoYoungDiagram,
    convert_basis,
    divisor_from_young,
    fundamental_coweight,
    simple_coroot,
)
from laxkit.errors import BadDiagram, NotAdmissible, SizeMismatch


def test_basis_examples():
    assert fundamental_coweight(2, 1).d == (0, -1)
    assert Coweight.from_fundamental([-1, 2]).d == (1, -1)
    assert simple_coroot(2, 1).d == (1, -1)
    assert PseudoYoungDiagram((2, 0)).coweight().d == (0, -2)
    assert convert_basis([0, 1], 2, "epsilon") == (0, -1)
    assert convert_basis([0, -1], 2, "fundamental") == (0, 1)


def test_basis_roundtrip():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(2, 6)
        c = [rng.randint(-4, 4) for _ in range(n)]
        assert list(Coweight.from_fundamental(c).to_fundamental()) == c
        d = [rng.randint(-4, 4) for _ in range(n)]
        cw = Coweight.from_epsilon(d)
        assert Coweight.from_fundamental(cw.to_fundamental()) == cw


def test_dominance():
    assert fundamental_coweight(2, 1).is_dominant()
    assert not (-simple_coroot(2, 1)).is_dominant()
    assert fundamental_coweight(5, 0).is_dominant()  # constant entries


def test_a_vector_examples():
    assert Divisor.make(2, "rational", [], 3 * simple_coroot(2, 1)).a_vector() == (3,)
    d = divisor_from_young(
        PseudoYoungDiagram((0, 0, 0, 0)), [], PseudoYoungDiagram((1, 1, -1, -1))
    )
    assert d.a_vector() == (1, 2, 1)


def test_a_vector_closed_form():
    rng = random.Random(6)
    hits = 0
    for _ in range(600):
        n = rng.randint(2, 5)
        bl = tuple(sorted((rng.randint(0, 3) for _ in range(n)), reverse=True))
        bm = tuple(sorted((rng.randint(-3, 3) for _ in range(n)), reverse=True))
        if sum(bl) + sum(bm) != 0:
            continue
        try:
            div = divisor_from_young(
                PseudoYoungDiagram(bl),
                [f"x{i}" for i in range(bl[0])],
                PseudoYoungDiagram(bm),
            )
        except NotAdmissible:
            # closed form must then produce a negative entry
            a = [-sum(bl[j] + bm[j] for j in range(n - i, n)) for i in range(1, n)]
            assert any(x < 0 for x in a)
            continue
        hits += 1
        a = div.a_vector()
        for i in range(1, n):
            assert a[i - 1] == -sum(bl[j] + bm[j] for j in range(n - i, n))
        full = (0,) + a + (0,)
        for j in range(1, n + 1):
            assert full[j] - full[j - 1] == -bl[n - j] - bm[n - j]
    assert hits > 20


def test_divisor_from_young_examples():
    d = divisor_from_young(
        PseudoYoungDiagram((1, 0)), ["x1"], PseudoYoungDiagram((0, -1))
    )
    assert d.mu.to_fundamental() == (-1, 1)
    assert [s.index for s in d.summands] == [1]

    d2 = divisor_from_young(
        PseudoYoungDiagram((0, 0)), [], PseudoYoungDiagram((1, -1))
    )
    assert d2.mu == simple_coroot(2, 1)
    assert d2.a_vector() == (1,)

    d4 = divisor_from_young(
        PseudoYoungDiagram((1, 0, 0, 0)), ["x1"], PseudoYoungDiagram((0, 0, 0, -1))
    )
    assert [s.index for s in d4.summands] == [3]  # column of height 1
    assert d4.mu.to_fundamental() == (-1, 1, 0, 0)


def test_divisor_errors():
    with pytest.raises(NotAdmissible):
        Divisor.make(2, "rational", [], Coweight.from_epsilon([1, 1]))
    with pytest.raises(SizeMismatch):
        divisor_from_young(
            PseudoYoungDiagram((1, 0)), ["x1"], PseudoYoungDiagram((0, 0))
        )
    with pytest.raises(SizeMismatch):
        divisor_from_young(
            PseudoYoungDiagram((1, 0)), [], PseudoYoungDiagram((0, -1))
        )
    with pytest.raises(BadDiagram):
        PseudoYoungDiagram((0, 1))


def test_integrality_condition_matches_admissibility():
    rng = random.Random(14)
    for _ in range(150):
        n = rng.randint(2, 4)
        d = [rng.randint(-2, 2) for _ in range(n)]
        total = Coweight.from_epsilon(d)
        partial = 0
        ok = True
        for j in range(n):
            partial += d[j]
            if j < n - 1 and partial < 0:
                ok = False
        if partial != 0:
            ok = False
        try:
            Divisor.make(n, "rational", [], total)
            assert ok
        except NotAdmissible:
            assert not ok


def test_json_roundtrip():
    d = divisor_from_young(
        PseudoYoungDiagram((1, 0)), ["x1"], PseudoYoungDiagram((0, -1))
    )
    blob = json.dumps(d.to_json())
    assert Divisor.from_json(json.loads(blob)) == d
    # numeric points become exact rationals
    d2 = Divisor.make(
        2,
        "rational",
        [("3/2", fundamental_coweight(2, 1))],
        Coweight.from_fundamental([-1, 1]),
    )
    blob2 = json.dumps(d2.to_json())
    d3 = Divisor.from_json(json.loads(blob2))
    from fractions import Fraction

    assert d3.summands[0].point == Fraction(3, 2)


def test_trig_divisor_framings():
    d = divisor_from_young(
        PseudoYoungDiagram((0, 0)),
        [],
        PseudoYoungDiagram((-1, -1)),
        PseudoYoungDiagram((2, 0)),
        mode="trig",
    )
    assert d.mu_zero is not None
    assert d.a_vector() == (1,)
    assert d.merge_framings_at_infinity().mu == simple_coroot(2, 1)
