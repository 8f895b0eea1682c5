"""Yang-Baxter, exchange relations, coproducts, series factorization."""

import pytest

from laxkit.algebra import AlgebraElement, mat_equal
from laxkit.coweight import PseudoYoungDiagram, divisor_from_young
from laxkit.lax_rational import build_lax, fuse
from laxkit.lax_trig import build_lax_trig
from laxkit.rtt import (
    check_yang_baxter,
    coproduct,
    coproduct_mode_contract,
    element_z_series,
    recompose_gauss,
    series_gauss_decompose,
    verify_coproduct_generators,
    verify_rtt,
)
from laxkit.suite import (
    block_example_divisor,
    first_example_divisor,
    toda_divisor,
    trig_case_divisor,
)


def test_yang_baxter_all_variants():
    for variant in ("rational", "trig", "finite"):
        for n in (2, 3):
            assert check_yang_baxter(variant, n), (variant, n)


def test_rtt_identity_matrix():
    div = divisor_from_young(
        PseudoYoungDiagram((0, 0)), [], PseudoYoungDiagram((0, 0))
    )
    assert verify_rtt(build_lax(div)).ok


def test_rtt_examples():
    assert verify_rtt(build_lax(toda_divisor())).ok
    assert verify_rtt(build_lax_trig(trig_case_divisor(4))).ok


def test_rtt_detects_corruption():
    T = build_lax(toda_divisor())
    sig = T.signature
    broken = [[e for e in row] for row in T.entries]
    broken[0][1] = broken[0][1] + AlgebraElement.one(sig)
    from laxkit.lax_rational import LaxMatrix

    bad = LaxMatrix(sig, T.divisor, broken)
    rep = verify_rtt(bad)
    assert not rep.ok and rep.failures
    rep_prob = verify_rtt(bad, probabilistic=True)
    assert not rep_prob.ok and rep_prob.probabilistic


def test_coproduct_passes_rtt_and_contract():
    delta = coproduct(build_lax(toda_divisor()), build_lax(toda_divisor()))
    assert verify_rtt(delta).ok
    assert coproduct_mode_contract(delta)
    delta_t = coproduct(
        build_lax_trig(trig_case_divisor(2)), build_lax_trig(trig_case_divisor(3))
    )
    assert verify_rtt(delta_t).ok


def test_series_gauss_roundtrip():
    delta = coproduct(build_lax(toda_divisor()), build_lax(toda_divisor()))
    order = 5
    work = order + 10
    series = [[element_z_series(e, work) for e in row] for row in delta.entries]
    # recomposition consumes `span` powers of slack, so decompose deeper
    F, G, E = series_gauss_decompose(series, order + 4)
    back = recompose_gauss(F, G, E, order)
    for a in range(2):
        for b in range(2):
            assert series[a][b].agrees_through(back[a][b], order)


def test_series_gauss_recovers_factors():
    # feed an FGE product and get the factors back
    div = toda_divisor()
    T = build_lax(div)
    sig = T.signature
    order = 4
    gf_series = [[element_z_series(e, order + 4) for e in row] for row in T.entries]
    F, G, E = series_gauss_decompose(gf_series, order)
    from laxkit.lax_rational import build_gauss_factors

    gf = build_gauss_factors(div)
    for i in range(2):
        want = element_z_series(gf.diag[i], order)
        assert G[i].agrees_through(want, order)
    assert F[1][0].agrees_through(element_z_series(gf.lower[1][0], order), order)
    assert E[0][1].agrees_through(element_z_series(gf.upper[0][1], order), order)


def test_coproduct_generators_n2():
    rep = verify_coproduct_generators(toda_divisor(), toda_divisor())
    assert rep.ok, rep.failures()
    names = [c.name for c in rep.checks]
    assert "F_1^(3) mixing" in names
    assert "D_1 second mode" in names


def test_coproduct_generators_n3():
    ex1 = first_example_divisor(3)
    rep = verify_coproduct_generators(ex1, ex1)
    assert rep.ok, rep.failures()


def test_nested_bracket_convention():
    # the root element spanning two rows equals the first mode of the
    # corner entry of the upper Gauss factor
    from laxkit.lax_rational import build_gauss_factors
    from laxkit.rtt import _nested_e_bracket

    div = first_example_divisor(3)
    gf = build_gauss_factors(div)
    e_ones = [
        element_z_series(gf.upper[i - 1][i], 1).coeff(1) for i in (1, 2)
    ]
    bracket = _nested_e_bracket(e_ones, 1, 3)
    direct = element_z_series(gf.upper[0][2], 1).coeff(1)
    assert bracket.equals(direct)


def test_coassociativity_entrywise():
    toda = build_lax(toda_divisor())
    a = fuse(fuse(toda, toda), toda)
    b = fuse(toda, fuse(toda, toda))
    assert mat_equal(a.entries, b.entries)


def test_rtt_block_example():
    assert verify_rtt(build_lax(block_example_divisor())).ok
