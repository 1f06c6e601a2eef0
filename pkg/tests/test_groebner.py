import pytest
from hypothesis import given, settings, strategies as st

from rrlab.exact import QQ, PolyRing, lex
from rrlab.exact import monomials as mon
from rrlab.groebner import STATS, VectorPoly, buchberger, eliminate, normal_form, syzygies
from rrlab.modcalc import DegreewiseOracle, GradedRing

S = PolyRing(QQ, ["x", "y"])
x, y = S.gens


def _standard_count(leads, nvars, d):
    return sum(1 for u in mon.monomials_of_degree(nvars, d) if any(mon.divides(l, u) for l in leads))


def _assert_groebner_by_linear_algebra(gens, gb, nvars, D):
    """A homogeneous basis is Groebner iff its leading monomials span in(I) in every degree.

    ``dim I_d`` comes from linear algebra on the generators alone.
    """
    R = GradedRing(QQ, S.names if nvars == 2 else [f"v{i}" for i in range(nvars)])
    orc = DegreewiseOracle(R.free(1))
    gv = [VectorPoly.from_polys([g]) for g in gens]
    leads = gb.leading_monomials()
    for d in range(D + 1):
        assert len(orc.piece(gv, d)) == _standard_count(leads, nvars, d)
    for g in gb.polys():
        assert orc.piece(gv, g.degree()).contains(VectorPoly.from_polys([g]).terms_dict)


def test_reduced_basis_example():
    gens = [x ** 2, x * y + y ** 2]
    gb = buchberger(gens)
    # S(x^2, xy + y^2) = -x*y^2 -> y^3 after one reduction step
    assert sorted(map(str, gb.polys())) == sorted(["x^2", "x*y + y^2", "y^3"])
    _assert_groebner_by_linear_algebra(gens, gb, 2, 6)


def test_single_monic_generator():
    assert [str(p) for p in buchberger([x]).polys()] == ["x"]


def test_duplicates_collapse_and_normalize():
    f = 3 * x ** 2 + 6 * y ** 2
    assert buchberger([f, f]).polys() == [x ** 2 + 2 * y ** 2]


def test_normal_form_of_member_is_zero():
    assert normal_form(x ** 2 * y, buchberger([x ** 2])).is_zero()


def test_normal_form_of_reduced_element():
    assert normal_form(x + y, buchberger([x ** 2, y ** 2])) == x + y


def test_normal_form_inhomogeneous():
    gb = buchberger([x ** 2 - y, y ** 3])
    # leading monomials x^2 and y^3 are coprime, so the generators are already a basis;
    # x^3 = x(x^2 - y) + xy and y^3 is a generator
    assert sorted(map(str, gb.polys())) == sorted(["x^2 - y", "y^3"])
    r = normal_form(x ** 3 + y ** 3, gb)
    assert r == x * y
    assert x ** 3 + y ** 3 - r == x * (x ** 2 - y) + y ** 3


def test_koszul_syzygy():
    syz = syzygies([VectorPoly.from_polys([x]), VectorPoly.from_polys([y])])
    assert len(syz) == 1
    a, b = syz[0].components()
    assert (a, b) in ((y, -x), (-y, x))


def test_nonzerodivisor_has_no_syzygy():
    assert syzygies([VectorPoly.from_polys([x ** 2 + y ** 2])]) == []


def test_syzygies_of_square_of_maximal_ideal():
    gens = [x ** 2, x * y, y ** 2]
    syz = syzygies([VectorPoly.from_polys([g]) for g in gens], (0,))
    assert len(syz) == 2
    for v in syz:
        assert sum((c * g for c, g in zip(v.components(), gens)), S.zero).is_zero()
    # degreewise kernel of S(-2)^3 -> S has dimension 3(d-1) - (d+1) = 2d - 4
    R = GradedRing(QQ, ["x", "y"])
    orc = DegreewiseOracle(R.free(3, (2, 2, 2)))
    for d in range(2, 7):
        assert len(orc.piece(syz, d)) == 2 * d - 4


def test_module_groebner_basis_with_shifts():
    e = [VectorPoly.from_polys([x, y]), VectorPoly.from_polys([y, x])]
    gb = buchberger(e)
    gb.check()
    assert gb.contains(VectorPoly.from_polys([x ** 2 - y ** 2, 0 * x]))
    assert not gb.contains(VectorPoly.from_polys([x, 0 * x]))


def test_eliminate_single_equation_has_no_relation():
    T = PolyRing(QQ, ["t", "x", "y"])
    t, u, v = T.gens
    assert len(eliminate([v - u * t], [0])) == 0


def test_eliminate_two_by_two_minor():
    T = PolyRing(QQ, ["t", "x1", "x2", "y1", "y2"])
    t, x1, x2, y1, y2 = T.gens
    gb = eliminate([y1 - x1 * t, y2 - x2 * t], [0])
    assert [p.monic() for p in gb.polys()] == [(x2 * y1 - x1 * y2).monic()]


def test_eliminate_two_by_three_minors():
    names = ["t", "x1", "x2", "x3", "y1", "y2", "y3"]
    T = PolyRing(QQ, names)
    t, *xs = T.gens
    xs, ys = xs[:3], xs[3:]
    gb = eliminate([ys[i] - xs[i] * t for i in range(3)], [0])
    minors = [xs[i] * ys[j] - xs[j] * ys[i] for i in range(3) for j in range(i + 1, 3)]
    R = GradedRing(QQ, names)
    orc = DegreewiseOracle(R.free(1))
    mv = [VectorPoly.from_polys([m]) for m in minors]
    ev = [VectorPoly.from_polys([p]) for p in gb.polys()]
    for m in minors:
        assert gb.contains(m)
    assert all(not p.variables() & {0} for p in gb.polys())
    for d in range(5):
        assert orc.piece(mv, d) == orc.piece(ev, d)
    assert len(orc.piece(mv, 2)) == 3


def test_self_check_counts_every_basis():
    before = dict(STATS)
    buchberger([x ** 3 - y ** 3, x * y ** 2])
    assert STATS["computed"] > before["computed"]
    assert STATS["verified"] - before["verified"] == STATS["computed"] - before["computed"]


# -- properties ----------------------------------------------------------------

T3 = PolyRing(QQ, ["x", "y", "z"])
G3 = GradedRing(QQ, ["x", "y", "z"])


def homogeneous(d, max_terms=4):
    ms = list(mon.monomials_of_degree(3, d))
    return st.dictionaries(st.sampled_from(ms), st.integers(-5, 5), min_size=1, max_size=max_terms) \
        .map(T3.from_dict).filter(lambda p: not p.is_zero())


gen_lists = st.lists(st.integers(2, 3).flatmap(homogeneous), min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(gen_lists, homogeneous(4, 6), st.lists(homogeneous(1), min_size=3, max_size=3), st.booleans())
def test_membership_agrees_with_linear_algebra(gens, noise, mults, combine):
    v = noise
    if combine:
        # an element of the ideal: sum of cofactors times generators
        v = T3.zero
        for g, c in zip(gens, mults):
            v = v + c ** (4 - g.degree()) * g
    gb = buchberger(gens)
    orc = DegreewiseOracle(G3.free(1))
    gv = [VectorPoly.from_polys([g]) for g in gens]
    expected = v.is_zero() or orc.piece(gv, 4).contains(VectorPoly.from_polys([v]).terms_dict)
    assert gb.contains(v) == expected
    assert normal_form(v, gb).is_zero() == expected
    # the same ideal under lex answers identically
    assert buchberger(gens, lex(3)).contains(v) == expected


@settings(max_examples=25, deadline=None)
@given(gen_lists, homogeneous(3, 6), homogeneous(3, 6), st.integers(-7, 7))
def test_normal_form_idempotent_and_linear(gens, f, g, a):
    gb = buchberger(gens)
    nf = lambda p: normal_form(p, gb)
    assert nf(nf(f)) == nf(f)
    assert nf(a * f + g) == a * nf(f) + nf(g)
