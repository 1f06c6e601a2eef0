import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from rrlab.exact import (GF, QQ, Cmp, ParseError, PolyRing, degrevlex, elimination, field_from_spec, lex)

S = PolyRing(QQ, ["x", "y"])
x, y = S.gens


# -- monomial orders -----------------------------------------------------------

def test_degrevlex_same_degree_tie_break():
    assert degrevlex(2).compare((2, 1), (1, 2)) == Cmp.GT


def test_compare_identity():
    for order in (degrevlex(3), lex(3), elimination(3, 1)):
        assert order.compare((1, 0, 2), (1, 0, 2)) == Cmp.EQ


def test_degree_dominates_in_degrevlex():
    assert degrevlex(2).compare((0, 3), (2, 0)) == Cmp.GT


def test_degrevlex_reverse_lex_on_last_variable():
    # x*z < y^2 in degrevlex with x > y > z
    assert degrevlex(3).compare((1, 0, 1), (0, 2, 0)) == Cmp.LT
    assert lex(3).compare((1, 0, 1), (0, 2, 0)) == Cmp.GT


def test_elimination_block_dominates():
    order = elimination(3, 1)
    assert order.compare((1, 0, 0), (0, 5, 5)) == Cmp.GT


def test_compare_dimension_mismatch():
    with pytest.raises(ValueError):
        degrevlex(2).compare((1, 0), (1, 0, 0))


# -- arithmetic ------------------------------------------------------------------

def test_sum():
    assert (x + y) + (x - y) == 2 * x


def test_difference_of_squares():
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_times_zero_is_empty():
    p = (x + y) * S.zero
    assert p.is_zero() and p.as_dict() == {}


def test_rational_coefficients_lowest_terms():
    p = S.parse("2/4*x + 3/6*y")
    assert p.coefficient((1, 0)) == gmpy2.mpq(1, 2)
    assert p.coefficient((0, 1)) == gmpy2.mpq(1, 2)


def test_prime_field_wraps():
    F = PolyRing(GF(7), ["x"])
    (u,) = F.gens
    assert 7 * u == F.zero
    assert (3 * u) * (5 * u) == F.parse("x^2")


def test_lead_term_is_first_in_order():
    p = S.parse("y^3 + x^2 + x*y^2")
    assert p.lead_monomial(degrevlex(2)) == (1, 2)
    assert p.lead_monomial(lex(2)) == (2, 0)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        S.parse("x + z")
    assert "unknown variable 'z'" in str(exc.value)
    assert exc.value.pos == 4
    with pytest.raises(ParseError):
        S.parse("x +")


def test_field_specs():
    assert field_from_spec("q") == QQ
    assert field_from_spec("fp:32003").characteristic == 32003
    with pytest.raises(ValueError):
        field_from_spec("fp:32004")


# -- properties --------------------------------------------------------------------

R3 = PolyRing(QQ, ["x", "y", "z"])
FP = PolyRing(GF(32003), ["x", "y", "z"])

monos = st.tuples(*[st.integers(0, 6)] * 3).filter(lambda m: sum(m) <= 6)
coeffs = st.integers(-20, 20)
polys = st.dictionaries(monos, coeffs, max_size=8).map(R3.from_dict)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f and f + g == g + f
    assert f - f == R3.zero


@settings(max_examples=60, deadline=None)
@given(polys)
def test_canonicalization_idempotent(f):
    once = R3.from_dict(f.as_dict())
    assert once == f and R3.from_dict(once.as_dict()).as_dict() == once.as_dict()
    assert R3.parse(str(f)) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_rational_product_reduces_mod_p(f, g):
    F = GF(32003)
    assert (f * g).map_coefficients(F) == f.map_coefficients(F) * g.map_coefficients(F)
