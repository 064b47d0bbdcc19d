"""Polynomial arithmetic, grevlex order, differential operators, and
serialization round-trips."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gct.poly import (
    LinearSubstitution,
    Polynomial,
    apply_diff,
    diff_pairing,
    divides,
    dumps,
    exponent_add,
    exponent_sub,
    from_record,
    grevlex_key,
    loads,
    monomials_of_degree,
    poly_digest,
    polarize,
    substitute,
    to_record,
)

from conftest import polynomials, small_fractions


# ---------------------------------------------------------------------------
# Monomial order
# ---------------------------------------------------------------------------


def test_grevlex_classic_degree_two_order():
    # the textbook grevlex order on degree-2 monomials in x1 > x2 > x3
    want = [
        (2, 0, 0),  # x1^2
        (1, 1, 0),  # x1 x2
        (0, 2, 0),  # x2^2
        (1, 0, 1),  # x1 x3
        (0, 1, 1),  # x2 x3
        (0, 0, 2),  # x3^2
    ]
    assert monomials_of_degree(3, 2) == want


def test_grevlex_degree_dominates():
    assert grevlex_key((3, 0)) < grevlex_key((1, 1))
    assert grevlex_key((0, 4)) < grevlex_key((2, 1))


@given(st.integers(1, 4), st.integers(0, 5))
def test_monomials_of_degree_count_and_order(v, d):
    from math import comb

    monos = monomials_of_degree(v, d)
    assert len(monos) == comb(v + d - 1, d)
    assert len(set(monos)) == len(monos)
    keys = [grevlex_key(m) for m in monos]
    assert keys == sorted(keys)


def test_exponent_helpers():
    assert exponent_add((1, 2), (3, 0)) == (4, 2)
    assert exponent_sub((3, 2), (1, 2)) == (2, 0)
    assert divides((1, 0, 2), (1, 1, 2))
    assert not divides((2, 0), (1, 5))


# ---------------------------------------------------------------------------
# Ring axioms and evaluation (property-based)
# ---------------------------------------------------------------------------


@st.composite
def poly_pairs(draw):
    v = draw(st.integers(1, 3))
    return draw(polynomials(num_vars=v)), draw(polynomials(num_vars=v))


@st.composite
def poly_triples(draw):
    v = draw(st.integers(1, 3))
    return tuple(draw(polynomials(num_vars=v)) for _ in range(3))


@given(poly_triples())
def test_ring_axioms(ps):
    p, q, r = ps
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p + Polynomial.zero(p.num_vars) == p
    assert p * Polynomial.one(p.num_vars) == p
    assert (p - p).is_zero()


@given(poly_pairs(), st.lists(small_fractions(), min_size=3, max_size=3))
def test_evaluation_is_a_ring_morphism(pq, point):
    p, q = pq
    pt = point[: p.num_vars]
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)


@given(polynomials(), st.integers(0, 4))
def test_pow_matches_repeated_multiplication(p, k):
    direct = Polynomial.one(p.num_vars)
    for _ in range(k):
        direct = direct * p
    assert p**k == direct


def test_constructors_and_validation():
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    assert (x + y).num_terms() == 2
    assert Polynomial.monomial((1, 2), 3).coefficient((1, 2)) == 3
    assert Polynomial.linear_form([1, -1]) == x - y
    with pytest.raises(ValueError):
        Polynomial(2, {(1,): Fraction(1)})
    with pytest.raises(ValueError):
        Polynomial(1, {(-1,): Fraction(1)})
    with pytest.raises(ValueError):
        Polynomial.variable(3, 2)
    with pytest.raises(ValueError):
        (x + y).as_scalar()
    assert Polynomial.constant(2, Fraction(5, 3)).as_scalar() == Fraction(5, 3)


def test_leading_term_is_grevlex_first():
    p = Polynomial(2, {(1, 1): Fraction(7), (2, 0): Fraction(-1), (0, 1): Fraction(5)})
    assert p.leading_term() == ((2, 0), Fraction(-1))
    assert [e for e, _ in p.sorted_terms()] == [(2, 0), (1, 1), (0, 1)]


# ---------------------------------------------------------------------------
# Linear substitution
# ---------------------------------------------------------------------------


@given(polynomials(max_vars=2, max_exp=2, max_terms=4))
def test_identity_substitution_fixes(p):
    assert substitute(p, LinearSubstitution.identity(p.num_vars)) == p


def test_substitution_composition_law():
    p = Polynomial.variable(0, 2) ** 2 + Polynomial.variable(1, 2) * 3
    a = LinearSubstitution.from_rows([[1, 1, 0], [0, 1, -1]])
    b = LinearSubstitution.from_rows([[2, 0], [1, 1], [0, 3]])
    assert substitute(substitute(p, a), b) == substitute(p, a.compose(b))


def test_substitution_example():
    # (x+y)^2 expanded through a substitution
    p = Polynomial.variable(0, 1) ** 2
    sub = LinearSubstitution.from_rows([[1, 1]])
    q = substitute(p, sub)
    x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    assert q == x * x + 2 * x * y + y * y


# ---------------------------------------------------------------------------
# Differential operators
# ---------------------------------------------------------------------------


def test_plain_partial_derivatives():
    x = Polynomial.variable(0, 2)
    p = Polynomial.monomial((4, 1))
    assert apply_diff(x, p) == Polynomial.monomial((3, 1), 4)
    assert apply_diff(x * x, p) == Polynomial.monomial((2, 1), 12)


def test_monomial_self_pairing_is_factorial_product():
    m = Polynomial.monomial((2, 3, 1))
    assert diff_pairing(m, m) == 2 * 6 * 1


def test_pairing_kills_lower_degree():
    op = Polynomial.monomial((2, 0))
    tgt = Polynomial.monomial((1, 0))
    assert apply_diff(op, tgt).is_zero()


@given(polynomials(num_vars=2, homogeneous_degree=3, max_terms=4))
@settings(max_examples=40)
def test_euler_identity(p):
    """sum_i x_i dP/dx_i = deg(P) * P for homogeneous P."""
    if p.is_zero():
        return
    v = p.num_vars
    acc = Polynomial.zero(v)
    for i in range(v):
        xi = Polynomial.variable(i, v)
        acc = acc + xi * apply_diff(xi, p)
    assert acc == p.scale(p.degree())


@given(poly_pairs(), polynomials(num_vars=3, max_terms=3))
@settings(max_examples=30)
def test_apply_diff_linear_in_both_slots(pq, r):
    p, q = pq
    if p.num_vars != r.num_vars:
        return
    assert apply_diff(p + q, r) == apply_diff(p, r) + apply_diff(q, r)
    assert apply_diff(r, p + q) == apply_diff(r, p) + apply_diff(r, q)


def test_apply_diff_composition():
    """op1(op2(f)) == (op1*op2)(f): constant-coefficient operators commute."""
    f = (Polynomial.variable(0, 2) + 2 * Polynomial.variable(1, 2)) ** 4
    op1 = Polynomial.monomial((1, 1))
    op2 = Polynomial.monomial((2, 0))
    assert apply_diff(op1, apply_diff(op2, f)) == apply_diff(op1 * op2, f)


# ---------------------------------------------------------------------------
# Catalecticants
# ---------------------------------------------------------------------------


def test_polarize_shape_and_entries():
    # p = x^2 y: P_{1,2} columns are d/dx p = 2xy and d/dy p = x^2
    p = Polynomial.monomial((2, 1))
    fm = polarize(p, 1)
    assert fm.shape == (3, 2)
    assert fm.col_basis == ((1, 0), (0, 1))
    assert fm.row_basis == ((2, 0), (1, 1), (0, 2))
    col_x = [row[0] for row in fm.entries]
    col_y = [row[1] for row in fm.entries]
    assert col_x == [0, 2, 0]
    assert col_y == [1, 0, 0]


def test_polarize_rejects_bad_input():
    with pytest.raises(ValueError):
        polarize(Polynomial.zero(2), 1)
    inhomog = Polynomial.one(2) + Polynomial.variable(0, 2)
    with pytest.raises(ValueError):
        polarize(inhomog, 1)
    with pytest.raises(ValueError):
        polarize(Polynomial.monomial((2, 0)), 5)


def test_flattening_digest_depends_on_entries():
    p = Polynomial.monomial((2, 1))
    q = Polynomial.monomial((1, 2))
    assert polarize(p, 1).digest() != polarize(q, 1).digest()
    assert polarize(p, 1).digest() == polarize(p, 1).digest()


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


@given(polynomials())
def test_record_round_trip(p):
    assert from_record(to_record(p)) == p
    assert loads(dumps(p)) == p


@given(polynomials())
def test_digest_is_representation_independent(p):
    q = Polynomial(p.num_vars, dict(reversed(list(p.terms.items()))))
    assert poly_digest(p) == poly_digest(q)


def test_record_terms_are_grevlex_sorted():
    p = Polynomial(2, {(0, 1): Fraction(1), (2, 0): Fraction(1), (1, 1): Fraction(1)})
    rec = to_record(p)
    assert [tuple(t["exps"]) for t in rec["terms"]] == [(2, 0), (1, 1), (0, 1)]
    assert all(isinstance(t["coeff"], str) for t in rec["terms"])


def test_from_record_merges_duplicate_monomials():
    rec = {
        "num_vars": 1,
        "terms": [
            {"coeff": "1/2", "exps": [1]},
            {"coeff": "1/2", "exps": [1]},
        ],
    }
    assert from_record(rec) == Polynomial.monomial((1,), 1)


def test_repr_smoke():
    x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    assert repr(x * x - y) == "x1^2 - x2"
    assert repr(Polynomial.zero(2)) == "0"
