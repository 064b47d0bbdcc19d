"""Tests for gct.hhh, the Hermite--Hadamard--Howe map h_{d,n}.

Independent anchors: Hermite's isomorphism on binary forms, the
characterizing identity h(l_1^n ... l_d^n) = (l_1 ... l_d)^n expanded by
generic polynomial multiplication in "big" variables (one per monomial),
rank duality rank h_{d,n} = rank h_{n,d}, blockwise-vs-full assembly, and
the principal-ideal structure of ker h_{d,2}(C^3) over the symmetric
3x3 determinant, cross-checked against gct.reptheory plethysms.
"""

import random
from fractions import Fraction
from math import comb

import pytest

from gct import hhh
from gct.flatten import CapacityError, exact_rank, nullspace
from gct.poly import Polynomial, grevlex_key, monomials_of_degree
from gct.reptheory import count_weight_multisets, plethysm_multiplicities


# ---------------------------------------------------------------------------
# helpers: symmetric powers as polynomials in one "big" variable per monomial
# ---------------------------------------------------------------------------


def _as_big_linear(u, degree):
    """A degree-`degree` form u in v vars as a linear form in big variables."""
    monos = monomials_of_degree(u.num_vars, degree)
    table = {m: i for i, m in enumerate(monos)}
    terms = {}
    for m, c in u.terms.items():
        e = [0] * len(monos)
        e[table[m]] = 1
        terms[tuple(e)] = c
    return Polynomial(len(monos), terms), monos


def _exp_to_multiset(e, monos):
    out = []
    for i, k in enumerate(e):
        out.extend([monos[i]] * k)
    return tuple(sorted(out, key=grevlex_key))


def symmetric_product(forms, degree):
    """Multiset-basis coordinates of the symmetric product of ``forms``.

    Each form has the given degree; the product is computed as ordinary
    polynomial multiplication of linear forms in big variables, which is
    the same normalization the multiset basis uses.
    """
    acc = None
    monos = None
    for u in forms:
        big, monos = _as_big_linear(u, degree)
        acc = big if acc is None else acc * big
    return {_exp_to_multiset(e, monos): c for e, c in acc.terms.items()}


# ---------------------------------------------------------------------------
# bases and block prediction
# ---------------------------------------------------------------------------


def test_multiset_basis_counts():
    for count, degree, v in [(2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 2)]:
        basis = hhh.multiset_basis(count, degree, v)
        n_monos = comb(v + degree - 1, degree)
        assert len(basis) == comb(n_monos + count - 1, count)
        assert len(set(basis)) == len(basis)
        for ms in basis:
            assert len(ms) == count
            assert list(ms) == sorted(ms, key=grevlex_key)
            assert all(sum(m) == degree for m in ms)


def test_multiset_basis_weight_restriction():
    d, n, v = 3, 2, 3
    full = hhh.multiset_basis(d, n, v)
    for weight in [(2, 2, 2), (3, 2, 1), (6, 0, 0), (4, 1, 1)]:
        got = hhh.multiset_basis(d, n, v, weight)
        want = [ms for ms in full if hhh.weight_of_multiset(ms, v) == weight]
        assert sorted(got) == sorted(want)
        assert len(got) == count_weight_multisets(d, n, v, weight)
    assert hhh.multiset_basis(d, n, v, (1, 1, 1)) == []  # wrong total


def test_predicted_block_size_matches_built():
    for d, n, v, w in [(2, 2, 2, (2, 2)), (3, 2, 3, (2, 2, 2)), (2, 3, 2, (3, 3))]:
        dom, cod = hhh.predicted_block_size(d, n, v, w)
        block = hhh.build_hhh(d, n, v, w)
        assert block.shape == (cod, dom)
        assert len(block.col_basis) == dom and len(block.row_basis) == cod


def test_dominant_weights():
    ws = hhh.dominant_weights(4, 3)
    assert ws[0] == (4, 0, 0) and (2, 1, 1) in ws and (1, 1, 1) not in ws
    assert all(len(w) == 3 and sum(w) == 4 for w in ws)


# ---------------------------------------------------------------------------
# the characterizing identity and linearity
# ---------------------------------------------------------------------------


def _random_linear_forms(v, count, rng):
    forms = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(v)]
        if not any(coeffs):
            coeffs[0] = Fraction(1)
        forms.append(Polynomial.linear_form(coeffs))
    return forms


@pytest.mark.parametrize("d,n,v", [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 2, 3)])
def test_characterizing_identity_on_split_points(d, n, v):
    """h_{d,n}(l_1^n * ... * l_d^n) = (l_1 * ... * l_d)^n, exactly."""
    rng = random.Random(1000 * d + 10 * n + v)
    h = hhh.build_hhh(d, n, v)
    for _ in range(5):
        ls = _random_linear_forms(v, d, rng)
        domain_vec = symmetric_product([l**n for l in ls], n)
        prod = Polynomial.one(v)
        for l in ls:
            prod = prod * l
        want = symmetric_product([prod] * n, d)
        assert h.apply(domain_vec) == want


def test_apply_matches_matrix_entries():
    d, n, v = 3, 2, 2
    h = hhh.build_hhh(d, n, v)
    rng = random.Random(5)
    vec = [Fraction(rng.randint(-4, 4)) for _ in h.col_basis]
    coeffs = {ms: c for ms, c in zip(h.col_basis, vec) if c}
    applied = h.apply(coeffs)
    rows, cols = h.shape
    for i, row_ms in enumerate(h.row_basis):
        entry = sum(
            (h.entries[i][j] * vec[j] for j in range(cols)), Fraction(0)
        )
        assert applied.get(row_ms, Fraction(0)) == entry


# ---------------------------------------------------------------------------
# ranks: Hermite, duality, blockwise assembly
# ---------------------------------------------------------------------------


def test_hermite_isomorphism_on_binary_forms():
    """h_{d,n} on C^2 is an isomorphism: rank = dim = C(n+d, d)."""
    for d in range(1, 5):
        for n in range(1, 5):
            if d + n > 7:
                continue
            assert hhh.hhh_rank(d, n, 2) == comb(n + d, d)


def test_rank_duality():
    for d, n, v in [(2, 3, 3), (3, 2, 3), (2, 4, 2), (4, 2, 2), (2, 2, 4)]:
        assert hhh.hhh_rank(d, n, v) == hhh.hhh_rank(n, d, v)


def test_blockwise_equals_full_rank():
    for d, n, v in [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 2, 3)]:
        full = hhh.build_hhh(d, n, v)
        assert exact_rank(full.entries) == hhh.hhh_rank(d, n, v)


def test_h22_c2_rank_literal():
    h = hhh.build_hhh(2, 2, 2)
    assert h.shape == (6, 6)
    assert h.rank() == 6


def test_h32_c3_kernel_is_symmetric_determinant():
    """ker h_{3,2}(C^3) is 1-dim: det of the generic symmetric 3x3 matrix."""
    assert hhh.hhh_rank(3, 2, 3) == 56 - 1
    dims = hhh.kernel_dims_by_weight(3, 2, 3)
    assert {p: k for p, k in dims.items() if k} == {(2, 2, 2): 1}
    assert hhh.kernel_character(3, 2, 3) == {(2, 2, 2): 1}
    # the kernel vector really is the symmetric determinant: extract it
    block = hhh.build_hhh(3, 2, 3, (2, 2, 2))
    kernel = nullspace(block.entries)
    assert len(kernel) == 1
    vec = {
        ms: c for ms, c in zip(block.col_basis, kernel[0]) if c
    }
    # det [[x^2, xy, xz], [xy, y^2, yz], [xz, yz, z^2]]-style relation:
    # evaluate on a split point u = (ax+by+cz)^2 pairing; must vanish
    x, y, z = (Polynomial.variable(i, 3) for i in range(3))
    u = (x + 2 * y - z) ** 2
    from gct.poly import apply_diff

    pairings = {
        m: apply_diff(Polynomial.monomial(m), u).as_scalar()
        for m in monomials_of_degree(3, 2)
    }
    total = Fraction(0)
    for ms, c in vec.items():
        val = c
        for m in ms:
            val *= pairings[m]
        total += val
    assert total == 0


def test_kernel_character_principal_ideal_oracle():
    """ker h_{d,2}(C^3) = (det_sym) * S^{d-3}(S^2 C^3): multiplicities are
    the degree-(d-3) plethysm shifted by (2,2,2)."""
    for d in (3, 4, 5, 7):
        got = hhh.kernel_character(d, 2, 3)
        shifted = {}
        for pi, m in plethysm_multiplicities(d - 3, 2, 3).items():
            padded = tuple(pi) + (0,) * (3 - len(pi))
            key = tuple(p + q for p, q in zip(padded, (2, 2, 2)))
            shifted[tuple(x for x in key if x)] = m
        if d == 3:
            shifted = {(2, 2, 2): 1}
        assert got == shifted, d


def test_kernel_dims_sum_to_total_kernel():
    for d, n, v in [(3, 2, 3), (2, 3, 3), (4, 2, 3)]:
        dims = hhh.kernel_dims_by_weight(d, n, v)
        total = 0
        for part, k in dims.items():
            padded = tuple(part) + (0,) * (v - len(part))
            total += hhh._orbit_size(padded) * k
        domain_dim = comb(comb(n + v - 1, n) + d - 1, d)
        assert total == domain_dim - hhh.hhh_rank(d, n, v)


# ---------------------------------------------------------------------------
# weight-zero block
# ---------------------------------------------------------------------------


def test_weight_zero_block():
    w = hhh.weight_zero_weight(3, 2, 3)
    assert w == (2, 2, 2)
    block = hhh.weight_zero_block(3, 2, 3)
    assert block.weight == (2, 2, 2)
    with pytest.raises(ValueError):
        hhh.weight_zero_weight(3, 2, 4)


# ---------------------------------------------------------------------------
# Chow vanishing
# ---------------------------------------------------------------------------


def test_kernel_vanishes_on_chow():
    report = hhh.kernel_vanishes_on_chow(3, 2, 3, trials=6, seed=11)
    assert report.ok
    assert report.kernel_dim == 1
    assert "all kernel evaluations zero" in report.message


def test_kernel_vanishes_trivially_when_injective():
    report = hhh.kernel_vanishes_on_chow(2, 2, 2, trials=3, seed=1)
    assert report.ok and report.kernel_dim == 0


# ---------------------------------------------------------------------------
# capacity and bounds
# ---------------------------------------------------------------------------


def test_h55_capacity_reported_up_front():
    import time

    start = time.monotonic()
    with pytest.raises(CapacityError) as exc:
        hhh.hhh_rank(5, 5, 5)
    elapsed = time.monotonic() - start
    assert exc.value.size == 190131
    assert exc.value.size > exc.value.cap
    assert "dominant weight (5, 5, 5, 5, 5)" in str(exc.value)
    assert elapsed < 30.0


def test_build_hhh_validates_arguments():
    with pytest.raises(ValueError):
        hhh.build_hhh(0, 2, 2)


def test_brion_bound():
    assert hhh.brion_bound(3, 3) == 12
    assert hhh.brion_bound(1, 5) == 0
    with pytest.raises(ValueError):
        hhh.brion_bound(0, 3)
