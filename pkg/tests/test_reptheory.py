"""Tests for gct.reptheory.

The heavy machinery (Murnaghan--Nakayama characters, Kronecker sums,
Kostka inversion, plethysm) is validated against classical identities
that are computed here by independent elementary means: hard-coded S_3
and S_4 character tables, column orthogonality, sum-of-squares = n!,
Frobenius--Schur indicators, RSK counting for Kostka numbers, the
Cayley--Sylvester partitions-in-a-box formula for sl_2 plethysms, and
dimension conservation under the Schur-functor decomposition.
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import comb, factorial

import pytest

from gct import reptheory as rt
from gct.poly import monomials_of_degree


# ---------------------------------------------------------------------------
# Partitions and basic combinatorics
# ---------------------------------------------------------------------------


def test_partition_counts():
    known = {0: 1, 1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15, 8: 22, 9: 30, 10: 42}
    for n, count in known.items():
        assert len(list(rt.partitions(n))) == count


def test_partitions_are_sorted_and_filtered():
    parts = list(rt.partitions(6))
    assert parts[0] == (6,) and parts[-1] == (1,) * 6
    assert parts == sorted(parts, reverse=True)
    assert all(p == tuple(sorted(p, reverse=True)) and sum(p) == 6 for p in parts)
    # max_part / max_len agree with brute-force filtering
    for n in range(0, 9):
        allp = list(rt.partitions(n))
        for bound in range(1, n + 1):
            assert list(rt.partitions(n, max_part=bound)) == [
                p for p in allp if p and p[0] <= bound or not p
            ]
            assert list(rt.partitions(n, max_len=bound)) == [
                p for p in allp if len(p) <= bound
            ]


def test_normalize_partition():
    assert rt.normalize_partition([1, 3, 0, 2]) == (3, 2, 1)
    assert rt.normalize_partition(()) == ()
    with pytest.raises(ValueError):
        rt.normalize_partition([2, -1])


def test_conjugate():
    assert rt.conjugate((4, 2, 1)) == (3, 2, 1, 1)
    assert rt.conjugate(()) == ()
    for n in range(0, 9):
        for p in rt.partitions(n):
            assert rt.conjugate(rt.conjugate(p)) == p
            assert sum(rt.conjugate(p)) == n


def test_dominance():
    assert rt.dominates((3, 1), (2, 2))
    assert not rt.dominates((2, 2), (3, 1))
    assert not rt.dominates((3,), (2, 2))  # different sizes
    for p in rt.partitions(6):
        assert rt.dominates((6,), p)
        assert rt.dominates(p, (1,) * 6)
        assert rt.dominates(p, p)


def test_class_sizes_partition_the_group():
    for n in range(1, 8):
        assert sum(rt.class_size(mu) for mu in rt.partitions(n)) == factorial(n)
    assert rt.class_size((5,)) == factorial(4)  # (n-1)! n-cycles
    assert rt.z_order((1, 1, 1)) == 6
    assert rt.z_order((3, 1)) == 3


def test_hook_lengths_literal():
    assert rt.hook_lengths((4, 2, 1)) == [[6, 4, 2, 1], [3, 1], [1]]
    assert rt.dimension((4, 2, 1)) == 35
    assert rt.dimension((1,)) == 1
    assert rt.dimension(()) == 1


def test_schur_dimension():
    # dim S_(k)(C^v) = C(v+k-1, k); dim S_(1^k)(C^v) = C(v, k)
    for v in range(1, 5):
        for k in range(0, 5):
            assert rt.schur_dimension((k,) if k else (), v) == comb(v + k - 1, k)
            assert rt.schur_dimension((1,) * k, v) == comb(v, k)
    assert rt.schur_dimension((2, 2), 3) == 6
    assert rt.schur_dimension((3, 2, 1), 2) == 0  # too many rows


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

S3_TABLE = {
    # chi[pi][mu]
    (3,): {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
    (2, 1): {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
    (1, 1, 1): {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
}

S4_TABLE = {
    (4,): {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
    (3, 1): {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
    (2, 2): {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
    (2, 1, 1): {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
    (1, 1, 1, 1): {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
}


@pytest.mark.parametrize("table", [S3_TABLE, S4_TABLE])
def test_character_tables(table):
    for pi, row in table.items():
        for mu, value in row.items():
            assert rt.character(pi, mu) == value


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        rt.character((2, 1), (2, 2))


def test_dimension_is_character_at_identity():
    for n in range(1, 7):
        for pi in rt.partitions(n):
            assert rt.character(pi, (1,) * n) == rt.dimension(pi)


def test_sum_of_squared_dimensions():
    for n in range(1, 9):
        assert sum(rt.dimension(p) ** 2 for p in rt.partitions(n)) == factorial(n)


def test_character_orthogonality():
    for n in range(1, 7):
        parts = list(rt.partitions(n))
        for i, pi in enumerate(parts):
            for rho in parts[i:]:
                inner = sum(
                    rt.class_size(mu) * rt.character(pi, mu) * rt.character(rho, mu)
                    for mu in parts
                )
                assert inner == (factorial(n) if pi == rho else 0)


def test_conjugate_twists_by_sign():
    for n in range(1, 7):
        sign = {mu: (-1) ** (n - len(mu)) for mu in rt.partitions(n)}
        for pi in rt.partitions(n):
            for mu in rt.partitions(n):
                assert rt.character(rt.conjugate(pi), mu) == sign[mu] * rt.character(
                    pi, mu
                )


def test_character_cache_clear():
    assert rt.character((3, 1), (2, 2)) == -1
    rt.character_cache_clear()
    assert rt.character((3, 1), (2, 2)) == -1


# ---------------------------------------------------------------------------
# square_cycle_type and Frobenius--Schur
# ---------------------------------------------------------------------------


def _cycle_type(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def test_square_cycle_type_bruteforce():
    assert rt.square_cycle_type((4,)) == (2, 2)
    assert rt.square_cycle_type((6,)) == (3, 3)
    assert rt.square_cycle_type((3,)) == (3,)
    for n in range(1, 6):
        for perm in permutations(range(n)):
            sq = tuple(perm[perm[i]] for i in range(n))
            assert _cycle_type(sq) == rt.square_cycle_type(_cycle_type(perm))


def test_frobenius_schur_indicator_is_one():
    """All S_n irreps are real: (1/n!) sum_sigma chi(sigma^2) = 1."""
    for n in range(1, 7):
        for pi in rt.partitions(n):
            total = sum(
                rt.class_size(mu) * rt.character(pi, rt.square_cycle_type(mu))
                for mu in rt.partitions(n)
            )
            assert total == factorial(n)


# ---------------------------------------------------------------------------
# Kronecker and symmetric Kronecker
# ---------------------------------------------------------------------------


def test_kronecker_small_identities():
    for n in range(1, 7):
        parts = list(rt.partitions(n))
        for pi in parts:
            for mu in parts:
                # tensoring with the trivial / sign representations
                assert rt.kronecker(pi, mu, (n,)) == (1 if pi == mu else 0)
                assert rt.kronecker(pi, mu, (1,) * n) == (
                    1 if pi == rt.conjugate(mu) else 0
                )


def test_kronecker_permutation_symmetry():
    rng = random.Random(20260813)
    parts6 = list(rt.partitions(6))
    triples = [tuple(rng.choice(parts6) for _ in range(3)) for _ in range(25)]
    parts4 = list(rt.partitions(4))
    triples += [
        (a, b, c) for a in parts4 for b in parts4 for c in parts4
    ]
    for a, b, c in triples:
        k = rt.kronecker(a, b, c)
        assert k >= 0
        for x, y, z in permutations((a, b, c)):
            assert rt.kronecker(x, y, z) == k


def test_kronecker_dimension_conservation():
    """sum_nu k(pi,mu,nu) dim(nu) = dim(pi) dim(mu)."""
    for n in (4, 5):
        parts = list(rt.partitions(n))
        for pi in parts:
            for mu in parts:
                total = sum(rt.kronecker(pi, mu, nu) * rt.dimension(nu) for nu in parts)
                assert total == rt.dimension(pi) * rt.dimension(mu)


def test_kronecker_size_mismatch():
    with pytest.raises(ValueError):
        rt.kronecker((2,), (2,), (3,))


def test_symmetric_kronecker_bounds_and_dimension():
    """0 <= sk <= k, and sum_pi sk(pi,mu) dim(pi) = D(D+1)/2, D = dim(mu)."""
    for n in range(2, 7):
        parts = list(rt.partitions(n))
        for mu in parts:
            d_mu = rt.dimension(mu)
            total = 0
            for pi in parts:
                sk = rt.symmetric_kronecker(pi, mu)
                k = rt.kronecker(pi, mu, mu)
                assert 0 <= sk <= k
                total += sk * rt.dimension(pi)
            assert total == d_mu * (d_mu + 1) // 2


def test_trivial_in_symmetric_square_exactly_once():
    """S_n irreps are orthogonal, so triv appears in S^2 once, never in L^2."""
    for n in range(2, 7):
        for mu in rt.partitions(n):
            sk = rt.symmetric_kronecker((n,), mu)
            k = rt.kronecker((n,), mu, mu)
            assert sk == 1 and k == 1


def test_symmetric_kronecker_size_mismatch():
    with pytest.raises(ValueError):
        rt.symmetric_kronecker((3,), (2, 2))


# ---------------------------------------------------------------------------
# Littlewood--Richardson and Kostka
# ---------------------------------------------------------------------------


def _is_horizontal_strip(outer, inner):
    outer = outer + (0,) * (len(inner) - len(outer))
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    if any(o < i for o, i in zip(outer, inner)):
        return False
    return all(inner[i] >= outer[i + 1] for i in range(len(outer) - 1))


def test_lr_pieri_rule():
    for mu_size in range(1, 5):
        for k in range(1, 4):
            for mu in rt.partitions(mu_size):
                for pi in rt.partitions(mu_size + k):
                    want = 1 if _is_horizontal_strip(pi, mu) else 0
                    assert rt.lr_coeff(pi, mu, (k,)) == want


def test_lr_known_value_and_symmetry():
    assert rt.lr_coeff((3, 2, 1), (2, 1), (2, 1)) == 2
    assert rt.lr_coeff((3, 2, 1), (2, 1), (1, 1, 1)) == 1
    for pi in rt.partitions(5):
        assert rt.lr_coeff(pi, (2, 1), (2,)) == rt.lr_coeff(pi, (2,), (2, 1))
    with pytest.raises(ValueError):
        rt.lr_coeff((3, 1), (2,), (3,))


def test_lr_dimension_conservation():
    """sum_pi c^pi_{mu,nu} dim(pi) = C(a+b, a) dim(mu) dim(nu)."""
    for mu in rt.partitions(3):
        for nu in rt.partitions(2):
            total = sum(
                rt.lr_coeff(pi, mu, nu) * rt.dimension(pi) for pi in rt.partitions(5)
            )
            assert total == comb(5, 3) * rt.dimension(mu) * rt.dimension(nu)


def test_kostka_basics():
    assert rt.kostka((2, 1), (1, 1, 1)) == 2
    assert rt.kostka((3, 1), (2, 1, 1)) == 2
    for n in range(1, 7):
        for lam in rt.partitions(n):
            for mu in rt.partitions(n):
                k = rt.kostka(lam, mu)
                assert k >= 0
                assert (k > 0) == rt.dominates(lam, mu)
                if lam == mu:
                    assert k == 1


def test_kostka_rsk_counting():
    """sum_lam K_{lam,mu} f^lam = n! / prod(mu_i!) (RSK on words)."""
    for n in range(1, 7):
        for mu in rt.partitions(n):
            words = factorial(n)
            for part in mu:
                words //= factorial(part)
            total = sum(
                rt.kostka(lam, mu) * rt.dimension(lam) for lam in rt.partitions(n)
            )
            assert total == words


# ---------------------------------------------------------------------------
# Weight-dimension inversion
# ---------------------------------------------------------------------------


def test_decompose_weight_dims_roundtrip():
    rng = random.Random(7)
    for n in (3, 4, 5, 6):
        parts = list(rt.partitions(n))
        mults = {p: rng.randrange(0, 4) for p in parts}
        dims = {
            lam: sum(m * rt.kostka(pi, lam) for pi, m in mults.items() if m)
            for lam in parts
        }
        recovered = rt.decompose_weight_dims(dims)
        assert recovered == {p: m for p, m in mults.items() if m}


def test_decompose_weight_dims_rejects_inconsistent():
    dims = {(2,): 1, (1, 1): -1}
    with pytest.raises(ArithmeticError):
        rt.decompose_weight_dims(dims)


def test_count_weight_multisets_bruteforce():
    for d, n, v in [(2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3), (3, 2, 3)]:
        monos = monomials_of_degree(v, n)
        counts = {}
        for combo in combinations_with_replacement(monos, d):
            w = tuple(sum(col) for col in zip(*combo))
            counts[w] = counts.get(w, 0) + 1
        for w, c in counts.items():
            assert rt.count_weight_multisets(d, n, v, w) == c
        assert rt.count_weight_multisets(d, n, v, (d * n + 1,) + (0,) * (v - 1)) == 0
    with pytest.raises(ValueError):
        rt.count_weight_multisets(2, 2, 2, (1, 1, 1))
    with pytest.raises(ValueError):
        rt.count_weight_multisets(2, 2, 2, (5, -1))


# ---------------------------------------------------------------------------
# Plethysm
# ---------------------------------------------------------------------------


def _partitions_in_box(k, rows, cols):
    """Number of partitions of k with at most `rows` parts, each <= cols."""
    if k == 0:
        return 1
    count = 0
    for p in rt.partitions(k, max_part=cols, max_len=rows):
        count += 1
    return count


def test_plethysm_known_decompositions():
    assert rt.plethysm_multiplicities(2, 2, 2) == {(4,): 1, (2, 2): 1}
    assert rt.plethysm_multiplicities(3, 2, 3) == {(6,): 1, (4, 2): 1, (2, 2, 2): 1}
    assert rt.plethysm_multiplicities(2, 3, 2) == {(6,): 1, (4, 2): 1}
    # S^m(S^2) = sum over even partitions (Thrall)
    got = rt.plethysm_multiplicities(4, 2, 4)
    assert got == {(8,): 1, (6, 2): 1, (4, 4): 1, (4, 2, 2): 1, (2, 2, 2, 2): 1}
    assert rt.plethysm_mult((3, 3, 3), 3, 3) == 0


def test_plethysm_cayley_sylvester():
    """mult(S_(dn-k,k), S^d(S^n C^2)) = p(k;d,n) - p(k-1;d,n)."""
    for d in range(1, 5):
        for n in range(1, 5):
            got = rt.plethysm_multiplicities(d, n, 2)
            for k in range(0, d * n // 2 + 1):
                want = _partitions_in_box(k, d, n) - (
                    _partitions_in_box(k - 1, d, n) if k else 0
                )
                pi = (d * n - k, k) if k else (d * n,)
                assert got.get(pi, 0) == want, (d, n, k)


def test_plethysm_hermite_reciprocity():
    """S^d(S^n C^2) = S^n(S^d C^2) as GL_2 modules."""
    for d in range(1, 5):
        for n in range(1, 5):
            assert rt.plethysm_multiplicities(d, n, 2) == rt.plethysm_multiplicities(
                n, d, 2
            )


def test_plethysm_dimension_conservation():
    for d, n, v in [(2, 2, 2), (2, 2, 3), (3, 2, 3), (2, 3, 3), (4, 2, 3), (3, 3, 3)]:
        mults = rt.plethysm_multiplicities(d, n, v)
        total = sum(m * rt.schur_dimension(p, v) for p, m in mults.items())
        ambient = comb(comb(n + v - 1, n) + d - 1, d)
        assert total == ambient


def test_plethysm_wreath_route_matches_weight_route():
    """Force the character/wreath formula and compare with the weight route."""
    for d, n in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        weights = rt._plethysm_cycle_weights(d, n)
        assert sum(w for _, w in weights) == 1  # total mass of the cycle index
        by_weight = rt.plethysm_multiplicities(d, n, d * n)
        for pi in rt.partitions(d * n):
            total = Fraction(0)
            for gamma, w in weights:
                c = rt.character(pi, gamma)
                if c:
                    total += w * c
            assert total.denominator == 1
            assert by_weight.get(pi, 0) == int(total), (d, n, pi)


def test_plethysm_mult_large_uses_wreath_and_is_consistent():
    # dn = 18 > weight-route limit: S^2(S^9 C^2) by Hermite/Thrall
    assert rt.plethysm_mult((18,), 2, 9) == 1
    assert rt.plethysm_mult((16, 2), 2, 9) == 1
    assert rt.plethysm_mult((17, 1), 2, 9) == 0
    assert rt.plethysm_mult((14, 4), 2, 9) == 1
    with pytest.raises(ValueError):
        rt.plethysm_mult((4, 1), 2, 2)


# ---------------------------------------------------------------------------
# Obstruction report and usefulness filter
# ---------------------------------------------------------------------------


def test_obstruction_report_properties():
    rep = rt.ObstructionReport(pi=(4,), d=2, n=2, mult=2, kron=1, sym_kron=1)
    assert rep.is_representation_obstruction and not rep.is_occurrence_obstruction
    rep = rt.ObstructionReport(pi=(4,), d=2, n=2, mult=2, kron=1, sym_kron=0)
    assert rep.is_representation_obstruction and rep.is_occurrence_obstruction
    rep = rt.ObstructionReport(pi=(4,), d=2, n=2, mult=1, kron=2, sym_kron=1)
    assert not rep.is_representation_obstruction and not rep.is_occurrence_obstruction


def test_occurrence_obstruction_test_small():
    rep = rt.occurrence_obstruction_test((4,), 2, 2)
    assert rep.mult == 1 and rep.kron >= rep.sym_kron >= 1
    assert not rep.is_representation_obstruction
    rep = rt.occurrence_obstruction_test((2, 2), 2, 2)
    assert rep.mult == 1 and rep.sym_kron >= 1
    with pytest.raises(ValueError):
        rt.occurrence_obstruction_test((3, 1), 2, 3)


def test_gct_useful_filter():
    assert rt.gct_useful_filter((6,), 2, 3, 1)
    assert rt.gct_useful_filter((5, 1), 2, 3, 1)
    assert not rt.gct_useful_filter((4, 1, 1), 2, 3, 1)  # too many rows
    assert not rt.gct_useful_filter((3, 3), 2, 3, 1)  # first part < d(n-m)
    with pytest.raises(ValueError):
        rt.gct_useful_filter((3, 1), 2, 3, 1)
    with pytest.raises(ValueError):
        rt.gct_useful_filter((6,), 2, 3, -1)
