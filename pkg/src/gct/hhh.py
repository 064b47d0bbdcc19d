"""The Hermite--Hadamard--Howe map h_{d,n}: S^d(S^n W) -> S^n(S^d W).

Basis conventions: a basis element of S^d(S^n C^v) is a multiset of d
degree-n exponent tuples, stored as a tuple sorted in descending grevlex
(leading monomial first); bases are sorted the same way.  The map sends

    z_{m_1} ... z_{m_d}  |->  (1/n!)^d  sum over ordered factorizations
    t_i of each m_i into n letters of  prod_j u_{N_j},   N_j = prod_i t_i[j],

the normalization that makes the Exercise identity
h(x_1^n ... x_d^n) = (x_1 ... x_d)^n hold on the nose.  Because summing
over the orderings of any single row is invariant under a simultaneous
relabeling of the n slots, the first row's ordering may be pinned, which
the column builder exploits.

h is GL(W)-equivariant, so its matrix is block diagonal with respect to
the torus-weight grading, and permuting variables identifies blocks with
permuted weights; ranks are therefore computed dominant-weight by
dominant-weight and summed with orbit multiplicities.  This is an exact
identity, not an approximation; a test checks it against the assembled
full matrix on small cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .flatten import CapacityError, exact_rank, nullspace
from .poly import (
    Exponent,
    Polynomial,
    apply_diff,
    grevlex_key,
    monomials_of_degree,
)
from .reptheory import (
    Partition,
    count_weight_multisets,
    decompose_weight_dims,
    partitions,
)

Multiset = Tuple[Exponent, ...]

#: default cap on the basis size of any single weight block
MAX_BLOCK = 200_000
#: default cap on the width of blocks that are actually eliminated
MAX_ELIM = 5000
#: cap on the number of matrix entries build_hhh will materialize
MAX_ENTRIES = 25_000_000


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------


def _canonical_multiset(monos: Sequence[Exponent]) -> Multiset:
    return tuple(sorted(monos, key=grevlex_key))


def weight_of_multiset(ms: Multiset, v: int) -> Tuple[int, ...]:
    w = [0] * v
    for m in ms:
        for a, e in enumerate(m):
            w[a] += e
    return tuple(w)


def multiset_basis(
    count: int, degree: int, v: int, weight: Optional[Sequence[int]] = None
) -> List[Multiset]:
    """All multisets of ``count`` degree-``degree`` monomials in v vars,
    optionally restricted to a total exponent vector ``weight``."""
    monos = monomials_of_degree(v, degree)
    out: List[Multiset] = []
    if weight is None:
        def rec_all(i: int, c: int, acc: List[Exponent]) -> None:
            if c == 0:
                out.append(tuple(acc))
                return
            for j in range(i, len(monos)):
                acc.append(monos[j])
                rec_all(j, c - 1, acc)
                acc.pop()

        rec_all(0, count, [])
        return out
    w0 = tuple(int(x) for x in weight)
    if len(w0) != v or sum(w0) != count * degree:
        return []

    def rec(i: int, c: int, rem: Tuple[int, ...], acc: List[Exponent]) -> None:
        if c == 0:
            if not any(rem):
                out.append(tuple(acc))
            return
        if i == len(monos):
            return
        m = monos[i]
        jmax = c
        for a in range(v):
            if m[a]:
                jmax = min(jmax, rem[a] // m[a])
        cur = rem
        for j in range(jmax + 1):
            if j:
                cur = tuple(x - y for x, y in zip(cur, m))
                acc.append(m)
            rec(i + 1, c - j, cur, acc)
        for _ in range(jmax):
            acc.pop()

    rec(0, count, w0, [])
    return out


def predicted_block_size(d: int, n: int, v: int, weight: Sequence[int]) -> Tuple[int, int]:
    """(domain, codomain) basis sizes of the ``weight`` block, no building."""
    w = tuple(int(x) for x in weight)
    return (
        count_weight_multisets(d, n, v, w),
        count_weight_multisets(n, d, v, w),
    )


# ---------------------------------------------------------------------------
# Column construction
# ---------------------------------------------------------------------------


def _letters(m: Exponent) -> Tuple[int, ...]:
    return tuple(a for a, e in enumerate(m) for _ in range(e))


def _distinct_orderings(m: Exponent) -> List[Tuple[int, ...]]:
    """Distinct letter sequences with content m (multiset permutations)."""
    letters = sorted(_letters(m))
    n = len(letters)
    out: List[Tuple[int, ...]] = []
    seq: List[int] = []
    counts: Dict[int, int] = {}
    for a in letters:
        counts[a] = counts.get(a, 0) + 1
    keys = sorted(counts)

    def rec() -> None:
        if len(seq) == n:
            out.append(tuple(seq))
            return
        for a in keys:
            if counts[a]:
                counts[a] -= 1
                seq.append(a)
                rec()
                seq.pop()
                counts[a] += 1

    rec()
    return out


def hhh_column(ms: Multiset, n: int, v: int) -> Dict[Multiset, Fraction]:
    """Image of the domain basis element ``ms`` as {codomain multiset: coeff}."""
    d = len(ms)
    if d == 0:
        return {(): Fraction(1)}
    # pin the first row's ordering; weight it 1 (slot relabeling symmetry)
    first = _letters(ms[0])
    rest = list(ms[1:])
    rest_orderings = [_distinct_orderings(m) for m in rest]
    weight_each = Fraction(1)
    for m in rest:
        mult = 1
        for e in m:
            mult *= factorial(e)
        weight_each *= Fraction(mult, factorial(n))
    acc: Dict[Multiset, Fraction] = {}

    def emit(rows: List[Tuple[int, ...]]) -> None:
        cols: List[List[int]] = [[0] * v for _ in range(n)]
        for row in rows:
            for j, a in enumerate(row):
                cols[j][a] += 1
        key = _canonical_multiset([tuple(c) for c in cols])
        acc[key] = acc.get(key, Fraction(0)) + weight_each

    rows: List[Tuple[int, ...]] = [first]

    def rec(i: int) -> None:
        if i == len(rest):
            emit(rows)
            return
        for ordering in rest_orderings[i]:
            rows.append(ordering)
            rec(i + 1)
            rows.pop()

    rec(0)
    return acc


# ---------------------------------------------------------------------------
# The assembled map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlethysmMap:
    """h_{d,n} on C^v, assembled on explicit bases (optionally one weight)."""

    d: int
    n: int
    v: int
    weight: Optional[Tuple[int, ...]]
    row_basis: Tuple[Multiset, ...]  # codomain: multisets of n degree-d monomials
    col_basis: Tuple[Multiset, ...]  # domain:   multisets of d degree-n monomials
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.row_basis), len(self.col_basis))

    def rank(self, *, max_columns: int = MAX_ELIM) -> int:
        return exact_rank(self.entries, max_columns=max_columns)

    def apply(self, coeffs: Dict[Multiset, Fraction]) -> Dict[Multiset, Fraction]:
        """Apply to a domain vector given as a sparse dict."""
        out: Dict[Multiset, Fraction] = {}
        for ms, c in coeffs.items():
            if c == 0:
                continue
            for key, val in hhh_column(ms, self.n, self.v).items():
                acc = out.get(key, Fraction(0)) + c * val
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return out


def build_hhh(
    d: int,
    n: int,
    v: int,
    weight: Optional[Sequence[int]] = None,
    *,
    max_block: int = MAX_BLOCK,
) -> PlethysmMap:
    """Assemble h_{d,n} on C^v (the full map, or one weight block).

    Sizes are predicted before any basis is materialized; a block larger
    than ``max_block`` raises CapacityError.
    """
    if d < 1 or n < 1 or v < 1:
        raise ValueError("d, n, v must be positive")
    if weight is not None:
        w = tuple(int(x) for x in weight)
        dom_size, cod_size = predicted_block_size(d, n, v, w)
        if max(dom_size, cod_size) > max_block:
            raise CapacityError(
                f"h_{{{d},{n}}} on C^{v}, weight {w}", max(dom_size, cod_size), max_block
            )
    else:
        w = None
        dom_size = comb(comb(v + n - 1, n) + d - 1, d)
        cod_size = comb(comb(v + d - 1, d) + n - 1, n)
        if max(dom_size, cod_size) > max_block:
            raise CapacityError(
                f"h_{{{d},{n}}} on C^{v} (full)", max(dom_size, cod_size), max_block
            )
    if dom_size * cod_size > MAX_ENTRIES:
        raise CapacityError(
            f"h_{{{d},{n}}} on C^{v}{f', weight {w}' if w else ''} entries",
            dom_size * cod_size,
            MAX_ENTRIES,
        )
    col_basis = multiset_basis(d, n, v, w)
    row_basis = multiset_basis(n, d, v, w)
    row_index = {ms: i for i, ms in enumerate(row_basis)}
    cols: List[List[Fraction]] = []
    for ms in col_basis:
        col = [Fraction(0)] * len(row_basis)
        for key, val in hhh_column(ms, n, v).items():
            col[row_index[key]] = val
        cols.append(col)
    entries = tuple(
        tuple(cols[c][r] for c in range(len(col_basis)))
        for r in range(len(row_basis))
    )
    return PlethysmMap(
        d=d,
        n=n,
        v=v,
        weight=w,
        row_basis=tuple(row_basis),
        col_basis=tuple(col_basis),
        entries=entries,
    )


def _orbit_size(padded_weight: Tuple[int, ...]) -> int:
    """Number of distinct permutations of a weight vector."""
    counts: Dict[int, int] = {}
    for x in padded_weight:
        counts[x] = counts.get(x, 0) + 1
    total = factorial(len(padded_weight))
    for c in counts.values():
        total //= factorial(c)
    return total


def dominant_weights(total: int, v: int) -> List[Tuple[int, ...]]:
    """Partitions of ``total`` with at most v parts, zero-padded to length v,
    in descending lexicographic order."""
    return [p + (0,) * (v - len(p)) for p in partitions(total, max_len=v)]


def _plan_blocks(
    d: int, n: int, v: int, max_block: int, max_elim: int
) -> List[Tuple[Tuple[int, ...], int, int]]:
    """Predict every dominant-weight block size; reject before building.

    Capacity failures are raised up front, naming the worst block, so no
    work is wasted on the feasible blocks of an infeasible computation.
    """
    plan = []
    worst: Tuple[int, Tuple[int, ...]] = (0, ())
    for w in dominant_weights(d * n, v):
        dom, cod = predicted_block_size(d, n, v, w)
        if dom == 0 and cod == 0:
            continue
        if max(dom, cod) > worst[0]:
            worst = (max(dom, cod), w)
        plan.append((w, dom, cod))
    cap = min(max_block, max_elim)
    if worst[0] > cap:
        raise CapacityError(
            f"h_{{{d},{n}}} on C^{v}, dominant weight {worst[1]}", worst[0], cap
        )
    return plan


def hhh_rank(
    d: int,
    n: int,
    v: int,
    *,
    max_block: int = MAX_BLOCK,
    max_elim: int = MAX_ELIM,
) -> int:
    """Exact rank of h_{d,n} on C^v, summed over dominant weight blocks."""
    total = 0
    for w, dom, cod in _plan_blocks(d, n, v, max_block, max_elim):
        if dom == 0 or cod == 0:
            continue
        block = build_hhh(d, n, v, w, max_block=max_block)
        total += _orbit_size(w) * block.rank(max_columns=max_elim)
    return total


def kernel_dims_by_weight(
    d: int,
    n: int,
    v: int,
    *,
    max_block: int = MAX_BLOCK,
    max_elim: int = MAX_ELIM,
) -> Dict[Partition, int]:
    """dim ker(h_{d,n}) restricted to each dominant weight of dn."""
    out: Dict[Partition, int] = {}
    for w, dom, cod in _plan_blocks(d, n, v, max_block, max_elim):
        if dom == 0:
            continue
        part = tuple(x for x in w if x)
        if cod == 0:
            out[part] = dom
            continue
        block = build_hhh(d, n, v, w, max_block=max_block)
        out[part] = dom - block.rank(max_columns=max_elim)
    return out


def kernel_character(
    d: int,
    n: int,
    v: int,
    *,
    max_block: int = MAX_BLOCK,
    max_elim: int = MAX_ELIM,
) -> Dict[Partition, int]:
    """Multiplicities of S_pi in ker h_{d,n} on C^v (nonzero entries only).

    ker h_{d,n} = I_d(Ch_n(C^v*)), the degree-d ideal of the Chow variety.
    Computed from per-weight kernel dimensions by unitriangular Kostka
    inversion.
    """
    dims = kernel_dims_by_weight(
        d, n, v, max_block=max_block, max_elim=max_elim
    )
    return decompose_weight_dims(dims)


def weight_zero_weight(d: int, n: int, v: int) -> Tuple[int, ...]:
    """The GL-weight of the sl-weight-zero subspace, ((dn/v), ..., (dn/v)).

    The weight-zero subspace of S^d(S^n C^v) is nonzero only when v | dn.
    Injectivity and surjectivity of the equivariant map h_{d,n} are
    detected on this single block, where the Weyl group S_v still acts.
    """
    if (d * n) % v:
        raise ValueError(
            f"weight-zero space of S^{d}(S^{n} C^{v}) is zero: {v} does not divide {d*n}"
        )
    return ((d * n) // v,) * v


def weight_zero_block(
    d: int, n: int, v: int, *, max_block: int = MAX_BLOCK
) -> PlethysmMap:
    """h_{d,n} restricted to the sl-weight-zero subspace (v must divide dn)."""
    return build_hhh(d, n, v, weight_zero_weight(d, n, v), max_block=max_block)


# ---------------------------------------------------------------------------
# Hadamard's vanishing: kernel elements kill the Chow variety
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChowVanishingReport:
    ok: bool
    kernel_dim: int
    trials: int
    message: str

    def __bool__(self) -> bool:
        return self.ok


def _evaluate_on(ms_coeffs: Dict[Multiset, Fraction], pairings: Dict[Exponent, Fraction]) -> Fraction:
    total = Fraction(0)
    for ms, c in ms_coeffs.items():
        val = c
        for m in ms:
            val *= pairings[m]
            if val == 0:
                break
        total += val
    return total


def kernel_vanishes_on_chow(
    d: int,
    n: int,
    v: int,
    trials: int = 10,
    seed: int = 0,
    *,
    max_block: int = 20_000,
) -> ChowVanishingReport:
    """Check ker h_{d,n} ⊆ I_d(Ch_n) on random split points, exactly.

    Every kernel basis vector, viewed as a degree-d polynomial on S^n C^v*
    via the apolarity pairing <m, u> = m(d/dy) u, must vanish on u = a
    product of n random rational linear forms.  As a sanity check that the
    evaluation has teeth, a random vector outside the kernel must be
    nonzero on some trial (when the kernel is proper).
    """
    import random

    h = build_hhh(d, n, v, max_block=max_block)
    kernel = nullspace(h.entries, max_columns=max_block)
    rng = random.Random(seed)
    monos = monomials_of_degree(v, n)

    def random_chow_point() -> Polynomial:
        u = Polynomial.one(v)
        for _ in range(n):
            coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(v)]
            if not any(coeffs):
                coeffs[rng.randrange(v)] = Fraction(1)
            u = u * Polynomial.linear_form(coeffs)
        return u

    failures = 0
    sanity_nonzero = False
    for _ in range(trials):
        u = random_chow_point()
        pairings = {
            m: apply_diff(Polynomial.monomial(m), u).as_scalar() for m in monos
        }
        for vec in kernel:
            coeffs = {
                h.col_basis[i]: x for i, x in enumerate(vec) if x != 0
            }
            if _evaluate_on(coeffs, pairings) != 0:
                failures += 1
        if len(kernel) < len(h.col_basis):
            # a random vector; overwhelmingly not in the kernel, and its
            # non-vanishing is only *recorded*, not required per trial
            vec = [Fraction(rng.randint(-3, 3)) for _ in h.col_basis]
            coeffs = {
                h.col_basis[i]: x for i, x in enumerate(vec) if x != 0
            }
            if _evaluate_on(coeffs, pairings) != 0:
                sanity_nonzero = True
    ok = failures == 0 and (not kernel or sanity_nonzero or len(kernel) == len(h.col_basis))
    msg = (
        f"h_{{{d},{n}}} on C^{v}: kernel dim {len(kernel)}, {trials} split points, "
        + ("all kernel evaluations zero" if failures == 0 else f"{failures} NONZERO kernel evaluations")
        + ("; non-kernel sanity vector nonzero" if sanity_nonzero else "")
    )
    return ChowVanishingReport(ok=ok, kernel_dim=len(kernel), trials=trials, message=msg)


# ---------------------------------------------------------------------------
# Brion's degree bound
# ---------------------------------------------------------------------------


def brion_bound(n: int, w: int) -> int:
    """Brion's effective surjectivity degree d_0(n, w) for h_{d,n} on C^w.

    For d beyond this bound the Hadamard map h_{d,n} on C^w is surjective:
    d_0 = (n-1)(w-1)((n-1) * floor(C(n+w-1, w-1)/w) - n).
    """
    if n < 1 or w < 1:
        raise ValueError("n and w must be positive")
    return (n - 1) * (w - 1) * ((n - 1) * (comb(n + w - 1, w - 1) // w) - n)
