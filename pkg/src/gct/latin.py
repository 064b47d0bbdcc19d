"""Latin squares, their signs, Alon--Tarsi counts, and the differential
pairings that tie the Alon--Tarsi conjecture to polynomial identities.

A Latin square of order n is stored as an n-tuple of n-tuples with entries
1..n, each row and each column a permutation.  Its sign is the product of
the signs of all 2n row and column permutations; the column sign uses the
n column permutations only.

The coefficient of the all-variables monomial prod_{ij} x_ij in det_n^n
equals the sum over Latin squares L of the product of the row signs of L
(choose one permutation per det factor; requiring each variable once
forces the chosen permutations to tile a Latin square).  That identity is
implemented both by polynomial expansion and by direct enumeration, and
the two are compared in tests.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .flatten import CapacityError
from .poly import Polynomial, apply_diff
from .zoo import det, perm

Square = Tuple[Tuple[int, ...], ...]

#: exhaustive enumeration cap (n=6 runs go through the reduced counter)
MAX_EXHAUSTIVE = 5
#: cap on n for the pairing expansions (degree n^2 polynomials)
MAX_PAIRING_PERM = 3
MAX_PAIRING_ALLVARS = 4


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of a sequence of distinct integers, by inversion parity."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def is_latin_square(square: Sequence[Sequence[int]]) -> bool:
    n = len(square)
    want = list(range(1, n + 1))
    for row in square:
        if sorted(row) != want:
            return False
    for j in range(n):
        if sorted(row[j] for row in square) != want:
            return False
    return True


def _require_latin(square: Sequence[Sequence[int]]) -> Square:
    sq = tuple(tuple(int(x) for x in row) for row in square)
    if not is_latin_square(sq):
        raise ValueError("not a Latin square")
    return sq


def row_sign(square: Sequence[Sequence[int]]) -> int:
    sq = _require_latin(square)
    s = 1
    for row in sq:
        s *= perm_sign(row)
    return s


def column_sign(square: Sequence[Sequence[int]]) -> int:
    """Product of the n column-permutation signs."""
    sq = _require_latin(square)
    s = 1
    for j in range(len(sq)):
        s *= perm_sign([row[j] for row in sq])
    return s


def sign(square: Sequence[Sequence[int]]) -> int:
    """Product of all 2n row and column permutation signs."""
    return row_sign(square) * column_sign(square)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _complete(
    n: int, rows: List[Tuple[int, ...]], col_used: List[int], out: Callable[[Square], None]
) -> None:
    """Extend ``rows`` to full Latin squares, rows filled left to right with
    candidate values ascending (deterministic lexicographic order)."""
    if len(rows) == n:
        out(tuple(rows))
        return
    row = [0] * n
    row_used = 0

    def fill(j: int) -> None:
        nonlocal row_used
        if j == n:
            rows.append(tuple(row))
            for jj, x in enumerate(row):
                col_used[jj] |= 1 << x
            _complete(n, rows, col_used, out)
            rows.pop()
            for jj, x in enumerate(row):
                col_used[jj] &= ~(1 << x)
            return
        avail = ~(row_used | col_used[j])
        for x in range(1, n + 1):
            if avail & (1 << x):
                row[j] = x
                row_used |= 1 << x
                fill(j + 1)
                row_used &= ~(1 << x)

    fill(0)


def enumerate_latin_squares(n: int, *, cap: int = MAX_EXHAUSTIVE) -> Iterator[Square]:
    """All Latin squares of order n, in lexicographic (row-major) order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapacityError("enumerate_latin_squares", n, cap)
    found: List[Square] = []
    _complete(n, [], [0] * n, found.append)
    return iter(found)


@dataclass(frozen=True)
class ATCount:
    """Alon--Tarsi counts of order n under both sign conventions."""

    n: int
    count_plus: int
    count_minus: int
    column_count_plus: int
    column_count_minus: int

    @property
    def total(self) -> int:
        return self.count_plus + self.count_minus

    @property
    def difference(self) -> int:
        return self.count_plus - self.count_minus

    @property
    def column_difference(self) -> int:
        return self.column_count_plus - self.column_count_minus


def alon_tarsi_count(n: int, *, cap: int = MAX_EXHAUSTIVE) -> ATCount:
    """Exhaustive signed count of all Latin squares of order n."""
    p = m = cp = cm = 0
    for sq in enumerate_latin_squares(n, cap=cap):
        rs = 1
        for row in sq:
            rs *= perm_sign(row)
        cs = 1
        for j in range(n):
            cs *= perm_sign([row[j] for row in sq])
        if rs * cs > 0:
            p += 1
        else:
            m += 1
        if cs > 0:
            cp += 1
        else:
            cm += 1
    return ATCount(n, p, m, cp, cm)


# ---------------------------------------------------------------------------
# Reduced (fixed-first-row) counting, resumable for long runs
# ---------------------------------------------------------------------------
#
# Relabeling the symbols by sigma in S_n permutes Latin squares freely and
# multiplies every row and column permutation by sigma, so the full sign
# picks up sgn(sigma)^{2n} = +1 and the column sign sgn(sigma)^n.  Fixing
# the first row to 1..n therefore divides the count by n! without losing
# the full-sign statistics; the column-sign statistics survive when n is
# even, and for odd n relabeling makes the column-sign counts provably
# equal, (n!/2)(cp_fixed + cm_fixed) each.


def second_row_branches(n: int) -> List[Tuple[int, ...]]:
    """Valid second rows under first row (1..n): position derangements,
    in lexicographic order.  The search tree is split at these branches."""
    return [
        p
        for p in permutations(range(1, n + 1))
        if all(p[j] != j + 1 for j in range(n))
    ]


def count_branch(n: int, second_row: Sequence[int]) -> Tuple[int, int, int, int]:
    """Signed counts of completions with rows 1..2 fixed to (identity, second_row)."""
    first = tuple(range(1, n + 1))
    rows: List[Tuple[int, ...]] = [first, tuple(second_row)]
    col_used = [0] * n
    for row in rows:
        for j, x in enumerate(row):
            if col_used[j] & (1 << x):
                raise ValueError("second row clashes with the first")
            col_used[j] |= 1 << x
    counts = [0, 0, 0, 0]

    def tally(sq: Square) -> None:
        rs = 1
        for row in sq:
            rs *= perm_sign(row)
        cs = 1
        for j in range(n):
            cs *= perm_sign([row[j] for row in sq])
        if rs * cs > 0:
            counts[0] += 1
        else:
            counts[1] += 1
        if cs > 0:
            counts[2] += 1
        else:
            counts[3] += 1

    _complete(n, rows, col_used, tally)
    return tuple(counts)  # type: ignore[return-value]


def alon_tarsi_count_reduced(
    n: int,
    *,
    checkpoint_path: Optional[str] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> ATCount:
    """Alon--Tarsi counts via fixed-first-row enumeration (handles n=6).

    With ``checkpoint_path``, per-branch counts are written after every
    completed branch and previously finished branches are skipped on
    restart, so a long run can be interrupted and resumed.
    """
    from math import factorial

    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return ATCount(1, 1, 0, 1, 0)
    branches = second_row_branches(n)
    done: Dict[str, List[int]] = {}
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path, "r", encoding="utf-8") as fh:
            saved = json.load(fh)
        if saved.get("n") != n:
            raise ValueError(
                f"checkpoint {checkpoint_path} is for n={saved.get('n')}, not n={n}"
            )
        done = saved.get("branches", {})
    totals = [0, 0, 0, 0]
    for idx, second in enumerate(branches):
        key = str(idx)
        if key in done:
            counts = done[key]
        else:
            counts = list(count_branch(n, second))
            done[key] = counts
            if checkpoint_path:
                tmp = checkpoint_path + ".tmp"
                with open(tmp, "w", encoding="utf-8") as fh:
                    json.dump({"n": n, "branches": done}, fh)
                os.replace(tmp, checkpoint_path)
        for i in range(4):
            totals[i] += counts[i]
        if progress:
            progress(idx + 1, len(branches))
    fp, fm, fcp, fcm = totals
    full = factorial(n)
    if n % 2 == 0:
        return ATCount(n, full * fp, full * fm, full * fcp, full * fcm)
    half = full // 2
    return ATCount(
        n, full * fp, full * fm, half * (fcp + fcm), half * (fcp + fcm)
    )


# ---------------------------------------------------------------------------
# Differential pairings
# ---------------------------------------------------------------------------


def pairing_perm_det(n: int, *, cap: int = MAX_PAIRING_PERM):
    """The scalar <perm_n^n, det_n^n> under the differential pairing.

    Nonvanishing for even n is equivalent to the Alon--Tarsi conjecture
    at n.  Expands both degree-n^2 polynomials exactly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapacityError("pairing_perm_det", n, cap)
    p = perm(n) ** n
    d = det(n) ** n
    return apply_diff(p, d).as_scalar()


def pairing_allvars_det(n: int, *, cap: int = MAX_PAIRING_ALLVARS):
    """The scalar <prod_{ij} x_ij, det_n^n>: the all-ones coefficient of
    det_n^n, extracted by iterated differentiation."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapacityError("pairing_allvars_det", n, cap)
    d = det(n) ** n
    allvars = Polynomial.monomial((1,) * (n * n))
    return apply_diff(allvars, d).as_scalar()


def pairing_allvars_oracle(n: int, *, cap: int = MAX_EXHAUSTIVE) -> int:
    """Independent expansion oracle for pairing_allvars_det.

    Choosing one permutation monomial from each of the n det factors and
    demanding every variable appear once lays the permutations out as the
    rows of a Latin square; the surviving coefficient is the sum of the
    products of row signs.
    """
    total = 0
    for sq in enumerate_latin_squares(n, cap=cap):
        rs = 1
        for row in sq:
            rs *= perm_sign(row)
        total += rs
    return total
