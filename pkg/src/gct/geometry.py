"""Hessians, characteristic polynomials of polynomial matrices, compound
matrices, divisibility identities, the Cayley identity, dual-variety
dimension probes, and stabilizer Lie algebra dimensions.

Determinants of polynomial matrices are computed division-free by dynamic
programming over column subsets (Laplace expansion shared across rows),
so every intermediate object is a genuine minor.  Divisibility claims are
certified by exact multivariate division: for f = g*q over an integral
domain the greedy leading-term division loop in the global monomial order
terminates with remainder zero, because LT(f) = LT(g)LT(q) at every step.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .flatten import CapacityError, exact_rank, solve_linear
from .poly import (
    Polynomial,
    apply_diff,
    divides,
    exponent_add,
    exponent_sub,
    grevlex_key,
)
from .zoo import det, discriminant

# ---------------------------------------------------------------------------
# Polynomial matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    """A square matrix of polynomials over a shared variable space."""

    num_vars: int
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for p in row:
                if p.num_vars != self.num_vars:
                    raise ValueError("entries must share the variable space")

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def trace(self) -> Polynomial:
        t = Polynomial.zero(self.num_vars)
        for i in range(self.size):
            t = t + self.entries[i][i]
        return t

    def evaluate(self, point: Sequence) -> List[List[Fraction]]:
        """Scalar matrix obtained by evaluating every entry at ``point``."""
        return [
            [p.evaluate(point) for p in row] for row in self.entries
        ]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.num_vars,
            tuple(
                tuple(self.entries[i][j] for j in cols) for i in rows
            ),
        )


def hessian(p: Polynomial) -> PolyMatrix:
    """The symmetric matrix of second partials of a homogeneous P, deg >= 2."""
    d = p.degree()
    if d is None or d < 2:
        raise ValueError("hessian requires a homogeneous polynomial of degree >= 2")
    if not p.is_homogeneous():
        raise ValueError("hessian requires a homogeneous polynomial")
    v = p.num_vars
    rows = []
    for i in range(v):
        row = []
        for j in range(v):
            op = [0] * v
            op[i] += 1
            op[j] += 1
            row.append(apply_diff(Polynomial.monomial(tuple(op)), p))
        rows.append(tuple(row))
    return PolyMatrix(v, tuple(rows))


def det_polymatrix(m: PolyMatrix, rows: Optional[Sequence[int]] = None,
                   cols: Optional[Sequence[int]] = None) -> Polynomial:
    """Determinant of (a submatrix of) a polynomial matrix, division-free.

    Dynamic programming over column subsets: level i holds the minors on
    rows[:i] and every i-subset of cols, so the full determinant costs
    sum_i C(k,i)*i polynomial multiplications instead of k!.
    """
    if rows is None:
        rows = range(m.size)
    if cols is None:
        cols = range(m.size)
    rows = list(rows)
    cols = list(cols)
    k = len(rows)
    if k != len(cols):
        raise ValueError("determinant needs a square selection")
    if k == 0:
        return Polynomial.one(m.num_vars)
    # minors[frozen subset of col positions] at the current level
    minors: Dict[Tuple[int, ...], Polynomial] = {(): Polynomial.one(m.num_vars)}
    for i, ri in enumerate(rows):
        nxt: Dict[Tuple[int, ...], Polynomial] = {}
        for subset in combinations(range(k), i + 1):
            acc = Polynomial.zero(m.num_vars)
            for pos, cj in enumerate(subset):
                entry = m.entries[ri][cols[cj]]
                if entry.is_zero():
                    continue
                rest = subset[:pos] + subset[pos + 1 :]
                sub = minors[rest]
                if sub.is_zero():
                    continue
                term = entry * sub
                # Laplace along the last row: sign (-1)^{i+pos}
                acc = acc + term if (i + pos) % 2 == 0 else acc - term
            nxt[subset] = acc
        minors = nxt
    return minors[tuple(range(k))]


@dataclass(frozen=True)
class CharPolyCoeffs:
    """cp_0..cp_N of a polynomial matrix; cp_s = sum of s x s principal
    minors = trace of the s-th wedge power."""

    coeffs: Tuple[Polynomial, ...]

    def __getitem__(self, s: int) -> Polynomial:
        return self.coeffs[s]

    def __len__(self) -> int:
        return len(self.coeffs)


def cp_coefficient(m: PolyMatrix, s: int) -> Polynomial:
    """cp_s(M): the sum of all s x s principal minors, exactly."""
    if s < 0 or s > m.size:
        raise ValueError("s out of range")
    if s == 0:
        return Polynomial.one(m.num_vars)
    total = Polynomial.zero(m.num_vars)
    for subset in combinations(range(m.size), s):
        total = total + det_polymatrix(m, subset, subset)
    return total


def charpoly_coeffs(m: PolyMatrix, up_to: Optional[int] = None) -> CharPolyCoeffs:
    if up_to is None:
        up_to = m.size
    if up_to > m.size:
        raise ValueError("up_to exceeds matrix size")
    return CharPolyCoeffs(tuple(cp_coefficient(m, s) for s in range(up_to + 1)))


def compound(m: PolyMatrix, k: int) -> PolyMatrix:
    """The k-th compound (wedge power): C(N,k) x C(N,k) matrix of k x k
    minors, rows and columns indexed by k-subsets in lexicographic order."""
    if k < 1 or k > m.size:
        raise ValueError("k out of range")
    subsets = list(combinations(range(m.size), k))
    rows = tuple(
        tuple(det_polymatrix(m, rs, cs) for cs in subsets) for rs in subsets
    )
    return PolyMatrix(m.num_vars, rows)


# ---------------------------------------------------------------------------
# Exact multivariate division
# ---------------------------------------------------------------------------


def divide_exact(f: Polynomial, g: Polynomial) -> Optional[Polynomial]:
    """The quotient f/g when g divides f exactly, else None.

    In-place single-divisor division: the remainder lives in one dict and
    its leading term is tracked by a lazy heap, so the cost is
    O(|quotient| * |g|) dictionary updates rather than a fresh remainder
    per step.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return Polynomial.zero(f.num_vars)
    if f.num_vars != g.num_vars:
        raise ValueError("operands must share the variable space")
    lt_g_exp, lt_g_coeff = g.leading_term()
    g_terms = g.sorted_terms()
    work: Dict[Tuple[int, ...], Fraction] = dict(f.terms)
    heap = [(grevlex_key(e), e) for e in work]
    heapq.heapify(heap)
    quotient: Dict[Tuple[int, ...], Fraction] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if not c:
            continue
        if not divides(lt_g_exp, e):
            return None
        q_exp = exponent_sub(e, lt_g_exp)
        q_coeff = c / lt_g_coeff
        quotient[q_exp] = quotient.get(q_exp, Fraction(0)) + q_coeff
        for g_exp, g_coeff in g_terms:
            t = exponent_add(q_exp, g_exp)
            nc = work.get(t, Fraction(0)) - q_coeff * g_coeff
            if nc:
                if t not in work:
                    heapq.heappush(heap, (grevlex_key(t), t))
                work[t] = nc
            else:
                work.pop(t, None)
    return Polynomial(f.num_vars, quotient)


def divisible(f: Polynomial, g: Polynomial) -> bool:
    return divide_exact(f, g) is not None


# ---------------------------------------------------------------------------
# The second-fundamental-form identities for H(det_v)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SFReport:
    v: int
    checks: Tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        lines = [f"H(det_{self.v}) characteristic coefficients:"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}")
        return "\n".join(lines)


def _contraction_q(v: int) -> Polynomial:
    """Q(A) = trace(A A^T) = sum of the squares of all v^2 entries."""
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for a in range(v * v):
        e = [0] * (v * v)
        e[a] = 2
        terms[tuple(e)] = Fraction(1)
    return Polynomial(v * v, terms)


DEFAULT_SFTURBO_CHECKS = {
    3: ("cp1", "cp3", "cp2_negative", "cp8", "cp9"),
    4: ("cp1", "cp3", "cp2_negative"),
}


def verify_sfturbo(v: int, checks: Optional[Sequence[str]] = None) -> SFReport:
    """Certify the characteristic-coefficient identities of H(det_v).

    Checks (selectable): cp1 (= 0), cp3 (= det_v * cofactor of degree
    2v-6), cp5 (= det_v * cofactor of degree 4v-10), cp2_negative (det_v
    does NOT divide cp_2), cp8/cp9 (v=3 closed forms 2*det^2*Q and
    2*det^3).  Heavy coefficients are opt-in; v is capped at 4.
    """
    if v not in (3, 4):
        raise CapacityError("verify_sfturbo", v, 4)
    if checks is None:
        checks = DEFAULT_SFTURBO_CHECKS[v]
    d = det(v)
    h = hessian(d)
    results: List[CheckResult] = []
    for name in checks:
        if name == "cp1":
            cp1 = cp_coefficient(h, 1)
            results.append(
                CheckResult("cp_1 = 0", cp1.is_zero(), f"trace of H(det_{v}) is {cp1!r}")
            )
        elif name == "cp2_negative":
            cp2 = cp_coefficient(h, 2)
            q = divide_exact(cp2, d)
            results.append(
                CheckResult(
                    f"det_{v} does not divide cp_2",
                    q is None,
                    "division fails as the theorem requires"
                    if q is None
                    else f"unexpected quotient {q!r}",
                )
            )
        elif name in ("cp3", "cp5"):
            s = int(name[2:])
            cps = cp_coefficient(h, s)
            q = divide_exact(cps, d)
            want_deg = s * (v - 2) - v
            got_deg = None if q is None else q.degree()
            ok = q is not None and got_deg == want_deg
            results.append(
                CheckResult(
                    f"det_{v} | cp_{s} with cofactor degree {want_deg}",
                    ok,
                    f"cofactor {'missing' if q is None else f'degree {got_deg}, {q.num_terms()} terms'}",
                )
            )
        elif name == "cp8":
            if v != 3:
                raise CapacityError("verify_sfturbo cp8", v, 3)
            # Exact computation gives cp_8 = det_3^2 * trace(A A^T); the
            # constant 2 in the literature corresponds to normalizing the
            # contraction as Q(A) = (1/2) trace(A A^T).
            cp8 = cp_coefficient(h, 8)
            want = d * d * _contraction_q(3)
            results.append(
                CheckResult(
                    "cp_8 = det_3^2 * trace(AA^T)  (= 2 det_3^2 Q with Q = trace(AA^T)/2)",
                    cp8 == want,
                    "exact equality" if cp8 == want else "mismatch",
                )
            )
        elif name == "cp9":
            if v != 3:
                raise CapacityError("verify_sfturbo cp9", v, 3)
            # B. Segre's identity; the exact sign at odd v is
            # (-1)^{binom(v,2)}, here (-1)^3 * 2 = -2.
            cp9 = det_polymatrix(h)
            sign = -1 if comb(v, 2) % 2 else 1
            want = Polynomial.constant(9, Fraction(sign * (v - 1))) * d * d * d
            results.append(
                CheckResult(
                    "cp_9 = det(H(det_3)) = -2 det_3^3  (B. Segre, sign (-1)^{binom(3,2)})",
                    cp9 == want,
                    "exact equality" if cp9 == want else "mismatch",
                )
            )
        else:
            raise ValueError(f"unknown sfturbo check {name!r}")
    return SFReport(v=v, checks=tuple(results))


def verify_discriminant_identity() -> bool:
    """det(H(Delta)) = 3888 * Delta^2 for the binary-cubic discriminant."""
    delta = discriminant()
    h = hessian(delta)
    lhs = det_polymatrix(h)
    rhs = Polynomial.constant(4, Fraction(3888)) * delta * delta
    return lhs == rhs


def cayley_check(n: int, s: int) -> bool:
    """det_n(d/dx) applied to det_n^{s+1} equals ((s+n)!/s!) det_n^s."""
    if n > 3 or s > 2:
        raise CapacityError("cayley_check", max(n, s), 3)
    d = det(n)
    target = d ** (s + 1)
    lhs = apply_diff(d, target)
    factor = Fraction(factorial(s + n), factorial(s))
    rhs = Polynomial.constant(n * n, factor) * d**s
    return lhs == rhs


# ---------------------------------------------------------------------------
# Sylvester--Franke divisibility
# ---------------------------------------------------------------------------


def generic_matrix(v: int) -> PolyMatrix:
    """The v x v matrix of independent variables x_ij (row-major slots)."""
    rows = tuple(
        tuple(Polynomial.variable(i * v + j, v * v) for j in range(v))
        for i in range(v)
    )
    return PolyMatrix(v * v, rows)


def verify_sylvester_franke(v: int, k: int, p: int) -> bool:
    """det(A)^p divides cp_{C(v-1,k)+p}(compound(A, k)) for generic A.

    The classical Sylvester--Franke theorem det(compound(A,k)) =
    det(A)^{C(v-1,k-1)} is the case p = C(v-1,k-1).
    """
    if v > 4:
        raise CapacityError("verify_sylvester_franke", v, 4)
    if not (1 <= k <= v) or p < 0:
        raise ValueError("need 1 <= k <= v and p >= 0")
    a = generic_matrix(v)
    wedge = compound(a, k)
    s = comb(v - 1, k) + p
    if s > wedge.size:
        raise ValueError(f"cp index {s} exceeds compound size {wedge.size}")
    cps = cp_coefficient(wedge, s)
    d = det_polymatrix(a)
    f = cps
    for _ in range(p):
        q = divide_exact(f, d)
        if q is None:
            return False
        f = q
    return True


# ---------------------------------------------------------------------------
# Dual-variety dimension probe and stabilizer Lie algebras
# ---------------------------------------------------------------------------


def dual_dimension_at(p: Polynomial, w: Sequence) -> int:
    """dim Z(P)^dual = rank(H_P(w)) - 2 at a smooth rational zero w."""
    point = [Fraction(x) for x in w]
    if p.evaluate(point) != 0:
        raise ValueError("w is not a zero of P")
    grad = [
        apply_diff(Polynomial.variable(i, p.num_vars), p).evaluate(point)
        for i in range(p.num_vars)
    ]
    if not any(grad):
        raise ValueError("w is a singular point of Z(P)")
    h = hessian(p)
    return exact_rank(h.evaluate(point)) - 2


def sample_det_smooth_zero(n: int, rng) -> List[Fraction]:
    """A random rational rank-(n-1) matrix, flattened row-major.

    diag(1,...,1,0) conjugated by a random invertible integer matrix g:
    g D g^{-1} keeps rank exactly n-1, and rank-(n-1) points are exactly
    the smooth points of {det_n = 0} (the gradient is the cofactor
    matrix, nonzero iff some (n-1)-minor is).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    while True:
        g = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        if exact_rank(g) < n:
            continue
        basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
        ginv_cols = [solve_linear(g, e) for e in basis]
        # w = g . diag(1,..,1,0) . g^{-1}: drop index n-1 from the sum
        point: List[Fraction] = []
        for i in range(n):
            for j in range(n):
                point.append(
                    sum((g[i][k] * ginv_cols[j][k] for k in range(n - 1)),
                        Fraction(0))
                )
        return point


def perm_special_point(m: int) -> List[Fraction]:
    """The all-ones matrix with entry (1,1) set to -(m-1), flattened.

    perm_m of the all-ones matrix is m!; the (1,1) cofactor permanent is
    (m-1)!, so the adjusted entry a = -(m-1) makes the permanent vanish
    while the gradient entry (m-1)! stays nonzero: a smooth zero.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    point = [Fraction(1)] * (m * m)
    point[0] = Fraction(-(m - 1))
    return point


def stabilizer_lie_dim(p: Polynomial) -> int:
    """dim of the annihilator of P in gl(v) acting by x_i d/dx_j.

    The condition sum_ij X_ij x_i dP/dx_j = 0 is linear in the v^2
    unknowns X_ij; the dimension is v^2 minus the rank of its exact
    coefficient matrix.
    """
    if not p.is_homogeneous():
        raise ValueError("stabilizer_lie_dim requires a homogeneous polynomial")
    v = p.num_vars
    partials = [
        apply_diff(Polynomial.variable(j, v), p) for j in range(v)
    ]
    # rows indexed by monomials appearing in any x_i * dP/dx_j
    columns: List[Dict[Tuple[int, ...], Fraction]] = []
    row_keys: Dict[Tuple[int, ...], int] = {}
    for i in range(v):
        for j in range(v):
            prod = Polynomial.variable(i, v) * partials[j]
            col: Dict[Tuple[int, ...], Fraction] = {}
            for exps, coeff in prod.sorted_terms():
                if exps not in row_keys:
                    row_keys[exps] = len(row_keys)
                col[exps] = coeff
            columns.append(col)
    rows = [[Fraction(0)] * (v * v) for _ in range(len(row_keys))]
    for cidx, col in enumerate(columns):
        for exps, coeff in col.items():
            rows[row_keys[exps]][cidx] = coeff
    if not rows:
        return v * v
    return v * v - exact_rank(rows)
