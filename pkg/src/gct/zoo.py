"""Named polynomials and explicit decomposition witnesses.

Variable layouts (all 0-indexed internally, 1-indexed in printed names):

* ``det n`` / ``perm n`` / ``p_lambda n``: the n x n matrix of variables
  x_{ij}, row-major (variable index (i-1)*n + (j-1)).
* ``elem n k``: e^k_n in n variables.
* ``chow n``: x_1 * ... * x_n.
* ``fermat d n``: x_1^d + ... + x_n^d.
* ``sumprod n m``: S^n_m = sum_{i<=m} prod_{j<=n} x_{ij}, nm variables,
  term-major.
* ``imm k n``: trace(X_1 ... X_n) with X_t a k x k variable matrix,
  t-major then row-major.
* ``pascal_det m``: the 4-index Pascal determinant on m^4 variables
  a_{ijkl} (row-major over the four indices).
* ``discriminant``: the quartic discriminant of a binary cubic, in the 4
  coefficient variables x_1..x_4.

Decomposition witnesses (Ryser, Fischer, Ben-Or) store exact rational
scalars and linear forms; the verifiers re-expand them and compare
coefficientwise, reporting the first mismatching monomial in grevlex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import (
    Exponent,
    LinearSubstitution,
    Polynomial,
    grevlex_key,
    substitute,
)

# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        cycle_len = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle_len += 1
        if cycle_len % 2 == 0:
            sign = -sign
    return sign


def det(n: int) -> Polynomial:
    """Determinant of the generic n x n matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = n * n
    terms: Dict[Exponent, Fraction] = {}
    for perm in permutations(range(n)):
        e = [0] * v
        for i in range(n):
            e[i * n + perm[i]] = 1
        terms[tuple(e)] = Fraction(_perm_sign(perm))
    return Polynomial(v, terms)


def perm(n: int) -> Polynomial:
    """Permanent of the generic n x n matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = n * n
    terms: Dict[Exponent, Fraction] = {}
    for p in permutations(range(n)):
        e = [0] * v
        for i in range(n):
            e[i * n + p[i]] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial(v, terms)


def elem(n: int, k: int) -> Polynomial:
    """Elementary symmetric polynomial e^k_n in n variables."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    terms: Dict[Exponent, Fraction] = {}
    for subset in combinations(range(n), k):
        e = [0] * n
        for i in subset:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial(n, terms)


def chow(n: int) -> Polynomial:
    """x_1 * x_2 * ... * x_n, the generic point of the Chow variety."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Polynomial(n, {(1,) * n: Fraction(1)})


def fermat(d: int, n: int) -> Polynomial:
    """x_1^d + ... + x_n^d."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be >= 1")
    terms: Dict[Exponent, Fraction] = {}
    for i in range(n):
        e = [0] * n
        e[i] = d
        terms[tuple(e)] = Fraction(1)
    return Polynomial(n, terms)


def sumprod(n: int, m: int) -> Polynomial:
    """S^n_m = sum_{i=1}^m prod_{j=1}^n x_{ij} on nm variables."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    v = n * m
    terms: Dict[Exponent, Fraction] = {}
    for i in range(m):
        e = [0] * v
        for j in range(n):
            e[i * n + j] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial(v, terms)


def imm(k: int, n: int) -> Polynomial:
    """Iterated matrix multiplication IMM^k_n = trace(X_1 X_2 ... X_n)."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    v = n * k * k

    def var(t: int, i: int, j: int) -> int:
        return t * k * k + i * k + j

    terms: Dict[Exponent, Fraction] = {}
    for path in product(range(k), repeat=n):
        e = [0] * v
        for t in range(n):
            i = path[t]
            j = path[(t + 1) % n]
            e[var(t, i, j)] += 1
        key = tuple(e)
        terms[key] = terms.get(key, Fraction(0)) + 1
    return Polynomial(v, terms)


def pascal_det(m: int) -> Polynomial:
    """4-index Pascal determinant on the m^4 variables a_{ijkl}.

    Pasdet_m = sum over sigma2, sigma3, sigma4 in S_m of
    sgn(sigma2 sigma3 sigma4) * prod_i a_{i, sigma2(i), sigma3(i), sigma4(i)}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    v = m**4

    def var(i: int, j: int, k: int, l: int) -> int:
        return ((i * m + j) * m + k) * m + l

    terms: Dict[Exponent, Fraction] = {}
    perms = list(permutations(range(m)))
    signs = {p: _perm_sign(p) for p in perms}
    for s2 in perms:
        for s3 in perms:
            for s4 in perms:
                sign = signs[s2] * signs[s3] * signs[s4]
                e = [0] * v
                for i in range(m):
                    e[var(i, s2[i], s3[i], s4[i])] += 1
                key = tuple(e)
                acc = terms.get(key, Fraction(0)) + sign
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
    return Polynomial(v, terms)


def pfaffian(rows: List[List[Polynomial]]) -> Polynomial:
    """Pfaffian of a skew-symmetric matrix of polynomials.

    Recursive first-row expansion; convention Pf([[0, a], [-a, 0]]) = a.
    """
    size = len(rows)
    if size == 0:
        raise ValueError("pass at least a 2x2 matrix (arity is read from entries)")
    if size % 2 != 0:
        raise ValueError("Pfaffian needs an even-size matrix")
    v = rows[0][0].num_vars

    def rec(idx: Tuple[int, ...]) -> Polynomial:
        if not idx:
            return Polynomial.one(v)
        first = idx[0]
        rest = idx[1:]
        acc = Polynomial.zero(v)
        for pos, j in enumerate(rest):
            minor = rec(rest[:pos] + rest[pos + 1 :])
            term = rows[first][j] * minor
            if pos % 2 == 1:
                term = -term
            acc = acc + term
        return acc

    return rec(tuple(range(size)))


def p_lambda(n: int) -> Polynomial:
    """The Pfaffian-based degeneration witness P_Lambda for odd n.

    Decompose the generic matrix M = M_S + M_Lambda into symmetric and
    skew parts and set P_Lambda(M) = sum_{i,j} (M_S)_{ij} nu_i nu_j where
    nu_i = (-1)^i Pf_i and Pf_i is the Pfaffian of M_Lambda with row and
    column i removed.  The cofactor signs matter: adj(M_Lambda) = nu nu^T,
    which makes this exactly the t-linear coefficient of
    det(M_Lambda + t M_S), i.e. the limit of the determinant under the
    curve scaling the symmetric part (checked numerically in tests).
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("P_Lambda is defined for odd n")
    v = n * n
    if n == 1:
        return Polynomial.variable(0, 1)

    def x(i: int, j: int) -> Polynomial:
        return Polynomial.variable(i * n + j, v)

    half = Fraction(1, 2)
    m_sym = [[(x(i, j) + x(j, i)) * half for j in range(n)] for i in range(n)]
    m_skew = [[(x(i, j) - x(j, i)) * half for j in range(n)] for i in range(n)]

    nu: List[Polynomial] = []
    for i in range(n):
        keep = [r for r in range(n) if r != i]
        sub = [[m_skew[a][b] for b in keep] for a in keep]
        p = pfaffian(sub)
        nu.append(p if i % 2 == 0 else -p)

    acc = Polynomial.zero(v)
    for i in range(n):
        for j in range(n):
            acc = acc + m_sym[i][j] * nu[i] * nu[j]
    return acc


def discriminant() -> Polynomial:
    """Discriminant of the binary cubic with coefficients x_1..x_4.

    Delta = 27 x1^2 x4^2 + 4 x1 x3^3 + 4 x2^3 x4 - x2^2 x3^2
            - 18 x1 x2 x3 x4.
    """
    terms = {
        (2, 0, 0, 2): Fraction(27),
        (1, 0, 3, 0): Fraction(4),
        (0, 3, 0, 1): Fraction(4),
        (0, 2, 2, 0): Fraction(-1),
        (1, 1, 1, 1): Fraction(-18),
    }
    return Polynomial(4, terms)


_BUILTINS = {
    "det": (det, 1),
    "perm": (perm, 1),
    "elem": (elem, 2),
    "chow": (chow, 1),
    "fermat": (fermat, 2),
    "sumprod": (sumprod, 2),
    "imm": (imm, 2),
    "pascal_det": (pascal_det, 1),
    "p_lambda": (p_lambda, 1),
    "discriminant": (discriminant, 0),
    "padded_elem": (None, 2),  # handled in make()
}


def padded_elem(m: int, k: int) -> Polynomial:
    """l^{m-k} e^k_m on m+1 variables (x_1..x_m, l last): Ben-Or's target."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    base = elem(m, k)
    terms: Dict[Exponent, Fraction] = {}
    for e, c in base.terms.items():
        terms[tuple(e) + (m - k,)] = c
    return Polynomial(m + 1, terms)


def make(name: str, *params: int) -> Polynomial:
    """Build a named polynomial; see the module docstring for layouts."""
    if name == "padded_elem":
        return padded_elem(*params)
    entry = _BUILTINS.get(name)
    if entry is None:
        raise KeyError(
            f"unknown polynomial {name!r}; known: {', '.join(sorted(_BUILTINS))}"
        )
    fn, arity = entry
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    message: str
    first_mismatch: Optional[Tuple[Exponent, Fraction, Fraction]] = None

    def __bool__(self) -> bool:
        return self.ok


def compare_exact(got: Polynomial, want: Polynomial, what: str) -> VerificationReport:
    """Exact comparison; on failure reports the grevlex-first bad monomial."""
    if got.num_vars != want.num_vars:
        return VerificationReport(
            False, f"{what}: arity mismatch {got.num_vars} vs {want.num_vars}"
        )
    diff = got - want
    if diff.is_zero():
        return VerificationReport(True, f"{what}: PASS")
    e = min(diff.terms, key=grevlex_key)
    return VerificationReport(
        False,
        f"{what}: FAIL at monomial {e} (want {want.coefficient(e)}, got {got.coefficient(e)})",
        (e, want.coefficient(e), got.coefficient(e)),
    )


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WaringDecomposition:
    """target = sum_i coeff_i * (form_i)^degree, forms as coefficient rows."""

    num_vars: int
    degree: int
    terms: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]

    def expand(self) -> Polynomial:
        acc = Polynomial.zero(self.num_vars)
        for coeff, form in self.terms:
            acc = acc + Polynomial.linear_form(form) ** self.degree * coeff
        return acc


@dataclass(frozen=True)
class ChowDecomposition:
    """target = sum_i coeff_i * prod_j form_{ij}; each inner tuple of forms."""

    num_vars: int
    terms: Tuple[Tuple[Fraction, Tuple[Tuple[Fraction, ...], ...]], ...]

    def expand(self) -> Polynomial:
        acc = Polynomial.zero(self.num_vars)
        for coeff, forms in self.terms:
            prod_poly = Polynomial.constant(self.num_vars, coeff)
            for form in forms:
                prod_poly = prod_poly * Polynomial.linear_form(form)
            acc = acc + prod_poly
        return acc


@dataclass(frozen=True)
class DetExpressionWitness:
    """target (degree m, v vars) as det_n of an affine-linear matrix.

    ``entries`` lists n^2 linear forms (row-major) in v+1 variables, the
    last variable being the homogenizing/padding variable l.  Validity
    means det_n(entries) = l^{n-m} * target, both sides in v+1 variables.
    """

    n: int
    num_target_vars: int
    entries: Tuple[Tuple[Fraction, ...], ...]


def verify_waring(dec: WaringDecomposition, target: Polynomial) -> VerificationReport:
    return compare_exact(dec.expand(), target, "waring decomposition")


def verify_chow(dec: ChowDecomposition, target: Polynomial) -> VerificationReport:
    return compare_exact(dec.expand(), target, "chow decomposition")


def verify_det_expression(
    witness: DetExpressionWitness, target: Polynomial
) -> VerificationReport:
    if witness.num_target_vars != target.num_vars:
        return VerificationReport(False, "det expression: target arity mismatch")
    m = target.degree()
    if m is None or not target.is_homogeneous():
        return VerificationReport(False, "det expression: target must be homogeneous")
    n = witness.n
    if n < m:
        return VerificationReport(False, f"det expression: n={n} smaller than degree {m}")
    if len(witness.entries) != n * n:
        return VerificationReport(False, "det expression: need n^2 entries")
    v1 = target.num_vars + 1
    sub = LinearSubstitution(n * n, v1, tuple(witness.entries))
    got = substitute(det(n), sub)
    pad = [0] * v1
    pad[-1] = n - m
    want_terms: Dict[Exponent, Fraction] = {}
    for e, c in target.terms.items():
        want_terms[tuple(e) + (n - m,)] = c
    want = Polynomial(v1, want_terms)
    return compare_exact(got, want, f"det_{n} expression")


# ---------------------------------------------------------------------------
# Classical decomposition constructions
# ---------------------------------------------------------------------------


def fischer_decomposition(n: int) -> WaringDecomposition:
    """Fischer's 2^{n-1}-term Waring decomposition of x_1...x_n.

    x_1...x_n = 1/(2^{n-1} n!) * sum over eps in {-1,1}^{n-1} of
    (x_1 + eps_1 x_2 + ... + eps_{n-1} x_n)^n * eps_1...eps_{n-1}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    scale = Fraction(1, 2 ** (n - 1) * factorial(n))
    terms: List[Tuple[Fraction, Tuple[Fraction, ...]]] = []
    for eps in product((1, -1), repeat=n - 1):
        sign = 1
        for s in eps:
            sign *= s
        form = (Fraction(1),) + tuple(Fraction(s) for s in eps)
        terms.append((scale * sign, form))
    return WaringDecomposition(num_vars=n, degree=n, terms=tuple(terms))


def ryser_decomposition(n: int) -> ChowDecomposition:
    """Ryser's 2^{n-1}-term Chow decomposition of the permanent.

    perm_n = 2^{-n+1} * sum over eps in {-1,1}^n with eps_1 = 1 of
    prod_i ( sum_j eps_i eps_j x_{ij} ).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    v = n * n
    scale = Fraction(1, 2 ** (n - 1))
    terms: List[Tuple[Fraction, Tuple[Tuple[Fraction, ...], ...]]] = []
    for rest in product((1, -1), repeat=n - 1):
        eps = (1,) + rest
        forms: List[Tuple[Fraction, ...]] = []
        for i in range(n):
            row = [Fraction(0)] * v
            for j in range(n):
                row[i * n + j] = Fraction(eps[i] * eps[j])
            forms.append(tuple(row))
        terms.append((scale, tuple(forms)))
    return ChowDecomposition(num_vars=v, terms=tuple(terms))


def _elementary_symmetric(values: Sequence[Fraction], k: int) -> Fraction:
    e = [Fraction(0)] * (k + 1)
    e[0] = Fraction(1)
    for val in values:
        for j in range(min(k, len(e) - 1), 0, -1):
            e[j] += e[j - 1] * val
    return e[k]


def benor_evaluation_points(m: int, k: int) -> List[Fraction]:
    """m distinct rationals u with e_k(u_1..u_m) = 0.

    The vanishing is exactly the consistency condition for an m-term
    decomposition of l^{m-k} e^k_m out of the products g_u (the t^{m-k}
    coefficient of prod(t - u_i) must vanish so the coefficient functional
    lies in the span of the m evaluation functionals).
    """
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    if k == m:
        pts = [Fraction(u) for u in range(m)]
    elif k % 2 == 1:
        half = m // 2
        pts = [Fraction(s * u) for u in range(1, half + 1) for s in (1, -1)]
        if m % 2 == 1:
            pts.append(Fraction(0))
    else:
        base = [Fraction(u) for u in range(1, m)]
        num = _elementary_symmetric(base, k)
        den = _elementary_symmetric(base, k - 1)
        pts = base + [-num / den]
    assert len(set(pts)) == m
    assert _elementary_symmetric(pts, k) == 0
    return pts


def benor_decomposition(m: int, k: int) -> ChowDecomposition:
    """Ben-Or's m-term Chow decomposition of l^{m-k} e^k_m.

    Uses g_u(x, l) = prod_i (x_i + u*l) at m points u with e_k(u) = 0 and
    exact Vandermonde-solved coefficients; lives in m+1 variables with the
    padding variable l last.  Some coefficients can be zero (k = m needs a
    single product); the witness still lists all m products.
    """
    from .flatten import solve_linear

    pts = benor_evaluation_points(m, k)
    # conditions: sum_u c_u u^j = delta_{j, m-k} for j = 0..m
    rows = [[u**j for u in pts] for j in range(m + 1)]
    rhs = [Fraction(1) if j == m - k else Fraction(0) for j in range(m + 1)]
    coeffs = solve_linear(rows, rhs)
    v = m + 1
    terms: List[Tuple[Fraction, Tuple[Tuple[Fraction, ...], ...]]] = []
    for u, c in zip(pts, coeffs):
        forms = []
        for i in range(m):
            row = [Fraction(0)] * v
            row[i] = Fraction(1)
            row[m] = Fraction(u)
            forms.append(tuple(row))
        terms.append((c, tuple(forms)))
    return ChowDecomposition(num_vars=v, terms=tuple(terms))


# ---------------------------------------------------------------------------
# Chow circuit accounting
# ---------------------------------------------------------------------------


def chow_circuit_size(r: int, n: int, w: int) -> int:
    """Circuit size of an r-term Chow decomposition in w+1 essential vars.

    Each of the r products of n linear forms costs n*(1+w) wires for the
    forms plus the product/sum gates absorbed in the r term: total
    r + n*r*(1+w).
    """
    if r < 0 or n < 0 or w < 0:
        raise ValueError("arguments must be non-negative")
    return r + n * r * (1 + w)
