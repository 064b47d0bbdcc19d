"""Exact sparse multivariate polynomial arithmetic over the rationals.

Conventions used throughout the package:

* A polynomial in ``v`` variables is a sparse dictionary mapping exponent
  tuples (length ``v``, non-negative ints) to nonzero ``Fraction``
  coefficients.  All arithmetic is exact; there are no floats anywhere.
* Monomials are ordered by *graded reverse lexicographic* order (grevlex),
  descending, with ``x1 > x2 > ... > xv``.  Every basis enumeration,
  serialization, and elimination in the package uses this single global
  order so that results are bit-reproducible.
* Derivatives are plain partial derivatives (no divided-power
  normalization).  This is what makes the classical Cayley identity
  ``det_n(d/dx) det_n(x)^{s+1} = (s+n)!/s! det_n(x)^s`` hold with the
  stated constant.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Exponent = Tuple[int, ...]
Scalar = Fraction

# ---------------------------------------------------------------------------
# Monomial order
# ---------------------------------------------------------------------------


def grevlex_key(exps: Exponent):
    """Sort key realizing *descending* grevlex when used with sorted().

    Higher total degree sorts first; within a degree, ``m`` precedes ``m'``
    iff the last nonzero entry of ``m - m'`` is negative, which is
    equivalent to ``reversed(m) < reversed(m')`` lexicographically.
    """
    return (-sum(exps), tuple(reversed(exps)))


def monomials_of_degree(num_vars: int, degree: int) -> List[Exponent]:
    """All exponent tuples of the given total degree, descending grevlex."""
    if num_vars == 0:
        return [()] if degree == 0 else []
    out: List[Exponent] = []

    def rec(prefix: List[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, num_vars)
    out.sort(key=grevlex_key)
    return out


def exponent_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exponent_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    """True if monomial ``a`` divides monomial ``b`` (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable-by-convention sparse polynomial over Q.

    ``terms`` maps exponent tuples to nonzero Fractions.  Do not mutate the
    dict after construction; all operations return fresh objects.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Dict[Exponent, Fraction] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != num_vars:
                raise ValueError(f"exponent {exps!r} has wrong arity (want {num_vars})")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps!r}")
            c = Fraction(coeff)
            if c != 0:
                clean[tuple(exps)] = c
        self.num_vars = num_vars
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(num_vars: int) -> "Polynomial":
        return Polynomial(num_vars, {})

    @staticmethod
    def constant(num_vars: int, c) -> "Polynomial":
        return Polynomial(num_vars, {(0,) * num_vars: Fraction(c)})

    @staticmethod
    def one(num_vars: int) -> "Polynomial":
        return Polynomial.constant(num_vars, 1)

    @staticmethod
    def variable(index: int, num_vars: int) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise ValueError("variable index out of range")
        e = [0] * num_vars
        e[index] = 1
        return Polynomial(num_vars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(len(exps), {tuple(exps): Fraction(coeff)})

    @staticmethod
    def linear_form(coeffs: Sequence) -> "Polynomial":
        """Linear form sum_i coeffs[i] * x_i in len(coeffs) variables."""
        v = len(coeffs)
        terms: Dict[Exponent, Fraction] = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c != 0:
                e = [0] * v
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(v, terms)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def num_terms(self) -> int:
        return len(self.terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in descending grevlex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = min(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def as_scalar(self) -> Fraction:
        """The value of a constant polynomial (zero included)."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if sum(e) == 0:
                return c
        raise ValueError("polynomial is not constant")

    # -- arithmetic ------------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"arity mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e, Fraction(0)) + c
            if acc:
                terms[e] = acc
            else:
                terms.pop(e, None)
        return Polynomial(self.num_vars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        # iterate over the smaller operand's terms in the outer loop
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: Dict[Exponent, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prev = acc.get(e)
                if prev is None:
                    acc[e] = c1 * c2
                else:
                    s = prev + c1 * c2
                    if s:
                        acc[e] = s
                    else:
                        del acc[e]
        return Polynomial(self.num_vars, acc)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.num_vars)
        return Polynomial(self.num_vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers not supported")
        result = Polynomial.one(self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- evaluation ------------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.num_vars:
            raise ValueError("point has wrong arity")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for x, k in zip(pt, e):
                if k:
                    val *= x**k
            total += val
        return total

    # -- display ------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.sorted_terms():
            factors = [
                f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            ]
            mono = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                piece = mono
            elif c == -1 and factors:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}" if factors else f"{c}"
            chunks.append(piece)
        out = chunks[0]
        for piece in chunks[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out


# ---------------------------------------------------------------------------
# Linear substitution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSubstitution:
    """Linear change/embedding of variables.

    Variable ``x_i`` of the source polynomial is replaced by the linear form
    ``sum_j matrix[i][j] * y_j`` in ``num_vars_out`` output variables.
    """

    num_vars_in: int
    num_vars_out: int
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.num_vars_in:
            raise ValueError("matrix must have num_vars_in rows")
        rows = tuple(
            tuple(Fraction(c) for c in row) for row in self.matrix
        )
        for row in rows:
            if len(row) != self.num_vars_out:
                raise ValueError("matrix rows must have num_vars_out entries")
        object.__setattr__(self, "matrix", rows)

    @staticmethod
    def identity(num_vars: int) -> "LinearSubstitution":
        rows = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(num_vars))
            for i in range(num_vars)
        )
        return LinearSubstitution(num_vars, num_vars, rows)

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "LinearSubstitution":
        rows_t = tuple(tuple(Fraction(c) for c in r) for r in rows)
        n_out = len(rows_t[0]) if rows_t else 0
        return LinearSubstitution(len(rows_t), n_out, rows_t)

    def compose(self, inner: "LinearSubstitution") -> "LinearSubstitution":
        """Substitution equivalent to applying self, then ``inner``.

        ``substitute(substitute(p, self), inner) == substitute(p, self.compose(inner))``.
        """
        if self.num_vars_out != inner.num_vars_in:
            raise ValueError("arity mismatch in composition")
        rows = tuple(
            tuple(
                sum(
                    (self.matrix[i][j] * inner.matrix[j][k] for j in range(self.num_vars_out)),
                    Fraction(0),
                )
                for k in range(inner.num_vars_out)
            )
            for i in range(self.num_vars_in)
        )
        return LinearSubstitution(self.num_vars_in, inner.num_vars_out, rows)


def substitute(p: Polynomial, sub: LinearSubstitution) -> Polynomial:
    """Apply a linear substitution to every variable of ``p``."""
    if p.num_vars != sub.num_vars_in:
        raise ValueError("substitution arity does not match polynomial")
    v_out = sub.num_vars_out
    forms = [Polynomial.linear_form(row) for row in sub.matrix]
    power_cache: Dict[Tuple[int, int], Polynomial] = {}

    def form_power(i: int, k: int) -> Polynomial:
        key = (i, k)
        got = power_cache.get(key)
        if got is None:
            got = forms[i] ** k
            power_cache[key] = got
        return got

    acc = Polynomial.zero(v_out)
    for e, c in p.terms.items():
        prod = Polynomial.constant(v_out, c)
        for i, k in enumerate(e):
            if k:
                prod = prod * form_power(i, k)
        acc = acc + prod
    return acc


# ---------------------------------------------------------------------------
# Differential operators
# ---------------------------------------------------------------------------


def apply_diff(op: Polynomial, target: Polynomial) -> Polynomial:
    """Apply ``op`` as a constant-coefficient differential operator.

    Variable ``x_i`` of ``op`` acts as d/dx_i (plain partials) on
    ``target``.  Both polynomials must share an arity.  The result has the
    same arity; use ``.as_scalar()`` when the degrees match.
    """
    if op.num_vars != target.num_vars:
        raise ValueError("operator and target arities differ")
    acc: Dict[Exponent, Fraction] = {}
    for e_op, c_op in op.terms.items():
        for e_t, c_t in target.terms.items():
            factor = 1
            ok = True
            for k_op, k_t in zip(e_op, e_t):
                if k_op > k_t:
                    ok = False
                    break
                if k_op:
                    # falling factorial k_t * (k_t-1) * ... * (k_t-k_op+1)
                    f = 1
                    for j in range(k_op):
                        f *= k_t - j
                    factor *= f
            if not ok:
                continue
            e = tuple(k_t - k_op for k_op, k_t in zip(e_op, e_t))
            add = c_op * c_t * factor
            prev = acc.get(e)
            if prev is None:
                acc[e] = add
            else:
                s = prev + add
                if s:
                    acc[e] = s
                else:
                    del acc[e]
    return Polynomial(op.num_vars, acc)


def diff_pairing(op: Polynomial, target: Polynomial) -> Fraction:
    """Scalar apolarity pairing: op(d) applied to target, degrees equal."""
    return apply_diff(op, target).as_scalar()


# ---------------------------------------------------------------------------
# Flattenings (partial derivative / catalecticant matrices)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlatteningMatrix:
    """Exact matrix of a flattening, with labeled row/column bases.

    ``entries[r][c]`` is the coefficient of row-basis monomial
    ``row_basis[r]`` in ``apply_diff(col_basis[c], source)``.  Bases are in
    descending grevlex order.
    """

    num_vars: int
    row_degree: int
    col_degree: int
    row_basis: Tuple[Exponent, ...]
    col_basis: Tuple[Exponent, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]
    source_digest: str = ""

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.row_basis), len(self.col_basis))

    def rows(self) -> List[List[Fraction]]:
        return [list(r) for r in self.entries]

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.num_vars, self.row_degree, self.col_degree)).encode())
        for row in self.entries:
            h.update(";".join(str(c) for c in row).encode())
            h.update(b"\n")
        return h.hexdigest()


def polarize(p: Polynomial, k: int) -> FlatteningMatrix:
    """Catalecticant P_{k,d-k}: column for monomial m is apply_diff(m, p).

    ``p`` must be homogeneous of degree d; any 0 <= k <= d is accepted,
    the informative range being 1..d-1.
    """
    if p.is_zero():
        raise ValueError("polarize requires a nonzero polynomial")
    if not p.is_homogeneous():
        raise ValueError("polarize requires a homogeneous polynomial")
    d = p.degree()
    if not 0 <= k <= d:
        raise ValueError(f"polarization order k={k} out of range for degree {d}")
    v = p.num_vars
    col_basis = monomials_of_degree(v, k)
    row_basis = monomials_of_degree(v, d - k)
    row_index = {e: i for i, e in enumerate(row_basis)}
    cols: List[List[Fraction]] = []
    for m in col_basis:
        q = apply_diff(Polynomial.monomial(m), p)
        col = [Fraction(0)] * len(row_basis)
        for e, c in q.terms.items():
            col[row_index[e]] = c
        cols.append(col)
    entries = tuple(
        tuple(cols[c][r] for c in range(len(col_basis)))
        for r in range(len(row_basis))
    )
    return FlatteningMatrix(
        num_vars=v,
        row_degree=d - k,
        col_degree=k,
        row_basis=tuple(row_basis),
        col_basis=tuple(col_basis),
        entries=entries,
        source_digest=poly_digest(p),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_record(p: Polynomial) -> dict:
    """JSON-ready record; terms in descending grevlex for reproducibility."""
    return {
        "num_vars": p.num_vars,
        "terms": [
            {"coeff": str(c), "exps": list(e)} for e, c in p.sorted_terms()
        ],
    }


def from_record(rec: dict) -> Polynomial:
    v = int(rec["num_vars"])
    terms: Dict[Exponent, Fraction] = {}
    for t in rec["terms"]:
        e = tuple(int(x) for x in t["exps"])
        c = Fraction(str(t["coeff"]))
        if c != 0:
            terms[e] = terms.get(e, Fraction(0)) + c
    return Polynomial(v, terms)


def dumps(p: Polynomial) -> str:
    return json.dumps(to_record(p), indent=2) + "\n"


def loads(text: str) -> Polynomial:
    return from_record(json.loads(text))


def poly_digest(p: Polynomial) -> str:
    return hashlib.sha256(
        json.dumps(to_record(p), separators=(",", ":")).encode()
    ).hexdigest()
