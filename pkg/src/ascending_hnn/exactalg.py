"""Exact integer arithmetic: sparse Laurent polynomials, integer matrices,
Hermite normal form lattices and small eigen computations.

Everything here works over Python ints (and ``fractions.Fraction`` where a
rational intermediate is unavoidable); nothing touches floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "LaurentPoly",
    "IntMatrix",
    "Lattice",
    "laurent_mul",
    "laurent_degree",
    "laurent_div_1px",
    "hnf",
    "lattice_contains",
    "left_kernel",
    "int_eigen",
    "charpoly",
    "is_square",
]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    ``LaurentPoly({-1: 1, 2: 1})`` is ``x^-1 + x^2``.  Zero coefficients are
    dropped on construction, so the empty map is the zero polynomial.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(coeffs)
        self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, c):
        # c must already be free of zeros
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_vector(cls, vec: Sequence[int], lo: int) -> "LaurentPoly":
        return cls({lo + k: c for k, c in enumerate(vec) if c})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def terms(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has empty support")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has empty support")
        return max(self._c)

    def to_vector(self, lo: int, hi: int) -> tuple:
        if self._c and (self.min_exp() < lo or self.max_exp() > hi):
            raise ValueError(f"support of {self} leaves window [{lo}, {hi}]")
        return tuple(self._c.get(e, 0) for e in range(lo, hi + 1))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def evaluate(self, value) -> Fraction:
        value = Fraction(value)
        return sum((c * value ** e for e, c in self._c.items()), Fraction(0))

    def eval_minus_one(self) -> int:
        return sum(c if e % 2 == 0 else -c for e, c in self._c.items())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    out = {}
    for e1, c1 in p._c.items():
        for e2, c2 in q._c.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly._raw({e: c for e, c in out.items() if c})


def laurent_degree(p: LaurentPoly) -> int:
    """Width of the support: highest exponent minus lowest."""
    if p.is_zero():
        raise ValueError("degree undefined for the zero polynomial")
    return p.max_exp() - p.min_exp()


def laurent_div_1px(p: LaurentPoly):
    """Return q with (1 + x) * q == p, or None when 1 + x does not divide p."""
    if p.is_zero():
        return p
    if p.eval_minus_one():
        return None
    lo, hi = p.min_exp(), p.max_exp()
    c = p._c
    q = {}
    carry = 0
    # synthetic division from the low end: q_e = p_e - q_{e-1}
    for e in range(lo, hi):
        carry = c.get(e, 0) - carry
        if carry:
            q[e] = carry
    return LaurentPoly._raw(q)


@lru_cache(maxsize=256)
def one_plus_x_pow(n: int) -> LaurentPoly:
    """(1 + x)^n for n >= 0."""
    if n < 0:
        raise ValueError("negative power of 1 + x is not a Laurent polynomial")
    return LaurentPoly({k: math.comb(n, k) for k in range(n + 1)})


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(?:\*\s*)?)?(x(?:\s*\^\s*(-?\d+))?)?\s*")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse ``1 + 2*x^1 - x^-3`` style input (the ``c*x^e`` format)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    coeffs = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, xpart, exp = m.groups()
        if m.end() == pos or (num is None and xpart is None):
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {s[pos:]!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator at column {pos + 1}: {s[pos:]!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        e = 0
        if xpart is not None:
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(coeffs)


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.terms():
        body = str(abs(c)) if e == 0 else f"{abs(c)}*x^{e}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored as a tuple of row tuples."""

    entries: tuple

    def __init__(self, entries):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.entries))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols]
                          for r in self.entries])

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * v for v in r] for r in self.entries])

    __rmul__ = __mul__

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(r, s)]
                          for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def apply(self, v: Sequence[int]) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __pow__(self, n: int) -> "IntMatrix":
        if n < 0:
            raise ValueError("negative power of an integer matrix")
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def mod(self, q: int) -> "IntMatrix":
        return IntMatrix([[v % q for v in r] for r in self.entries])

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.rows))

    def det(self) -> int:
        # Bareiss fraction-free elimination
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = len(a)
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def adjugate(self) -> "IntMatrix":
        n = self.rows
        if n == 1:
            return IntMatrix([[1]])
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(self.entries) if k != i]
                adj[j][i] = (-1) ** (i + j) * IntMatrix(minor).det()
        return IntMatrix(adj)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^n held as a row-style Hermite normal form basis."""

    ambient_dim: int
    basis: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def pivots(self) -> list:
        return [next(j for j, v in enumerate(row) if v) for row in self.basis]

    def index(self) -> int:
        """Index in Z^n; only finite for full rank lattices."""
        if self.rank != self.ambient_dim:
            raise ValueError("lattice is not of full rank")
        return math.prod(row[j] for row, j in zip(self.basis, self.pivots()))

    def __contains__(self, v) -> bool:
        return lattice_contains(self, v) is not None


def _echelon(rows: list, ncols: int) -> list:
    """Unimodular row reduction to Hermite normal form; zero rows are kept at
    the bottom."""
    rows = [list(r) for r in rows]
    m = len(rows)
    prow = 0
    for col in range(ncols):
        if prow >= m:
            break
        while True:
            nz = [i for i in range(prow, m) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[prow], rows[piv] = rows[piv], rows[prow]
            p = rows[prow]
            done = True
            for i in range(prow + 1, m):
                if rows[i][col]:
                    f = rows[i][col] // p[col]
                    if f:
                        ri = rows[i]
                        for j in range(col, ncols):
                            ri[j] -= f * p[j]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if prow < m and rows[prow][col]:
            p = rows[prow]
            if p[col] < 0:
                for j in range(col, ncols):
                    p[j] = -p[j]
            for i in range(prow):
                f = rows[i][col] // p[col]
                if f:
                    ri = rows[i]
                    for j in range(col, ncols):
                        ri[j] -= f * p[j]
            prow += 1
    return rows


def hnf(generators: Iterable[Sequence[int]], dim: int | None = None) -> Lattice:
    """Canonical HNF basis of the lattice spanned by ``generators``.

    Pivots move strictly right, are positive, and entries above a pivot lie
    in ``[0, pivot)``.  An empty generator list gives the zero lattice.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if dim is None:
        dim = len(gens[0]) if gens else 0
    if any(len(g) != dim for g in gens):
        raise ValueError("generators have inconsistent dimensions")
    rows = _echelon([g for g in gens if any(g)], dim)
    return Lattice(dim, tuple(tuple(r) for r in rows if any(r)))


def lattice_contains(L: Lattice, v: Sequence[int]):
    """Integer coordinates c with sum(c_i * basis_i) == v, or None."""
    if len(v) != L.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in a lattice of dimension {L.ambient_dim}")
    rest = list(v)
    coords = []
    for row, j in zip(L.basis, L.pivots()):
        if any(rest[:j]):
            return None
        c, r = divmod(rest[j], row[j])
        if r:
            return None
        coords.append(c)
        if c:
            for k in range(j, len(rest)):
                rest[k] -= c * row[k]
    if any(rest):
        return None
    return tuple(coords)


def left_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Lattice:
    """HNF basis of {c : sum_j c_j * rows[j] == 0}."""
    m = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    red = _echelon(aug, ncols + m)
    kern = [r[ncols:] for r in red if not any(r[:ncols])]
    return hnf(kern, dim=m)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def charpoly(M: IntMatrix) -> list:
    """Coefficients [c_0, ..., c_n] (c_n = 1) of det(xI - M), by
    Faddeev-LeVerrier; every division is exact over Z."""
    n = M.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = IntMatrix([[0] * n for _ in range(n)])
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + coeffs[n - k + 1] * ident) if k > 1 else M
        ck = -Mk.trace() // k
        coeffs[n - k] = ck
    return coeffs


def right_kernel(M: IntMatrix) -> Lattice:
    """HNF basis of the integer vectors a with M a == 0."""
    return left_kernel(M.transpose().entries, M.rows)


def int_eigen(M: IntMatrix):
    """Trace, determinant and integer eigenpairs of a 2x2 integer matrix.

    Eigenpairs are ``(m, a)`` with ``M a == m a``; for each integer eigenvalue
    ``a`` runs over the HNF basis of the integer eigenlattice, so a scalar
    matrix contributes both standard basis vectors.
    """
    if M.rows != 2 or M.cols != 2:
        raise ValueError("int_eigen expects a 2x2 matrix")
    T, D = M.trace(), M.det()
    disc = T * T - 4 * D
    pairs = []
    if is_square(disc):
        r = math.isqrt(disc)
        roots = sorted({(T - r) // 2, (T + r) // 2}) if (T + r) % 2 == 0 else []
        for m in roots:
            kern = right_kernel(M - m * IntMatrix.identity(2))
            pairs.extend((m, a) for a in kern.basis)
    return T, D, pairs


def solve_rational(M: IntMatrix, v: Sequence[int]) -> tuple:
    """Exact solution of M x = v over Q for invertible square M."""
    adj = M.adjugate()
    d = M.det()
    if d == 0:
        raise ValueError("singular matrix")
    return tuple(Fraction(x, d) for x in adj.apply(v))
