"""Base groups B with an injective, non-surjective endomorphism theta.

Two kinds are supported:

* ``FreeAbelianBase``: Z^n with theta given by an integer matrix whose
  columns are the images of the standard basis vectors.  Elements are integer
  tuples.
* ``WreathBase``: W = Z wr Z, elements ``WreathElement(a, i)`` meaning
  ``a * s^i`` with ``a`` a Laurent polynomial (a_j <-> x^j).  Theta fixes s
  and multiplies the fiber by 1 + x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactalg import IntMatrix, LaurentPoly, laurent_div_1px, one_plus_x_pow, format_laurent


THM21_MATRIX = IntMatrix([[5, 2], [-1, 0]])


@dataclass(frozen=True)
class WreathElement:
    a: LaurentPoly = field(default_factory=LaurentPoly)
    i: int = 0

    def __str__(self):
        return f"{format_laurent(self.a)} ; s^{self.i}"


@dataclass(frozen=True)
class FreeAbelianBase:
    matrix: IntMatrix
    _adj: IntMatrix = field(init=False, repr=False, compare=False)
    _det: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        M = self.matrix
        if not M.is_square():
            raise ValueError("theta must be given by a square matrix")
        d = M.det()
        if d in (0, 1, -1):
            raise ValueError(f"det {d}: theta must be injective and not surjective (|det| >= 2)")
        object.__setattr__(self, "_det", d)
        object.__setattr__(self, "_adj", M.adjugate())
        object.__setattr__(self, "_rank", M.rows)

    kind = "abelian"

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def det(self) -> int:
        return self._det

    def identity(self) -> tuple:
        return (0,) * self.rank

    def _check(self, g):
        if not isinstance(g, tuple) or len(g) != self._rank:
            raise TypeError(f"{g!r} is not an element of Z^{self.rank}")

    def mul(self, g, h):
        self._check(g)
        self._check(h)
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        self._check(g)
        return tuple(-a for a in g)

    def theta(self, g, power: int = 1):
        self._check(g)
        if power == 1:
            return self.matrix.apply(g)
        return _matrix_power(self.matrix, power).apply(g)

    def theta_preimage(self, g):
        self._check(g)
        d = self._det
        out = []
        for x in self._adj.apply(g):
            q, r = divmod(x, d)
            if r:
                return None
            out.append(q)
        return tuple(out)

    def generators(self) -> list:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def format(self, g) -> str:
        return "(" + ",".join(map(str, g)) + ")"


@lru_cache(maxsize=4096)
def _matrix_power(M: IntMatrix, n: int) -> IntMatrix:
    return M ** n


@dataclass(frozen=True)
class WreathBase:
    kind = "wreath"

    def identity(self) -> WreathElement:
        return WreathElement(LaurentPoly(), 0)

    @staticmethod
    def _check(g):
        if not isinstance(g, WreathElement):
            raise TypeError(f"{g!r} is not an element of the wreath product")

    def mul(self, g, h):
        # (a, i)(b, j) = (a + x^i b, i + j)
        self._check(g)
        self._check(h)
        return WreathElement(g.a + h.a.shift(g.i), g.i + h.i)

    def inv(self, g):
        self._check(g)
        return WreathElement(-g.a.shift(-g.i), -g.i)

    def theta(self, g, power: int = 1):
        self._check(g)
        if power == 0 or not g.a:
            return g
        return WreathElement(g.a * one_plus_x_pow(power), g.i)

    def theta_preimage(self, g):
        self._check(g)
        q = laurent_div_1px(g.a)
        if q is None:
            return None
        return WreathElement(q, g.i)

    def generators(self) -> list:
        """s and a_0."""
        return [WreathElement(LaurentPoly(), 1), WreathElement(LaurentPoly({0: 1}), 0)]

    def format(self, g) -> str:
        return str(g)


def base_mul(base, g, h):
    return base.mul(g, h)


def theta_apply(base, g):
    return base.theta(g)


def theta_preimage(base, g):
    """h with theta(h) == g, or None when g lies outside the image of theta."""
    return base.theta_preimage(g)
