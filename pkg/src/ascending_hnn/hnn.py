"""Ascending HNN extensions G = <t, B | t b t^-1 = theta(b)>.

Every element is stored as ``t^-k * w * t^l`` with ``k, l >= 0`` and ``w`` in
the base, reduced so that it is never the case that k > 0, l > 0 and w lies
in theta(B).  With that convention the triple is unique, so equality of
elements is equality of triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bases import THM21_MATRIX, FreeAbelianBase, WreathBase, WreathElement
from .exactalg import IntMatrix, LaurentPoly


class HNNGroup:
    """The ascending HNN extension of ``base`` along its theta.

    Construction checks that theta is injective but not surjective: for a
    matrix base this is ``|det| >= 2`` plus an explicit standard basis vector
    outside the image; for the wreath base the witness is a_0.
    """

    def __init__(self, base, name: str | None = None):
        self.base = base
        self.name = name or ("br" if base.kind == "wreath" else f"matrix:{base.matrix}")
        self.non_surjective_witness = self._find_witness()
        self._identity = HnnElement(self, 0, base.identity(), 0)

    def _find_witness(self):
        for g in self.base.generators():
            if self.base.theta_preimage(g) is None:
                return g
        raise ValueError(f"theta of {self.name} is surjective on the generators")

    @classmethod
    def thm21(cls) -> "HNNGroup":
        return cls(FreeAbelianBase(THM21_MATRIX), name="thm21")

    @classmethod
    def br(cls) -> "HNNGroup":
        return cls(WreathBase(), name="br")

    @classmethod
    def from_matrix(cls, rows) -> "HNNGroup":
        M = rows if isinstance(rows, IntMatrix) else IntMatrix(rows)
        return cls(FreeAbelianBase(M))

    @property
    def is_wreath(self) -> bool:
        return self.base.kind == "wreath"

    def __eq__(self, other):
        return isinstance(other, HNNGroup) and self.base == other.base

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        return f"HNNGroup({self.name})"

    def identity(self) -> "HnnElement":
        return self._identity

    def t(self) -> "HnnElement":
        return HnnElement(self, 0, self.base.identity(), 1)

    def element(self, w, k: int = 0, l: int = 0) -> "HnnElement":
        return normalize(self, k, w, l)

    def s(self) -> "HnnElement":
        if not self.is_wreath:
            raise ValueError("s only exists in the wreath-based group")
        return HnnElement(self, 0, WreathElement(LaurentPoly(), 1), 0)

    def a(self, i: int = 0) -> "HnnElement":
        if not self.is_wreath:
            raise ValueError("a[i] only exists in the wreath-based group")
        return HnnElement(self, 0, WreathElement(LaurentPoly({i: 1}), 0), 0)

    def base_generators(self) -> list:
        return [HnnElement(self, 0, g, 0) for g in self.base.generators()]


@dataclass(frozen=True, eq=False)
class HnnElement:
    group: HNNGroup
    k: int
    w: object
    l: int

    def _key(self):
        return (self.k, self.w, self.l)

    def __eq__(self, other):
        if not isinstance(other, HnnElement):
            return NotImplemented
        return self.group == other.group and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __mul__(self, other):
        return mul(self, other)

    def __invert__(self):
        return inv(self)

    def __pow__(self, n: int):
        return power(self, n)

    def is_identity(self) -> bool:
        return self == self.group.identity()

    def in_base(self) -> bool:
        return self.k == 0 and self.l == 0

    def __repr__(self):
        return f"HnnElement(k={self.k}, w={self.group.base.format(self.w)}, l={self.l})"


def normalize(group: HNNGroup, k: int, w, l: int) -> HnnElement:
    if k < 0 or l < 0:
        raise ValueError("t-exponents of the normal form must be non-negative")
    base = group.base
    while k > 0 and l > 0:
        pre = base.theta_preimage(w)
        if pre is None:
            break
        w, k, l = pre, k - 1, l - 1
    return HnnElement(group, k, w, l)


def _same_group(g: HnnElement, h: HnnElement):
    if g.group != h.group:
        raise ValueError(f"elements of different groups: {g.group} and {h.group}")


def mul(g: HnnElement, h: HnnElement) -> HnnElement:
    _same_group(g, h)
    base = g.group.base
    d = g.l - h.k
    # t^-k w t^l t^-k' w' t^l'; move the middle t-power past one of the base
    # letters using w t^-e = t^-e theta^e(w) and t^e w' = theta^e(w') t^e
    if d >= 0:
        w = base.mul(g.w, base.theta(h.w, d))
        return normalize(g.group, g.k, w, d + h.l)
    e = -d
    w = base.mul(base.theta(g.w, e), h.w)
    return normalize(g.group, g.k + e, w, h.l)


def inv(g: HnnElement) -> HnnElement:
    return normalize(g.group, g.l, g.group.base.inv(g.w), g.k)


def power(g: HnnElement, n: int) -> HnnElement:
    if n < 0:
        return power(inv(g), -n)
    result = g.group.identity()
    sq = g
    while n:
        if n & 1:
            result = mul(result, sq)
        sq = mul(sq, sq)
        n >>= 1
    return result


def chi(g: HnnElement) -> int:
    """The associated homomorphism to Z: t -> 1, B -> 0."""
    return g.l - g.k


def s_exponent(g: HnnElement) -> int:
    """Exponent sum of s; defined on the wreath-based group only."""
    if not g.group.is_wreath:
        raise ValueError("s_exponent is only defined on the wreath-based group")
    return g.w.i


def t_power(group: HNNGroup, j: int) -> HnnElement:
    ident = group.base.identity()
    return HnnElement(group, 0, ident, j) if j >= 0 else HnnElement(group, -j, ident, 0)


def conj_by_t(g: HnnElement, j: int) -> HnnElement:
    """t^j g t^-j."""
    if j == 0:
        return g
    tj = t_power(g.group, j)
    return mul(mul(tj, g), inv(tj))


def conjugate(g: HnnElement, x: HnnElement) -> HnnElement:
    """g x g^-1."""
    return mul(mul(g, x), inv(g))
