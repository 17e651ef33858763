"""Faithful representations used as a word-problem oracle.

The matrix-based group embeds in Q^n x| Z via (v, n)(w, n') = (v + M^n w, n + n').
The wreath-based group embeds in Z[x, 1/x, 1/(1+x)] x| Z^2 via
(f, i, n)(f', i', n') = (f + x^i (1+x)^n f', i + i', n + n').

Nothing here calls into the normal form code; words are evaluated from the
images of the generators only.  Both representations store their rational
parts as an integer numerator over a power of a fixed denominator (det M,
resp. 1 + x), kept in lowest terms so that equal images compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import IntMatrix, LaurentPoly, laurent_div_1px, one_plus_x_pow


@dataclass(frozen=True)
class DilationRep:
    """Vector part num / det^e with e minimal, and t-exponent n."""

    num: tuple
    e: int
    n: int


@dataclass(frozen=True)
class BRRep:
    """Fiber part num / (1+x)^e with e minimal, s-exponent i, t-exponent n."""

    num: LaurentPoly
    e: int
    i: int
    n: int


@lru_cache(maxsize=1024)
def _ipow(M: IntMatrix, n: int) -> IntMatrix:
    return M ** n


def _lowest(num: tuple, e: int, d: int):
    if not any(num):
        return num, 0
    while e > 0 and all(x % d == 0 for x in num):
        num = tuple(x // d for x in num)
        e -= 1
    return num, e


def _vec_add(d: int, a: tuple, ea: int, b: tuple, eb: int):
    E = max(ea, eb)
    sa, sb = d ** (E - ea), d ** (E - eb)
    return _lowest(tuple(x * sa + y * sb for x, y in zip(a, b)), E, d)


def _reduce(num: LaurentPoly, e: int):
    """Lowest terms for num * (1+x)^-e; e may come in negative."""
    if e < 0:
        num = num * one_plus_x_pow(-e)
        e = 0
    if not num:
        return num, 0
    while e > 0:
        q = laurent_div_1px(num)
        if q is None:
            break
        num, e = q, e - 1
    return num, e


def _frac_add(n1, e1, n2, e2):
    E = max(e1, e2)
    num = n1 * one_plus_x_pow(E - e1) + n2 * one_plus_x_pow(E - e2)
    return _reduce(num, E)


class Representation:
    """Image of one HNN group; built from the group only to read off theta."""

    def __init__(self, group):
        self.group = group
        self.wreath = group.is_wreath
        if not self.wreath:
            self.matrix = group.base.matrix
            self.adj = self.matrix.adjugate()
            self.det = self.matrix.det()
            self.rank = self.matrix.rows

    def _act(self, n: int, num: tuple, e: int):
        """M^n (num / det^e), unreduced; M^-1 = adj / det."""
        if n >= 0:
            return _ipow(self.matrix, n).apply(num), e
        return _ipow(self.adj, -n).apply(num), e - n

    def vector(self, r: DilationRep) -> tuple:
        """Vector part of a dilation image as Fractions."""
        return tuple(Fraction(x, self.det ** r.e) for x in r.num)

    def identity(self):
        if self.wreath:
            return BRRep(LaurentPoly(), 0, 0, 0)
        return DilationRep((0,) * self.rank, 0, 0)

    def generator(self, token: str):
        """Image of a generator token: t, u, v (rank 2), s, a, a[i]."""
        if token == "t":
            if self.wreath:
                return BRRep(LaurentPoly(), 0, 0, 1)
            return DilationRep((0,) * self.rank, 0, 1)
        if self.wreath:
            if token == "s":
                return BRRep(LaurentPoly(), 0, 1, 0)
            if token == "a":
                return BRRep(LaurentPoly({0: 1}), 0, 0, 0)
            if token.startswith("a[") and token.endswith("]"):
                return BRRep(LaurentPoly({int(token[2:-1]): 1}), 0, 0, 0)
        elif self.rank == 2 and token in ("u", "v"):
            return DilationRep((1, 0) if token == "u" else (0, 1), 0, 0)
        raise ValueError(f"unknown generator {token!r} for {self.group.name}")

    def compose(self, r, s):
        if self.wreath:
            if not (isinstance(r, BRRep) and isinstance(s, BRRep)):
                raise TypeError("rep_compose expects two BRRep values")
            # x^i (1+x)^n f'  ==  x^i num' (1+x)^(n - e')
            num, e = _frac_add(r.num, r.e, s.num.shift(r.i), s.e - r.n)
            return BRRep(num, e, r.i + s.i, r.n + s.n)
        if not (isinstance(r, DilationRep) and isinstance(s, DilationRep)):
            raise TypeError("rep_compose expects two DilationRep values")
        w, ew = self._act(r.n, s.num, s.e)
        num, e = _vec_add(self.det, r.num, r.e, w, ew)
        return DilationRep(num, e, r.n + s.n)

    def inverse(self, r):
        if self.wreath:
            # (f, i, n)^-1 = (-x^-i (1+x)^-n f, -i, -n)
            num, e = _reduce(-r.num.shift(-r.i), r.e + r.n)
            return BRRep(num, e, -r.i, -r.n)
        w, e = self._act(-r.n, r.num, r.e)
        num, e = _lowest(tuple(-x for x in w), e, self.det)
        return DilationRep(num, e, -r.n)

    def power(self, r, n: int):
        if n < 0:
            r, n = self.inverse(r), -n
        out = self.identity()
        for _ in range(n):
            out = self.compose(out, r)
        return out

    def eval_word(self, word):
        """word: iterable of (token, exponent) pairs."""
        out = self.identity()
        for token, e in word:
            out = self.compose(out, self.power(self.generator(token), e))
        return out

    def embed(self, g):
        """Image of a normal form t^-k w t^l."""
        if self.wreath:
            num, e = _reduce(g.w.a, g.k)
            return BRRep(num, e, g.w.i, g.l - g.k)
        num, e = self._act(-g.k, g.w, 0)
        num, e = _lowest(num, e, self.det)
        return DilationRep(num, e, g.l - g.k)


def embed(g):
    return Representation(g.group).embed(g)


def rep_compose(rep: Representation, r, s):
    return rep.compose(r, s)


def rep_eq(r, s) -> bool:
    if type(r) is not type(s):
        raise TypeError(f"cannot compare {type(r).__name__} with {type(s).__name__}")
    return r == s
