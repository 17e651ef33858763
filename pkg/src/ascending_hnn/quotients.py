"""Congruence quotients in which theta becomes an automorphism.

Matrix group, modulus q with gcd(q, det M) = 1: the quotient is
(Z/q)^n x| Z/N where t acts by M and N is the order of M mod q.

Wreath group, odd q and odd r: the fiber is R = (Z/q)[x]/(x^r - 1), s acts
by x (order r) and t by 1 + x (invertible since x^r - 1 at x = -1 is -2),
giving R x| (Z/r x Z/N).

Elements of a quotient are ``QuotientElement(fiber, s, t)`` and multiply by
(f, i, n)(f', i', n') = (f + x^i T^n f', i + i', n + n').
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactalg import hnf, left_kernel
from .hnn import HNNGroup, HnnElement, conjugate
from .subgroups import FullBase, WindowLattice, ascension_type, conj_lattice

MAX_T_ORDER = 10 ** 6


@dataclass(frozen=True)
class QuotientElement:
    fiber: tuple
    s: int
    t: int


def _mat_mod_mul(A, B, q):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(r, c)) % q for c in cols) for r in A)


def _apply_mod(A, v, q):
    return tuple(sum(a * b for a, b in zip(r, v)) % q for r in A)


def _gl_order(n: int, q: int) -> int:
    order = 1
    rest = q
    p = 2
    while rest > 1:
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            order *= p ** ((k - 1) * n * n) * math.prod(p ** n - p ** i for i in range(n))
        p += 1
    return order


class CongruenceQuotient:
    def __init__(self, group: HNNGroup, q: int, r: int | None = None):
        if q < 2:
            raise ValueError("modulus q must be at least 2")
        self.group = group
        self.q = q
        if group.is_wreath:
            if r is None:
                raise ValueError("the wreath quotient needs a ring exponent r")
            if q % 2 == 0:
                raise ValueError(f"q = {q} is even: 1 + x is not invertible mod q")
            if r < 1 or r % 2 == 0 or math.gcd((-1) ** r - 1, q) != 1:
                raise ValueError(
                    f"r = {r}: x^r - 1 evaluated at x = -1 is {(-1) ** r - 1}, not a unit mod {q}")
            self.r = r
            self.dim = r
            # multiplication by 1 + x on coefficient vectors indexed by exponent mod r
            T = [[0] * r for _ in range(r)]
            for j in range(r):
                T[j][j] += 1
                T[(j + 1) % r][j] += 1
        else:
            if r not in (None, 1):
                raise ValueError("r only applies to the wreath group")
            d = group.base.det
            if math.gcd(q, d) != 1:
                raise ValueError(f"gcd(q, det M) = gcd({q}, {d}) = {math.gcd(q, d)} is not 1")
            self.r = 1
            self.dim = group.base.rank
            T = group.base.matrix.entries
        T = tuple(tuple(v % q for v in row) for row in T)
        ident = tuple(tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim))
        powers = [ident]
        P = T
        while P != ident:
            powers.append(P)
            P = _mat_mod_mul(P, T, q)
            if len(powers) > MAX_T_ORDER:
                raise ValueError("t-action has too large an order")
        self.t_order = len(powers)
        self._tpow = tuple(powers)
        self.order = q ** self.dim * self.r * self.t_order
        self._check_relations()

    def __repr__(self):
        extra = f", r={self.r}" if self.group.is_wreath else ""
        return f"CongruenceQuotient({self.group.name}, q={self.q}{extra})"

    def identity(self) -> QuotientElement:
        return QuotientElement((0,) * self.dim, 0, 0)

    def _act(self, s: int, t: int, v):
        v = _apply_mod(self._tpow[t % self.t_order], v, self.q)
        s %= self.r
        if s:
            v = v[-s:] + v[:-s]
        return v

    def mul(self, a: QuotientElement, b: QuotientElement) -> QuotientElement:
        w = self._act(a.s, a.t, b.fiber)
        f = tuple((x + y) % self.q for x, y in zip(a.fiber, w))
        return QuotientElement(f, (a.s + b.s) % self.r, (a.t + b.t) % self.t_order)

    def inv(self, a: QuotientElement) -> QuotientElement:
        w = self._act(-a.s, -a.t, a.fiber)
        return QuotientElement(tuple(-x % self.q for x in w), -a.s % self.r, -a.t % self.t_order)

    def pow(self, a: QuotientElement, n: int) -> QuotientElement:
        if n < 0:
            a, n = self.inv(a), -n
        out = self.identity()
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def fiber_vector(self, value, denom_exp: int = 0) -> tuple:
        """Image of the fiber element theta^-e(value)."""
        if self.group.is_wreath:
            v = [0] * self.r
            for e, c in value.terms():
                v[e % self.r] = (v[e % self.r] + c) % self.q
            v = tuple(v)
        else:
            v = tuple(x % self.q for x in value)
        return self._act(0, -denom_exp, v)

    def project(self, g: HnnElement) -> QuotientElement:
        if g.group != self.group:
            raise ValueError("element of another group")
        if self.group.is_wreath:
            f = self.fiber_vector(g.w.a, g.k)
            s = g.w.i % self.r
        else:
            f = self.fiber_vector(g.w, g.k)
            s = 0
        return QuotientElement(f, s, (g.l - g.k) % self.t_order)

    def _check_relations(self):
        G = self.group
        t = self.project(G.t())
        for b in G.base_generators():
            lhs = self.mul(self.mul(t, self.project(b)), self.inv(t))
            rhs = self.project(G.element(G.base.theta(b.w)))
            if lhs != rhs:
                raise AssertionError(f"projection breaks t b t^-1 = theta(b) for b = {b}")
        if G.is_wreath:
            s, a0, a1 = self.project(G.s()), self.project(G.a(0)), self.project(G.a(1))
            if self.mul(t, s) != self.mul(s, t):
                raise AssertionError("projection breaks ts = st")
            if self.mul(self.mul(s, a0), self.inv(s)) != a1:
                raise AssertionError("projection breaks s a_0 s^-1 = a_1")

    def report(self) -> dict:
        return {
            "q": self.q,
            "r": self.r if self.group.is_wreath else None,
            "order": self.order,
            "t_order": self.t_order,
        }

    def gl_order(self) -> int:
        return _gl_order(self.dim, self.q)


def make_quotient(group: HNNGroup, q: int, r: int | None = None) -> CongruenceQuotient:
    return CongruenceQuotient(group, q, r)


def project(g: HnnElement, Q: CongruenceQuotient) -> QuotientElement:
    return Q.project(g)


@dataclass(frozen=True)
class ImageSubgroup:
    order: int
    fiber_basis: tuple  # HNF rows (mod q) spanning the fiber part
    top_basis: tuple = ()  # HNF rows spanning the (s, t) part


def _fiber_span(Q: CongruenceQuotient, vectors) -> tuple:
    rows = [tuple(v) for v in vectors]
    rows += [tuple(Q.q * int(i == j) for j in range(Q.dim)) for i in range(Q.dim)]
    L = hnf(rows, dim=Q.dim)
    index = math.prod(row[j] for row, j in zip(L.basis, L.pivots()))
    return L, Q.q ** Q.dim // index


def _canonical_rows(L, q) -> tuple:
    return tuple(row for row, j in zip(L.basis, L.pivots()) if row[j] != q)


def image_subgroup(B, Q: CongruenceQuotient) -> ImageSubgroup:
    """Image of a subgroup in Q.

    ``B`` is a WindowLattice (its image is a subgroup of the fiber, found by
    reducing the basis together with q Z^n to HNF), a FullBase, or any
    sequence of group elements generating the subgroup.
    """
    if isinstance(B, WindowLattice):
        vecs = [Q.fiber_vector(v, B.denom_exp) for v in B.values()]
        L, order = _fiber_span(Q, vecs)
        return ImageSubgroup(order, _canonical_rows(L, Q.q))
    gens = B.generators if isinstance(B, FullBase) else list(B)
    return _generated_image(Q, [Q.project(g) for g in gens])


def _generated_image(Q: CongruenceQuotient, hs) -> ImageSubgroup:
    """Order of <hs> in the metabelian group Q.

    The top part P (image in Z/r x Z/N) is abelian; the fiber part N is the
    P-submodule generated by the relators of P evaluated on hs together with
    the pairwise commutators.
    """
    if not hs:
        return ImageSubgroup(1, ())
    top_rows = [(h.s, h.t) for h in hs]
    mods = [(Q.r, 0), (0, Q.t_order)]
    topL = hnf(top_rows + mods, dim=2)
    top_index = math.prod(row[j] for row, j in zip(topL.basis, topL.pivots()))
    p_order = Q.r * Q.t_order // top_index

    rel = left_kernel(top_rows + mods, 2)
    m = len(hs)
    relators = []
    for c in rel.basis:
        x = Q.identity()
        for cj, h in zip(c[:m], hs):
            if cj:
                x = Q.mul(x, Q.pow(h, cj))
        relators.append(x)
    for a in range(m):
        for b in range(a + 1, m):
            ha, hb = hs[a], hs[b]
            comm = Q.mul(Q.mul(ha, hb), Q.mul(Q.inv(ha), Q.inv(hb)))
            relators.append(comm)
    assert all(x.s == 0 and x.t == 0 for x in relators)

    L, order = _fiber_span(Q, [x.fiber for x in relators])
    while True:
        rows = list(L.basis)
        grown = rows + [Q._act(h.s, h.t, row) for h in hs for row in rows]
        L2, order2 = _fiber_span(Q, grown)
        if order2 == order:
            break
        L, order = L2, order2
    top = tuple(row for row, j, mod in zip(topL.basis, topL.pivots(), (Q.r, Q.t_order))
                if row[j] != mod)
    return ImageSubgroup(order * p_order, _canonical_rows(L, Q.q), top)


@dataclass(frozen=True)
class SeparationReport:
    separated: bool
    orders: tuple
    quotient: dict


def blass_neumann_check(tau: HnnElement, B, Q: CongruenceQuotient) -> SeparationReport:
    """Compare the images of B and tau B tau^-1 in Q.

    tau must strictly ascend on B; then the two images are conjugate in a
    finite group, hence equal, and ``separated`` comes out False.
    """
    verdict = ascension_type(tau, B)
    if not verdict.strict:
        raise ValueError(f"tau B tau^-1 is not properly inside B ({verdict.kind})")
    img = image_subgroup(B, Q)
    if isinstance(B, WindowLattice):
        conj = image_subgroup(conj_lattice(tau, B), Q)
    else:
        conj = image_subgroup([conjugate(tau, g) for g in B.generators], Q)
    return SeparationReport(img != conj, (img.order, conj.order), Q.report())


__all__ = [
    "CongruenceQuotient",
    "QuotientElement",
    "ImageSubgroup",
    "SeparationReport",
    "make_quotient",
    "project",
    "image_subgroup",
    "blass_neumann_check",
]
