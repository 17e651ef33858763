"""Finitely generated subgroups of the abelian fiber and how G acts on them.

The fiber is the abelian normal subgroup ker(chi) (intersected with the
kernel of the s-exponent for the wreath group).  A subgroup of it is held as
``WindowLattice``: an HNF lattice ``L`` of integer vectors (coordinates
``lo..hi`` for Laurent polynomials, plain Z^n otherwise) together with a
denominator exponent ``e``; the subgroup is ``theta^-e(L)``, i.e. the set of
``t^-e b t^e`` for b in L.

The whole base W of the wreath group is not abelian; it gets its own small
``FullBase`` type so that the Blass-Neumann setting (tau = t, B = W) can be
expressed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactalg import (
    LaurentPoly,
    Lattice,
    hnf,
    laurent_degree,
    laurent_div_1px,
    lattice_contains,
    left_kernel,
    one_plus_x_pow,
)
from .hnn import HNNGroup, HnnElement, chi, conjugate, normalize, s_exponent, t_power
from .bases import WreathElement


# fiber values: LaurentPoly for the wreath group, int tuples otherwise

def _theta_val(group, v, n):
    if n == 0:
        return v
    if group.is_wreath:
        return v * one_plus_x_pow(n)
    return group.base.theta(v, n)


def _pre_val(group, v):
    if group.is_wreath:
        return laurent_div_1px(v)
    return group.base.theta_preimage(v)


def _nonzero(v) -> bool:
    return bool(v) if isinstance(v, LaurentPoly) else any(v)


def _window(values):
    nz = [v for v in values if v]
    if not nz:
        return 0, -1
    return min(v.min_exp() for v in nz), max(v.max_exp() for v in nz)


@dataclass(frozen=True)
class WindowLattice:
    group: HNNGroup
    lo: int | None
    hi: int | None
    L: Lattice
    denom_exp: int = 0

    def is_zero(self) -> bool:
        return self.L.is_zero()

    def values(self) -> list:
        """Basis rows as fiber values (numerators, before dividing by theta^e)."""
        if self.group.is_wreath:
            return [LaurentPoly.from_vector(row, self.lo) for row in self.L.basis]
        return [tuple(row) for row in self.L.basis]

    def elements(self) -> list:
        return [fiber_element(self.group, v, self.denom_exp) for v in self.values()]

    def __contains__(self, g) -> bool:
        return contains(self, g)

    def __str__(self):
        vals = ", ".join(
            (str(v) if isinstance(v, LaurentPoly) else "(" + ",".join(map(str, v)) + ")")
            for v in self.values())
        s = "span{" + vals + "}"
        return s if not self.denom_exp else f"theta^-{self.denom_exp} {s}"


@dataclass(frozen=True)
class FullBase:
    """The whole base group B of ``group`` (generated by its base generators)."""

    group: HNNGroup

    @property
    def generators(self) -> list:
        return self.group.base_generators()

    def __contains__(self, g) -> bool:
        return isinstance(g, HnnElement) and g.group == self.group and g.in_base()

    def __str__(self):
        return "B"


def fiber_element(group: HNNGroup, value, denom_exp: int = 0) -> HnnElement:
    """The group element t^-e value t^e."""
    if group.is_wreath:
        w = WreathElement(value, 0)
    else:
        w = tuple(value)
    return normalize(group, denom_exp, w, denom_exp)


def fiber_value(g: HnnElement):
    """(value, e) with g == t^-e value t^e, or None when g is outside the fiber."""
    if g.k != g.l:
        return None
    if g.group.is_wreath:
        if g.w.i:
            return None
        return g.w.a, g.k
    return g.w, g.k


def _build(group, values, dim_window=None):
    values = [v for v in values if _nonzero(v)]
    if group.is_wreath:
        lo, hi = dim_window if dim_window else _window(values)
        L = hnf([v.to_vector(lo, hi) for v in values], dim=hi - lo + 1)
        return lo, hi, L
    return None, None, hnf(values, dim=group.base.rank)


def make_lattice(group: HNNGroup, values, denom_exp: int = 0) -> WindowLattice:
    """Canonical WindowLattice for theta^-e(span(values)).

    The window is the tight support of the span and ``denom_exp`` is as small
    as possible, so equal subgroups give equal objects.
    """
    if denom_exp < 0:
        raise ValueError("denom_exp must be non-negative")
    values = [v if group.is_wreath else tuple(v) for v in values]
    lo, hi, L = _build(group, values)
    e = denom_exp
    while e > 0 and not L.is_zero():
        rows = WindowLattice(group, lo, hi, L, e).values()
        pre = [_pre_val(group, v) for v in rows]
        if any(p is None for p in pre):
            break
        lo, hi, L = _build(group, pre)
        e -= 1
    if L.is_zero():
        e = 0
        if group.is_wreath:
            lo, hi = 0, -1
    return WindowLattice(group, lo, hi, L, e)


def full_base(group: HNNGroup):
    """B itself: a lattice for Z^n bases, a FullBase for the wreath base."""
    if group.is_wreath:
        return FullBase(group)
    return make_lattice(group, group.base.generators())


def _lift(B: WindowLattice, E: int) -> list:
    return [_theta_val(B.group, v, E - B.denom_exp) for v in B.values()]


def contains(B: WindowLattice, g: HnnElement) -> bool:
    fv = fiber_value(g)
    if fv is None:
        return False
    v, e = fv
    E = max(e, B.denom_exp)
    vals = _lift(B, E)
    target = _theta_val(B.group, v, E - e)
    if B.group.is_wreath:
        lo, hi = _window(vals + [target])
        L = hnf([p.to_vector(lo, hi) for p in vals], dim=hi - lo + 1)
        return lattice_contains(L, target.to_vector(lo, hi)) is not None
    L = hnf(vals, dim=B.group.base.rank)
    return lattice_contains(L, target) is not None


def conj_lattice(g: HnnElement, B: WindowLattice) -> WindowLattice:
    """The lattice g B g^-1."""
    if g.group != B.group:
        raise ValueError("element and lattice live in different groups")
    group = B.group
    vals = [_theta_val(group, v, g.l) for v in B.values()]
    if group.is_wreath and g.w.i:
        vals = [v.shift(g.w.i) for v in vals]
    return make_lattice(group, vals, B.denom_exp + g.k)


@dataclass(frozen=True)
class Comparison:
    relation: str  # equal | subset | superset | incomparable
    witness: HnnElement | None = None

    @property
    def proper_subset(self) -> bool:
        return self.relation == "subset"


def lattice_compare(B1: WindowLattice, B2: WindowLattice) -> Comparison:
    """Compare two fiber subgroups.

    ``subset`` means B1 is properly contained in B2 and the witness lies in
    B2 but not in B1; ``superset`` is the mirror image; for ``incomparable``
    the witness lies in B1 and not in B2.
    """
    if B1.group != B2.group:
        raise ValueError("lattices of different groups")
    group = B1.group
    E = max(B1.denom_exp, B2.denom_exp)
    V1, V2 = _lift(B1, E), _lift(B2, E)
    win = _window(V1 + V2) if group.is_wreath else None
    _, _, L1 = _build(group, V1, win)
    _, _, L2 = _build(group, V2, win)

    def first_missing(A, Bl):
        for row in A.basis:
            if lattice_contains(Bl, row) is None:
                return row
        return None

    miss12 = first_missing(L1, L2)
    miss21 = first_missing(L2, L1)

    def elem(row):
        v = LaurentPoly.from_vector(row, win[0]) if group.is_wreath else tuple(row)
        return fiber_element(group, v, E)

    if miss12 is None and miss21 is None:
        return Comparison("equal")
    if miss12 is None:
        return Comparison("subset", elem(miss21))
    if miss21 is None:
        return Comparison("superset", elem(miss12))
    return Comparison("incomparable", elem(miss12))


@dataclass(frozen=True)
class DegreeExtremes:
    max_degree: int
    max_witness: LaurentPoly
    min_degree: int
    min_witness: LaurentPoly
    search_bound: int
    min_bound_limited: bool = True


def degree_extremes(B: WindowLattice, search_bound: int = 5) -> DegreeExtremes:
    """Largest and smallest degree of nonzero elements of B.

    The maximum is exact: every element lives in the tight window, and a
    combination of a basis vector touching ``lo`` with one touching ``hi``
    reaches both ends.  The minimum is a brute-force search over coefficient
    vectors with entries in ``[-search_bound, search_bound]``.
    """
    if not B.group.is_wreath:
        raise ValueError("degrees are defined for the wreath fiber only")
    if B.is_zero():
        raise ValueError("degree extremes of the zero lattice are undefined")
    if B.denom_exp:
        raise ValueError("lattice has denominators; conjugate by t^e first")
    vals = B.values()
    lo, hi = B.lo, B.hi
    b_lo = next(v for v in vals if v[lo])
    b_hi = next(v for v in vals if v[hi])
    witness = b_lo
    if b_lo != b_hi:
        for c in itertools.count(1):
            cand = b_lo + b_hi * c
            if cand[lo] and cand[hi]:
                witness = cand
                break
    assert laurent_degree(witness) == hi - lo

    best = None
    rng = range(-search_bound, search_bound + 1)
    # small coefficients first, so the witness is as plain as possible
    combos = sorted(itertools.product(rng, repeat=len(vals)),
                    key=lambda c: (max(map(abs, c)), sum(map(abs, c)), c))
    for coeffs in combos:
        if not any(coeffs):
            continue
        p = _combination(coeffs, vals)
        d = laurent_degree(p)
        if best is None or d < best[0]:
            best = (d, p)
            if d == 0:
                break
    # degree 0 cannot be beaten, and a rank one lattice has a single degree
    limited = not (best[0] == 0 or len(vals) == 1)
    return DegreeExtremes(hi - lo, witness, best[0], best[1], search_bound, limited)


@dataclass(frozen=True)
class Functional:
    """A homomorphism G -> Z or Z/q used to cut down a base.

    ``linear`` functionals are given on the base: a covector on Z^n, or for
    the wreath base the pair (value on every a_i, value on s).  They must be
    theta-invariant, which is checked by :meth:`linear`; t is sent to 0.
    """

    kind: str  # chi | s_exponent | linear
    covector: tuple = ()
    modulus: int = 0

    @classmethod
    def chi(cls) -> "Functional":
        return cls("chi")

    @classmethod
    def s_exponent(cls) -> "Functional":
        return cls("s_exponent")

    @classmethod
    def linear(cls, group: HNNGroup, covector, modulus: int = 0) -> "Functional":
        covector = tuple(int(c) for c in covector)
        if modulus < 0 or modulus == 1:
            raise ValueError("modulus must be 0 (integers) or at least 2")

        def red(x):
            return x % modulus if modulus else x

        if group.is_wreath:
            if len(covector) != 2:
                raise ValueError("wreath functionals take (value on a_i, value on s)")
            ca = covector[0]
            if red(2 * ca) != red(ca):
                raise ValueError(
                    f"not theta-invariant: phi(theta(a_0)) = phi(a_0 a_1) = {red(2 * ca)}"
                    f" but phi(a_0) = {red(ca)}")
        else:
            M = group.base.matrix
            if len(covector) != M.rows:
                raise ValueError(f"covector needs {M.rows} entries")
            for j in range(M.cols):
                image = sum(covector[i] * M[i, j] for i in range(M.rows))
                if red(image) != red(covector[j]):
                    raise ValueError(
                        f"not theta-invariant: phi(theta(e_{j})) = {red(image)}"
                        f" but phi(e_{j}) = {red(covector[j])}")
        return cls("linear", covector, modulus)

    def value(self, g: HnnElement) -> int:
        if self.kind == "chi":
            return chi(g)
        if self.kind == "s_exponent":
            return s_exponent(g)
        if g.group.is_wreath:
            v = self.covector[0] * sum(g.w.a.coeffs.values()) + self.covector[1] * g.w.i
        else:
            v = sum(c * x for c, x in zip(self.covector, g.w))
        return v % self.modulus if self.modulus else v

    def on_fiber(self, value) -> int:
        if isinstance(value, LaurentPoly):
            return self.covector[0] * sum(value.coeffs.values())
        return sum(c * x for c, x in zip(self.covector, value))

    def __str__(self):
        if self.kind != "linear":
            return self.kind
        body = "linear:" + ",".join(map(str, self.covector))
        return body + (f"/{self.modulus}" if self.modulus else "")


def intersect_kernel(B, phi: Functional):
    """B intersected with ker(phi)."""
    if isinstance(B, FullBase):
        if phi.kind == "chi":
            return B
        raise ValueError(
            f"the kernel of {phi} on the wreath base is not a finitely generated abelian group")
    if phi.kind in ("chi", "s_exponent"):
        # the fiber has chi = 0 and s-exponent 0
        return B
    vals = B.values()
    if not vals:
        return B
    # phi(theta^-e v) == phi(v), so the numerators can be used directly
    column = [[phi.on_fiber(v)] for v in vals]
    if phi.modulus:
        column.append([phi.modulus])
    K = left_kernel(column, 1)
    gens = [_combination(c, vals) for c in K.basis]
    return make_lattice(B.group, gens, B.denom_exp)


def _combination(coeffs, vals):
    if isinstance(vals[0], LaurentPoly):
        acc = LaurentPoly()
        for c, v in zip(coeffs, vals):
            if c:
                acc = acc + v * c
        return acc
    return tuple(sum(c * v[k] for c, v in zip(coeffs, vals)) for k in range(len(vals[0])))


@dataclass(frozen=True)
class AscensionVerdict:
    kind: str  # strict | equal | not_invariant
    element: HnnElement | None = None

    @property
    def strict(self) -> bool:
        return self.kind == "strict"


def ascension_type(tau: HnnElement, B) -> AscensionVerdict:
    """Classify tau B tau^-1 against B.

    ``strict``: tau B tau^-1 is a proper subgroup of B; the element lies in B
    but not in the conjugate.  ``not_invariant``: the element b lies in B but
    tau b tau^-1 does not.
    """
    if isinstance(B, FullBase):
        inv_tau = tau ** -1
        for b in B.generators:
            if conjugate(tau, b) not in B:
                return AscensionVerdict("not_invariant", b)
        for b in B.generators:
            # b is in tau B tau^-1 iff tau^-1 b tau is in B
            if conjugate(inv_tau, b) not in B:
                return AscensionVerdict("strict", b)
        return AscensionVerdict("equal")
    C = conj_lattice(tau, B)
    cmp = lattice_compare(C, B)
    if cmp.relation == "equal":
        return AscensionVerdict("equal")
    if cmp.relation == "subset":
        return AscensionVerdict("strict", cmp.witness)
    for b in B.elements():
        if not contains(B, conjugate(tau, b)):
            return AscensionVerdict("not_invariant", b)
    raise AssertionError("conjugate not contained in B but every generator maps into B")


def _s_t(group: HNNGroup, i: int, j: int) -> HnnElement:
    return group.s() ** i * t_power(group, j)


@dataclass(frozen=True)
class PairRefutation:
    i: int
    j: int
    relation: str
    method: str  # identity | window | max_degree | min_degree
    refuted_independently: bool
    bound_limited: bool = False


def refute_pair(B: WindowLattice, i: int, j: int, extremes: DegreeExtremes | None = None,
                search_bound: int = 5) -> PairRefutation:
    """Compare s^i t^j B t^-j s^-i with B, and independently argue that the
    conjugate is not inside B using window widths and degrees."""
    if B.denom_exp:
        raise ValueError("conjugate the lattice into the base first")
    g = _s_t(B.group, i, j)
    rel = lattice_compare(conj_lattice(g, B), B).relation
    if i == 0 and j == 0:
        return PairRefutation(i, j, rel, "identity", rel == "equal")
    if j == 0:
        # the shifted tight window differs from the original one
        return PairRefutation(i, j, rel, "window", (B.lo + i, B.hi + i) != (B.lo, B.hi))
    ext = extremes or degree_extremes(B, search_bound)
    if j > 0:
        c = ext.max_witness.shift(i) * one_plus_x_pow(j)
        return PairRefutation(i, j, rel, "max_degree", laurent_degree(c) > ext.max_degree)
    c = ext.min_witness.shift(i)
    for _ in range(-j):
        c = laurent_div_1px(c)
        if c is None:
            # not even an element of Z[x, 1/x], so not in B
            return PairRefutation(i, j, rel, "min_degree", True, True)
    return PairRefutation(i, j, rel, "min_degree", laurent_degree(c) < ext.min_degree, True)


def embedding_report(B: WindowLattice, i_range=(-3, 3), j_range=(-3, 3),
                     search_bound: int = 5) -> list:
    """Refutation records for every (i, j) in the two inclusive ranges."""
    if not B.group.is_wreath:
        raise ValueError("self-embedding search runs in the wreath group")
    if B.is_zero():
        return []
    if B.denom_exp:
        B = conj_lattice(t_power(B.group, B.denom_exp), B)
    ext = degree_extremes(B, search_bound)
    return [refute_pair(B, i, j, ext)
            for i in range(i_range[0], i_range[1] + 1)
            for j in range(j_range[0], j_range[1] + 1)]


def self_embedding_search(B: WindowLattice, i_range=(-3, 3), j_range=(-3, 3),
                          search_bound: int = 5):
    """First (i, j) with s^i t^j B t^-j s^-i properly inside B, else None."""
    for rec in embedding_report(B, i_range, j_range, search_bound):
        if rec.relation == "subset":
            return rec.i, rec.j
    return None
