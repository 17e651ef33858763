import random

import pytest

from ascending_hnn.exactalg import LaurentPoly
from ascending_hnn.hnn import conjugate, t_power
from ascending_hnn.subgroups import (
    Functional,
    ascension_type,
    conj_lattice,
    contains,
    degree_extremes,
    embedding_report,
    fiber_element,
    full_base,
    intersect_kernel,
    lattice_compare,
    make_lattice,
    self_embedding_search,
)
from helpers import BR, THM21, random_laurent

X = LaurentPoly.monomial
ONE = X(0)


def br_lattice(*polys, denom=0):
    return make_lattice(BR, list(polys), denom)


def test_make_lattice_is_canonical():
    B1 = br_lattice(ONE, X(1))
    B2 = br_lattice(ONE + X(1), X(1))
    assert (B1.lo, B1.hi, B1.L.basis) == (B2.lo, B2.hi, B2.L.basis)
    # theta^-1 of span{1+x} is span{1}, so the denominator can be cleared
    B3 = br_lattice(ONE + X(1), denom=1)
    assert B3.denom_exp == 0 and B3.values() == [ONE]


def test_conj_lattice_examples():
    B = br_lattice(ONE, X(1))
    C = conj_lattice(BR.t(), B)
    assert lattice_compare(C, br_lattice(ONE + X(1), X(1) + X(2))).relation == "equal"
    assert (C.lo, C.hi) == (0, 2)
    assert conj_lattice(BR.s(), br_lattice(ONE)).values() == [X(1)]
    assert lattice_compare(conj_lattice(BR.identity(), B), B).relation == "equal"


def test_conj_lattice_matches_elementwise_conjugation():
    rng = random.Random(5)
    B = br_lattice(ONE - X(2), X(1) * 3)
    for _ in range(20):
        g = BR.element(BR.base.identity(), rng.randint(0, 2), rng.randint(0, 2)) * BR.s() ** rng.randint(-2, 2)
        C = conj_lattice(g, B)
        for b in B.elements():
            assert contains(C, conjugate(g, b))


def test_lattice_compare_examples():
    Z2 = full_base(THM21)
    B = br_lattice(ONE)
    assert lattice_compare(B, B).relation == "equal"
    cmp = lattice_compare(conj_lattice(THM21.t(), Z2), Z2)
    assert cmp.relation == "subset"
    assert cmp.witness in Z2 and not contains(conj_lattice(THM21.t(), Z2), cmp.witness)
    assert lattice_compare(B, br_lattice(X(1))).relation == "incomparable"


def test_degree_extremes_examples():
    e = degree_extremes(br_lattice(ONE, X(2)))
    assert (e.max_degree, e.min_degree) == (2, 0)
    assert e.min_witness.max_exp() == e.min_witness.min_exp()
    e = degree_extremes(br_lattice(ONE + X(1)))
    assert (e.max_degree, e.min_degree, e.min_bound_limited) == (1, 1, False)
    e = degree_extremes(br_lattice(ONE + X(1), X(1) + X(2)))
    assert (e.max_degree, e.min_degree) == (2, 1)
    with pytest.raises(ValueError):
        degree_extremes(br_lattice())


def test_max_degree_is_exact():
    rng = random.Random(8)
    for _ in range(30):
        B = br_lattice(*(random_laurent(rng, span=3, coeff=2) for _ in range(2)))
        e = degree_extremes(B, 2)
        assert e.max_witness.max_exp() - e.max_witness.min_exp() == e.max_degree == B.hi - B.lo
        assert contains(B, fiber_element(BR, e.max_witness))
        assert contains(B, fiber_element(BR, e.min_witness))


def test_intersect_kernel_examples():
    Z2 = full_base(THM21)
    K = intersect_kernel(Z2, Functional.linear(THM21, (1, 0), 2))
    assert K.values() == [(2, 0), (0, 1)]
    assert intersect_kernel(Z2, Functional.chi()) is Z2
    span11 = make_lattice(THM21, [(1, 1)])
    with pytest.raises(ValueError, match="theta-invariant"):
        Functional.linear(THM21, (1, 1))
    # the raw kernel computation does not need invariance
    assert intersect_kernel(span11, Functional("linear", (1, 1), 0)).is_zero()


def test_functional_values():
    phi = Functional.linear(THM21, (1, 0), 2)
    g = THM21.element((3, 7))
    assert phi.value(g) == 1
    assert phi.value(THM21.t()) == 0
    assert Functional.s_exponent().value(BR.s() ** 3) == 3


def test_ascension_examples():
    Z2 = full_base(THM21)
    v = ascension_type(THM21.t(), Z2)
    assert v.strict and v.element == THM21.element((1, 0))
    K = make_lattice(THM21, [(2, 0), (0, 1)])
    v = ascension_type(THM21.t(), K)
    assert v.strict and v.element == THM21.element((0, 1))
    v = ascension_type(BR.s(), br_lattice(ONE))
    assert v.kind == "not_invariant"
    assert ascension_type(THM21.identity(), Z2).kind == "equal"


def test_ascension_full_wreath_base():
    v = ascension_type(BR.t(), full_base(BR))
    assert v.strict and v.element == BR.a(0)
    assert ascension_type(BR.s(), full_base(BR)).kind == "equal"


def test_self_embedding_examples():
    assert self_embedding_search(br_lattice(ONE, X(1))) is None
    assert self_embedding_search(br_lattice(ONE), (-5, 5), (-5, 5)) is None
    assert self_embedding_search(br_lattice()) is None
    assert embedding_report(br_lattice()) == []


def test_embedding_report_refutes_every_nontrivial_pair():
    for rec in embedding_report(br_lattice(ONE - X(1), X(2) * 2)):
        if (rec.i, rec.j) == (0, 0):
            assert rec.relation == "equal"
        else:
            assert rec.relation != "subset" and rec.refuted_independently


def test_denominators_are_cleared_for_search():
    B = br_lattice(ONE, denom=2)
    assert B.denom_exp == 2
    assert self_embedding_search(B) is None
    assert conj_lattice(t_power(BR, 2), B).denom_exp == 0
