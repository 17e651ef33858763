"""Baumslag-Solitar subgroups BS(1, m) in HNN groups with base Z^n.

With an abelian base the relation y x y^-1 = x^m, y = b t^n, x = a reduces
to M^n a = m a (n > 0) or M^-n (m a) = a (n < 0).  ``bs_brute_search``
looks for such witnesses; ``bs_certificate`` rules them out for 2x2 matrices
whose characteristic polynomial is irreducible and whose trace is too large
for an eigenvalue power to be an integer:

if lambda^n = m with |m| >= 2 then mu^n = D^n / m is a nonzero algebraic
integer in Q, so 1 <= |mu| < |D|, and |T| = |D/mu + mu| <= |D| + 1.

The certificate is sound but not complete: ``Inapplicable`` does not mean
that a Baumslag-Solitar subgroup exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import IntMatrix, charpoly, int_eigen, is_square, right_kernel
from .hnn import HnnElement, inv, mul, power, t_power


@dataclass(frozen=True)
class BsWitness:
    n: int
    m: int
    a: tuple

    def verify(self, M: IntMatrix) -> bool:
        if abs(self.m) < 2 or not any(self.a):
            return False
        if self.n > 0:
            return (M ** self.n).apply(self.a) == tuple(self.m * x for x in self.a)
        if self.n < 0:
            return (M ** -self.n).apply(tuple(self.m * x for x in self.a)) == self.a
        return False


@dataclass(frozen=True)
class ImpossibilityCertificate:
    T: int
    D: int
    disc: int
    bound_lhs: int
    bound_rhs: int

    def to_json(self) -> dict:
        return {"T": self.T, "D": self.D, "disc": self.disc,
                "bound_lhs": self.bound_lhs, "bound_rhs": self.bound_rhs,
                "verdict": "certified"}


@dataclass(frozen=True)
class Inapplicable:
    reason: str
    T: int
    D: int
    disc: int

    def to_json(self) -> dict:
        return {"T": self.T, "D": self.D, "disc": self.disc,
                "bound_lhs": abs(self.T), "bound_rhs": abs(self.D) + 1,
                "verdict": "inapplicable", "reason": self.reason}


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eigen_witness(P: IntMatrix, m: int):
    n = P.rows
    K = right_kernel(P - m * IntMatrix.identity(n))
    return K.basis[0] if K.basis else None


def bs_brute_search(M: IntMatrix, n_max: int, m_max: int):
    """First witness in (n, m) order for 1 <= n <= n_max, 2 <= |m| <= m_max.

    m runs through 2, -2, 3, -3, ...  Negative n never needs searching: it
    would make 1/m an eigenvalue of the integer matrix M^|n|, which is not
    an algebraic integer.
    Candidates m are restricted to divisors of det(M)^n (rational root test
    on the monic characteristic polynomial of M^n).
    """
    if not M.is_square():
        raise ValueError("theta must be square")
    d = M.det()
    if abs(d) < 2:
        raise ValueError("|det M| must be at least 2")
    ms = [s * k for k in range(2, m_max + 1) for s in (1, -1)]
    P = IntMatrix.identity(M.rows)
    for n in range(1, n_max + 1):
        P = P @ M
        cp = charpoly(P)
        dn = d ** n
        for m in ms:
            if dn % m == 0 and _horner(cp, m) == 0:
                a = _eigen_witness(P, m)
                if a is not None:
                    return BsWitness(n, m, tuple(a))
    return None


def bs_certificate(M: IntMatrix):
    """Impossibility certificate for a 2x2 matrix, or Inapplicable(reason)."""
    T, D, _ = int_eigen(M)
    if abs(D) < 2:
        raise ValueError("|det M| must be at least 2")
    disc = T * T - 4 * D
    if is_square(disc):
        return Inapplicable("reducible char poly", T, D, disc)
    if not abs(T) > abs(D) + 1:
        return Inapplicable(f"bound {abs(T)} > {abs(D) + 1} fails", T, D, disc)
    return ImpossibilityCertificate(T, D, disc, abs(T), abs(D) + 1)


def bs_relation_check(x: HnnElement, y: HnnElement, m: int) -> bool:
    """Whether y x y^-1 == x^m with x of infinite order (x != 1 suffices,
    these groups being torsion free)."""
    if x.group != y.group:
        raise ValueError("x and y lie in different groups")
    if x.is_identity():
        return False
    return mul(mul(y, x), inv(y)) == power(x, m)


def witness_pair(group, w: BsWitness):
    """The elements x = a, y = t^n realising a witness inside ``group``."""
    return group.element(tuple(w.a)), t_power(group, w.n)
