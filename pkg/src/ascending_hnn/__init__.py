"""Exact computation in two soluble strictly ascending HNN extensions:
Z^2 with theta = [[5, 2], [-1, 0]], and the Baumslag-Remeslennikov group
built on Z wr Z with theta(s) = s, theta(a_i) = a_i a_{i+1}."""

from .exactalg import IntMatrix, LaurentPoly, Lattice, hnf, lattice_contains
from .hnn import HNNGroup, HnnElement, chi, conj_by_t, inv, mul, normalize, s_exponent
from .words import eval_word, format_element, parse_element, parse_word

__version__ = "0.1.0"
