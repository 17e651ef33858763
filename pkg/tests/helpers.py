"""Random inputs and fixtures shared by the unit and acceptance tests."""

import importlib
import io
import random

from ascending_hnn.exactalg import LaurentPoly
from ascending_hnn.hnn import HNNGroup

THM21 = HNNGroup.thm21()
BR = HNNGroup.br()

GENS = {
    "thm21": ["t", "u", "v"],
    "br": ["t", "s", "a[0]", "a[1]", "a[-1]", "a[2]"],
}

# words equal to the identity
RELATORS = {
    "thm21": [
        [("t", 1), ("u", 1), ("t", -1), ("v", 1), ("u", -5)],
        [("t", 1), ("v", 1), ("t", -1), ("u", -2)],
        [("u", 1), ("v", 1), ("u", -1), ("v", -1)],
    ],
    "br": [
        [("t", 1), ("s", 1), ("t", -1), ("s", -1)],
        [("t", 1), ("a[0]", 1), ("t", -1), ("a[1]", -1), ("a[0]", -1)],
        [("s", 1), ("a[0]", 1), ("s", -1), ("a[1]", -1)],
        [("a[0]", 1), ("a[1]", 1), ("a[0]", -1), ("a[1]", -1)],
    ],
}


def group(name):
    return THM21 if name == "thm21" else BR


def random_word(rng: random.Random, name: str, length: int) -> list:
    gens = GENS[name]
    return [(rng.choice(gens), rng.choice((-2, -1, 1, 2))) for _ in range(length)]


def invert(word) -> list:
    return [(g, -e) for g, e in reversed(word)]


def disguise(rng: random.Random, name: str, word: list, budget: int) -> list:
    """Insert conjugated relators into ``word`` without changing its value."""
    out = list(word)
    while True:
        r = rng.choice(RELATORS[name])
        if rng.random() < 0.5:
            r = invert(r)
        c = random_word(rng, name, rng.randint(0, 2))
        piece = c + r + invert(c)
        if len(out) + len(piece) > budget:
            return out
        pos = rng.randint(0, len(out))
        out[pos:pos] = piece


def word_pool(rng: random.Random, name: str, n: int, max_len: int = 40) -> list:
    """n words of length <= max_len; about half are disguised copies of others."""
    pool = []
    while len(pool) < n:
        if pool and rng.random() < 0.5:
            base = rng.choice(pool)
            pool.append(disguise(rng, name, base, max_len))
        else:
            pool.append(random_word(rng, name, rng.randint(0, max_len // 2)))
    return pool


def random_laurent(rng: random.Random, span: int = 6, coeff: int = 4, nonzero=True):
    while True:
        lo = rng.randint(-span, span)
        terms = {lo + k: rng.randint(-coeff, coeff) for k in range(rng.randint(1, span))}
        p = LaurentPoly(terms)
        if p or not nonzero:
            return p


def random_element(rng: random.Random, name: str):
    from ascending_hnn.words import eval_word

    return eval_word(random_word(rng, name, rng.randint(0, 12)), group(name))


# operations that carry a mathematical meaning; each must be reachable from the CLI
REQUIRED = {
    "exactalg": ["laurent_degree", "laurent_div_1px", "int_eigen"],
    "bases": ["base_mul", "theta_apply", "theta_preimage"],
    "hnn": ["normalize", "mul", "chi", "s_exponent", "conj_by_t"],
    "rep": ["embed"],
    "subgroups": ["conj_lattice", "lattice_compare", "degree_extremes", "intersect_kernel",
                  "ascension_type", "self_embedding_search"],
    "bsdetect": ["bs_brute_search", "bs_certificate", "bs_relation_check"],
    "quotients": ["make_quotient", "image_subgroup", "blass_neumann_check"],
    "words": ["eval_word"],
}

SAMPLE_ARGV = {
    "normalize": [["normalize", "--conj-t", "-1", "t^-1 u v t^2"],
                  ["normalize", "--group", "br", "t^-1 a a[1] t^2"]],
    "eq": [["eq", "t^-1 u v t", "u^-1 v^3"]],
    "mul": [["mul", "t", "u"]],
    "chi": [["chi", "t"]],
    "sexp": [["sexp", "--group", "br", "s"]],
    "degree": [["degree", "--group", "br", "1 + x"],
               ["degree", "--group", "br", "--lattice", "1; x^2"]],
    "bs-search": [["bs-search", "--group", "matrix:2,0,0,3"]],
    "bs-certify": [["bs-certify"]],
    "bs-check": [["bs-check", "u", "t", "--m", "2"]],
    "ascension": [["ascension", "--full-base"],
                  ["ascension", "--group", "br", "--lattice", "1; x", "--search"]],
    "prop22": [["prop22", "--functional", "linear:1,0/2", "--full-base"]],
    "quotient": [["quotient", "--q", "3", "--full-base", "--project", "t u"]],
    "separate": [["separate", "--q", "3", "--full-base"]],
}




def _resolve(target):
    *path, attr = target.split(".")
    owner = importlib.import_module(f"ascending_hnn.{path[0]}")
    for name in path[1:]:
        owner = getattr(owner, name)
    return owner, attr


def coverage_gaps(ops=None) -> list:
    """Run the sample invocations of each mapped subcommand with a spy on the
    operation's call target; return the operations that were never reached."""
    from ascending_hnn import cli

    gaps = []
    for op in ops or sorted(cli.COVERAGE):
        target, sub = cli.COVERAGE[op]
        owner, attr = _resolve(target)
        real = getattr(owner, attr)
        calls = []

        def spy(*args, _real=real, **kwargs):
            calls.append(1)
            return _real(*args, **kwargs)

        setattr(owner, attr, spy)
        try:
            for argv in SAMPLE_ARGV[sub]:
                if cli.run(argv, io.StringIO(), io.StringIO()) != 0:
                    gaps.append(f"{op}: {' '.join(argv)} failed")
        finally:
            setattr(owner, attr, real)
        if not calls:
            gaps.append(f"{op}: not reached from {sub}")
    return gaps
