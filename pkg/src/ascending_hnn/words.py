"""Surface syntax for group elements.

Grammar::

    word := atom (('*' | whitespace) atom)*
    atom := gen ('^' int)?
    gen  := 't' | 'u' | 'v' | 's' | 'a' | 'a[' int ']'

``a`` is ``a[0]``.  The empty word and ``1`` both denote the identity.
"""

from __future__ import annotations

import re

from .hnn import HNNGroup, HnnElement, mul, power

_GEN = re.compile(r"([A-Za-z_]\w*)(\[\s*(-?\d+)\s*\])?")
_CARET = re.compile(r"\s*\^\s*")
_INT = re.compile(r"[+-]?\d+")


class WordParseError(ValueError):
    def __init__(self, message: str, column: int, token: str):
        super().__init__(f"column {column}: {message} {token!r}")
        self.column = column
        self.token = token


def alphabet(group: HNNGroup) -> str:
    return "t, s, a, a[i]" if group.is_wreath else "t, u, v"


def _valid_gen(tok: str, group: HNNGroup) -> bool:
    if tok == "t":
        return True
    if group.is_wreath:
        return tok in ("s", "a") or re.fullmatch(r"a\[-?\d+\]", tok) is not None
    return group.base.rank == 2 and tok in ("u", "v")


def parse_word(text: str, group: HNNGroup) -> list:
    """Parse ``text`` into a list of (generator, exponent) pairs.

    Zero exponents are dropped; ``a`` is normalised to ``a[0]``.
    """
    word = []
    if text.strip() in ("", "1"):
        return word
    pos = 0
    n = len(text)
    expect_atom = True
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        col = pos + 1
        if text[pos] == "*":
            if expect_atom:
                raise WordParseError("unexpected", col, "*")
            expect_atom = True
            pos += 1
            continue
        m = _GEN.match(text, pos)
        if not m:
            end = pos
            while end < n and not text[end].isspace() and text[end] != "*":
                end += 1
            raise WordParseError("unexpected token", col, text[pos:end])
        tok = m.group(1)
        if m.group(2) is not None:
            tok = f"{tok}[{int(m.group(3))}]"
        if not _valid_gen(tok, group):
            raise WordParseError(f"unknown generator (alphabet: {alphabet(group)})", col, tok)
        if tok == "a":
            tok = "a[0]"
        pos = m.end()
        exp = 1
        e = _CARET.match(text, pos)
        if e:
            num = _INT.match(text, e.end())
            if not num:
                bad = text[e.end():e.end() + 1] or "end of input"
                raise WordParseError("expected integer exponent, got", e.end() + 1, bad)
            exp = int(num.group(0))
            pos = num.end()
        if exp:
            word.append((tok, exp))
        expect_atom = False
    if expect_atom:
        raise WordParseError("dangling", n, "*")
    return word


def generator_element(token: str, group: HNNGroup) -> HnnElement:
    if token == "t":
        return group.t()
    if group.is_wreath:
        if token == "s":
            return group.s()
        return group.a(int(token[2:-1]))
    return group.base_generators()[0 if token == "u" else 1]


def eval_word(word, group: HNNGroup) -> HnnElement:
    """Left-to-right product of generator images."""
    out = group.identity()
    for token, e in word:
        out = mul(out, power(generator_element(token, group), e))
    return out


def parse_element(text: str, group: HNNGroup) -> HnnElement:
    return eval_word(parse_word(text, group), group)


def base_word(w, group: HNNGroup) -> list:
    if group.is_wreath:
        word = [(f"a[{e}]", c) for e, c in w.a.terms()]
        if w.i:
            word.append(("s", w.i))
        return word
    if group.base.rank != 2:
        raise ValueError("words only cover rank 2 matrix groups")
    return [(g, c) for g, c in zip(("u", "v"), w) if c]


def element_word(g: HnnElement) -> list:
    word = []
    if g.k:
        word.append(("t", -g.k))
    word.extend(base_word(g.w, g.group))
    if g.l:
        word.append(("t", g.l))
    return word


def format_word(word) -> str:
    if not word:
        return "1"
    return " * ".join(tok if e == 1 else f"{tok}^{e}" for tok, e in word)


def format_element(g: HnnElement) -> str:
    return format_word(element_word(g))


def element_json(g: HnnElement) -> dict:
    return {
        "k": g.k,
        "w": g.group.base.format(g.w),
        "l": g.l,
        "word": format_element(g),
    }


__all__ = [
    "WordParseError",
    "parse_word",
    "eval_word",
    "parse_element",
    "format_word",
    "format_element",
    "element_word",
    "element_json",
]
