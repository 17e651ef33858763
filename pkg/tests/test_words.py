import random

import pytest

from ascending_hnn.words import (
    WordParseError,
    element_json,
    eval_word,
    format_element,
    format_word,
    parse_element,
    parse_word,
)
from helpers import BR, THM21, random_word


def test_parse_examples():
    assert parse_word("t^-1 * u * t", THM21) == [("t", -1), ("u", 1), ("t", 1)]
    assert parse_word("a[2]^3 s^-1", BR) == [("a[2]", 3), ("s", -1)]
    assert parse_word("a a[ -1 ]", BR) == [("a[0]", 1), ("a[-1]", 1)]
    assert parse_word("", THM21) == [] and parse_word(" 1 ", THM21) == []


@pytest.mark.parametrize("text,col,token", [
    ("w^2", 1, "w"),
    ("t u s", 5, "s"),
    ("t^x", 3, "x"),
    ("t *", 3, "*"),
    ("* t", 1, "*"),
    ("t ^", 4, "end of input"),
])
def test_parse_errors(text, col, token):
    with pytest.raises(WordParseError) as info:
        parse_word(text, THM21)
    assert (info.value.column, info.value.token) == (col, token)


def test_eval_examples():
    assert eval_word(parse_word("t u t^-1", THM21), THM21)._key() == (0, (5, -1), 0)
    assert parse_element("t^-1 u v t", THM21)._key() == (0, (-1, 3), 0)
    assert eval_word([], BR).is_identity()


def test_zero_exponents_dropped():
    assert parse_word("u^0 v", THM21) == [("v", 1)]


@pytest.mark.parametrize("name", ["thm21", "br"])
def test_round_trip(name):
    rng = random.Random(17)
    G = THM21 if name == "thm21" else BR
    for _ in range(200):
        w = random_word(rng, name, rng.randint(0, 15))
        assert parse_word(format_word(w), G) == w
        g = eval_word(w, G)
        assert parse_element(format_element(g), G) == g


def test_json_shape():
    d = element_json(parse_element("t^-1 u t^2", THM21))
    assert d == {"k": 1, "w": "(1,0)", "l": 2, "word": "t^-1 * u * t^2"}
