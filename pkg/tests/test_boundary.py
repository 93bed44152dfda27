import random

import pytest

from bracketlab.boundary import (
    EXTAINERS,
    Element,
    Monomial,
    ParseError,
    full_table,
    is_reduced,
    normalize,
    normalize_stepwise,
    parse_word,
    table_lines,
)

E, F, G, H = (Element.from_word(w) for w in ("><", "][", ">[", "]<"))

C1 = Monomial((1, 0, 0, 0))
C2 = Monomial((0, 1, 0, 0))
C3 = Monomial((0, 0, 1, 0))
C4 = Monomial((0, 0, 0, 1))


def scaled(word: str, mono: Monomial) -> Element:
    return Element.from_word(word).scale(mono)


def test_parse_word_tokens():
    assert parse_word("><") == "><"
    assert parse_word("") == ""
    assert parse_word(" < > [ ] ") == "<>[]"


def test_parse_word_error_position():
    with pytest.raises(ParseError, match="position 4"):
        parse_word(">< x")


def test_normalize_examples():
    assert normalize("><><") == (C1, "><")
    assert normalize("<>") == (C1, "")
    assert normalize("><][") == (C4, ">[")
    assert normalize("]<><") == (C1, "]<")


def test_normalize_nested_containers():
    mono, residue = normalize("<[]>")
    assert residue == ""
    assert mono.exps == (1, 1, 0, 0)


def test_multiply_examples():
    assert E * F == scaled(">[", C4)
    assert G * H == scaled("><", C2)
    assert F * E == scaled("]<", C3)
    assert E * F * E == scaled("><", C3 * C4)


def test_full_table_against_printed_identities():
    expected = {
        "EE": "<>E", "FF": "[]F", "GG": "[>G", "HH": "<]H",
        "EF": "<]G", "EG": "<>G", "EH": "<]E",
        "FE": "[>H", "FG": "[>F", "FH": "[]H",
        "GE": "[>E", "GF": "[]G", "GH": "[]E",
        "HE": "<>H", "HF": "<]F", "HG": "<>F",
    }
    lines = table_lines()
    assert len(lines) == 16
    for line in lines:
        name, _, value = line.partition(" = ")
        assert expected[name] == value


def test_table_closure_single_monomial_times_extainer():
    for product in full_table().values():
        single = product.single_term()
        assert single is not None
        mono, word = single
        assert word in EXTAINERS.values()
        assert mono.coeff == 1


def random_word(rng: random.Random, max_len: int = 20) -> str:
    return "".join(rng.choice("<>[]") for _ in range(rng.randrange(max_len + 1)))


def test_confluence_left_vs_right_1000_words():
    rng = random.Random(20260810)
    for _ in range(1000):
        w = random_word(rng)
        left = normalize_stepwise(w, leftmost=True)
        right = normalize_stepwise(w, leftmost=False)
        assert left == right
        assert normalize(w) == left


def test_reduced_shape_closers_then_openers():
    rng = random.Random(7)
    for _ in range(500):
        _, residue = normalize(random_word(rng))
        assert is_reduced(residue)
        switched = False
        for ch in residue:
            if ch in "<[":
                switched = True
            else:
                assert not switched, residue


def test_associativity_1000_triples():
    rng = random.Random(99)
    for _ in range(1000):
        a, b, c = (Element.from_word(random_word(rng, 8)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_scalar_commutation():
    rng = random.Random(5)
    for _ in range(50):
        a = Element.from_word(random_word(rng, 8))
        b = Element.from_word(random_word(rng, 8))
        mono = Monomial(tuple(rng.randrange(3) for _ in range(4)), 1)
        lhs = a.scale(mono) * b
        mid = a * b.scale(mono)
        rhs = (a * b).scale(mono)
        assert lhs == mid == rhs


def test_render_monomial_then_residual_word():
    elem = scaled(">[", Monomial((2, 0, 0, 1)))
    assert elem.render() == "<>^2 <] >["
