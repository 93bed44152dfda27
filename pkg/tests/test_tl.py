import random

import pytest

from bracketlab.laurent import LaurentPoly
from bracketlab.tl import (
    DELTA,
    Matching,
    TLElement,
    boundary_embedding,
    catalan,
    compose,
    enumerate_basis,
    verify_relations,
)


def all_perfect_matchings(points):
    """Every perfect matching of an even point list (test oracle)."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for sub in all_perfect_matchings(remaining):
            yield [(first, other)] + sub


def circular_pos(p, n):
    return p - 1 if p <= n else 3 * n - p


def is_noncrossing(pairs, n):
    arcs = sorted(tuple(sorted(circular_pos(p, n) for p in pair)) for pair in pairs)
    for i, (a, b) in enumerate(arcs):
        for c, d in arcs[i + 1 :]:
            if a < c < b < d:
                return False
    return True


def test_basis_counts_match_catalan():
    assert [catalan(n) for n in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    for n in range(1, 9):
        assert len(enumerate_basis(n)) == catalan(n)


def test_basis_matches_bruteforce_enumeration():
    for n in range(1, 6):
        brute = {
            tuple(sorted(tuple(sorted(p)) for p in pairs))
            for pairs in all_perfect_matchings(list(range(1, 2 * n + 1)))
            if is_noncrossing(pairs, n)
        }
        assert {m.pairs for m in enumerate_basis(n)} == brute


def test_basis_deterministic_and_bounded():
    assert enumerate_basis(3) == enumerate_basis(3)
    with pytest.raises(ValueError):
        enumerate_basis(13)
    with pytest.raises(ValueError):
        enumerate_basis(0)


def test_crossing_matching_rejected():
    with pytest.raises(ValueError, match="cross"):
        Matching(2, ((1, 4), (2, 3)))  # top 1 to bottom 4 crosses top 2 to bottom 3


def test_compose_u1_squared_gives_one_loop():
    u1 = Matching.generator(1, 2)
    result, loops = compose(u1, u1)
    assert result == u1
    assert loops == 1


def test_compose_uvu_identity_relation():
    u1 = Matching.generator(1, 3)
    u2 = Matching.generator(2, 3)
    mid, loops1 = compose(u1, u2)
    result, loops2 = compose(mid, u1)
    assert result == u1
    assert loops1 == loops2 == 0


def test_compose_identity():
    for n in (1, 2, 4):
        ident = Matching.identity(n)
        assert compose(ident, ident) == (ident, 0)


def test_compose_mismatch_raises():
    with pytest.raises(ValueError):
        compose(Matching.identity(2), Matching.identity(3))


def test_generator_print_form():
    assert Matching.generator(1, 2).render("U1") == "U1(n=2) = {(1,2),(3,4)}"


def test_relations_all_pass_up_to_8():
    for n in range(1, 9):
        checks = verify_relations(n)
        assert all(c.passed for c in checks)
    assert len(verify_relations(1)) == 0
    assert len(verify_relations(2)) == 1


def test_composition_associative_on_random_triples():
    rng = random.Random(424242)
    for _ in range(500):
        n = rng.randint(1, 5)
        basis = enumerate_basis(n)
        a, b, c = (TLElement.from_matching(rng.choice(basis)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_loop_count_symmetric_under_flip():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 5)
        basis = enumerate_basis(n)
        d1, d2 = rng.choice(basis), rng.choice(basis)
        _, loops = compose(d1, d2)
        _, loops_flipped = compose(d2.flip(), d1.flip())
        assert loops == loops_flipped


def test_embedding_all_sixteen_entries():
    checks = boundary_embedding()
    assert len(checks) == 16
    assert all(c.passed for c in checks)
    by_name = {c.product: c for c in checks}
    assert by_name["EE"].boundary_form == "<>E"
    assert by_name["EF"].boundary_form == "<]G"


def test_embedding_ee_specializes_to_delta_u1():
    u1 = TLElement.generator(1, 3)
    assert u1 * u1 == u1.scale(DELTA)


def test_embedding_efe_collapses_to_u1():
    u1, u2 = TLElement.generator(1, 3), TLElement.generator(2, 3)
    assert u1 * u2 * u1 == u1


def test_tlelement_scale_and_render():
    u1 = TLElement.generator(1, 2)
    scaled = u1.scale(DELTA + 1)
    assert scaled.render() == "(δ + 1)·{(1,2),(3,4)}"
    assert u1.scale(LaurentPoly.zero()).terms == {}
