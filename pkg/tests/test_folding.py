import itertools
from functools import lru_cache

import pytest

from bracketlab.folding import (
    KNOTTED_STRING,
    Chain,
    ChainError,
    Site,
    build_contact_graph,
    canonical_pairing,
    classify,
    find_k7_retraction,
    has_crossing_chords,
    is_isomorphic,
    is_legal,
    parse_chain,
    parse_chain_abbrev,
    project_parens,
    relabel,
)

CHAIN_C = "abccbddaee"
PSEUDOKNOT = "abab"


def test_parse_abbrev_chain_c():
    chain = parse_chain_abbrev(CHAIN_C)
    assert chain.render() == "<a|<b|<c||c>|b><d||d>|a><e||e>"


def test_parse_abbrev_pseudoknot():
    chain = parse_chain_abbrev(PSEUDOKNOT)
    assert chain.render() == "<a|<b||a>|b>"


def test_parse_abbrev_rejects_odd_letters():
    with pytest.raises(ChainError, match="b"):
        parse_chain_abbrev("aba")
    with pytest.raises(ChainError, match="more than twice"):
        parse_chain_abbrev("aaa a".replace(" ", ""))


def test_parse_full_syntax_round_trip():
    chain = parse_chain("<a|<b||b>|a>")
    assert chain.abbreviated() == "abba"
    assert parse_chain(parse_chain(CHAIN_C).render()) == parse_chain(CHAIN_C)


def test_parse_full_syntax_rejects_ket_before_bra():
    with pytest.raises(ChainError, match="precedes"):
        parse_chain("|a><a|")


def test_project_parens():
    assert project_parens(parse_chain(CHAIN_C)) == "<<<>><>><>"
    assert project_parens(parse_chain(PSEUDOKNOT)) == "<<>>"
    assert project_parens(Chain(())) == ""


@lru_cache(maxsize=None)
def derivable(word: str) -> bool:
    """Inductive legality: <>, concatenation, enclosure (test oracle)."""
    if word == "<>":
        return True
    if len(word) < 2:
        return False
    if word[0] == "<" and word[-1] == ">" and derivable(word[1:-1]):
        return True
    return any(
        derivable(word[:k]) and derivable(word[k:]) for k in range(1, len(word))
    )


def test_is_legal_examples():
    assert is_legal("<>")
    assert is_legal("<<<>><>><>")
    assert not is_legal("><")
    assert is_legal("")  # neutral element convention


def test_is_legal_matches_inductive_definition_up_to_length_12():
    for length in range(1, 13):
        for bits in itertools.product("<>", repeat=length):
            word = "".join(bits)
            assert is_legal(word) == derivable(word), word


def test_canonical_pairing():
    assert canonical_pairing("<<>>") == frozenset({(1, 4), (2, 3)})
    assert canonical_pairing("<><>") == frozenset({(1, 2), (3, 4)})
    with pytest.raises(ChainError):
        canonical_pairing("><")


def test_canonical_pairing_matches_chain_letter_positions():
    chain = parse_chain(CHAIN_C)
    assert canonical_pairing(project_parens(chain)) == frozenset(chain.chords())


def test_relabel_examples():
    assert relabel("<<>>").render() == "<a|<b||b>|a>"
    assert relabel("<>").render() == "<a||a>"
    assert is_isomorphic(relabel("<<<>><>><>"), parse_chain(CHAIN_C))


def test_isomorphism():
    assert is_isomorphic(parse_chain("<a|<b||b>|a>"), parse_chain("<r|<s||s>|r>"))
    assert not is_isomorphic(parse_chain("abab"), parse_chain("abba"))
    chain = parse_chain(CHAIN_C)
    assert is_isomorphic(chain, chain)


def test_classify_examples():
    assert classify(parse_chain(CHAIN_C)) == "secondary"
    assert classify(parse_chain(PSEUDOKNOT)) == "tertiary"
    assert classify(parse_chain("aa")) == "secondary"
    assert classify(parse_chain(KNOTTED_STRING)) == "tertiary"


def all_matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for sub in all_matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + sub


def chain_from_matching(pairs) -> Chain:
    letters = {}
    sites = []
    for idx, (a, b) in enumerate(sorted(pairs)):
        letters[a] = ("bra", chr(ord("a") + idx))
        letters[b] = ("ket", chr(ord("a") + idx))
    for pos in sorted(letters):
        kind, letter = letters[pos]
        sites.append(Site(kind, letter))
    return Chain(tuple(sites))


def test_classify_equals_noncrossing_up_to_4_pairs():
    for m in range(1, 5):
        for pairs in all_matchings(list(range(1, 2 * m + 1))):
            chain = chain_from_matching(pairs)
            expected = "tertiary" if has_crossing_chords(chain) else "secondary"
            assert classify(chain) == expected, chain.abbreviated()


def test_round_trip_relabel_project_up_to_length_12():
    for length in range(2, 13, 2):
        for bits in itertools.product("<>", repeat=length):
            word = "".join(bits)
            if is_legal(word):
                assert project_parens(relabel(word)) == word


def nesting_is_laminar_forest(chain: Chain) -> bool:
    chords = chain.chords()
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1 :]:
            nested = a < c < d < b or c < a < b < d
            disjoint = b < c or d < a
            if not (nested or disjoint):
                return False
    return True


def quotient_is_connected(chain: Chain) -> bool:
    parent = {i: i for i in range(1, len(chain) + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for a, b in chain.chords():
        union(a, b)
    for i in range(1, len(chain)):
        union(i, i + 1)
    roots = {find(i) for i in parent}
    return len(roots) <= 1


def test_secondary_chains_fold_as_nesting_forests():
    # Tree-likeness of secondary structures: the chord family is
    # laminar (every two chords nested or disjoint) and the folded
    # quotient is one connected piece.
    for m in range(1, 6):
        for pairs in all_matchings(list(range(1, 2 * m + 1))):
            chain = chain_from_matching(pairs)
            if classify(chain) == "secondary":
                assert nesting_is_laminar_forest(chain)
                assert quotient_is_connected(chain)


def test_contact_graph_small():
    graph = build_contact_graph(parse_chain("aa"), circular=True)
    assert graph.sites == 2
    assert sorted(graph.backbone) == [(1, 2), (2, 1)]
    assert graph.chords == ((1, 2),)
    assert graph.degree(1) == graph.degree(2) == 3


def test_contact_graph_open_pseudoknot():
    graph = build_contact_graph(parse_chain("abab"), circular=False)
    assert graph.backbone == ((1, 2), (2, 3), (3, 4))
    assert graph.chords == ((1, 3), (2, 4))


def test_contact_graph_knotted_string_degrees():
    chain = parse_chain(KNOTTED_STRING)
    graph = build_contact_graph(chain, circular=True)
    assert graph.sites == 42
    assert all(graph.degree(v) == 3 for v in range(1, 43))


def test_k7_retraction_found_for_knotted_string():
    arcs = find_k7_retraction(parse_chain(KNOTTED_STRING))
    assert arcs is not None
    assert ["".join(a) for a in arcs] == [
        "ABCDEF", "AGHIJK", "BGLMNO", "CHLPQR", "DIMPST", "EJNQSU", "FKORTU",
    ]


def test_k7_retraction_none_for_secondary_chains():
    for m in range(1, 6):
        for pairs in all_matchings(list(range(1, 2 * m + 1))):
            chain = chain_from_matching(pairs)
            if classify(chain) == "secondary":
                assert find_k7_retraction(chain) is None


def test_k7_retraction_none_for_short_repeat():
    assert find_k7_retraction(parse_chain("abcdefgabcdefg")) is None
