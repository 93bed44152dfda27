import random

import pytest

from bracketlab.bracket import (
    HOPF_LINK,
    TREFOIL,
    TWO_UNKNOTS,
    UNKNOT,
    TangleError,
    component_count,
    evaluate_bracket,
    expand_crossing,
    insert_curl,
    insert_opposite_pair,
    parse_tangle,
    random_diagram,
    state_sum_bracket,
    threaded_bracket,
    verify_r2,
)
from bracketlab.laurent import LOOP_VALUE, LaurentPoly
from bracketlab.tl import Matching


def test_parse_unknot():
    t = parse_tangle(UNKNOT)
    assert len(t.layers) == 2
    assert t.is_closed()


def test_parse_rejects_arity_mismatch():
    with pytest.raises(TangleError, match="layer 2"):
        parse_tangle("cup 1 0 / cap 1 4")


def test_parse_rejects_bad_layer():
    with pytest.raises(TangleError, match="layer 1"):
        parse_tangle("twist 1 2")


def test_unclosed_diagram_rejected_at_evaluation():
    t = parse_tangle("cross 3 4 +")
    assert not t.is_closed()
    with pytest.raises(TangleError, match="not closed"):
        evaluate_bracket(t)


def test_expand_crossing_coefficients():
    plus = expand_crossing(+1)
    minus = expand_crossing(-1)
    ident, cupcap = Matching.identity(2), Matching.generator(1, 2)
    assert plus.terms[ident] == LaurentPoly({1: 1})
    assert plus.terms[cupcap] == LaurentPoly({-1: 1})
    assert minus.terms[ident] == LaurentPoly({-1: 1})
    assert minus.terms[cupcap] == LaurentPoly({1: 1})


def test_unknot_value():
    val = evaluate_bracket(parse_tangle(UNKNOT))
    assert val.unnormalized == LOOP_VALUE
    assert val.normalized == LaurentPoly.one()


def test_two_unknots_value():
    val = evaluate_bracket(parse_tangle(TWO_UNKNOTS))
    assert val.unnormalized == LOOP_VALUE**2


def test_trefoil_is_a_knot_and_matches_oracle():
    t = parse_tangle(TREFOIL)
    assert component_count(t) == 1
    assert state_sum_bracket(t) == threaded_bracket(t)
    val = evaluate_bracket(t)
    assert val.normalized == LaurentPoly({5: -1, -3: -1, -7: 1})


def test_hopf_link_two_components_and_agreement():
    t = parse_tangle(HOPF_LINK)
    assert component_count(t) == 2
    assert state_sum_bracket(t) == threaded_bracket(t)
    assert evaluate_bracket(t).normalized == LaurentPoly({4: -1, -4: -1})


def test_r2_identity_with_vanishing_cupcap_coefficient():
    report = verify_r2(2, 1)
    assert report.passed
    assert report.identity_coeff == LaurentPoly.one()
    assert report.cupcap_coeff.is_zero()
    assert verify_r2(5, 3).passed


def test_r2_insertion_preserves_bracket():
    rng = random.Random(1234)
    tested = 0
    while tested < 12:
        t = random_diagram(rng, max_crossings=6)
        cuts = []
        n = 0
        for at, layer in enumerate(t.layers):
            if layer.strands >= 2:
                cuts.append((at, layer.strands))
            n = layer.output_strands
        if not cuts:
            continue
        at, width = rng.choice(cuts)
        i = rng.randint(1, width - 1)
        modified = insert_opposite_pair(t, at, i)
        assert state_sum_bracket(modified) == state_sum_bracket(t)
        tested += 1


def test_curl_factors():
    base = parse_tangle(UNKNOT)
    plus_curl = insert_curl(base, 1, 1, +1)
    minus_curl = insert_curl(base, 1, 1, -1)
    value = evaluate_bracket(base).unnormalized
    assert evaluate_bracket(plus_curl).unnormalized == value * LaurentPoly({3: -1})
    assert evaluate_bracket(minus_curl).unnormalized == value * LaurentPoly({-3: -1})


def test_mirror_symmetry():
    rng = random.Random(77)
    for _ in range(10):
        t = random_diagram(rng, max_crossings=6)
        mirrored = t.mirror()
        assert state_sum_bracket(mirrored) == state_sum_bracket(t).invert_variable()


def test_evaluator_equivalence_random_corpus():
    rng = random.Random(20260810)
    for _ in range(30):
        t = random_diagram(rng, max_crossings=10)
        assert len(t.crossings) <= 10
        assert state_sum_bracket(t) == threaded_bracket(t)


def test_crossing_budget():
    layers = "cup 1 0 / cup 3 2 / " + " / ".join(["cross 2 4 +"] * 25) + " / cap 1 4 / cap 1 2"
    with pytest.raises(TangleError, match="budget"):
        state_sum_bracket(parse_tangle(layers))
