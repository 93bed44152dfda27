import pytest

from bracketlab.rewrite import (
    BuilderSoup,
    RewriteError,
    Term,
    Token,
    dna_replicate,
    dual_pair_replicate,
    duplex_string,
    lambda_unfold,
    render_tokens,
    unfold_step,
)


def test_one_generation_trace_passes_through_env_stage():
    trace = dna_replicate(duplex_string(1), 1)
    texts = trace.stage_texts()
    assert texts[0] == "<W|C>"
    assert "<W| |C>" in texts
    assert "<W| E |C>" in texts
    assert "<W| |C><W| |C>" in texts
    assert texts[-1] == "<W|C><W|C>"
    assert trace.final() == duplex_string(2)


def test_three_generations_give_eight_duplexes():
    trace = dna_replicate(duplex_string(1), 3)
    assert trace.final() == duplex_string(8)


def test_every_generation_doubles_and_contains_env_stage():
    trace = dna_replicate(duplex_string(2), 4)
    count = 2
    for stages in trace.generations:
        assert stages[0] == duplex_string(count)
        assert any(Token.ENV in stage for stage in stages)
        count *= 2
        assert stages[-1] == duplex_string(count)


def test_empty_string_stays_empty():
    trace = dna_replicate((), 5)
    assert trace.final() == ()


def test_malformed_duplex_rejected():
    with pytest.raises(RewriteError, match="malformed"):
        dna_replicate((Token.KET_C, Token.BRA_W), 1)
    with pytest.raises(RewriteError):
        dna_replicate((Token.BRA_W,), 1)


def test_render_spacing():
    assert render_tokens((Token.BRA_W, Token.ENV, Token.KET_C)) == "<W| E |C>"


def test_dual_pair_counts():
    assert dual_pair_replicate(0) == 1
    assert dual_pair_replicate(1) == 2
    assert dual_pair_replicate(5) == 32


def test_builder_self_replication_doubles():
    soup = BuilderSoup.self_replicating()
    for n in range(0, 11):
        assert soup.machine_count == 2**n
        soup = soup.step()


def test_builder_step_renders_paper_schema():
    soup = BuilderSoup.self_replicating()
    assert soup.render() == "B,b"
    assert soup.step().render() == "B,b ; B,b"


def test_builder_with_other_description():
    soup = BuilderSoup.with_description("x")
    after = soup.step()
    assert after.machine_count == 1
    assert after.artifact_count == 1
    assert after.render() == "B,x ; X,x"
    # the artifact is inert: nothing more is built from it
    assert after.step().artifact_count == 2  # the machine keeps building X


def test_builder_monotone_units_never_destroyed():
    soup = BuilderSoup.self_replicating()
    previous = 1
    for _ in range(8):
        soup = soup.step()
        assert len(soup.units) >= previous
        previous = len(soup.units)


def test_builder_consuming_form_is_stasis():
    soup = BuilderSoup.self_replicating(consuming=True)
    for _ in range(5):
        soup = soup.step()
        assert soup.machine_count == 1
        assert soup.render() == "B,b"


def test_builder_capacity_halts_production():
    soup = BuilderSoup.self_replicating(capacity=5)
    for _ in range(6):
        soup = soup.step()
    assert len(soup.units) == 5


def test_lambda_unfold_base_cases():
    assert lambda_unfold("b", 0).render() == "(a a)"
    assert lambda_unfold("b", 2).render() == "(b (b (a a)))"
    assert lambda_unfold("b", 3).render() == "(b (b (b (a a))))"


def test_lambda_unfold_russell_rule():
    assert lambda_unfold("Not", 1, a="R").render() == "(Not (R R))"


def test_lambda_unfold_structural_induction():
    for n in range(20):
        assert lambda_unfold("b", n + 1) == Term.app(Term.atom("b"), lambda_unfold("b", n))


def test_unfold_step_rewrites_leftmost_outermost():
    aa = Term.app(Term.atom("a"), Term.atom("a"))
    assert unfold_step(aa, "a", "b").render() == "(b (a a))"
    inert = Term.app(Term.atom("c"), Term.atom("c"))
    assert unfold_step(inert, "a", "b") == inert
