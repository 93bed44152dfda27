"""Token rewrite systems for replication.

Three small systems live here:

- strand duplication: duplexes ``<W|C>`` split, the environment drops
  into the cleft as ``E``, expands to ``|C><W|``, and the four strands
  regroup into two duplexes;
- the universal builder ``B,x -> B,x ; X,x``, whose self-application
  doubles machines every step;
- fixed-point unfolding ``ax = b(xx)``, iterating ``aa = b(aa)`` on a
  free term algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Token(Enum):
    BRA_W = "<W|"
    KET_C = "|C>"
    ENV = "E"
    SEP = " "

    def __str__(self) -> str:
        return self.value


DUPLEX = (Token.BRA_W, Token.KET_C)


class RewriteError(ValueError):
    pass


def render_tokens(tokens: tuple[Token, ...]) -> str:
    """Print tokens; a bound duplex shares its middle bar: ``<W|C>``."""
    out = []
    i = 0
    while i < len(tokens):
        if tokens[i] is Token.BRA_W and i + 1 < len(tokens) and tokens[i + 1] is Token.KET_C:
            out.append("<W|C>")
            i += 2
        elif tokens[i] is Token.ENV:
            out.append(" E ")
            i += 1
        else:
            out.append(str(tokens[i]))
            i += 1
    return "".join(out)


def _require_duplexes(tokens: tuple[Token, ...]) -> int:
    """Validate a concatenation of duplexes; returns the duplex count."""
    if len(tokens) % 2:
        raise RewriteError(f"malformed duplex string: {render_tokens(tokens)!r}")
    for i in range(0, len(tokens), 2):
        if tokens[i : i + 2] != DUPLEX:
            raise RewriteError(f"malformed duplex at token {i + 1}")
    return len(tokens) // 2


@dataclass(frozen=True)
class ReplicationTrace:
    """All intermediate stages, one sublist of stages per generation."""

    generations: tuple[tuple[tuple[Token, ...], ...], ...]

    def stages(self) -> list[tuple[Token, ...]]:
        """Flat stage list; generation boundaries are not repeated."""
        out: list[tuple[Token, ...]] = []
        for stages in self.generations:
            start = 1 if out else 0
            out.extend(stages[start:])
        return out

    def stage_texts(self) -> list[str]:
        return [render_tokens(s) for s in self.stages()]

    def derivation(self) -> str:
        return " -> ".join(self.stage_texts())

    def final(self) -> tuple[Token, ...]:
        return self.generations[-1][-1] if self.generations else ()


def dna_replicate(tokens: tuple[Token, ...], generations: int) -> ReplicationTrace:
    """Run the four-stage duplication on every duplex, per generation.

    Stages: split (a separator opens in each duplex), environment
    insertion (``E`` appears in each cleft), environment expansion
    (every ``E`` becomes ``|C><W|`` with separators around the new
    strands), regroup (separators close up, doubling the duplexes).
    """
    _require_duplexes(tokens)
    gens = []
    current = tokens
    for _ in range(generations):
        count = _require_duplexes(current)
        split = []
        for i in range(0, len(current), 2):
            split += [Token.BRA_W, Token.SEP, Token.KET_C]
        inserted = tuple(
            Token.ENV if t is Token.SEP else t for t in split
        )
        expanded: list[Token] = []
        for t in inserted:
            if t is Token.ENV:
                expanded += [Token.SEP, Token.KET_C, Token.BRA_W, Token.SEP]
            else:
                expanded.append(t)
        regrouped = tuple(t for t in expanded if t is not Token.SEP)
        stages = (current, tuple(split), inserted, tuple(expanded), regrouped)
        gens.append(stages)
        current = regrouped
        assert _require_duplexes(current) == 2 * count
    if not gens:
        gens.append((tokens,))
    return ReplicationTrace(tuple(gens))


def duplex_string(count: int) -> tuple[Token, ...]:
    return DUPLEX * count


def dual_pair_replicate(generations: int) -> int:
    """Pair count after each part regenerates the whole, per generation.

    Simulated on an explicit token list: every ``O`` and every ``O*``
    is rewritten to the pair ``O O*``.
    """
    parts = ["O", "O*"]
    for _ in range(generations):
        parts = [t for part in parts for t in ("O", "O*")]
    assert len(parts) % 2 == 0
    return len(parts) // 2


# ---------------------------------------------------------------------------
# Universal builder.


@dataclass(frozen=True)
class Unit:
    """A machine or artifact with its description tape attached."""

    kind: str  # "machine" | "artifact"
    text: str  # the built thing: "B" for machines, uppercase text otherwise
    tape: str  # the attached description

    def render(self) -> str:
        return f"{self.text},{self.tape}"


@dataclass
class BuilderSoup:
    """A multiset of builder units.

    The machine blueprint is the distinguished description text; a
    machine handed its own blueprint builds another machine.
    """

    units: list[Unit] = field(default_factory=list)
    blueprint: str = "b"
    consuming: bool = False
    capacity: int | None = None

    @classmethod
    def self_replicating(cls, **kwargs) -> BuilderSoup:
        soup = cls(**kwargs)
        soup.units = [Unit("machine", "B", soup.blueprint)]
        return soup

    @classmethod
    def with_description(cls, text: str, **kwargs) -> BuilderSoup:
        soup = cls(**kwargs)
        soup.units = [Unit("machine", "B", text)]
        return soup

    @property
    def machine_count(self) -> int:
        return sum(1 for u in self.units if u.kind == "machine")

    @property
    def artifact_count(self) -> int:
        return sum(1 for u in self.units if u.kind == "artifact")

    def step(self) -> BuilderSoup:
        """Every machine builds what its tape describes, tape copied along.

        In the consuming variant the machine is used up by the build.
        Production halts once the optional capacity is reached (the
        consuming form replaces rather than grows, so it always runs).
        """
        produced: list[Unit] = []
        survivors: list[Unit] = []
        total = len(self.units)
        for unit in self.units:
            is_machine = unit.kind == "machine"
            may_build = is_machine and (
                self.consuming
                or self.capacity is None
                or total + len(produced) < self.capacity
            )
            if may_build:
                if unit.tape == self.blueprint:
                    produced.append(Unit("machine", "B", unit.tape))
                else:
                    produced.append(Unit("artifact", unit.tape.upper(), unit.tape))
                if self.consuming:
                    continue
            survivors.append(unit)
        return BuilderSoup(
            survivors + produced, self.blueprint, self.consuming, self.capacity
        )

    def run(self, steps: int) -> BuilderSoup:
        soup = self
        for _ in range(steps):
            soup = soup.step()
        return soup

    def render(self) -> str:
        return " ; ".join(u.render() for u in self.units)


# ---------------------------------------------------------------------------
# Fixed-point unfolding on a free binary term algebra.


@dataclass(frozen=True)
class Term:
    """Binary application tree over named atoms."""

    head: str | None = None
    fn: Term | None = None
    arg: Term | None = None

    @classmethod
    def atom(cls, name: str) -> Term:
        return cls(head=name)

    @classmethod
    def app(cls, fn: Term, arg: Term) -> Term:
        return cls(fn=fn, arg=arg)

    @property
    def is_atom(self) -> bool:
        return self.head is not None

    def render(self) -> str:
        if self.is_atom:
            return self.head  # type: ignore[return-value]
        return f"({self.fn.render()} {self.arg.render()})"


def unfold_step(term: Term, a: str, b: str) -> Term:
    """One leftmost-outermost application of ``(a x) -> (b (x x))``."""
    if term.is_atom:
        return term
    fn, arg = term.fn, term.arg
    assert fn is not None and arg is not None
    if fn.is_atom and fn.head == a:
        return Term.app(Term.atom(b), Term.app(arg, arg))
    new_fn = unfold_step(fn, a, b)
    if new_fn != fn:
        return Term.app(new_fn, arg)
    return Term.app(fn, unfold_step(arg, a, b))


def lambda_unfold(b: str = "b", n: int = 0, a: str = "a") -> Term:
    """The n-step unfolding of ``(a a)`` under ``(a x) -> (b (x x))``."""
    term = Term.app(Term.atom(a), Term.atom(a))
    for _ in range(n):
        term = unfold_step(term, a, b)
    return term
