"""The combinatorial algebra of containers and extainers.

Words are written over the four bracket symbols ``<`` ``>`` ``[`` ``]``.
An opener immediately followed by a closer is a *container* and commutes
with everything; it is extracted as a scalar. A closer immediately
followed by an opener is an *extainer* and stays in place. The four
containers are

    c1 = <>   c2 = []   c3 = [>   c4 = <]

and the four length-2 reduced words (the extainers) are

    E = ><   F = ][   G = >[   H = ]<

Every word normalizes to a product of container scalars times a reduced
word of the shape ``closers* openers*``. Scalars live in the commutative
polynomial ring on the four container symbols.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly

OPENERS = frozenset("<[")
CLOSERS = frozenset(">]")
ALPHABET = OPENERS | CLOSERS

#: Containers in canonical order c1..c4.
CONTAINERS = ("<>", "[]", "[>", "<]")
_CONTAINER_INDEX = {c: i for i, c in enumerate(CONTAINERS)}

#: The four extainers by their conventional one-letter names.
EXTAINERS = {"E": "><", "F": "][", "G": ">[", "H": "]<"}
EXTAINER_NAMES = {w: n for n, w in EXTAINERS.items()}


class ParseError(ValueError):
    """Raised on input text outside the bracket alphabet."""


def parse_word(text: str) -> str:
    """Parse a boundary word; whitespace is ignored.

    Raises ParseError naming the 1-based position of the first invalid
    character.
    """
    out = []
    for pos, ch in enumerate(text, start=1):
        if ch.isspace():
            continue
        if ch not in ALPHABET:
            raise ParseError(f"invalid character {ch!r} at position {pos}")
        out.append(ch)
    return "".join(out)


@dataclass(frozen=True)
class Monomial:
    """A commuting container monomial c1^a c2^b c3^c c4^d with an int coefficient."""

    exps: tuple[int, int, int, int] = (0, 0, 0, 0)
    coeff: int = 1

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(
            tuple(a + b for a, b in zip(self.exps, other.exps)),  # type: ignore[arg-type]
            self.coeff * other.coeff,
        )

    def render(self) -> str:
        """Container factors in c1..c4 order, e.g. ``<>^2 <]``."""
        parts = []
        for sym, e in zip(CONTAINERS, self.exps):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        if self.coeff != 1 or not parts:
            parts.insert(0, str(self.coeff))
        return " ".join(parts)


def is_reduced(word: str) -> bool:
    """True if the word has no opener immediately followed by a closer."""
    return not any(
        a in OPENERS and b in CLOSERS for a, b in zip(word, word[1:])
    )


def normalize(word: str) -> tuple[Monomial, str]:
    """Extract all containers from a word.

    A single left-to-right pass with a stack reaches the fixpoint: each
    closer either cancels the opener on top of the stack (recording one
    container) or is emitted. Redexes cannot overlap, so the result is
    independent of extraction order; the residual word matches
    ``closers* openers*``.
    """
    exps = [0, 0, 0, 0]
    out: list[str] = []
    for ch in word:
        if ch in CLOSERS and out and out[-1] in OPENERS:
            exps[_CONTAINER_INDEX[out.pop() + ch]] += 1
        else:
            out.append(ch)
    return Monomial(tuple(exps)), "".join(out)  # type: ignore[arg-type]


class Element:
    """An integer-linear combination of scalar monomials times reduced words.

    ``terms`` maps each reduced word to its scalar, itself a map from
    container-exponent tuples to integer coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[str, dict[tuple[int, int, int, int], int]] | None = None):
        self.terms: dict[str, dict[tuple[int, int, int, int], int]] = {}
        if terms:
            for word, scalar in terms.items():
                if not is_reduced(word):
                    raise ValueError(f"word {word!r} is not reduced")
                cleaned = {e: k for e, k in scalar.items() if k}
                if cleaned:
                    self.terms[word] = cleaned

    @classmethod
    def from_word(cls, word: str) -> Element:
        """The element of a single (possibly unreduced) word."""
        mono, residue = normalize(parse_word(word))
        return cls({residue: {mono.exps: mono.coeff}})

    @classmethod
    def zero(cls) -> Element:
        return cls()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash(
            frozenset((w, frozenset(s.items())) for w, s in self.terms.items())
        )

    def __add__(self, other: Element) -> Element:
        terms = {w: dict(s) for w, s in self.terms.items()}
        for word, scalar in other.terms.items():
            dst = terms.setdefault(word, {})
            for exps, coeff in scalar.items():
                dst[exps] = dst.get(exps, 0) + coeff
        return Element(terms)

    def scale(self, mono: Monomial) -> Element:
        terms: dict[str, dict[tuple[int, int, int, int], int]] = {}
        for word, scalar in self.terms.items():
            dst: dict[tuple[int, int, int, int], int] = {}
            for exps, coeff in scalar.items():
                key = tuple(a + b for a, b in zip(exps, mono.exps))
                dst[key] = dst.get(key, 0) + coeff * mono.coeff  # type: ignore[index]
            terms[word] = dst
        return Element(terms)

    def __mul__(self, other: Element) -> Element:
        out = Element.zero()
        for w1, s1 in self.terms.items():
            for w2, s2 in other.terms.items():
                mono, residue = normalize(w1 + w2)
                scalar: dict[tuple[int, int, int, int], int] = {}
                for e1, k1 in s1.items():
                    for e2, k2 in s2.items():
                        key = tuple(
                            a + b + c for a, b, c in zip(e1, e2, mono.exps)
                        )
                        scalar[key] = scalar.get(key, 0) + k1 * k2 * mono.coeff  # type: ignore[index]
                out = out + Element({residue: scalar})
        return out

    def single_term(self) -> tuple[Monomial, str] | None:
        """If the element is one monomial times one word, return the pair."""
        if len(self.terms) != 1:
            return None
        word, scalar = next(iter(self.terms.items()))
        if len(scalar) != 1:
            return None
        exps, coeff = next(iter(scalar.items()))
        return Monomial(exps, coeff), word

    def specialize(self, delta: LaurentPoly) -> dict[str, LaurentPoly]:
        """Substitute c1 = c2 = delta, c3 = c4 = 1 in every scalar.

        Returns a map reduced word -> Laurent polynomial in delta's
        variable.
        """
        out: dict[str, LaurentPoly] = {}
        for word, scalar in self.terms.items():
            total = LaurentPoly.zero()
            for (e1, e2, _e3, _e4), coeff in scalar.items():
                total = total + delta ** (e1 + e2) * coeff
            if not total.is_zero():
                out[word] = total
        return out

    def render(self, compact: bool = False) -> str:
        """Human form, e.g. ``<>^2 <] >[`` (monomial then residual word)."""
        if not self.terms:
            return "0"
        chunks = []
        for word in sorted(self.terms):
            scalar = self.terms[word]
            for exps in sorted(scalar):
                mono = Monomial(exps, scalar[exps])
                mono_text = mono.render()
                body = " ".join(p for p in (mono_text if mono_text != "1" else "", word) if p)
                chunks.append(body or "1")
        text = " + ".join(chunks)
        return text.replace(" ", "") if compact else text

    def __repr__(self) -> str:
        return f"Element({self.render()})"


def multiply(a: Element, b: Element) -> Element:
    """Bilinear product: concatenate words, then normalize."""
    return a * b


def full_table() -> dict[tuple[str, str], Element]:
    """Products XY for X, Y in {E, F, G, H}."""
    table = {}
    for x in "EFGH":
        for y in "EFGH":
            table[(x, y)] = Element.from_word(EXTAINERS[x]) * Element.from_word(EXTAINERS[y])
    return table


def table_lines() -> list[str]:
    """The sixteen product identities in print form, e.g. ``EF = <]G``."""
    lines = []
    for (x, y), product in full_table().items():
        single = product.single_term()
        assert single is not None, "table entries are single monomial terms"
        mono, word = single
        lines.append(f"{x}{y} = {mono.render()}{EXTAINER_NAMES[word]}")
    return lines


def normalize_stepwise(word: str, leftmost: bool = True) -> tuple[Monomial, str]:
    """One-redex-at-a-time normalization, for confluence checks.

    Repeatedly finds the leftmost (or rightmost) opener-closer pair,
    extracts it, and rescans. Slower than ``normalize`` but makes the
    redex selection order explicit.
    """
    exps = [0, 0, 0, 0]
    current = word
    while True:
        positions = [
            i
            for i in range(len(current) - 1)
            if current[i] in OPENERS and current[i + 1] in CLOSERS
        ]
        if not positions:
            return Monomial(tuple(exps)), current  # type: ignore[arg-type]
        i = positions[0] if leftmost else positions[-1]
        exps[_CONTAINER_INDEX[current[i : i + 2]]] += 1
        current = current[:i] + current[i + 2 :]
