"""Folding chains in bra/ket notation and their structure classification.

A chain lists paired sites along a strand: each letter appears once as
a bra ``<x|`` and later once as a ket ``|x>``. Dropping bars and
letters leaves a parenthesis word over ``<`` and ``>``; a chain is a
*secondary* structure when that word is legal and re-deriving the
pairing from the word alone reproduces the chain up to renaming.
Interleaved pairs (minimally ``abab``) break this and fold as
pseudoknots.

The contact graph ties consecutive sites with backbone edges (plus a
closing edge in circular form) and adds one chord per letter pair. A
circular contact graph may be searched for a partition of the backbone
cycle into seven arcs whose contraction is the complete graph K7, the
signature of an intrinsically knotted folding.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

LETTERS = string.ascii_lowercase + string.ascii_uppercase
MAX_PAIRS = len(LETTERS)

#: The catalogued intrinsically knotted folding string (21 letter pairs).
KNOTTED_STRING = "ABCDEFAGHIJKBGLMNOCHLPQRDIMPSTEJNQSUFKORTU"


class ChainError(ValueError):
    """Raised for ill-formed chains or parenthesis words."""


@dataclass(frozen=True)
class Site:
    kind: str  # "bra" | "ket"
    letter: str

    def render(self) -> str:
        return f"<{self.letter}|" if self.kind == "bra" else f"|{self.letter}>"


@dataclass(frozen=True)
class Chain:
    sites: tuple[Site, ...]

    def __post_init__(self):
        bras: dict[str, int] = {}
        kets: dict[str, int] = {}
        for pos, site in enumerate(self.sites):
            table = bras if site.kind == "bra" else kets
            if site.letter in table:
                raise ChainError(f"letter {site.letter!r} repeats as {site.kind}")
            table[site.letter] = pos
        if set(bras) != set(kets):
            odd = sorted(set(bras) ^ set(kets))
            raise ChainError(f"letters without a partner: {', '.join(odd)}")
        for letter, bra_pos in bras.items():
            if bra_pos > kets[letter]:
                raise ChainError(f"ket of {letter!r} precedes its bra")

    def __len__(self) -> int:
        return len(self.sites)

    def letters(self) -> list[str]:
        return [s.letter for s in self.sites]

    def chords(self) -> list[tuple[int, int]]:
        """1-based (bra, ket) position pairs, in bra order."""
        opened: dict[str, int] = {}
        pairs = []
        for pos, site in enumerate(self.sites, start=1):
            if site.kind == "bra":
                opened[site.letter] = pos
            else:
                pairs.append((opened[site.letter], pos))
        return sorted(pairs)

    def abbreviated(self) -> str:
        return "".join(self.letters())

    def render(self) -> str:
        return "".join(s.render() for s in self.sites)


def parse_chain_abbrev(text: str) -> Chain:
    """Parse a letter string: first occurrence bra, second ket."""
    counts: dict[str, int] = {}
    sites = []
    for pos, ch in enumerate(text, start=1):
        if ch not in LETTERS:
            raise ChainError(f"invalid letter {ch!r} at position {pos}")
        seen = counts.get(ch, 0)
        if seen >= 2:
            raise ChainError(f"letter {ch!r} occurs more than twice")
        sites.append(Site("bra" if seen == 0 else "ket", ch))
        counts[ch] = seen + 1
    bad = sorted(ch for ch, k in counts.items() if k != 2)
    if bad:
        raise ChainError(f"letters not occurring exactly twice: {', '.join(bad)}")
    return Chain(tuple(sites))


def parse_chain(text: str) -> Chain:
    """Parse either full bra/ket syntax or an abbreviated letter string."""
    stripped = "".join(text.split())
    if not any(ch in "<|>" for ch in stripped):
        return parse_chain_abbrev(stripped)
    sites = []
    i = 0
    while i < len(stripped):
        token = stripped[i : i + 3]
        if len(token) == 3 and token[0] == "<" and token[2] == "|" and token[1] in LETTERS:
            sites.append(Site("bra", token[1]))
        elif len(token) == 3 and token[0] == "|" and token[2] == ">" and token[1] in LETTERS:
            sites.append(Site("ket", token[1]))
        else:
            raise ChainError(f"cannot read a bra or ket at position {i + 1}")
        i += 3
    return Chain(tuple(sites))


def project_parens(chain: Chain) -> str:
    """Drop bars and letters: bra -> ``<``, ket -> ``>``."""
    return "".join("<" if s.kind == "bra" else ">" for s in chain.sites)


def is_legal(word: str) -> bool:
    """Balance scan: depth never negative and zero at the end.

    The empty word is accepted (the neutral element of concatenation).
    Equivalence with the inductive definition (``<>``; concatenation;
    enclosure) is exercised over all short words in the test suite.
    """
    depth = 0
    for ch in word:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
            if depth < 0:
                return False
        else:
            raise ChainError(f"invalid parenthesis symbol {ch!r}")
    return depth == 0


def canonical_pairing(word: str) -> frozenset[tuple[int, int]]:
    """Stack matching of a legal word; 1-based (opener, closer) pairs."""
    if not is_legal(word):
        raise ChainError("word is not a legal parenthesis structure")
    stack: list[int] = []
    pairs = []
    for pos, ch in enumerate(word, start=1):
        if ch == "<":
            stack.append(pos)
        else:
            pairs.append((stack.pop(), pos))
    return frozenset(pairs)


def relabel(word: str) -> Chain:
    """Rebuild a chain from a legal word, fresh letters in opener order."""
    pairing = canonical_pairing(word)
    if len(pairing) > MAX_PAIRS:
        raise ChainError(f"more than {MAX_PAIRS} pairs")
    sites: list[Site | None] = [None] * len(word)
    for letter, (opener, closer) in zip(
        LETTERS, sorted(pairing, key=lambda p: p[0])
    ):
        sites[opener - 1] = Site("bra", letter)
        sites[closer - 1] = Site("ket", letter)
    return Chain(tuple(sites))  # type: ignore[arg-type]


def is_isomorphic(c1: Chain, c2: Chain) -> bool:
    """True when renaming letters by first occurrence makes them equal."""

    def canonical(chain: Chain) -> list[tuple[str, int]]:
        index: dict[str, int] = {}
        out = []
        for site in chain.sites:
            if site.letter not in index:
                index[site.letter] = len(index)
            out.append((site.kind, index[site.letter]))
        return out

    return canonical(c1) == canonical(c2)


def classify(chain: Chain) -> str:
    """``"secondary"`` or ``"tertiary"`` (pseudoknot)."""
    word = project_parens(chain)
    if is_legal(word) and is_isomorphic(relabel(word), chain):
        return "secondary"
    return "tertiary"


def has_crossing_chords(chain: Chain) -> bool:
    """True if two chords interleave (i < j < k < l with chords ik, jl)."""
    chords = chain.chords()
    for idx, (a, b) in enumerate(chords):
        for c, d in chords[idx + 1 :]:
            if a < c < b < d:
                return True
    return False


# ---------------------------------------------------------------------------
# Contact graphs and the K7 retraction search.


@dataclass(frozen=True)
class ContactGraph:
    """Multigraph of backbone edges and chords over 1-based site indices."""

    sites: int
    backbone: tuple[tuple[int, int], ...]
    chords: tuple[tuple[int, int], ...]
    circular: bool

    def degree(self, vertex: int) -> int:
        return sum(
            edge.count(vertex) for edge in self.backbone + self.chords
        )


def build_contact_graph(chain: Chain, circular: bool) -> ContactGraph:
    n = len(chain)
    backbone = [(i, i + 1) for i in range(1, n)]
    if circular and n >= 1:
        backbone.append((n, 1))
    return ContactGraph(
        sites=n,
        backbone=tuple(backbone),
        chords=tuple(chain.chords()),
        circular=circular,
    )


K7_BUDGET = 10**8


def _arc_of(site: int, cuts: list[int], n: int) -> int:
    """Index of the arc containing a site, for cut positions cuts."""
    # cuts are sorted site indices where a new arc begins.
    lo, hi = 0, len(cuts)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if cuts[mid] <= site:
            lo = mid
        else:
            hi = mid
    if site < cuts[0]:
        return len(cuts) - 1  # wraps around
    return lo


def _contracts_to_k7(chords: dict[str, tuple[int, int]], cuts: list[int], n: int) -> bool:
    adjacency: set[tuple[int, int]] = set()
    for i in range(7):
        adjacency.add(tuple(sorted((i, (i + 1) % 7))))  # backbone cycle
    for a, b in chords.values():
        arc_a, arc_b = _arc_of(a, cuts, n), _arc_of(b, cuts, n)
        if arc_a == arc_b:
            continue  # contraction loop, deleted
        adjacency.add(tuple(sorted((arc_a, arc_b))))
    return len(adjacency) == 21


def find_k7_retraction(chain: Chain) -> tuple[tuple[str, ...], ...] | None:
    """Search 7-arc partitions of the circular backbone that contract to K7.

    Arcs are contiguous runs of sites; contracting each arc to one
    vertex, merging parallel edges and deleting loops must leave
    exactly the complete graph on the seven arc vertices. An arc is
    viable only when its sites carry six distinct letters with no pair
    internal to the arc, which pins every arc to exactly six sites.
    Returns the first partition in cut-position scan order, as arc
    letter tuples, or None.
    """
    n = len(chain)
    if n and math.comb(n, 7) > K7_BUDGET:
        raise ChainError(f"{n} sites exceed the partition search budget")
    if n < 7:
        return None
    letters = chain.letters()
    chord_map = {
        letters[a - 1]: (a, b) for a, b in chain.chords()
    }

    def viable(start: int, length: int) -> bool:
        arc = [letters[(start - 1 + k) % n] for k in range(length)]
        return len(set(arc)) == 6 and len(arc) == len(set(arc))

    # Enumerate cut tuples (c1 < ... < c7) in lexicographic order. The
    # viability predicate admits only six-site arcs of distinct
    # letters, so every later cut sits six past the previous one and
    # only 42-site chains can tile.
    if n != 7 * 6:
        return None  # seven viable arcs cannot tile the cycle
    for c1 in range(1, 7):  # larger starts repeat these partitions rotated
        cuts = [c1 + 6 * k for k in range(7)]
        if all(viable(c, 6) for c in cuts) and _contracts_to_k7(chord_map, cuts, n):
            return tuple(
                tuple(letters[(c - 1 + k) % n] for k in range(6)) for c in cuts
            )
    return None
