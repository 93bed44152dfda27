"""The Temperley-Lieb algebra as non-crossing planar matchings.

A diagram on n strands matches 2n boundary points perfectly: points
1..n sit on the top edge (left to right) and points n+1..2n on the
bottom edge (left to right). Walking the boundary of the rectangle
clockwise visits 1, ..., n, 2n, 2n-1, ..., n+1; a matching is planar
when no two of its chords interleave in that circular order.

Stacking one diagram on another glues bottom to top; chords are traced
through the seam, and every closed loop that falls out contributes a
factor of the loop value δ. The generator U_i joins (i, i+1) on top and
(n+i, n+i+1) on the bottom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPoly

MAX_STRANDS = 12

#: The formal loop variable δ as a Laurent polynomial.
DELTA = LaurentPoly.var()


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _circular_position(point: int, n: int) -> int:
    """Index of a boundary point in the clockwise walk (0-based)."""
    return point - 1 if point <= n else 3 * n - point


@dataclass(frozen=True, order=True)
class Matching:
    """A non-crossing perfect matching on the 2n boundary points."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        points = sorted(p for pair in self.pairs for p in pair)
        if points != list(range(1, 2 * self.n + 1)):
            raise ValueError("pairs must match every boundary point exactly once")
        canonical = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", canonical)
        arcs = sorted(
            tuple(sorted(_circular_position(p, self.n) for p in pair))
            for pair in canonical
        )
        for i, (a, b) in enumerate(arcs):
            for c, d in arcs[i + 1 :]:
                if a < c < b < d:
                    raise ValueError(f"pairs {self.pairs} cross in planar order")

    @classmethod
    def identity(cls, n: int) -> Matching:
        return cls(n, tuple((i, n + i) for i in range(1, n + 1)))

    @classmethod
    def generator(cls, i: int, n: int) -> Matching:
        """U_i: cups at (i, i+1) on top and (n+i, n+i+1) on the bottom."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for n={n}")
        pairs = [(i, i + 1), (n + i, n + i + 1)]
        pairs += [(j, n + j) for j in range(1, n + 1) if j not in (i, i + 1)]
        return cls(n, tuple(pairs))

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def flip(self) -> Matching:
        """Exchange top and bottom rows."""
        n = self.n

        def swap(p: int) -> int:
            return p + n if p <= n else p - n

        return Matching(n, tuple((swap(a), swap(b)) for a, b in self.pairs))

    def render(self, name: str = "") -> str:
        label = f"{name}(n={self.n}) = " if name else ""
        body = ",".join(f"({a},{b})" for a, b in self.pairs)
        return f"{label}{{{body}}}"


def compose(d1: Matching, d2: Matching) -> tuple[Matching, int]:
    """Stack d2 below d1 and trace connections.

    Returns the resulting matching and the number of closed loops
    removed from the middle. The algebra product is δ^loops times the
    matching.

    The composite is a disjoint union of arcs and loops: nodes are the
    external points (d1's top, d2's bottom) plus n seam nodes where
    d1's bottom glues to d2's top; every chord of either diagram is an
    edge. Ext nodes have degree 1 and seam nodes degree 2, so paths end
    at ext nodes and everything else is a loop.
    """
    if d1.n != d2.n:
        raise ValueError(f"strand counts differ: {d1.n} vs {d2.n}")
    n = d1.n

    def node1(p: int) -> tuple[str, int]:
        return ("T", p) if p <= n else ("M", p - n)

    def node2(p: int) -> tuple[str, int]:
        return ("M", p) if p <= n else ("B", p)

    edges = [(node1(a), node1(b)) for a, b in d1.pairs]
    edges += [(node2(a), node2(b)) for a, b in d2.pairs]
    adj: dict[tuple[str, int], list[tuple[int, tuple[str, int]]]] = {}
    for idx, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((idx, v))
        adj.setdefault(v, []).append((idx, u))

    used = [False] * len(edges)
    pairs = []
    ext_nodes = [("T", i) for i in range(1, n + 1)]
    ext_nodes += [("B", p) for p in range(n + 1, 2 * n + 1)]
    for start in ext_nodes:
        cur = start
        moved = False
        while True:
            step = next(((i, v) for i, v in adj[cur] if not used[i]), None)
            if step is None:
                break
            used[step[0]] = True
            cur = step[1]
            moved = True
            if cur[0] != "M":
                break
        if moved:
            pairs.append((start[1], cur[1]))

    loops = 0
    for idx in range(len(edges)):
        if used[idx]:
            continue
        loops += 1
        used[idx] = True
        cur = edges[idx][1]
        while True:
            step = next(((i, v) for i, v in adj[cur] if not used[i]), None)
            if step is None:
                break
            used[step[0]] = True
            cur = step[1]

    return Matching(n, tuple(pairs)), loops


def enumerate_basis(n: int) -> list[Matching]:
    """All non-crossing matchings on 2n points, in sorted order.

    The count is the n-th Catalan number; n is capped because the basis
    grows that fast.
    """
    if not 1 <= n <= MAX_STRANDS:
        raise ValueError(f"strand count must be in 1..{MAX_STRANDS}")
    order = [i + 1 for i in range(n)] + [2 * n - i for i in range(n)]

    def match_interval(points: list[int]) -> list[list[tuple[int, int]]]:
        if not points:
            return [[]]
        out = []
        first = points[0]
        for k in range(1, len(points), 2):
            inside = match_interval(points[1:k])
            outside = match_interval(points[k + 1 :])
            for a in inside:
                for b in outside:
                    out.append([(first, points[k])] + a + b)
        return out

    basis = [Matching(n, tuple(pairs)) for pairs in match_interval(order)]
    return sorted(basis)


class TLElement:
    """A linear combination of matchings with Laurent coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Matching, LaurentPoly] | None = None):
        self.n = n
        self.terms: dict[Matching, LaurentPoly] = {}
        if terms:
            for m, coeff in terms.items():
                if m.n != n:
                    raise ValueError("matching strand count differs from element")
                if not coeff.is_zero():
                    self.terms[m] = coeff

    @classmethod
    def identity(cls, n: int) -> TLElement:
        return cls(n, {Matching.identity(n): LaurentPoly.one()})

    @classmethod
    def generator(cls, i: int, n: int) -> TLElement:
        return cls(n, {Matching.generator(i, n): LaurentPoly.one()})

    @classmethod
    def from_matching(cls, m: Matching, coeff: LaurentPoly | None = None) -> TLElement:
        return cls(m.n, {m: coeff if coeff is not None else LaurentPoly.one()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other: TLElement) -> TLElement:
        if self.n != other.n:
            raise ValueError("strand counts differ")
        terms = dict(self.terms)
        for m, coeff in other.terms.items():
            terms[m] = terms.get(m, LaurentPoly.zero()) + coeff
        return TLElement(self.n, terms)

    def scale(self, coeff: LaurentPoly | int) -> TLElement:
        if isinstance(coeff, int):
            coeff = LaurentPoly.term(coeff)
        return TLElement(self.n, {m: c * coeff for m, c in self.terms.items()})

    def mul(self, other: TLElement, loop_value: LaurentPoly = DELTA) -> TLElement:
        """Algebra product; each closed loop contributes loop_value."""
        if self.n != other.n:
            raise ValueError("strand counts differ")
        terms: dict[Matching, LaurentPoly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m, loops = compose(m1, m2)
                contribution = c1 * c2 * loop_value**loops
                terms[m] = terms.get(m, LaurentPoly.zero()) + contribution
        return TLElement(self.n, terms)

    def __mul__(self, other: TLElement) -> TLElement:
        return self.mul(other)

    def render(self, var: str = "δ") -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m in sorted(self.terms):
            coeff = self.terms[m]
            text = coeff.to_str(var)
            prefix = "" if text == "1" else f"({text})·"
            chunks.append(prefix + m.render())
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"TLElement({self.render()})"


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool


def verify_relations(n: int) -> list[RelationCheck]:
    """Check the defining relations on all generators of the n-strand algebra.

    U_i^2 = δ U_i, U_i U_{i±1} U_i = U_i, and U_i U_j = U_j U_i for
    |i-j| > 1. For n = 1 there are no generators and the report is
    empty (a vacuous pass).
    """
    if not 1 <= n <= 8:
        raise ValueError("relation check supports n in 1..8")
    checks = []
    gens = {i: TLElement.generator(i, n) for i in range(1, n)}
    for i, u in gens.items():
        checks.append(RelationCheck(f"U{i}^2 = δU{i}", u * u == u.scale(DELTA)))
    for i in gens:
        for j in (i - 1, i + 1):
            if j in gens:
                lhs = gens[i] * gens[j] * gens[i]
                checks.append(RelationCheck(f"U{i}U{j}U{i} = U{i}", lhs == gens[i]))
    for i in gens:
        for j in gens:
            if j > i + 1:
                checks.append(
                    RelationCheck(
                        f"U{i}U{j} = U{j}U{i}", gens[i] * gens[j] == gens[j] * gens[i]
                    )
                )
    return checks


@dataclass(frozen=True)
class EmbeddingCheck:
    product: str
    boundary_form: str
    tl_form: str
    passed: bool


@lru_cache(maxsize=1)
def _letter_images() -> dict[str, TLElement]:
    """Images of the four extainers inside the 3-strand algebra.

    E and F are the generators U1 and U2. The specialized product table
    forces G = U1·U2 and H = U2·U1 (for instance GE = [>E specializes
    to G·U1 = U1, which U1U2 satisfies).
    """
    u1, u2 = TLElement.generator(1, 3), TLElement.generator(2, 3)
    return {"E": u1, "F": u2, "G": u1 * u2, "H": u2 * u1}


def boundary_embedding() -> list[EmbeddingCheck]:
    """Verify the specialization c3 = c4 = 1, c1 = c2 = δ against TL products.

    Each of the sixteen extainer products is specialized to a Laurent
    multiple of a reduced word and compared with the product of the
    letter images in the 3-strand algebra.
    """
    from . import boundary

    images = _letter_images()
    word_letter = boundary.EXTAINER_NAMES
    checks = []
    for x in "EFGH":
        for y in "EFGH":
            product = boundary.Element.from_word(
                boundary.EXTAINERS[x]
            ) * boundary.Element.from_word(boundary.EXTAINERS[y])
            specialized = product.specialize(DELTA)
            expected = TLElement(3)
            for word, coeff in specialized.items():
                expected = expected + images[word_letter[word]].scale(coeff)
            actual = images[x] * images[y]
            single = product.single_term()
            assert single is not None
            mono, word = single
            checks.append(
                EmbeddingCheck(
                    product=f"{x}{y}",
                    boundary_form=f"{mono.render()}{word_letter[word]}",
                    tl_form=actual.render(),
                    passed=actual == expected,
                )
            )
    return checks
