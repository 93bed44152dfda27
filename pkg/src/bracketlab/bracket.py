"""Bracket state sum on layered tangle diagrams.

A diagram is a vertical composition of layers on a varying strand
count:

    id n          leave n strands alone
    cup i n       create two adjacent strands at position i  (n -> n+2)
    cap i n       join strands i and i+1                     (n -> n-2)
    cross i n ±   cross strands i and i+1                    (n -> n)

A closed diagram runs from 0 strands to 0 strands. Each crossing is a
superposition of its two smoothings: the identity smoothing and the
cup-cap smoothing, with coefficients A and A^-1 (swapped for negative
crossings). Every closed loop in a fully smoothed diagram contributes
the loop value -A^2 - A^-2.

Two evaluation routes are provided and cross-checked: a brute-force
state sum over all 2^c smoothing choices, and a layer-by-layer sweep
that threads linear combinations of planar matchings through the
composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LOOP_VALUE, LaurentPoly
from .tl import Matching, TLElement

MAX_CROSSINGS = 24

A = LaurentPoly.var()
A_INV = LaurentPoly({-1: 1})


class TangleError(ValueError):
    """Raised for malformed tangle expressions."""


@dataclass(frozen=True)
class Layer:
    kind: str  # "id" | "cup" | "cap" | "cross"
    position: int
    strands: int  # input strand count
    sign: int = 0  # +1 or -1 for crossings

    @property
    def output_strands(self) -> int:
        if self.kind == "cup":
            return self.strands + 2
        if self.kind == "cap":
            return self.strands - 2
        return self.strands

    def render(self) -> str:
        if self.kind == "id":
            return f"id {self.strands}"
        if self.kind == "cross":
            return f"cross {self.position} {self.strands} {'+' if self.sign > 0 else '-'}"
        return f"{self.kind} {self.position} {self.strands}"


def _validate_layer(layer: Layer, index: int) -> None:
    n, i = layer.strands, layer.position
    ok = {
        "id": n >= 0,
        "cup": 1 <= i <= n + 1,
        "cap": n >= 2 and 1 <= i <= n - 1,
        "cross": n >= 2 and 1 <= i <= n - 1,
    }.get(layer.kind)
    if ok is None:
        raise TangleError(f"layer {index}: unknown kind {layer.kind!r}")
    if not ok:
        raise TangleError(f"layer {index}: position {i} invalid on {n} strands")
    if layer.kind == "cross" and layer.sign not in (+1, -1):
        raise TangleError(f"layer {index}: crossing sign must be + or -")


@dataclass(frozen=True)
class Tangle:
    """A validated composition of layers."""

    layers: tuple[Layer, ...]

    def __post_init__(self):
        n = 0 if not self.layers else self.layers[0].strands
        for index, layer in enumerate(self.layers, start=1):
            _validate_layer(layer, index)
            if layer.strands != n:
                raise TangleError(
                    f"layer {index}: declares {layer.strands} strands, expected {n}"
                )
            n = layer.output_strands

    @property
    def input_strands(self) -> int:
        return self.layers[0].strands if self.layers else 0

    @property
    def output_strands(self) -> int:
        return self.layers[-1].output_strands if self.layers else 0

    @property
    def crossings(self) -> list[int]:
        """Indices (into layers) of the crossing layers."""
        return [i for i, l in enumerate(self.layers) if l.kind == "cross"]

    def is_closed(self) -> bool:
        return self.input_strands == 0 and self.output_strands == 0

    def require_closed(self) -> None:
        if not self.is_closed():
            raise TangleError(
                f"diagram is not closed: runs from {self.input_strands} "
                f"to {self.output_strands} strands"
            )

    def mirror(self) -> Tangle:
        """Switch every crossing sign."""
        return Tangle(
            tuple(
                Layer(l.kind, l.position, l.strands, -l.sign)
                if l.kind == "cross"
                else l
                for l in self.layers
            )
        )

    def insert_layers(self, at: int, new_layers: tuple[Layer, ...]) -> Tangle:
        return Tangle(self.layers[:at] + new_layers + self.layers[at:])

    def render(self) -> str:
        return " / ".join(l.render() for l in self.layers)


def parse_tangle(text: str) -> Tangle:
    """Parse the `/`-separated layer grammar."""
    layers = []
    fields = [f.strip() for f in text.split("/") if f.strip()]
    for index, field in enumerate(fields, start=1):
        parts = field.split()
        try:
            if parts[0] == "id" and len(parts) == 2:
                layers.append(Layer("id", 0, int(parts[1])))
            elif parts[0] in ("cup", "cap") and len(parts) == 3:
                layers.append(Layer(parts[0], int(parts[1]), int(parts[2])))
            elif parts[0] == "cross" and len(parts) == 4 and parts[3] in "+-":
                sign = 1 if parts[3] == "+" else -1
                layers.append(Layer("cross", int(parts[1]), int(parts[2]), sign))
            else:
                raise TangleError(f"layer {index}: cannot parse {field!r}")
        except ValueError as exc:
            raise TangleError(f"layer {index}: cannot parse {field!r}") from exc
    return Tangle(tuple(layers))


def expand_crossing(sign: int) -> TLElement:
    """The two-strand expansion of one crossing, coefficients in A."""
    ident = Matching.identity(2)
    cupcap = Matching.generator(1, 2)
    if sign > 0:
        return TLElement(2, {ident: A, cupcap: A_INV})
    return TLElement(2, {ident: A_INV, cupcap: A})


# ---------------------------------------------------------------------------
# Route (a): brute-force state sum.


class _ArcUnion:
    """Union-find over arc segment ids; closing an arc counts a loop."""

    def __init__(self):
        self.parent: list[int] = []
        self.loops = 0

    def fresh(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def join(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.loops += 1
        else:
            self.parent[ra] = rb


def _count_loops(tangle: Tangle, choices: dict[int, str]) -> int:
    """Loop count of the fully smoothed closed diagram.

    choices maps crossing layer index -> "I" (identity smoothing) or
    "U" (cup-cap smoothing).
    """
    uf = _ArcUnion()
    strands: list[int] = []
    for index, layer in enumerate(tangle.layers):
        i = layer.position - 1
        if layer.kind == "cup":
            a, b = uf.fresh(), uf.fresh()
            uf.join(a, b)
            strands[i:i] = [a, b]
        elif layer.kind == "cap":
            uf.join(strands[i], strands[i + 1])
            del strands[i : i + 2]
        elif layer.kind == "cross":
            if choices[index] == "U":
                uf.join(strands[i], strands[i + 1])
                a, b = uf.fresh(), uf.fresh()
                uf.join(a, b)
                strands[i] = a
                strands[i + 1] = b
    assert not strands
    return uf.loops


def state_sum_bracket(tangle: Tangle) -> LaurentPoly:
    """Unnormalized bracket by enumeration of all smoothing states."""
    tangle.require_closed()
    crossings = tangle.crossings
    if len(crossings) > MAX_CROSSINGS:
        raise TangleError(
            f"{len(crossings)} crossings exceed the budget of {MAX_CROSSINGS}"
        )
    signs = {i: tangle.layers[i].sign for i in crossings}
    max_loops = len(tangle.layers)
    delta_pow = [LaurentPoly.one()]
    for _ in range(max_loops):
        delta_pow.append(delta_pow[-1] * LOOP_VALUE)

    total = LaurentPoly.zero()
    for state in range(1 << len(crossings)):
        choices = {}
        exponent = 0
        for bit, layer_index in enumerate(crossings):
            # bit 0 -> A-smoothing of that crossing, bit 1 -> the other.
            take_a = not (state >> bit) & 1
            if signs[layer_index] > 0:
                choices[layer_index] = "I" if take_a else "U"
            else:
                choices[layer_index] = "U" if take_a else "I"
            exponent += 1 if take_a else -1
        loops = _count_loops(tangle, choices)
        total = total + LaurentPoly({exponent: 1}) * delta_pow[loops]
    return total


# ---------------------------------------------------------------------------
# Route (b): threading linear combinations of matchings through the layers.


def _cap_pairs(pairs: dict[int, int], i: int) -> tuple[dict[int, int], int]:
    """Join open strands i and i+1 (0-based) in a partner map."""
    a, b = pairs[i], pairs[i + 1]
    loops = 0
    out = {}
    if a == i + 1:
        loops = 1
        for p, q in pairs.items():
            if p not in (i, i + 1):
                out[p] = q
    else:
        for p, q in pairs.items():
            if p in (i, i + 1):
                continue
            out[p] = q
        out[a] = b
        out[b] = a
    # Reindex positions above the removed pair.
    def shift(p: int) -> int:
        return p - 2 if p > i + 1 else p

    return {shift(p): shift(q) for p, q in out.items()}, loops


def _cup_pairs(pairs: dict[int, int], i: int) -> dict[int, int]:
    """Insert a fresh adjacent pair at position i (0-based)."""

    def shift(p: int) -> int:
        return p + 2 if p >= i else p

    out = {shift(p): shift(q) for p, q in pairs.items()}
    out[i] = i + 1
    out[i + 1] = i
    return out


def _freeze(pairs: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((p, q) for p, q in pairs.items() if p < q))


def _thaw(key: tuple[tuple[int, int], ...]) -> dict[int, int]:
    out = {}
    for p, q in key:
        out[p] = q
        out[q] = p
    return out


def threaded_bracket(tangle: Tangle) -> LaurentPoly:
    """Unnormalized bracket by sweeping a matching combination upward."""
    tangle.require_closed()
    state: dict[tuple[tuple[int, int], ...], LaurentPoly] = {(): LaurentPoly.one()}
    for layer in tangle.layers:
        i = layer.position - 1
        new_state: dict[tuple[tuple[int, int], ...], LaurentPoly] = {}

        def put(key, coeff):
            if key in new_state:
                new_state[key] = new_state[key] + coeff
            else:
                new_state[key] = coeff

        for key, coeff in state.items():
            if layer.kind == "id":
                put(key, coeff)
            elif layer.kind == "cup":
                put(_freeze(_cup_pairs(_thaw(key), i)), coeff)
            elif layer.kind == "cap":
                capped, loops = _cap_pairs(_thaw(key), i)
                put(_freeze(capped), coeff * LOOP_VALUE**loops)
            else:  # cross: superpose the two smoothings
                a_coeff, u_coeff = (A, A_INV) if layer.sign > 0 else (A_INV, A)
                put(key, coeff * a_coeff)
                capped, loops = _cap_pairs(_thaw(key), i)
                put(_freeze(_cup_pairs(capped, i)), coeff * u_coeff * LOOP_VALUE**loops)
        state = {k: v for k, v in new_state.items() if not v.is_zero()}
    return state.get((), LaurentPoly.zero())


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketValue:
    """Unnormalized and loop-normalized bracket of a closed diagram."""

    unnormalized: LaurentPoly
    normalized: LaurentPoly

    def render(self) -> str:
        return (
            f"unnormalized: {self.unnormalized.to_str()}\n"
            f"normalized:   {self.normalized.to_str()}"
        )


def evaluate_bracket(tangle: Tangle, check: bool = True) -> BracketValue:
    """Evaluate a closed diagram; both routes must agree exactly.

    The unnormalized value assigns the loop value to every loop (so the
    empty diagram gives 1 and a single circle gives -A^2 - A^-2); the
    normalized value divides one loop factor out.
    """
    threaded = threaded_bracket(tangle)
    if check:
        oracle = state_sum_bracket(tangle)
        if oracle != threaded:
            raise AssertionError(
                "evaluator mismatch: state sum "
                f"{oracle.to_str()} vs threading {threaded.to_str()}"
            )
    if not tangle.layers:
        return BracketValue(threaded, threaded)
    return BracketValue(threaded, threaded.divide_exact(LOOP_VALUE))


@dataclass(frozen=True)
class R2Report:
    n: int
    position: int
    identity_coeff: LaurentPoly
    cupcap_coeff: LaurentPoly
    passed: bool

    def render(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"cross({self.position},+)·cross({self.position},-) on {self.n} strands: "
            f"identity coefficient {self.identity_coeff.to_str()}, "
            f"cup-cap coefficient A^2 + A^-2 + δ = {self.cupcap_coeff.to_str()} "
            f"[{status}]"
        )


def verify_r2(n: int, i: int) -> R2Report:
    """Symbolic check that an opposite crossing pair is the identity.

    Expands the product of a positive and a negative crossing at
    position i on n strands with loops evaluated at -A^2 - A^-2. The
    cup-cap matching picks up A^2 + A^-2 + δ, which vanishes.
    """
    if not 1 <= i < n:
        raise ValueError(f"position {i} out of range on {n} strands")
    ident = Matching.identity(n)
    cupcap = Matching.generator(i, n)
    pos = TLElement(n, {ident: A, cupcap: A_INV})
    neg = TLElement(n, {ident: A_INV, cupcap: A})
    product = pos.mul(neg, loop_value=LOOP_VALUE)
    identity_coeff = product.terms.get(ident, LaurentPoly.zero())
    cupcap_coeff = product.terms.get(cupcap, LaurentPoly.zero())
    passed = product == TLElement.identity(n)
    return R2Report(n, i, identity_coeff, cupcap_coeff, passed)


# Named example diagrams. The two-bridge closures put a twist region
# between the two cups and close with caps at (1,2) and (3,4); loop
# tracing confirms the trefoil is a knot and the Hopf closure has two
# components.

UNKNOT = "cup 1 0 / cap 1 2"
TWO_UNKNOTS = "cup 1 0 / cap 1 2 / cup 1 0 / cap 1 2"
HOPF_LINK = "cup 1 0 / cup 3 2 / cross 2 4 + / cross 2 4 + / cap 1 4 / cap 1 2"
TREFOIL = (
    "cup 1 0 / cup 3 2 / cross 2 4 + / cross 2 4 + / cross 2 4 + / cap 1 4 / cap 1 2"
)


def random_diagram(rng, max_crossings: int = 10, max_strands: int = 8) -> Tangle:
    """A random closed diagram, for evaluator cross-checks."""
    layers: list[Layer] = []
    n = 0
    crossings = 0
    for _ in range(rng.randint(3, 14)):
        choices = []
        if n < max_strands:
            choices.append("cup")
        if n >= 2:
            choices.append("cap")
            if crossings < max_crossings:
                choices += ["cross", "cross"]
        kind = rng.choice(choices)
        if kind == "cup":
            layers.append(Layer("cup", rng.randint(1, n + 1), n))
            n += 2
        elif kind == "cap":
            layers.append(Layer("cap", rng.randint(1, n - 1), n))
            n -= 2
        else:
            layers.append(Layer("cross", rng.randint(1, n - 1), n, rng.choice((1, -1))))
            crossings += 1
    while n > 0:
        layers.append(Layer("cap", rng.randint(1, max(1, n - 1)), n))
        n -= 2
    return Tangle(tuple(layers))


def insert_opposite_pair(tangle: Tangle, at: int, i: int) -> Tangle:
    """Insert a positive/negative crossing pair at a cut between layers."""
    n = tangle.input_strands if at == 0 else tangle.layers[at - 1].output_strands
    if not 1 <= i < n:
        raise TangleError(f"position {i} invalid on {n} strands at cut {at}")
    pair = (Layer("cross", i, n, +1), Layer("cross", i, n, -1))
    return tangle.insert_layers(at, pair)


def insert_curl(tangle: Tangle, at: int, i: int, sign: int) -> Tangle:
    """Insert a curl on strand i at a cut between layers."""
    n = tangle.input_strands if at == 0 else tangle.layers[at - 1].output_strands
    if not 1 <= i <= n:
        raise TangleError(f"strand {i} invalid on {n} strands at cut {at}")
    curl = (
        Layer("cup", i, n),
        Layer("cross", i + 1, n + 2, sign),
        Layer("cap", i, n + 2),
    )
    return tangle.insert_layers(at, curl)


def component_count(tangle: Tangle) -> int:
    """Number of link components, tracing crossings as actual crossings."""
    tangle.require_closed()
    uf = _ArcUnion()
    strands: list[int] = []
    for layer in tangle.layers:
        i = layer.position - 1
        if layer.kind == "cup":
            a, b = uf.fresh(), uf.fresh()
            uf.join(a, b)
            strands[i:i] = [a, b]
        elif layer.kind == "cap":
            uf.join(strands[i], strands[i + 1])
            del strands[i : i + 2]
        elif layer.kind == "cross":
            strands[i], strands[i + 1] = strands[i + 1], strands[i]
    return uf.loops
