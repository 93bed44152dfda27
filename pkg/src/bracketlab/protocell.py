"""Stochastic substrate/catalyst bonding lattice.

Molecules sit on a bounded square lattice. Substrate molecules can
bond to 4-adjacent substrate neighbors (at most two bonds each, so
bonded substrate forms chains); catalysts never bond but raise the
bonding probability and damp bond decay within a Manhattan radius.
Unbonded molecules wander one lattice link at a time.

Runs are deterministic given the seed: every random draw comes from
the state's own generator in a fixed phase and cell order. A membrane
is a closed bond cycle enclosing a catalyst (or a designated site, for
catalyst-free controls).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

Coord = tuple[int, int]
Bond = tuple[Coord, Coord]

MOVE_OFFSETS = ((0, -1), (-1, 0), (1, 0), (0, 1))


@dataclass(frozen=True)
class ProtoParams:
    p_bond: float = 0.1
    p_decay: float = 0.05
    p_move: float = 0.5
    catalyst_radius: int = 3
    bond_boost: float = 5.0
    decay_damp: float = 0.2
    max_bonds: int = 2

    def __post_init__(self):
        for name in ("p_bond", "p_decay", "p_move"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.bond_boost < 1.0 or not 0.0 <= self.decay_damp <= 1.0:
            raise ValueError("bond_boost must be >= 1 and decay_damp in [0, 1]")


@dataclass
class ProtoState:
    width: int
    height: int
    substrate: set[Coord]
    catalysts: frozenset[Coord]
    bonds: set[Bond] = field(default_factory=set)
    rng: random.Random = field(default_factory=lambda: random.Random(0))

    def copy(self) -> ProtoState:
        rng = random.Random()
        rng.setstate(self.rng.getstate())
        return ProtoState(
            self.width,
            self.height,
            set(self.substrate),
            self.catalysts,
            set(self.bonds),
            rng,
        )

    def occupied(self) -> set[Coord]:
        return self.substrate | set(self.catalysts)

    def bond_counts(self) -> dict[Coord, int]:
        counts: dict[Coord, int] = {}
        for a, b in self.bonds:
            counts[a] = counts.get(a, 0) + 1
            counts[b] = counts.get(b, 0) + 1
        return counts

    def bonded_cells(self) -> set[Coord]:
        return {c for bond in self.bonds for c in bond}


def seeded_state(
    width: int,
    height: int,
    substrate_fraction: float,
    catalysts: int,
    seed: int,
) -> ProtoState:
    """Random soup: catalysts at the center area, substrate scattered."""
    rng = random.Random(seed)
    cat_sites = []
    cx, cy = width // 2, height // 2
    if catalysts >= 1:
        cat_sites.append((cx, cy))
    extra = [(cx + 2 * k, cy) for k in range(1, catalysts)]
    cat_sites.extend(extra)
    all_cells = [(x, y) for y in range(height) for x in range(width)]
    free = [c for c in all_cells if c not in set(cat_sites)]
    count = round(substrate_fraction * width * height)
    substrate = set(rng.sample(free, min(count, len(free))))
    return ProtoState(width, height, substrate, frozenset(cat_sites), set(), rng)


def _near_catalyst(cell: Coord, catalysts, radius: int) -> bool:
    x, y = cell
    return any(abs(x - cx) + abs(y - cy) <= radius for cx, cy in catalysts)


def proto_step(state: ProtoState, params: ProtoParams) -> ProtoState:
    """One round: moves, then bond formation, then bond decay."""
    out = state.copy()
    rng = out.rng

    # Phase 1: unbonded molecules attempt a move to an empty neighbor.
    bonded = out.bonded_cells()
    occupied = out.occupied()
    movers = sorted(occupied - bonded)
    for cell in movers:
        if rng.random() >= params.p_move:
            continue
        x, y = cell
        empty = [
            (x + dx, y + dy)
            for dx, dy in MOVE_OFFSETS
            if 0 <= x + dx < out.width
            and 0 <= y + dy < out.height
            and (x + dx, y + dy) not in occupied
        ]
        if not empty:
            continue
        target = empty[rng.randrange(len(empty))]
        occupied.remove(cell)
        occupied.add(target)
        if cell in out.substrate:
            out.substrate.remove(cell)
            out.substrate.add(target)
        else:
            cats = set(out.catalysts)
            cats.remove(cell)
            cats.add(target)
            out.catalysts = frozenset(cats)

    # Phase 2: adjacent substrate pairs may bond (chains only).
    counts = out.bond_counts()
    for cell in sorted(out.substrate):
        x, y = cell
        for dx, dy in ((1, 0), (0, 1)):
            other = (x + dx, y + dy)
            if other not in out.substrate:
                continue
            bond = (cell, other)
            if bond in out.bonds:
                continue
            if counts.get(cell, 0) >= params.max_bonds:
                continue
            if counts.get(other, 0) >= params.max_bonds:
                continue
            near = _near_catalyst(cell, out.catalysts, params.catalyst_radius) or _near_catalyst(
                other, out.catalysts, params.catalyst_radius
            )
            chance = min(1.0, params.p_bond * (params.bond_boost if near else 1.0))
            if rng.random() < chance:
                out.bonds.add(bond)
                counts[cell] = counts.get(cell, 0) + 1
                counts[other] = counts.get(other, 0) + 1

    # Phase 3: existing bonds may decay.
    for bond in sorted(out.bonds):
        a, b = bond
        near = _near_catalyst(a, out.catalysts, params.catalyst_radius) or _near_catalyst(
            b, out.catalysts, params.catalyst_radius
        )
        chance = params.p_decay * (params.decay_damp if near else 1.0)
        if rng.random() < chance:
            out.bonds.remove(bond)

    return out


def bond_cycles(state: ProtoState) -> list[list[Coord]]:
    """Closed chains in the bond graph, as vertex loops.

    Each substrate holds at most two bonds, so components are paths or
    simple cycles; a cycle is a component whose every vertex has two
    bonds.
    """
    adjacency: dict[Coord, list[Coord]] = {}
    for a, b in state.bonds:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    seen: set[Coord] = set()
    cycles = []
    for start in sorted(adjacency):
        if start in seen or len(adjacency[start]) != 2:
            continue
        loop = [start]
        seen.add(start)
        prev, cur = start, adjacency[start][0]
        closed = False
        while True:
            if len(adjacency[cur]) != 2:
                seen.update(loop)
                break
            loop.append(cur)
            seen.add(cur)
            nxt = [n for n in adjacency[cur] if n != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            if cur == start:
                closed = True
                break
        if closed:
            cycles.append(loop)
    return cycles


def _encloses(loop: list[Coord], point: Coord) -> bool:
    """Even-odd test with a horizontal ray through the cell center."""
    px, py = point
    crossings = 0
    n = len(loop)
    for i in range(n):
        (x1, y1), (x2, y2) = loop[i], loop[(i + 1) % n]
        if x1 == x2 and x1 > px and min(y1, y2) <= py < max(y1, y2):
            crossings += 1
    return crossings % 2 == 1


def count_membranes(state: ProtoState, around: tuple[Coord, ...] | None = None) -> int:
    """Bond cycles enclosing a catalyst (or the given reference sites)."""
    points = around if around is not None else tuple(state.catalysts)
    if not points:
        return 0
    return sum(
        1
        for loop in bond_cycles(state)
        if any(_encloses(loop, p) for p in points)
    )


@dataclass(frozen=True)
class RunStats:
    seed: int
    catalysts: int
    mean_membranes: float
    mean_cycles: float
    final_bonds: int


def run_experiment(
    seed: int,
    catalysts: int,
    steps: int = 2000,
    width: int = 20,
    height: int = 20,
    substrate_fraction: float = 0.4,
    params: ProtoParams = ProtoParams(),
    sample_every: int = 50,
) -> RunStats:
    """One seeded run, sampling membranes along the whole trajectory.

    Membranes are cycles enclosing a catalyst, so catalyst-free
    control runs score zero there; the overall cycle count is kept
    alongside for context. Enclosure events are transient (the
    catalyst wanders), so sampling covers the full run.
    """
    state = seeded_state(width, height, substrate_fraction, catalysts, seed)
    membrane_samples = []
    cycle_samples = []
    for step in range(1, steps + 1):
        state = proto_step(state, params)
        if step % sample_every == 0:
            cycles = bond_cycles(state)
            cycle_samples.append(len(cycles))
            membrane_samples.append(
                sum(
                    1
                    for loop in cycles
                    if any(_encloses(loop, c) for c in state.catalysts)
                )
            )
    mean = sum(membrane_samples) / len(membrane_samples) if membrane_samples else 0.0
    cycles_mean = sum(cycle_samples) / len(cycle_samples) if cycle_samples else 0.0
    return RunStats(seed, catalysts, mean, cycles_mean, len(state.bonds))


def compare_catalyst_effect(
    seeds: range, steps: int = 2000, **kwargs
) -> tuple[list[RunStats], list[RunStats]]:
    """Matched treatment (one catalyst) and control (none) runs."""
    treatment = [run_experiment(s, 1, steps, **kwargs) for s in seeds]
    control = [run_experiment(s, 0, steps, **kwargs) for s in seeds]
    return treatment, control
