"""Sparse Game of Life engine with geometric period detection.

Rule B3/S23 on the Moore neighborhood: a dead cell with exactly three
live neighbors is born, a live cell with two or three survives. The
neighborhood choice is load-bearing: the glider needs it.

Geometric periodicity generalizes oscillators and spaceships: a
configuration X has period p under motion s when the p-th step contains
s(X) with a residue disjoint from it (empty residue for plain
oscillators and ships). The exhaustive seed search enumerates every
8-cell placement in a 6x4 box and keeps those whose 48th step contains
a moved copy of the seed under a non-identity rigid motion.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

Cells = frozenset  # of (x, y) int pairs

NEIGHBOR_OFFSETS = tuple(
    (dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)
)


def life_step(cells: Cells) -> Cells:
    """One synchronous step of B3/S23 on a sparse cell set."""
    counts: dict[tuple[int, int], int] = {}
    for x, y in cells:
        for dx, dy in NEIGHBOR_OFFSETS:
            key = (x + dx, y + dy)
            counts[key] = counts.get(key, 0) + 1
    return frozenset(
        cell
        for cell, count in counts.items()
        if count == 3 or (count == 2 and cell in cells)
    )


def advance(cells: Cells, steps: int) -> Cells:
    for _ in range(steps):
        cells = life_step(cells)
    return cells


def bounding_box(cells: Cells) -> tuple[int, int, int, int]:
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return min(xs), min(ys), max(xs), max(ys)


def normalize(cells: Cells) -> Cells:
    """Translate the lowest corner of the bounding box to the origin."""
    if not cells:
        return frozenset()
    x0, y0, _, _ = bounding_box(cells)
    return frozenset((x - x0, y - y0) for x, y in cells)


# ---------------------------------------------------------------------------
# Rigid motions: the eight square symmetries plus integer translations.

#: name -> matrix (a, b, c, d) acting as (x, y) -> (a x + b y, c x + d y)
SQUARE_SYMMETRIES: dict[str, tuple[int, int, int, int]] = {
    "identity": (1, 0, 0, 1),
    "rot90": (0, -1, 1, 0),
    "rot180": (-1, 0, 0, -1),
    "rot270": (0, 1, -1, 0),
    "flip_x": (-1, 0, 0, 1),
    "flip_y": (1, 0, 0, -1),
    "transpose": (0, 1, 1, 0),
    "anti_transpose": (0, -1, -1, 0),
}
_MATRIX_NAMES = {m: n for n, m in SQUARE_SYMMETRIES.items()}
ALL_MATRICES = tuple(SQUARE_SYMMETRIES.values())
TRANSLATION_ONLY = (SQUARE_SYMMETRIES["identity"],)


@dataclass(frozen=True)
class RigidMotion:
    matrix: tuple[int, int, int, int] = (1, 0, 0, 1)
    shift: tuple[int, int] = (0, 0)

    def apply_point(self, x: int, y: int) -> tuple[int, int]:
        a, b, c, d = self.matrix
        return a * x + b * y + self.shift[0], c * x + d * y + self.shift[1]

    def apply(self, cells: Cells) -> Cells:
        return frozenset(self.apply_point(x, y) for x, y in cells)

    def compose(self, other: RigidMotion) -> RigidMotion:
        """self after other: (self ∘ other)(p) = self(other(p))."""
        a, b, c, d = self.matrix
        e, f, g, h = other.matrix
        matrix = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        ox, oy = other.shift
        sx, sy = a * ox + b * oy + self.shift[0], c * ox + d * oy + self.shift[1]
        return RigidMotion(matrix, (sx, sy))

    def invert(self) -> RigidMotion:
        a, b, c, d = self.matrix
        det = a * d - b * c  # always ±1
        inv = (d * det, -b * det, -c * det, a * det)
        m = RigidMotion(inv)
        x, y = m.apply_point(*self.shift)
        return RigidMotion(inv, (-x, -y))

    @property
    def is_identity(self) -> bool:
        return self.matrix == (1, 0, 0, 1) and self.shift == (0, 0)

    def describe(self) -> str:
        name = _MATRIX_NAMES[self.matrix]
        if self.shift == (0, 0):
            return name
        return f"{name} + shift{self.shift}"


def transform(cells: Cells, matrix: tuple[int, int, int, int]) -> Cells:
    a, b, c, d = matrix
    return frozenset((a * x + b * y, c * x + d * y) for x, y in cells)


@dataclass(frozen=True)
class PeriodReport:
    period: int
    motion: RigidMotion
    residue: Cells
    exact: bool

    def describe(self) -> str:
        residue_text = "empty residue" if self.exact else f"{len(self.residue)}-cell residue"
        return f"period {self.period}, motion {self.motion.describe()}, {residue_text}"


def detect_geometric_period(
    cells: Cells,
    max_steps: int = 1000,
    allow_residue: bool = False,
    matrices: tuple = ALL_MATRICES,
) -> PeriodReport | None:
    """Least p <= max_steps with step^p(X) ⊇ s(X) for a rigid motion s.

    All supplied symmetry matrices are tried in order; translation
    candidates anchor the lexicographically first cell of the
    transformed seed on each live cell (with empty residue the bounding
    boxes must agree exactly, which pins the translation). Returns the
    first report found, or None.
    """
    if max_steps > 1000:
        raise ValueError("max_steps capped at 1000")
    if not cells:
        return PeriodReport(1, RigidMotion(), frozenset(), True)
    size = len(cells)
    current = cells
    variants = []
    for matrix in matrices:
        moved = transform(cells, matrix)
        anchor = min(moved)
        variants.append((matrix, moved, anchor))
    for period in range(1, max_steps + 1):
        current = life_step(current)
        if not current:
            return None
        if len(current) < size or (not allow_residue and len(current) != size):
            continue
        for matrix, moved, anchor in variants:
            if allow_residue:
                translations = [
                    (cx - anchor[0], cy - anchor[1]) for cx, cy in sorted(current)
                ]
            else:
                tx0, ty0, tx1, ty1 = bounding_box(current)
                mx0, my0, mx1, my1 = bounding_box(moved)
                if (tx1 - tx0, ty1 - ty0) != (mx1 - mx0, my1 - my0):
                    continue
                translations = [(tx0 - mx0, ty0 - my0)]
            for dx, dy in translations:
                shifted = frozenset((x + dx, y + dy) for x, y in moved)
                if shifted <= current:
                    residue = current - shifted
                    if residue and not allow_residue:
                        continue
                    return PeriodReport(
                        period, RigidMotion(matrix, (dx, dy)), residue, not residue
                    )
    return None


# ---------------------------------------------------------------------------
# RLE pattern files.


class RLEError(ValueError):
    pass


def load_rle(text: str) -> Cells:
    """Decode run-length-encoded pattern text (rule B3/S23 only)."""
    cells = set()
    x = y = 0
    run = ""
    body_started = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not body_started and stripped.startswith("x"):
            parts = [p.strip() for p in stripped.split(",")]
            for part in parts:
                key, _, value = part.partition("=")
                if key.strip() == "rule" and value.strip().upper() != "B3/S23":
                    raise RLEError(f"line {line_no}: unsupported rule {value.strip()!r}")
            body_started = True
            continue
        body_started = True
        for col, ch in enumerate(stripped, start=1):
            if ch.isdigit():
                run += ch
            elif ch in "bo":
                count = int(run) if run else 1
                if ch == "o":
                    cells.update((x + i, y) for i in range(count))
                x += count
                run = ""
            elif ch == "$":
                count = int(run) if run else 1
                y += count
                x = 0
                run = ""
            elif ch == "!":
                return frozenset(cells)
            else:
                raise RLEError(f"line {line_no}, column {col}: unexpected {ch!r}")
    if run:
        raise RLEError("pattern text ended inside a run count")
    return frozenset(cells)


def save_rle(cells: Cells) -> str:
    """Encode a cell set, translated to the origin."""
    cells = normalize(cells)
    if not cells:
        return "x = 0, y = 0, rule = B3/S23\n!\n"
    x0, y0, x1, y1 = bounding_box(cells)
    width, height = x1 - x0 + 1, y1 - y0 + 1
    rows = []
    for y in range(height):
        row = "".join("o" if (x, y) in cells else "b" for x in range(width))
        rows.append(row.rstrip("b"))
    body = "$".join(_compress_runs(row) for row in rows) + "!"
    wrapped = "\n".join(body[i : i + 70] for i in range(0, len(body), 70))
    return f"x = {width}, y = {height}, rule = B3/S23\n{wrapped}\n"


def _compress_runs(row: str) -> str:
    out = []
    for ch, group in itertools.groupby(row):
        n = len(list(group))
        out.append(f"{n}{ch}" if n > 1 else ch)
    return "".join(out)


# ---------------------------------------------------------------------------
# Reference patterns.

GLIDER: Cells = frozenset({(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)})

BLOCK: Cells = frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})

BLINKER: Cells = frozenset({(0, 0), (1, 0), (2, 0)})


def _glider_forms() -> frozenset:
    forms = set()
    phase = GLIDER
    for _ in range(4):
        for matrix in ALL_MATRICES:
            forms.add(normalize(transform(phase, matrix)))
        phase = life_step(phase)
    return frozenset(forms)


GLIDER_FORMS = _glider_forms()


def is_glider(cells: Cells) -> bool:
    return len(cells) == 5 and normalize(cells) in GLIDER_FORMS


def connected_components(cells: Cells) -> list[Cells]:
    """8-connected components, deterministically ordered."""
    remaining = set(cells)
    components = []
    while remaining:
        seed = min(remaining)
        stack = [seed]
        component = {seed}
        remaining.remove(seed)
        while stack:
            x, y = stack.pop()
            for dx, dy in NEIGHBOR_OFFSETS:
                q = (x + dx, y + dy)
                if q in remaining:
                    remaining.remove(q)
                    component.add(q)
                    stack.append(q)
        components.append(frozenset(component))
    return components


def find_copy(
    pattern: Cells, inside: Cells, matrices: tuple = ALL_MATRICES
) -> RigidMotion | None:
    """First rigid motion placing the pattern inside the cell set."""
    if not pattern or len(pattern) > len(inside):
        return None
    for matrix in matrices:
        moved = sorted(transform(pattern, matrix))
        ax, ay = moved[0]
        for cx, cy in sorted(inside):
            dx, dy = cx - ax, cy - ay
            if all((x + dx, y + dy) in inside for x, y in moved):
                return RigidMotion(matrix, (dx, dy))
    return None


def gosper_gun() -> Cells:
    """The shipped 36-cell period-30 gun pattern."""
    from importlib import resources

    text = resources.files("bracketlab").joinpath("data/gosper_gun.rle").read_text()
    return load_rle(text)


@dataclass(frozen=True)
class GunReport:
    period_report: PeriodReport
    residue_is_glider: bool
    gliders_after_120: int

    @property
    def passed(self) -> bool:
        return (
            self.period_report.period == 30
            and self.period_report.motion.is_identity
            and self.residue_is_glider
            and self.gliders_after_120 >= 4
        )


def verify_gun(gun: Cells) -> GunReport:
    """Re-verify the period-30 emission equation on a gun pattern."""
    report = detect_geometric_period(gun, max_steps=30, allow_residue=True)
    if report is None:
        raise ValueError("no geometric period found within 30 steps")
    residue_is_glider = is_glider(report.residue)
    after = advance(gun, 120)
    extra = after - gun
    gliders = sum(1 for comp in connected_components(extra) if is_glider(comp))
    return GunReport(report, residue_is_glider, gliders)


# ---------------------------------------------------------------------------
# Gun decomposition into the two shuttle halves.


@dataclass(frozen=True)
class SubCheck:
    name: str
    found: bool
    motion: str
    residue_size: int


@dataclass(frozen=True)
class DecompositionReport:
    split: int
    checks: tuple[SubCheck, ...]

    @property
    def all_found(self) -> bool:
        return all(c.found for c in self.checks)


def _end_blocks(gun: Cells) -> tuple[Cells, Cells]:
    components = connected_components(gun)
    by_x = sorted(components, key=lambda c: min(x for x, _ in c))
    left, right = by_x[0], by_x[-1]
    for blk in (left, right):
        if normalize(blk) != BLOCK:
            raise ValueError("gun ends are not 2x2 blocks")
    return left, right


def decompose_gun(gun: Cells, split: int) -> DecompositionReport:
    """Check the two-part production mechanism at one vertical cut.

    Removes the two end blocks, splits the remaining cells at the cut
    into a left part P and right part Q, and tests four containments:
    a mirror of P (with a 2x2 block) in P's 15th step, a mirror of Q in
    Q's 15th step, a copy of P in Q's 10th step, and a glider plus Q in
    the 15th step of the recombination of the block with the mirrored Q.
    """
    left_block, right_block = _end_blocks(gun)
    interior = gun - left_block - right_block
    p_part = frozenset(c for c in interior if c[0] < split)
    q_part = frozenset(c for c in interior if c[0] >= split)
    checks = []

    mirror_matrices = tuple(
        SQUARE_SYMMETRIES[n] for n in ("flip_x", "flip_y", "transpose", "anti_transpose")
    )

    def containment_check(name: str, pattern: Cells, inside: Cells, matrices) -> tuple[SubCheck, RigidMotion | None]:
        motion = find_copy(pattern, inside, matrices) if pattern else None
        if motion is None:
            return SubCheck(name, False, "none", len(inside)), None
        residue = inside - motion.apply(pattern)
        return SubCheck(name, True, motion.describe(), len(residue)), motion

    p15 = advance(p_part, 15)
    check1, motion1 = containment_check("L15(P) ⊇ P*", p_part, p15, mirror_matrices)
    block_cells: Cells = frozenset()
    if motion1 is not None:
        residue = p15 - motion1.apply(p_part)
        block_motion = find_copy(BLOCK, residue, (SQUARE_SYMMETRIES["identity"],))
        if block_motion is not None:
            block_cells = block_motion.apply(BLOCK)
        check1 = SubCheck(
            "L15(P) ⊇ P* + block",
            check1.found and block_motion is not None,
            check1.motion,
            check1.residue_size,
        )
    checks.append(check1)

    q15 = advance(q_part, 15)
    check2, motion2 = containment_check("L15(Q) ⊇ Q*", q_part, q15, mirror_matrices)
    checks.append(check2)

    q10 = advance(q_part, 10)
    check3, _ = containment_check("L10(Q) ⊇ copy of P", p_part, q10, ALL_MATRICES)
    checks.append(check3)

    if motion2 is not None and block_cells:
        recombined = block_cells | motion2.apply(q_part)
        r15 = advance(recombined, 15)
        check4, motion4 = containment_check("L15(B + Q*) ⊇ Q", q_part, r15, ALL_MATRICES)
        if motion4 is not None:
            residue = r15 - motion4.apply(q_part)
            has_glider = any(is_glider(c) for c in connected_components(residue))
            check4 = SubCheck(
                "L15(B + Q*) ⊇ GLIDER + Q",
                check4.found and has_glider,
                check4.motion,
                check4.residue_size,
            )
        checks.append(check4)
    else:
        checks.append(SubCheck("L15(B + Q*) ⊇ GLIDER + Q", False, "none", 0))

    return DecompositionReport(split, tuple(checks))


def scan_gun_decomposition(gun: Cells) -> list[DecompositionReport]:
    """Decomposition reports for every interior cut position."""
    left_block, right_block = _end_blocks(gun)
    interior = gun - left_block - right_block
    x0, _, x1, _ = bounding_box(interior)
    return [decompose_gun(gun, split) for split in range(x0 + 1, x1 + 1)]


# ---------------------------------------------------------------------------
# Exhaustive search for period-48 seeds.

SEARCH_STEPS = 48
LIGHT_CONE_MARGIN = 49
FAST_MARGIN = 20
COMBINATION_BUDGET = 10**7


def _step_batch(grid: np.ndarray) -> np.ndarray:
    counts = np.zeros_like(grid)
    counts[:, 1:, :] += grid[:, :-1, :]
    counts[:, :-1, :] += grid[:, 1:, :]
    counts[:, :, 1:] += grid[:, :, :-1]
    counts[:, :, :-1] += grid[:, :, 1:]
    counts[:, 1:, 1:] += grid[:, :-1, :-1]
    counts[:, 1:, :-1] += grid[:, :-1, 1:]
    counts[:, :-1, 1:] += grid[:, 1:, :-1]
    counts[:, :-1, :-1] += grid[:, 1:, 1:]
    return ((counts == 3) | ((grid == 1) & (counts == 2))).astype(np.uint8)


def _evolve_batch(
    combos: list[tuple[int, ...]],
    width: int,
    height: int,
    margin: int,
    live_count: int,
    detect_escape: bool,
) -> tuple[dict[int, frozenset], list[int]]:
    """Run SEARCH_STEPS on a batch; returns final sets and escapers.

    Final cell sets are reported in seed coordinates and only for
    configurations whose final population can still contain a moved
    copy of the seed.
    """
    if not combos:
        return {}, []
    grid_w, grid_h = width + 2 * margin, height + 2 * margin
    batch = len(combos)
    grid = np.zeros((batch, grid_h, grid_w), dtype=np.uint8)
    idx = np.asarray(combos)
    ys = idx // width + margin
    xs = idx % width + margin
    grid[np.arange(batch)[:, None], ys, xs] = 1

    ring = np.zeros((grid_h, grid_w), dtype=bool)
    ring[:2, :] = ring[-2:, :] = True
    ring[:, :2] = ring[:, -2:] = True

    index_of = np.arange(batch)
    escaped: list[int] = []
    for step in range(SEARCH_STEPS):
        grid = _step_batch(grid)
        if detect_escape:
            touching = grid[:, ring].any(axis=1)
            if touching.any():
                escaped.extend(int(i) for i in index_of[touching])
                keep = ~touching
                grid = grid[keep]
                index_of = index_of[keep]
        if step % 8 == 7 and len(index_of):
            alive = grid.any(axis=(1, 2))
            if not alive.all():
                grid = grid[alive]
                index_of = index_of[alive]
        if not len(index_of):
            break

    finals: dict[int, frozenset] = {}
    if len(index_of):
        populations = grid.sum(axis=(1, 2))
        worth = populations >= live_count
        coords = np.argwhere(grid[worth])
        kept = index_of[worth]
        per_config: dict[int, set] = {int(i): set() for i in kept}
        for b, r, c in coords:
            per_config[int(kept[b])].add((int(c) - margin, int(r) - margin))
        finals = {i: frozenset(cells) for i, cells in per_config.items()}
    return finals, escaped


def _combo_cells(combo: tuple[int, ...], width: int) -> Cells:
    return frozenset((i % width, i // width) for i in combo)


def period_equation_check(seed: Cells, steps: int = SEARCH_STEPS) -> tuple[RigidMotion, Cells] | None:
    """Test step^p(X) ⊇ s(X) ⊎ residue for a rigid motion that moves X.

    Requiring the moved copy to differ from X as a cell set excludes
    still lifes and oscillators, whose own symmetries satisfy the
    containment vacuously; a least-period search is not usable here
    because dense transient states can contain spurious embeddings of
    an 8-cell seed at unrelated early steps.
    """
    final = advance(seed, steps)
    return _moved_copy_inside(seed, final)


def _moved_copy_inside(seed: Cells, inside: Cells) -> tuple[RigidMotion, Cells] | None:
    if not seed or len(inside) < len(seed):
        return None
    for matrix in ALL_MATRICES:
        moved = sorted(transform(seed, matrix))
        ax, ay = moved[0]
        for cx, cy in sorted(inside):
            dx, dy = cx - ax, cy - ay
            shifted = frozenset((x + dx, y + dy) for x, y in moved)
            if shifted == seed:
                continue
            if shifted <= inside:
                return RigidMotion(matrix, (dx, dy)), inside - shifted
    return None


def _canonical_form(cells: Cells) -> tuple:
    return min(
        tuple(sorted(normalize(transform(cells, m)))) for m in ALL_MATRICES
    )


def _search_range(
    start: int,
    stop: int,
    width: int,
    height: int,
    live_count: int,
    batch_size: int = 4096,
) -> tuple[int, list[tuple]]:
    """Search combinations with rank in [start, stop)."""
    combos = itertools.islice(
        itertools.combinations(range(width * height), live_count), start, stop
    )
    enumerated = 0
    matches: list[tuple] = []
    pending: list[tuple[int, ...]] = []

    def flush(batch: list[tuple[int, ...]]):
        finals, escaped = _evolve_batch(
            batch, width, height, FAST_MARGIN, live_count, detect_escape=True
        )
        if escaped:
            wide, more_escaped = _evolve_batch(
                [batch[i] for i in escaped],
                width,
                height,
                LIGHT_CONE_MARGIN,
                live_count,
                detect_escape=False,
            )
            assert not more_escaped
            finals.update({escaped[i]: cells for i, cells in wide.items()})
        for i, final_cells in finals.items():
            seed = _combo_cells(batch[i], width)
            # Cheap necessary condition first: the final state must
            # contain a moved copy of the seed at all.
            if _moved_copy_inside(seed, final_cells) is None:
                continue
            report = detect_geometric_period(
                seed, max_steps=SEARCH_STEPS, allow_residue=True
            )
            if (
                report is not None
                and report.period == SEARCH_STEPS
                and not report.motion.is_identity
            ):
                matches.append(tuple(sorted(seed)))

    for combo in combos:
        enumerated += 1
        pending.append(combo)
        if len(pending) >= batch_size:
            flush(pending)
            pending = []
    if pending:
        flush(pending)
    return enumerated, matches


@dataclass(frozen=True)
class SearchResult:
    candidates: int
    seeds: tuple[Cells, ...]


def search_period_48(
    width: int = 6, height: int = 4, live_count: int = 8, workers: int = 1
) -> SearchResult:
    """Exhaustive scan of all seed placements for period-48 motion.

    Every choose(width*height, live_count) placement is evolved 48
    steps (inside a region the light cone cannot leave) and kept when
    its least geometric period is exactly 48 under a non-identity
    rigid motion with disjoint residue. Results are deduplicated up to
    the square symmetries of the seed and sorted, so the output does
    not depend on the worker count.
    """
    total = math.comb(width * height, live_count)
    if total > COMBINATION_BUDGET:
        raise ValueError(f"{total} combinations exceed the search budget")
    if workers <= 1:
        enumerated, matches = _search_range(0, total, width, height, live_count)
    else:
        bounds = [total * k // workers for k in range(workers + 1)]
        enumerated = 0
        matches = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _search_range, bounds[k], bounds[k + 1], width, height, live_count
                )
                for k in range(workers)
            ]
            for future in futures:
                count, found = future.result()
                enumerated += count
                matches.extend(found)

    unique: dict[tuple, Cells] = {}
    for cells_tuple in matches:
        cells = frozenset(cells_tuple)
        unique.setdefault(_canonical_form(cells), cells)
    seeds = tuple(
        frozenset(form) for form in sorted(tuple(sorted(c)) for c in unique.values())
    )
    return SearchResult(enumerated, seeds)
