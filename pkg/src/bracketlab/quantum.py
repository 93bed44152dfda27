"""Finite-dimensional bra/ket arithmetic.

Kets are complex column vectors; bras are their conjugate transposes.
The module verifies the projector law P^2 = <B|A> P, the completeness
sum over an orthonormal basis, the insertion of intermediate states
into an amplitude (staged like the strand-duplication derivation), and
the discrepancy vector that witnesses the impossibility of cloning a
superposition with one linear map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIMENSION = 64
DEFAULT_EPS = 1e-9


class DimensionError(ValueError):
    pass


def _as_ket(v) -> np.ndarray:
    a = np.asarray(v, dtype=complex).reshape(-1)
    if not 1 <= a.size <= MAX_DIMENSION:
        raise DimensionError(f"dimension {a.size} outside 1..{MAX_DIMENSION}")
    if not np.all(np.isfinite(a)):
        raise ValueError("ket entries must be finite")
    return a


def within(a, b, eps: float = DEFAULT_EPS) -> bool:
    """Relative comparison scaled by the larger operand norm (floor 1)."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    scale = max(np.linalg.norm(a), np.linalg.norm(b), 1.0)
    return bool(np.linalg.norm(a - b) <= eps * scale)


def inner(a, b) -> complex:
    """<a|b>: conjugate transpose of a times b."""
    a, b = _as_ket(a), _as_ket(b)
    if a.size != b.size:
        raise DimensionError(f"dimensions differ: {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def outer(a, b) -> np.ndarray:
    """|a><b|: the rank-one matrix a b*."""
    a, b = _as_ket(a), _as_ket(b)
    if a.size != b.size:
        raise DimensionError(f"dimensions differ: {a.size} vs {b.size}")
    return np.outer(a, b.conj())


def completeness(basis) -> np.ndarray:
    """Sum of |C_k><C_k| over the given vectors."""
    kets = [_as_ket(v) for v in basis]
    d = kets[0].size
    if any(k.size != d for k in kets) or len(kets) != d:
        raise DimensionError("completeness needs d vectors of dimension d")
    total = np.zeros((d, d), dtype=complex)
    for k in kets:
        total += np.outer(k, k.conj())
    return total


def is_orthonormal(basis, eps: float = DEFAULT_EPS) -> bool:
    return within(completeness(basis), np.eye(len(list(basis))), eps)


AMPLITUDE_STAGES = (
    "<B|A>",
    "<B| |A>",
    "<B| 1 |A>",
    "<B| Σk |Ck><Ck| |A>",
    "Σk <B|Ck><Ck|A>",
)


@dataclass(frozen=True)
class AmplitudeExpansion:
    direct: complex
    expanded: complex
    stages: tuple[str, ...] = AMPLITUDE_STAGES

    def agree(self, eps: float = DEFAULT_EPS) -> bool:
        return within(self.direct, self.expanded, eps)


def amplitude_expansion(b, a, basis, eps: float = DEFAULT_EPS) -> AmplitudeExpansion:
    """<B|A> computed directly and through a complete set of intermediates.

    The derivation stages mirror the strand-duplication trace: the
    amplitude opens, the identity drops in, the identity resolves into
    the sum over intermediate states, and the sum distributes.
    """
    kets = [_as_ket(v) for v in basis]
    ident = completeness(kets)
    if not within(ident, np.eye(kets[0].size), eps):
        raise ValueError("basis is not orthonormal: completeness sum deviates")
    direct = inner(b, a)
    expanded = sum(inner(b, c) * inner(c, a) for c in kets)
    return AmplitudeExpansion(direct, complex(expanded))


def cloning_discrepancy(alpha: complex, beta: complex, eps: float = DEFAULT_EPS):
    """Difference between the linear copy of a superposition and its square.

    T is linear with T|0> = |00> and T|1> = |11>. For the input
    α|0> + β|1> the output α|00> + β|11> differs from the tensor square
    (α|0> + β|1>)⊗(α|0> + β|1>) by

        Δ = (α - α², -αβ, -βα, β - β²)

    on the basis |00>, |01>, |10>, |11>. Δ vanishes exactly at
    (α, β) = (1, 0) or (0, 1): one amplitude must die.
    """
    alpha, beta = complex(alpha), complex(beta)
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > max(eps, 1e-12) * 10:
        raise ValueError(f"state not normalized: |α|² + |β|² = {norm}")
    linear_copy = np.array([alpha, 0, 0, beta], dtype=complex)
    state = np.array([alpha, beta], dtype=complex)
    tensor_square = np.kron(state, state)
    delta = linear_copy - tensor_square
    return delta, float(np.linalg.norm(delta))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormalization of a random complex matrix."""
    if not 1 <= d <= MAX_DIMENSION:
        raise DimensionError(f"dimension {d} outside 1..{MAX_DIMENSION}")
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    # Fix the phase of each column so the result is unique given m.
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    return q


def random_ket(d: int, rng: np.random.Generator, normalized: bool = False) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    if normalized:
        v = v / np.linalg.norm(v)
    return v


def measurement_probability(beta, v) -> float:
    """Probability of observing basis element beta from state v."""
    return float(abs(inner(beta, v)) ** 2 / inner(v, v).real)
