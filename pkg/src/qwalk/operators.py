"""
Walk operators on the space of ordered vertex pairs.

States over V x V are stored as real vectors of length n**2 with the
amplitude of |u, v> at index ``u * n + v``. The composite walk
``Q = P F X F P`` leaves the diagonal subspace {|v, v>} invariant and
kills everything else, so the production path works with the n x n
matrix ``reduced_walk_matrix`` instead of the full space; the full-space
operators are kept for cross-checking and are capped at 256 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BadLength, DimensionMismatch
from .graphs import RegularGraph

MAX_PAIR_VERTICES = 256


@dataclass(frozen=True)
class PairState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n > MAX_PAIR_VERTICES:
            raise DimensionMismatch(f"pair space limited to n <= {MAX_PAIR_VERTICES}, got {self.n}")
        amps = np.array(self.amplitudes, dtype=np.float64).reshape(-1)
        if amps.size != self.n * self.n:
            raise DimensionMismatch(f"expected {self.n * self.n} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitude")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, u: int, v: int) -> "PairState":
        amps = np.zeros(n * n)
        amps[u * n + v] = 1.0
        return cls(n, amps)

    def __getitem__(self, uv: tuple[int, int]) -> float:
        u, v = uv
        return float(self.amplitudes[u * self.n + v])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def matrix(self) -> np.ndarray:
        """Amplitudes as an n x n array, row u, column v."""
        return self.amplitudes.reshape(self.n, self.n)

    def diagonal(self) -> "DiagonalState":
        return DiagonalState(self.n, np.diag(self.matrix()).copy())


@dataclass(frozen=True)
class DiagonalState:
    """Amplitudes on the diagonal pairs |v, v> only."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.float64).reshape(-1)
        if amps.size != self.n:
            raise DimensionMismatch(f"expected {self.n} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, u: int) -> "DiagonalState":
        amps = np.zeros(n)
        amps[u] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int, vertices) -> "DiagonalState":
        """(1/n_u) times the sum of |v, v> over ``vertices``."""
        vertices = list(vertices)
        amps = np.zeros(n)
        amps[vertices] = 1.0 / len(vertices)
        return cls(n, amps)

    def embed(self) -> PairState:
        return PairState(self.n, np.diag(self.amplitudes).reshape(-1))


def _diffuse(blocks: np.ndarray) -> np.ndarray:
    # reflection I - (2/m) J along the last axis, m = block length
    m = blocks.shape[-1]
    return blocks - (2.0 / m) * blocks.sum(axis=-1, keepdims=True)


def apply_D(vec) -> np.ndarray:
    """Grover-style diffusion on a (d+1)-vector: ``vec - 2/(d+1) * sum(vec)``."""
    vec = np.asarray(vec, dtype=np.float64)
    if vec.ndim != 1 or vec.size < 2:
        raise BadLength(f"diffusion needs a vector of length >= 2, got shape {vec.shape}")
    return _diffuse(vec)


def _closed_neighborhood_index(graph: RegularGraph) -> np.ndarray:
    n = graph.n
    rows = [np.asarray(graph.closed_neighborhood(u)) + u * n for u in range(n)]
    return np.stack(rows)


def _check(graph: RegularGraph, state: PairState) -> None:
    if state.n != graph.n:
        raise DimensionMismatch(f"state over {state.n} vertices, graph has {graph.n}")


def apply_F(graph: RegularGraph, state: PairState) -> PairState:
    """Apply D to the B(u) block of every row u; amplitudes with v outside B(u) are untouched."""
    _check(graph, state)
    idx = _closed_neighborhood_index(graph)
    amps = state.amplitudes.copy()
    amps[idx] = _diffuse(amps[idx])
    return PairState(state.n, amps)


def apply_X(state: PairState) -> PairState:
    return PairState(state.n, state.matrix().T.reshape(-1))


def apply_P(state: PairState) -> PairState:
    return PairState(state.n, np.diag(np.diag(state.matrix())).reshape(-1))


def apply_Q(graph: RegularGraph, state: PairState) -> PairState:
    """Q = P F X F P, applied right to left."""
    _check(graph, state)
    return apply_P(apply_F(graph, apply_X(apply_F(graph, apply_P(state)))))


def reduced_walk_matrix(graph: RegularGraph) -> np.ndarray:
    """Action of Q on the diagonal subspace.

    ``M = ((d-1)/(d+1))**2 I + 4/(d+1)**2 A``. Symmetric, nonnegative and
    doubly stochastic since ``(d-1)**2 + 4d = (d+1)**2``.
    """
    d = graph.d
    return ((d - 1) / (d + 1)) ** 2 * np.eye(graph.n) + (4.0 / (d + 1) ** 2) * graph.adjacency_matrix()


def iterate_walk(matrix: np.ndarray, start: int) -> Iterator[np.ndarray]:
    """Yield M**l e_start for l = 0, 1, 2, ... by repeated matrix-vector products."""
    x = np.zeros(matrix.shape[0])
    x[start] = 1.0
    while True:
        yield x
        x = matrix @ x


def walk_power(graph: RegularGraph, start: int, k: int, matrix: np.ndarray | None = None) -> DiagonalState:
    """Diagonal amplitudes of Q**k |start, start>."""
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    if matrix is None:
        matrix = reduced_walk_matrix(graph)
    x = np.zeros(graph.n)
    x[start] = 1.0
    for _ in range(k):
        x = matrix @ x
    return DiagonalState(graph.n, x)


def walk_power_columns(graph: RegularGraph, k: int, matrix: np.ndarray | None = None) -> np.ndarray:
    """M**k as an array whose column u is the diagonal of Q**k |u,u>, for all starts at once."""
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    if matrix is None:
        matrix = reduced_walk_matrix(graph)
    x = np.eye(graph.n)
    for _ in range(k):
        x = matrix @ x
    return x


def full_walk_power(graph: RegularGraph, start: int, k: int) -> PairState:
    """Q**k |start, start> computed in the full pair space."""
    state = PairState.basis(graph.n, start, start)
    for _ in range(k):
        state = apply_Q(graph, state)
    return state
