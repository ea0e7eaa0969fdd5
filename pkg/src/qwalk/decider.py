"""
Connectivity decision by the quantum walk, convergence curves, and the
classical random walk used as a baseline.

The decider does not sample: it reports the exact acceptance probability
|<t,t| Q^k |s,s>|^2 of the walk machine and derives the verdict from it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .graphs import ProblemInstance, RegularGraph, components
from .operators import iterate_walk, reduced_walk_matrix, walk_power
from .spectral import distance_bound, required_steps

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class DeciderReport:
    n: int
    d: int
    s: int
    t: int
    k: int
    acceptance_probability: float
    threshold: float
    verdict: str
    oracle_connected: bool
    distance_to_uniform: float
    sampled_outcome: Optional[str] = None
    seed: Optional[int] = None

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def to_dict(self) -> dict:
        return asdict(self)


def default_steps(d: int, n: int) -> int:
    return required_steps(d, n, 1.0 / (2 * n))


def _distance(x: np.ndarray, members: list[int]) -> float:
    target = np.zeros_like(x)
    target[members] = 1.0 / len(members)
    return float(np.linalg.norm(x - target))


def decide(instance: ProblemInstance, k: int | None = None, sample: bool = False, seed: int = 0) -> DeciderReport:
    """Run Q for k steps from |s,s> and read off the amplitude at |t,t>.

    ``k`` defaults to ceil(d (d+1)^2 n^2 ln(2n) / 8). With ``sample`` set, an
    accept/reject outcome is also drawn with the computed probability.
    """
    g, s, t = instance.graph, instance.s, instance.t
    if k is None:
        k = default_steps(g.d, g.n)
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    cmap = components(g)
    x = walk_power(g, s, k).amplitudes
    prob = float(x[t] ** 2)
    sampled = None
    if sample:
        rng = np.random.default_rng(seed % 2**64)
        sampled = "accept" if rng.random() < prob else "reject"
    return DeciderReport(
        n=g.n,
        d=g.d,
        s=s,
        t=t,
        k=k,
        acceptance_probability=prob,
        threshold=1.0 / (4 * g.n**2),
        verdict="accept" if prob > ZERO_TOL else "reject",
        oracle_connected=cmap.connected(s, t),
        distance_to_uniform=_distance(x, cmap.members(cmap.labels[s])),
        sampled_outcome=sampled,
        seed=seed if sample else None,
    )


def convergence_distance(graph: RegularGraph, u: int, l: int) -> float:
    """Euclidean distance between Q^l |u,u> and the uniform diagonal state on u's component."""
    cmap = components(graph)
    return _distance(walk_power(graph, u, l).amplitudes, cmap.members(cmap.labels[u]))


def transition_matrix(graph: RegularGraph) -> np.ndarray:
    """Simple random walk: probability 1/d along each edge."""
    return graph.adjacency_matrix() / graph.d


def classical_distribution(graph: RegularGraph, u: int, l: int) -> np.ndarray:
    """Distribution of the simple random walk started at u after l steps."""
    if l < 0:
        raise ValueError(f"step count must be nonnegative, got {l}")
    p = np.zeros(graph.n)
    p[u] = 1.0
    w = transition_matrix(graph)
    for _ in range(l):
        p = w @ p
    return p


def convergence_curve(graph: RegularGraph, u: int, steps: int) -> list[tuple[int, float, float, float]]:
    """Rows (l, quantum distance, bound, classical total variation) for l = 0..steps.

    The classical column is the total-variation distance of the simple
    random walk from the uniform distribution on u's component.
    """
    cmap = components(graph)
    members = cmap.members(cmap.labels[u])
    n_u = len(members)
    uniform = np.zeros(graph.n)
    uniform[members] = 1.0 / n_u
    w = transition_matrix(graph)
    quantum = iterate_walk(reduced_walk_matrix(graph), u)
    p = np.zeros(graph.n)
    p[u] = 1.0
    rows = []
    for l in range(steps + 1):
        x = next(quantum)
        rows.append((
            l,
            float(np.linalg.norm(x - uniform)),
            distance_bound(graph.d, n_u, l),
            0.5 * float(np.abs(p - uniform).sum()),
        ))
        p = w @ p
    return rows


def one_sided_floor(n: int, n_u: int) -> float:
    """(1/n_u - 1/(2n))^2, the guaranteed acceptance probability at the default step count."""
    return (1.0 / n_u - 1.0 / (2 * n)) ** 2
