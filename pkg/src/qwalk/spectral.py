"""Adjacency and walk spectra per connected component, plus the convergence bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import BadEpsilon, NotConnectedComponent
from .graphs import ComponentMap, RegularGraph, components
from .operators import reduced_walk_matrix

GAP_TOL = 1e-9


@dataclass(frozen=True)
class SpectralReport:
    component: int
    n_u: int
    d: int
    lambdas: list[float]
    mus: list[float]
    gap: Optional[float] = None
    start: Optional[int] = None
    overlaps: Optional[list[float]] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _members(graph: RegularGraph, component: int, cmap: ComponentMap | None) -> list[int]:
    cmap = cmap or components(graph)
    if not 0 <= component < cmap.count:
        raise ValueError(f"no component {component}; graph has {cmap.count}")
    return cmap.members(component)


def adjacency_spectrum(graph: RegularGraph, component: int, cmap: ComponentMap | None = None) -> list[float]:
    """Eigenvalues of the component's adjacency matrix, descending."""
    members = _members(graph, component, cmap)
    a = graph.adjacency_matrix()[np.ix_(members, members)]
    return sorted(np.linalg.eigvalsh(a).tolist(), reverse=True)


def walk_matrix_spectrum(graph: RegularGraph, component: int, cmap: ComponentMap | None = None) -> list[float]:
    """Eigenvalues of the reduced walk matrix restricted to one component, descending."""
    members = _members(graph, component, cmap)
    m = reduced_walk_matrix(graph)[np.ix_(members, members)]
    return sorted(np.linalg.eigvalsh(m).tolist(), reverse=True)


def walk_spectrum(lambdas, d: int) -> list[float]:
    """Map adjacency eigenvalues to walk eigenvalues, (4 lam + (d-1)^2) / (d+1)^2."""
    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")
    return [(4.0 * lam + (d - 1) ** 2) / (d + 1) ** 2 for lam in lambdas]


def overlaps(graph: RegularGraph, start: int, cmap: ComponentMap | None = None) -> list[float]:
    """|<phi_j|start,start>|^2 over the walk eigenvectors of start's component, descending eigenvalue."""
    cmap = cmap or components(graph)
    members = cmap.members(cmap.labels[start])
    m = reduced_walk_matrix(graph)[np.ix_(members, members)]
    values, vectors = np.linalg.eigh(m)
    order = np.argsort(values)[::-1]
    row = vectors[members.index(start), order]
    return (row**2).tolist()


def spectral_report(graph: RegularGraph, component: int, start: int | None = None,
                    cmap: ComponentMap | None = None) -> SpectralReport:
    cmap = cmap or components(graph)
    lambdas = adjacency_spectrum(graph, component, cmap)
    ov = None
    if start is not None and cmap.labels[start] == component:
        ov = overlaps(graph, start, cmap)
    else:
        start = None
    return SpectralReport(
        component=component,
        n_u=len(lambdas),
        d=graph.d,
        lambdas=lambdas,
        mus=walk_spectrum(lambdas, graph.d),
        gap=lambdas[0] - lambdas[1] if len(lambdas) >= 2 else None,
        start=start,
        overlaps=ov,
    )


def spectral_reports(graph: RegularGraph, start: int | None = None) -> list[SpectralReport]:
    cmap = components(graph)
    return [spectral_report(graph, c, start, cmap) for c in range(cmap.count)]


def check_gap_bound(report: SpectralReport, d: int) -> tuple[bool, float]:
    """Check lambda_j <= d - 2/(d n_u^2) for j >= 2.

    Returns (holds, margin) where margin is the smallest slack over j >= 2.
    """
    if report.n_u < 2:
        raise NotConnectedComponent("gap bound needs a connected component with at least two vertices")
    if abs(report.lambdas[0] - d) > 1e-8:
        raise NotConnectedComponent(f"top eigenvalue {report.lambdas[0]} != d; not a connected {d}-regular component")
    bound = d - 2.0 / (d * report.n_u**2)
    margin = min(bound - lam for lam in report.lambdas[1:])
    return margin >= -GAP_TOL, margin


def distance_bound(d: int, n_u: int, l: int) -> float:
    """Upper bound (1 - 8/(d (d+1)^2 n_u^2))**l on the distance to uniform after l steps."""
    return (1.0 - 8.0 / (d * (d + 1) ** 2 * n_u**2)) ** l


def required_steps(d: int, n: int, epsilon: float) -> int:
    """Smallest integer k >= 1 with k >= d (d+1)^2 n^2 ln(1/epsilon) / 8."""
    if not 0 < epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    return max(1, math.ceil(d * (d + 1) ** 2 * n**2 * math.log(1.0 / epsilon) / 8.0))
