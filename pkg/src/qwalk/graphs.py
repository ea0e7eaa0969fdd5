"""
Regular undirected graphs: representation, text format, generators,
classical connectivity and the reduction to 3-regular graphs.

Instance file format
--------------------
ASCII, one record per line, lines beginning with ``#`` are comments::

    n d
    u v        (exactly n*d/2 edge lines, 0-based, each edge once)
    ...
    s t

The edge-list format accepted by :func:`parse_edge_list` (input of
:func:`regularize`) is the same except that the header is ``n m`` where
``m`` is the number of edge lines, and the graph need not be regular.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricEdge,
    DuplicateEdge,
    GenerationFailed,
    InfeasibleParameters,
    MalformedInput,
    NotRegular,
    SelfLoop,
    VertexOutOfRange,
)

MAX_RESTARTS = 1000

Edge = tuple[int, int]


def validate_adjacency(n: int, d: int, adjacency: Sequence[Sequence[int]]) -> None:
    """Raise if ``adjacency`` is not a simple undirected d-regular graph on n vertices."""
    if n < 1:
        raise MalformedInput(f"vertex count must be positive, got {n}")
    if d < 2:
        raise MalformedInput(f"degree must be at least 2, got {d}")
    if (n * d) % 2:
        raise NotRegular(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    if len(adjacency) != n:
        raise MalformedInput(f"expected {n} adjacency lists, got {len(adjacency)}")
    neighbor_sets = []
    for u, nbrs in enumerate(adjacency):
        seen = set()
        for v in nbrs:
            if not 0 <= v < n:
                raise VertexOutOfRange(f"neighbor {v} of vertex {u} outside [0, {n})")
            if v == u:
                raise SelfLoop(f"self-loop at vertex {u}")
            if v in seen:
                raise DuplicateEdge(f"edge {{{u},{v}}} listed twice")
            seen.add(v)
        if len(seen) != d:
            raise NotRegular(f"vertex {u} has degree {len(seen)}, expected {d}")
        neighbor_sets.append(seen)
    for u, nbrs in enumerate(neighbor_sets):
        for v in nbrs:
            if u not in neighbor_sets[v]:
                raise AsymmetricEdge(f"{v} is a neighbor of {u} but not vice versa")


@dataclass(frozen=True)
class RegularGraph:
    """Simple undirected d-regular graph stored as sorted adjacency lists.

    Construction validates every invariant, so an existing instance is
    always a valid graph.
    """

    n: int
    d: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        adjacency = tuple(tuple(sorted(int(v) for v in nbrs)) for nbrs in self.adjacency)
        validate_adjacency(self.n, self.d, adjacency)
        object.__setattr__(self, "adjacency", adjacency)

    @classmethod
    def from_edges(cls, n: int, d: int, edges: Iterable[Edge]) -> "RegularGraph":
        edges = list(edges)
        adjacency: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"edge {{{u},{v}}} listed twice")
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        if d >= 1 and len(edges) != n * d // 2:
            raise NotRegular(f"expected {n * d // 2} edges for n={n}, d={d}, got {len(edges)}")
        return cls(n, d, tuple(tuple(a) for a in adjacency))

    @property
    def m(self) -> int:
        return self.n * self.d // 2

    def neighbors(self, u: int) -> tuple[int, ...]:
        """S(u): the neighbors of u."""
        return self.adjacency[u]

    def closed_neighborhood(self, u: int) -> tuple[int, ...]:
        """B(u) = S(u) together with u itself, in ascending order."""
        return tuple(sorted(self.adjacency[u] + (u,)))

    def edges(self) -> list[Edge]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, nbrs in enumerate(self.adjacency):
            a[u, list(nbrs)] = 1.0
        return a


@dataclass(frozen=True)
class ProblemInstance:
    graph: RegularGraph
    s: int
    t: int

    def __post_init__(self):
        for name, x in (("s", self.s), ("t", self.t)):
            if not 0 <= x < self.graph.n:
                raise VertexOutOfRange(f"{name}={x} outside [0, {self.graph.n})")


@dataclass(frozen=True)
class ComponentMap:
    labels: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.sizes)

    def connected(self, s: int, t: int) -> bool:
        return self.labels[s] == self.labels[t]

    def members(self, label: int) -> list[int]:
        return [v for v, c in enumerate(self.labels) if c == label]

    def size_of(self, u: int) -> int:
        """n_u, the size of the component containing u."""
        return self.sizes[self.labels[u]]


# ---------------------------------------------------------------------------
# text formats

def _data_lines(text: bytes | str) -> list[tuple[int, list[int]]]:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedInput("input is not ASCII") from exc
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise MalformedInput(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((lineno, [int(f, 10) for f in fields]))
        except ValueError as exc:
            raise MalformedInput(f"line {lineno}: non-integer field in {raw!r}") from exc
    if len(rows) < 2:
        raise MalformedInput("need at least a header line and an 's t' line")
    return rows


def parse_instance(text: bytes | str) -> ProblemInstance:
    """Parse and validate an instance file (see module docstring)."""
    rows = _data_lines(text)
    (_, (n, d)), body, (_, (s, t)) = rows[0], rows[1:-1], rows[-1]
    if n < 1:
        raise MalformedInput(f"vertex count must be positive, got {n}")
    if d < 2:
        raise MalformedInput(f"degree must be at least 2, got {d}")
    if (n * d) % 2:
        raise NotRegular(f"n*d = {n * d} is odd")
    graph = RegularGraph.from_edges(n, d, [tuple(e) for _, e in body])
    return ProblemInstance(graph, s, t)


def format_instance(instance: ProblemInstance, comment: str | None = None) -> str:
    g = instance.graph
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"{g.n} {g.d}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    lines.append(f"{instance.s} {instance.t}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: bytes | str) -> tuple[int, list[Edge], int, int]:
    """Parse an arbitrary simple graph: header ``n m``, m edge lines, then ``s t``."""
    rows = _data_lines(text)
    (_, (n, m)), body, (_, (s, t)) = rows[0], rows[1:-1], rows[-1]
    if n < 1:
        raise MalformedInput(f"vertex count must be positive, got {n}")
    if len(body) != m:
        raise MalformedInput(f"header announces {m} edges, found {len(body)}")
    edges = [tuple(e) for _, e in body]
    _check_simple(n, edges)
    for name, x in (("s", s), ("t", t)):
        if not 0 <= x < n:
            raise VertexOutOfRange(f"{name}={x} outside [0, {n})")
    return n, edges, s, t


def _check_simple(n: int, edges: Iterable[Edge]) -> None:
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {{{u},{v}}} listed twice")
        seen.add(key)


# ---------------------------------------------------------------------------
# generators

def generate(kind: str, n: int, d: int | None = None, seed: int = 0) -> RegularGraph:
    """Build a cycle, complete graph or random regular graph.

    ``cycle`` forces d=2 and ``complete`` forces d=n-1; passing a different
    ``d`` for those kinds raises :class:`InfeasibleParameters`. ``random_regular``
    is deterministic in ``seed``.
    """
    if kind == "cycle":
        if n < 3 or d not in (None, 2):
            raise InfeasibleParameters(f"cycle needs n >= 3 and d = 2 (got n={n}, d={d})")
        return RegularGraph(n, 2, tuple(((u - 1) % n, (u + 1) % n) for u in range(n)))
    if kind == "complete":
        if n < 3 or d not in (None, n - 1):
            raise InfeasibleParameters(f"complete graph needs n >= 3 and d = n-1 (got n={n}, d={d})")
        return RegularGraph(n, n - 1, tuple(tuple(v for v in range(n) if v != u) for u in range(n)))
    if kind == "random_regular":
        if d is None:
            raise InfeasibleParameters("random_regular needs a degree")
        return random_regular(n, d, seed)
    raise InfeasibleParameters(f"unknown graph kind {kind!r}")


def random_regular(n: int, d: int, seed: int) -> RegularGraph:
    """Pairing-model random d-regular graph with full restarts on collisions."""
    if d < 2 or d >= n or (n * d) % 2:
        raise InfeasibleParameters(f"need 2 <= d < n and n*d even (got n={n}, d={d})")
    rng = np.random.default_rng(seed % 2**64)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(MAX_RESTARTS):
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        keys = lo * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return RegularGraph.from_edges(n, d, zip(lo.tolist(), hi.tolist()))
    raise GenerationFailed(f"no simple pairing after {MAX_RESTARTS} restarts (n={n}, d={d}, seed={seed})")


def random_connected_regular(n: int, d: int, seed: int, attempts: int = 100) -> RegularGraph:
    """First connected graph among ``random_regular(n, d, seed + i)``."""
    for i in range(attempts):
        g = random_regular(n, d, seed + i)
        if components(g).count == 1:
            return g
    raise GenerationFailed(f"no connected graph in {attempts} seeds (n={n}, d={d})")


def disjoint_union(first: RegularGraph, second: RegularGraph) -> RegularGraph:
    if first.d != second.d:
        raise InfeasibleParameters("degrees differ")
    shift = first.n
    adjacency = first.adjacency + tuple(tuple(v + shift for v in nbrs) for nbrs in second.adjacency)
    return RegularGraph(first.n + second.n, first.d, adjacency)


# ---------------------------------------------------------------------------
# connectivity

def components(graph: RegularGraph) -> ComponentMap:
    """Label connected components by breadth-first search in vertex order."""
    return _components(graph.n, graph.adjacency)


def _components(n: int, adjacency: Sequence[Sequence[int]]) -> ComponentMap:
    labels = [-1] * n
    sizes = []
    for root in range(n):
        if labels[root] >= 0:
            continue
        label = len(sizes)
        labels[root] = label
        queue = deque([root])
        size = 0
        while queue:
            u = queue.popleft()
            size += 1
            for v in adjacency[u]:
                if labels[v] < 0:
                    labels[v] = label
                    queue.append(v)
        sizes.append(size)
    return ComponentMap(tuple(labels), tuple(sizes))


def edge_list_components(n: int, edges: Iterable[Edge]) -> ComponentMap:
    """Components of an arbitrary simple graph given by an edge list."""
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return _components(n, adjacency)


# ---------------------------------------------------------------------------
# reduction to 3-regular graphs

def _pendant_gadget(first: int) -> tuple[list[Edge], int]:
    """K4 on first..first+3 with edge {first, first+1} subdivided by first+4.

    Returns the gadget's edges and its attachment vertex (degree 2 inside).
    """
    a, b, c, e, x = range(first, first + 5)
    edges = [(a, c), (a, e), (b, c), (b, e), (c, e), (a, x), (x, b)]
    return edges, x


def regularize(n: int, edges: Iterable[Edge], s: int, t: int) -> tuple[RegularGraph, int, int]:
    """Reduce s-t connectivity on a simple graph to the same question on a 3-regular graph.

    Vertices of degree k >= 4 become a k-cycle whose vertices each take one
    of the original edges. Vertices of degree below 3 get one pendant gadget
    (K4 with a subdivided edge) per missing unit of degree. Pendants are
    attached by a single bridge so they never join two original vertices.

    Returns the 3-regular graph and the images of s and t.
    """
    edges = [(int(u), int(v)) for u, v in edges]
    _check_simple(n, edges)
    if not (0 <= s < n and 0 <= t < n):
        raise VertexOutOfRange(f"s={s}, t={t} outside [0, {n})")

    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    new_edges: list[Edge] = []
    # slot[(vertex, edge index)] -> new vertex carrying that endpoint
    slot: dict[tuple[int, int], int] = {}
    image = [0] * n
    deficient: list[tuple[int, int]] = []
    nxt = 0
    for u in range(n):
        k = len(incident[u])
        image[u] = nxt
        if k >= 4:
            ring = list(range(nxt, nxt + k))
            new_edges.extend((ring[i], ring[(i + 1) % k]) for i in range(k))
            for w, e in zip(ring, incident[u]):
                slot[(u, e)] = w
            nxt += k
        else:
            for e in incident[u]:
                slot[(u, e)] = nxt
            if k < 3:
                deficient.append((nxt, 3 - k))
            nxt += 1

    for i, (u, v) in enumerate(edges):
        new_edges.append((slot[(u, i)], slot[(v, i)]))

    for w, missing in deficient:
        for _ in range(missing):
            gadget, attach = _pendant_gadget(nxt)
            new_edges.extend(gadget)
            new_edges.append((w, attach))
            nxt += 5

    return RegularGraph.from_edges(nxt, 3, new_edges), image[s], image[t]
