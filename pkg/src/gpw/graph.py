"""Simple undirected graphs, the combinatorial Laplacian and subset geometry.

Vertices are dense integer ids ``0..N-1``. Signals are plain complex numpy
arrays of length ``N``; real input is promoted to complex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EmptySubsetError,
    GraphMismatchError,
    GPWError,
    LevelBeyondExhaustionError,
    SelfLoopError,
)


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected unweighted graph.

    Build instances with :func:`build_graph`; the constructor does not
    validate its arguments.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]
    degree: np.ndarray
    connected: bool = True
    _heads: np.ndarray = field(repr=False, default=None)
    _tails: np.ndarray = field(repr=False, default=None)

    @property
    def max_degree(self) -> int:
        return int(self.degree.max()) if self.vertex_count else 0

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def __len__(self) -> int:
        return self.vertex_count

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.vertex_count, self.vertex_count))
        A[self._heads, self._tails] = 1.0
        return A

    def laplacian_matrix(self) -> np.ndarray:
        """Dense ``D - A``. Only the spectral module should need this."""
        return np.diag(self.degree.astype(float)) - self.adjacency_matrix()


def build_graph(
    edge_list: Iterable[Sequence[int]],
    vertex_count: Optional[int] = None,
    allow_disconnected: bool = False,
) -> Graph:
    """Validate an edge list and return a :class:`Graph`.

    Parameters
    ----------
    edge_list : iterable of pairs
        Undirected edges on nonnegative integer vertex ids.
    vertex_count : int, optional
        Number of vertices. Defaults to ``max id + 1``; isolated vertices
        therefore make the graph disconnected.
    allow_disconnected : bool
        Skip the connectivity requirement (utility use only).

    Raises
    ------
    SelfLoopError, DuplicateEdgeError, DisconnectedError
    """
    pairs = [tuple(int(x) for x in e) for e in edge_list]
    if not pairs:
        raise GPWError("edge list is empty")
    seen: set[tuple[int, int]] = set()
    for e in pairs:
        if len(e) != 2:
            raise GPWError(f"edge {e} does not have exactly two endpoints")
        u, v = e
        if u < 0 or v < 0:
            raise GPWError(f"edge {e} has a negative vertex id")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)

    top = max(max(e) for e in seen) + 1
    n = top if vertex_count is None else int(vertex_count)
    if n < top:
        raise GPWError(f"vertex id {top - 1} out of range for {n} vertices")

    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in seen:
        adj[u].append(v)
        adj[v].append(u)
    neighbors = tuple(tuple(sorted(a)) for a in adj)
    degree = np.array([len(a) for a in neighbors], dtype=np.int64)
    degree.setflags(write=False)

    edges = tuple(sorted(seen))
    heads = np.array([u for u, v in edges] + [v for u, v in edges], dtype=np.int64)
    tails = np.array([v for u, v in edges] + [u for u, v in edges], dtype=np.int64)

    component = _component_of(neighbors, 0)
    connected = len(component) == n
    if not connected and not allow_disconnected:
        missing = min(set(range(n)) - component)
        raise DisconnectedError(
            f"graph is disconnected: vertex {missing} is not reachable from vertex 0"
        )
    return Graph(n, edges, neighbors, degree, connected, heads, tails)


def _component_of(neighbors: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# ---------------------------------------------------------------------------
# standard families
# ---------------------------------------------------------------------------

def path_graph(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GPWError("a simple cycle needs at least 3 vertices")
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def star_graph(n_leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..n_leaves``."""
    return build_graph([(0, j) for j in range(1, n_leaves + 1)])


def hub_cycle_graph(n: int) -> Graph:
    """Cycle on ``1..n`` plus a hub vertex 0 joined to every cycle vertex."""
    ring = [(1 + i, 1 + (i + 1) % n) for i in range(n)]
    return build_graph(ring + [(0, j) for j in range(1, n + 1)])


def random_connected_graph(n: int, extra_edge_prob: float, rng: np.random.Generator) -> Graph:
    """Random spanning tree on ``n`` vertices plus independent extra edges."""
    if n < 2:
        raise GPWError("need at least 2 vertices")
    order = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(0, i)])
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return build_graph(sorted(edges), vertex_count=n)


# ---------------------------------------------------------------------------
# signals and the Laplacian
# ---------------------------------------------------------------------------

def as_signal(g: Graph, f) -> np.ndarray:
    """Return ``f`` as a complex vector on ``g``; raise on length mismatch."""
    arr = np.asarray(f)
    if arr.ndim != 1 or arr.shape[0] != g.vertex_count:
        raise GraphMismatchError(
            f"signal of shape {arr.shape} is not defined on a graph with {g.vertex_count} vertices"
        )
    return arr.astype(complex)


def inner(f: np.ndarray, g: np.ndarray) -> complex:
    """``<f, g> = sum f(v) conj(g(v))``."""
    return complex(np.vdot(g, f))


def norm(f: np.ndarray) -> float:
    return float(np.linalg.norm(f))


def laplacian_apply(g: Graph, f) -> np.ndarray:
    """Matrix-free ``Lf(v) = sum_{u~v} (f(v) - f(u))``."""
    f = as_signal(g, f)
    n = g.vertex_count
    src = f[g._tails]
    af = np.bincount(g._heads, weights=src.real, minlength=n) + 1j * np.bincount(
        g._heads, weights=src.imag, minlength=n
    )
    return g.degree * f - af


def smoothness_norm(g: Graph, f) -> float:
    """``||L^{1/2} f|| = <Lf, f>^{1/2}`` without a spectral basis."""
    f = as_signal(g, f)
    q = inner(laplacian_apply(g, f), f).real
    return float(np.sqrt(max(q, 0.0)))


def laplacian_power_norm(g: Graph, f, r: int) -> float:
    """``||L^{r/2} f||`` for a positive integer ``r``, matrix-free."""
    f = as_signal(g, f)
    if r < 1:
        raise GPWError("r must be a positive integer")
    for _ in range(r // 2):
        f = laplacian_apply(g, f)
    return smoothness_norm(g, f) if r % 2 else norm(f)


def gradient_norm(g: Graph, f, W: Optional[Iterable[int]] = None, ordered: bool = False) -> float:
    """Edge-difference norm ``(sum_{u~v} |f(u) - f(v)|^2)^{1/2}``.

    By default each unordered edge counts once, so ``||grad f||^2 = <Lf, f>``.
    With ``ordered=True`` both orientations count and
    ``||grad f||^2 = 2 <Lf, f>``. With ``W`` only edges having both
    endpoints in ``W`` contribute.
    """
    f = as_signal(g, f)
    if not g.edges:
        return 0.0
    e = np.asarray(g.edges)
    if W is not None:
        mask = np.zeros(g.vertex_count, dtype=bool)
        mask[list(W)] = True
        e = e[mask[e[:, 0]] & mask[e[:, 1]]]
    diff = f[e[:, 0]] - f[e[:, 1]]
    total = np.sum(np.abs(diff) ** 2)
    return float(np.sqrt(2.0 * total if ordered else total))


# ---------------------------------------------------------------------------
# subset geometry
# ---------------------------------------------------------------------------

def vertex_boundary(g: Graph, S: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``S`` adjacent to some vertex of ``S``."""
    S = set(S)
    return frozenset(w for u in S for w in g.neighbors[u] if w not in S)


@dataclass(frozen=True)
class SubsetGeometry:
    """Closures, boundaries and relative-degree constants of a vertex subset.

    ``closures[m]`` is ``cl^m(S)`` for ``m = 0..level``; ``boundaries[m]``,
    ``d[m]``, ``k[m]``, ``D[m]``, ``K[m]`` are defined for ``m = 0..level-1``.
    ``d[m]`` maps each vertex of ``cl^m(S)`` to its number of neighbours in
    ``b(cl^m(S))``; ``k[m]`` maps each boundary vertex to its number of
    neighbours in ``cl^m(S)``.
    """

    S: frozenset[int]
    level: int
    closures: tuple[frozenset[int], ...]
    boundaries: tuple[frozenset[int], ...]
    d: tuple[dict, ...]
    k: tuple[dict, ...]
    D: tuple[int, ...]
    K: tuple[int, ...]
    exhaustion_level: Optional[int]
    vertex_count: int

    @property
    def K0(self) -> int:
        return self.K[0]

    @property
    def D0(self) -> int:
        return self.D[0]

    @property
    def closure_is_full(self) -> bool:
        """True when ``cl(S) = V``."""
        return self.exhaustion_level is not None and self.exhaustion_level <= 1

    def covers(self, n: int) -> bool:
        """True when ``cl^n(S) = V``."""
        return self.exhaustion_level is not None and self.exhaustion_level <= n

    def to_dict(self) -> dict:
        return {
            "S": sorted(self.S),
            "level": self.level,
            "closure_sizes": [len(c) for c in self.closures],
            "boundary_sizes": [len(b) for b in self.boundaries],
            "D": list(self.D),
            "K": list(self.K),
            "exhaustion_level": self.exhaustion_level,
        }


def subset_geometry(g: Graph, S: Iterable[int], n: Optional[int] = None) -> SubsetGeometry:
    """Compute ``cl^m(S)``, ``b(cl^m(S))`` and ``d_m, k_m, D_m, K_m``.

    ``n`` defaults to the exhaustion level. Requesting constants at a level
    whose closure is already all of ``V`` raises
    :class:`LevelBeyondExhaustionError`.
    """
    S = frozenset(int(v) for v in S)
    if not S:
        raise EmptySubsetError("subset S is empty")
    bad = [v for v in S if v < 0 or v >= g.vertex_count]
    if bad:
        raise GraphMismatchError(f"vertex {bad[0]} is not in the graph")

    # full closure chain, cheap and needed for exhaustion_level
    chain = [S]
    exhaustion = 0 if len(S) == g.vertex_count else None
    while exhaustion is None:
        b = vertex_boundary(g, chain[-1])
        if not b:
            break
        chain.append(chain[-1] | b)
        if len(chain[-1]) == g.vertex_count:
            exhaustion = len(chain) - 1

    if n is None:
        n = exhaustion if exhaustion is not None else len(chain) - 1
    if n < 0:
        raise GPWError("level must be nonnegative")
    if n > len(chain) - 1:
        if exhaustion is not None:
            raise LevelBeyondExhaustionError(
                f"level {n} requested but cl^{exhaustion}(S) is already V(G); "
                f"b(cl^{n - 1}(S)) is empty"
            )
        raise LevelBeyondExhaustionError(
            f"boundary of cl^{len(chain) - 1}(S) is empty (disconnected graph)"
        )

    closures = tuple(chain[: n + 1])
    boundaries, ds, ks, Ds, Ks = [], [], [], [], []
    for m in range(n):
        cl = closures[m]
        b = closures[m + 1] - cl
        dm = {v: sum(1 for w in g.neighbors[v] if w in b) for v in sorted(cl)}
        km = {v: sum(1 for w in g.neighbors[v] if w in cl) for v in sorted(b)}
        boundaries.append(frozenset(b))
        ds.append(dm)
        ks.append(km)
        Ds.append(max(dm.values()))
        Ks.append(min(km.values()))
    return SubsetGeometry(
        S=S,
        level=n,
        closures=closures,
        boundaries=tuple(boundaries),
        d=tuple(ds),
        k=tuple(ks),
        D=tuple(Ds),
        K=tuple(Ks),
        exhaustion_level=exhaustion,
        vertex_count=g.vertex_count,
    )
