"""G matrix -> cluster adjacency (A matrix), pruning and classification.

The cluster-state adjacency follows from a symmetric eigendecomposition of
G: order the eigenpairs by descending eigenvalue, split the eigenvector
matrix V into n/2 blocks, and take A0 = -V12 V22^{-1}.  The full adjacency
is the bipartite assembly [[0, A0], [A0^T, 0]].  Pruning drops entries at
or below a weight threshold; the surviving weight doubles as a squeezing
level via 10*log10(w) dB.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import networkx as nx
import numpy as np

from .errors import AmbiguousPartition, InvalidWeight, OddDimension, SingularBlock
from .hgraph import GMatrix
from .modes import FieldKind, ModeSet

_RECON_TOL = 1e-9
_SINGULAR_TOL = 1e-10
_DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class AMatrix:
    """Cluster-state adjacency; zero diagonal blocks over the index halves."""

    entries: np.ndarray
    mode_map: Optional[ModeSet] = None

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        n = a.shape[0]
        if a.ndim != 2 or n != a.shape[1] or n % 2:
            raise ValueError("A must be square with even dimension")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class ClusterGraph:
    n: int
    edges: frozenset  # of (i, j, weight), i < j
    mode_map: Optional[ModeSet] = None


class TopologyClass(Enum):
    PATH = "Path"
    GRID2D = "Grid2D"
    CUBIC3D = "Cubic3D"
    BICOLORABLE_COMPLETE = "BicolorableComplete"
    OTHER = "Other"


@dataclass(frozen=True)
class TopologyReport:
    topology: TopologyClass
    detail: dict

    def to_line(self) -> str:
        detail = json.dumps(self.detail, sort_keys=True)
        return f'{{"class": "{self.topology.value}", "detail": {detail}}}'


def a_from_g(g: GMatrix) -> AMatrix:
    """Reduce an H-graph adjacency to its cluster-state adjacency.

    Eigenpairs are ordered by descending eigenvalue before the block
    partition, so for a bipartite G the first half carries the positive
    branch of the +/- spectrum.  Raises OddDimension, AmbiguousPartition
    (degenerate eigenvalue straddling the partition boundary) or
    SingularBlock (V22 not invertible).
    """
    n = g.n
    if n % 2 or n < 2:
        raise OddDimension(f"A matrix reduction needs even n >= 2, got {n}")
    lam, vec = np.linalg.eigh(g.entries)
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    vec = vec[:, order]

    scale = max(1.0, np.abs(g.entries).max())
    resid = np.abs(vec @ np.diag(lam) @ vec.T - g.entries).max()
    if resid >= _RECON_TOL * scale:
        raise SingularBlock(
            f"eigendecomposition residual {resid:.3e} exceeds tolerance")

    h = n // 2
    if abs(lam[h - 1] - lam[h]) < _DEGENERACY_TOL:
        raise AmbiguousPartition(
            "degenerate eigenvalue straddles the n/2 partition boundary")

    v12 = vec[:h, h:]
    v22 = vec[h:, h:]
    sv = np.linalg.svd(v22, compute_uv=False)
    if sv[-1] < _SINGULAR_TOL * sv[0]:
        raise SingularBlock("V22 block is numerically singular")

    a0 = -v12 @ np.linalg.inv(v22)
    a = np.zeros((n, n))
    a[:h, h:] = a0
    a[h:, :h] = a0.T
    return AMatrix(a, g.mode_map)


def prune(a: AMatrix, threshold: float) -> ClusterGraph:
    """Keep edges with |A[i, j]| strictly above the threshold."""
    if threshold < 0:
        raise InvalidWeight(f"prune threshold must be >= 0, got {threshold}")
    mag = np.abs(a.entries)
    rows, cols = np.nonzero(np.triu(mag > threshold, 1))
    edges = frozenset(
        (int(i), int(j), float(mag[i, j])) for i, j in zip(rows, cols))
    return ClusterGraph(a.n, edges, a.mode_map)


def weight_to_db(w: float) -> float:
    """Map an A-matrix weight in (0, 1] to its squeezing level in dB."""
    if not 0 < w <= 1:
        raise InvalidWeight(f"weight must lie in (0, 1], got {w}")
    return 10.0 * np.log10(w)


def _grid_degree_multiset(r: int, c: int) -> Counter:
    raw = {2: 4, 3: 2 * (r - 2) + 2 * (c - 2), 4: (r - 2) * (c - 2)}
    return Counter({d: m for d, m in raw.items() if m > 0})


def _box_degree_multiset(a: int, b: int, c: int) -> Counter:
    counts = Counter()
    for x in range(a):
        for y in range(b):
            for z in range(c):
                d = sum(
                    0 <= v + s < lim
                    for v, lim in ((x, a), (y, b), (z, c))
                    for s in (-1, 1))
                counts[d] += 1
    return counts


def classify_graph(cluster: ClusterGraph) -> TopologyReport:
    """Classify a pruned graph as Path / Grid2D / Cubic3D / complete bipartite.

    Grid and box checks are degree-multiset based (plus connectivity and
    bipartiteness), not full isomorphism tests.  The bicolorable-complete
    check uses field kinds when mode identities are present, otherwise the
    two index halves.
    """
    n = cluster.n
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i, j, _ in cluster.edges)
    degrees = Counter(dict(graph.degree).values())
    n_edges = graph.number_of_edges()

    connected = n > 0 and nx.is_connected(graph)
    bipartite = nx.is_bipartite(graph)

    if connected and n >= 2 and degrees.get(1, 0) == 2 \
            and degrees.get(2, 0) == n - 2 and n_edges == n - 1:
        return TopologyReport(TopologyClass.PATH, {"length": n})

    deg_multiset = Counter({d: m for d, m in degrees.items() if d > 0})
    if connected and bipartite and max(degrees, default=0) <= 4:
        for r in range(2, int(np.sqrt(n)) + 1):
            if n % r == 0:
                c = n // r
                if deg_multiset == _grid_degree_multiset(r, c):
                    return TopologyReport(
                        TopologyClass.GRID2D, {"rows": r, "cols": c})
    if connected and bipartite and max(degrees, default=0) <= 6:
        for a in range(2, round(n ** (1 / 3)) + 2):
            for b in range(a, n + 1):
                if n % (a * b):
                    continue
                c = n // (a * b)
                if c < b:
                    continue
                if deg_multiset == _box_degree_multiset(a, b, c):
                    return TopologyReport(
                        TopologyClass.CUBIC3D, {"dims": [a, b, c]})

    if n >= 2 and n % 2 == 0:
        if cluster.mode_map is not None:
            part = [i for i in range(n)
                    if cluster.mode_map[i].kind is FieldKind.SIGNAL]
        else:
            part = list(range(n // 2))
        part_set = set(part)
        other = [i for i in range(n) if i not in part_set]
        if part and other:
            wanted = {(min(i, j), max(i, j)) for i in part for j in other}
            have = {(i, j) for i, j, _ in cluster.edges}
            if have == wanted:
                return TopologyReport(
                    TopologyClass.BICOLORABLE_COMPLETE,
                    {"part_sizes": [len(part), len(other)]})

    return TopologyReport(
        TopologyClass.OTHER,
        {"nodes": n, "edges": n_edges,
         "degree_histogram": {str(d): m for d, m in sorted(degrees.items())}})
