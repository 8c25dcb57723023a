"""Cluster-adjacency reduction, pruning and topology classification."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opocluster.errors import AmbiguousPartition, InvalidWeight, OddDimension
from opocluster.hgraph import GMatrix
from opocluster.modes import FieldKind, ModeId, ModeSet
from opocluster.reduce import AMatrix, ClusterGraph, TopologyClass, a_from_g, \
    classify_graph, prune, weight_to_db


def _bipartite_g(block):
    """Assemble [[0, B], [B^T, 0]] from an h x h block."""
    h = block.shape[0]
    g = np.zeros((2 * h, 2 * h))
    g[:h, h:] = block
    g[h:, :h] = block.T
    return GMatrix(g)


def test_two_mode_swap_is_fixed_point():
    g = GMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    a = a_from_g(g)
    assert np.allclose(a.entries, g.entries, atol=1e-12)


def test_self_inverse_bipartite_matrices_are_fixed_points():
    rng = np.random.default_rng(7)
    for n in (4, 6, 8):
        q, _ = np.linalg.qr(rng.normal(size=(n // 2, n // 2)))
        g = _bipartite_g(q)  # orthogonal block => G^2 = I
        a = a_from_g(g)
        assert np.allclose(a.entries, g.entries, atol=1e-8)


def test_a_is_scale_invariant():
    rng = np.random.default_rng(3)
    g = _bipartite_g(rng.normal(size=(3, 3)))
    a1 = a_from_g(g)
    a2 = a_from_g(GMatrix(2.5 * np.array(g.entries)))
    assert np.allclose(a1.entries, a2.entries, atol=1e-10)


def test_a_off_block_is_polar_factor():
    # for bipartite G ordered one parity class first, A0 = U V^T from the
    # SVD of the biadjacency block
    rng = np.random.default_rng(11)
    b = rng.normal(size=(4, 4))
    a = a_from_g(_bipartite_g(b))
    u, _, vt = np.linalg.svd(b)
    assert np.allclose(a.entries[:4, 4:], u @ vt, atol=1e-10)


def test_odd_dimension_raises():
    g = GMatrix(np.zeros((3, 3)))
    with pytest.raises(OddDimension):
        a_from_g(g)


def test_degenerate_partition_boundary_raises():
    # path-3 plus isolated node: spectrum {sqrt(2), 0, 0, -sqrt(2)}
    m = np.zeros((4, 4))
    m[0, 1] = m[1, 0] = 1.0
    m[1, 2] = m[2, 1] = 1.0
    with pytest.raises(AmbiguousPartition):
        a_from_g(GMatrix(m))


def test_amatrix_requires_even_square():
    with pytest.raises(ValueError):
        AMatrix(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        AMatrix(np.zeros((2, 4)))


def test_prune_threshold_semantics():
    m = np.zeros((4, 4))
    m[0, 2] = m[2, 0] = 0.5
    m[1, 3] = m[3, 1] = -0.3  # magnitude is what counts
    a = AMatrix(m)
    g = prune(a, 0.3)  # strictly above: 0.3 edge dropped
    assert {(i, j) for i, j, _ in g.edges} == {(0, 2)}
    g = prune(a, 0.2)
    assert {(i, j) for i, j, _ in g.edges} == {(0, 2), (1, 3)}
    weights = {(i, j): w for i, j, w in g.edges}
    assert weights[(1, 3)] == pytest.approx(0.3)
    with pytest.raises(InvalidWeight):
        prune(a, -0.1)


@settings(max_examples=30)
@given(st.integers(0, 2 ** 32 - 1),
       st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_prune_is_monotone_in_threshold(seed, t1, t2):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(6, 6))
    m = m + m.T
    np.fill_diagonal(m, 0.0)
    a = AMatrix(m)
    lo, hi = sorted((t1, t2))
    edges_lo = {(i, j) for i, j, _ in prune(a, lo).edges}
    edges_hi = {(i, j) for i, j, _ in prune(a, hi).edges}
    assert edges_hi <= edges_lo


def test_weight_to_db_values():
    assert weight_to_db(1.0) == pytest.approx(0.0)
    assert weight_to_db(0.5) == pytest.approx(-3.0103, abs=1e-4)
    assert weight_to_db(0.1) == pytest.approx(-10.0)
    for bad in (0.0, -0.5, 1.5):
        with pytest.raises(InvalidWeight):
            weight_to_db(bad)


def _graph_from_edges(n, edges, mode_map=None):
    return ClusterGraph(
        n, frozenset((min(i, j), max(i, j), 1.0) for i, j in edges), mode_map)


def test_classify_path():
    g = _graph_from_edges(5, [(i, i + 1) for i in range(4)])
    rep = classify_graph(g)
    assert rep.topology is TopologyClass.PATH
    assert rep.detail == {"length": 5}


def test_classify_grid():
    edges = []
    r, c = 3, 4
    for y in range(r):
        for x in range(c):
            if x + 1 < c:
                edges.append((y * c + x, y * c + x + 1))
            if y + 1 < r:
                edges.append((y * c + x, (y + 1) * c + x))
    rep = classify_graph(_graph_from_edges(r * c, edges))
    assert rep.topology is TopologyClass.GRID2D
    assert rep.detail == {"rows": 3, "cols": 4}


def test_classify_box():
    dims = (2, 2, 3)
    nodes = [(x, y, z) for x in range(2) for y in range(2) for z in range(3)]
    idx = {p: i for i, p in enumerate(nodes)}
    edges = []
    for p in nodes:
        for d in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            q = tuple(a + b for a, b in zip(p, d))
            if all(q[k] < dims[k] for k in range(3)):
                edges.append((idx[p], idx[q]))
    rep = classify_graph(_graph_from_edges(12, edges))
    assert rep.topology is TopologyClass.CUBIC3D
    assert rep.detail == {"dims": [2, 2, 3]}


def test_classify_complete_bipartite_by_kind():
    modes = ModeSet(
        [ModeId(FieldKind.SIGNAL, (0, 0), j, 1) for j in range(2)]
        + [ModeId(FieldKind.IDLER, (0, 0), j, -1) for j in range(4)])
    edges = [(i, j) for i in range(2) for j in range(2, 6)]
    rep = classify_graph(_graph_from_edges(6, edges, modes))
    assert rep.topology is TopologyClass.BICOLORABLE_COMPLETE
    assert rep.detail == {"part_sizes": [2, 4]}


def test_classify_other():
    # triangle: odd cycle, none of the named shapes
    rep = classify_graph(_graph_from_edges(3, [(0, 1), (1, 2), (0, 2)]))
    assert rep.topology is TopologyClass.OTHER
    assert rep.detail["edges"] == 3


def test_report_line_is_json_like():
    rep = classify_graph(_graph_from_edges(2, [(0, 1)]))
    import json
    parsed = json.loads(rep.to_line())
    assert parsed["class"] == "Path"
    assert parsed["detail"] == {"length": 2}
