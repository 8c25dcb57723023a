"""Periodic cubic-lattice code block: structure, syndromes, logical parity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opocluster.errors import DimensionMismatch, InvalidDistance
from opocluster.rhg import build_lattice, logical_parity, syndrome_from_flips


@pytest.fixture(scope="module")
def lat3():
    return build_lattice(3)


def test_counts(lat3):
    assert lat3.n_checks == 27
    assert lat3.n_qubits == 81
    assert len(lat3.membrane) == 9


def test_invalid_distances():
    for d in (1, 2, 4, 0, -3):
        with pytest.raises(InvalidDistance):
            build_lattice(d)


def test_every_check_touches_six_qubits(lat3):
    counts = np.bincount(lat3.endpoints.ravel(), minlength=lat3.n_checks)
    assert np.all(counts == 6)


def test_no_flips_no_defects(lat3):
    flips = np.zeros(lat3.n_qubits, dtype=bool)
    assert len(syndrome_from_flips(lat3, flips)) == 0
    assert logical_parity(lat3, flips) == 0


def test_single_flip_two_defects(lat3):
    for q in (0, 40, 80):
        flips = np.zeros(lat3.n_qubits, dtype=bool)
        flips[q] = True
        defects = syndrome_from_flips(lat3, flips)
        assert sorted(defects) == sorted(lat3.endpoints[q])


def test_contractible_loop_clears_syndrome(lat3):
    # a 4-cycle in the (x, y) plane leaves no defects and no logical flip
    d = lat3.d

    def qid(x, y, z, axis):
        return ((x * d + y) * d + z) * 3 + axis

    flips = np.zeros(lat3.n_qubits, dtype=bool)
    for q in (qid(0, 0, 0, 0), qid(0, 0, 0, 1),
              qid(1, 0, 0, 1), qid(0, 1, 0, 0)):
        flips[q] ^= True
    assert len(syndrome_from_flips(lat3, flips)) == 0
    assert logical_parity(lat3, flips) == 0


def test_noncontractible_line_is_logical(lat3):
    # a straight x-winding line has no defects but flips the membrane parity
    d = lat3.d
    flips = np.zeros(lat3.n_qubits, dtype=bool)
    for x in range(d):
        flips[((x * d + 1) * d + 1) * 3 + 0] = True
    assert len(syndrome_from_flips(lat3, flips)) == 0
    assert logical_parity(lat3, flips) == 1


@settings(max_examples=30)
@given(st.integers(0, 2 ** 32 - 1))
def test_syndrome_is_linear(seed):
    lat = build_lattice(3)
    rng = np.random.default_rng(seed)
    f1 = rng.random(lat.n_qubits) < 0.1
    f2 = rng.random(lat.n_qubits) < 0.1
    s1 = set(syndrome_from_flips(lat, f1))
    s2 = set(syndrome_from_flips(lat, f2))
    s12 = set(syndrome_from_flips(lat, f1 ^ f2))
    assert s12 == s1 ^ s2


def test_defect_count_is_even(lat3):
    rng = np.random.default_rng(5)
    for _ in range(20):
        flips = rng.random(lat3.n_qubits) < 0.2
        assert len(syndrome_from_flips(lat3, flips)) % 2 == 0


def test_dimension_mismatch(lat3):
    with pytest.raises(DimensionMismatch):
        syndrome_from_flips(lat3, np.zeros(10, dtype=bool))
    with pytest.raises(DimensionMismatch):
        logical_parity(lat3, np.zeros(10, dtype=bool))


def test_weighted_graph_carries_per_qubit_weights(lat3):
    w = np.arange(lat3.n_qubits, dtype=float) + 1.0
    graph = lat3.weighted_graph(w)
    assert graph.shape == (27, 27)
    a, b = lat3.endpoints[17]
    assert graph[a, b] == w[17]


def test_edge_between(lat3):
    a, b = lat3.endpoints[5]
    assert lat3.edge_between(a, b) == 5
    assert lat3.edge_between(b, a) == 5
    with pytest.raises(KeyError):
        lat3.edge_between(0, 0)


def test_d5_membrane_is_x_layer():
    lat = build_lattice(5)
    assert len(lat.membrane) == 25
    for q in lat.membrane:
        assert q % 3 == 0  # x-oriented
