"""Primal error sector of the RHG code on a periodic cubic lattice.

Qubits live on the 3*d^3 edges of a d x d x d torus, parity checks on the
d^3 vertices.  A flipped edge toggles its two endpoint checks; the logical
observable is the parity over the d^2 x-direction edges crossing the plane
between x = d-1 and x = 0.  This edge/vertex picture is the standard
relabeling of the RHG primal sector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, InvalidDistance

_AXES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class RhgInstance:
    d: int
    n_qubits: int
    n_checks: int
    # endpoints[q] = (vertex a, vertex b) of edge q
    endpoints: np.ndarray
    membrane: np.ndarray  # qubit ids of the logical membrane
    # CSR template of the vertex graph: data slot t holds the weight of
    # qubit csr_qubit[t]
    csr_indptr: np.ndarray = field(repr=False)
    csr_indices: np.ndarray = field(repr=False)
    csr_qubit: np.ndarray = field(repr=False)
    # edge lookup: _edge_of[a * n_checks + b] = qubit id, -1 if absent
    _edge_of: np.ndarray = field(repr=False)

    def weighted_graph(self, per_qubit_weight: np.ndarray) -> sp.csr_matrix:
        """Vertex graph with each edge carrying its qubit's weight."""
        data = np.asarray(per_qubit_weight, dtype=float)[self.csr_qubit]
        return sp.csr_matrix(
            (data, self.csr_indices, self.csr_indptr),
            shape=(self.n_checks, self.n_checks))

    def edge_between(self, a: int, b: int) -> int:
        q = self._edge_of[a * self.n_checks + b]
        if q < 0:
            raise KeyError(f"no lattice edge between checks {a} and {b}")
        return int(q)


def build_lattice(d: int) -> RhgInstance:
    """Periodic cubic lattice at odd code distance d >= 3.

    Qubit indexing is lexicographic in (x, y, z, axis) with axes ordered
    x, y, z; vertex indexing is lexicographic in (x, y, z).
    """
    if d < 3 or d % 2 == 0:
        raise InvalidDistance(f"code distance must be odd and >= 3, got {d}")
    nv = d ** 3
    nq = 3 * nv

    def vid(x, y, z):
        return (x * d + y) * d + z

    endpoints = np.empty((nq, 2), dtype=np.int64)
    q = 0
    for x in range(d):
        for y in range(d):
            for z in range(d):
                for ax, (dx, dy, dz) in enumerate(_AXES):
                    endpoints[q, 0] = vid(x, y, z)
                    endpoints[q, 1] = vid((x + dx) % d, (y + dy) % d,
                                          (z + dz) % d)
                    q += 1

    # membrane: x-axis edges at x = d-1 (the wrap-around layer)
    membrane = np.array(
        [((d - 1) * d + y) * d * 3 + z * 3 + 0
         for y in range(d) for z in range(d)], dtype=np.int64)

    # CSR template for per-trial reweighting
    rows = np.concatenate([endpoints[:, 0], endpoints[:, 1]])
    cols = np.concatenate([endpoints[:, 1], endpoints[:, 0]])
    qids = np.concatenate([np.arange(nq), np.arange(nq)])
    order = np.lexsort((cols, rows))
    rows, cols, qids = rows[order], cols[order], qids[order]
    indptr = np.searchsorted(rows, np.arange(nv + 1))
    edge_of = np.full(nv * nv, -1, dtype=np.int64)
    edge_of[rows * nv + cols] = qids

    return RhgInstance(
        d=d, n_qubits=nq, n_checks=nv, endpoints=endpoints,
        membrane=membrane, csr_indptr=indptr, csr_indices=cols,
        csr_qubit=qids, _edge_of=edge_of)


def _check_flips(lat: RhgInstance, flips) -> np.ndarray:
    flips = np.asarray(flips)
    if flips.shape != (lat.n_qubits,):
        raise DimensionMismatch(
            f"flip vector length {flips.shape} does not match "
            f"{lat.n_qubits} qubits")
    return flips.astype(bool)


def syndrome_from_flips(lat: RhgInstance, flips) -> np.ndarray:
    """Sorted check indices with odd incident-flip parity."""
    flips = _check_flips(lat, flips)
    touched = lat.endpoints[flips].ravel()
    counts = np.bincount(touched, minlength=lat.n_checks)
    return np.flatnonzero(counts % 2 == 1)


def logical_parity(lat: RhgInstance, flips) -> int:
    """Parity of the flip vector restricted to the logical membrane."""
    flips = _check_flips(lat, flips)
    return int(flips[lat.membrane].sum() % 2)
