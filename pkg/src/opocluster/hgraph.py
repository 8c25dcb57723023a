"""H-graph (G matrix) construction from pump specs and phase modulation.

The G matrix is the adjacency of the Hamiltonian graph: entry (i, j) is the
total two-mode-squeezing strength coupling modes i and j.  Pure
down-conversion gives a bipartite G between signal and idler indices;
phase modulation adds sideband-ladder couplings within each field kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DanglingPumpPair, EmptyPumpSpec, NoPmTargets, ParseError
from .modes import FieldKind, ModeSet, PumpSpec, dc_partners


@dataclass(frozen=True)
class GMatrix:
    """Symmetric, zero-diagonal interaction adjacency with mode identities.

    ``mode_map`` is None for matrices loaded from an edge file, where mode
    identities are not recorded.
    """

    entries: np.ndarray
    mode_map: Optional[ModeSet] = None

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("G must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("G must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("G must have zero diagonal")
        if self.mode_map is not None and len(self.mode_map) != a.shape[0]:
            raise ValueError("mode_map size does not match matrix")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PmSpec:
    """Phase-modulation coupling: weight chi between sidebands k and k+1."""

    chi_weight: float

    def __post_init__(self):
        if self.chi_weight <= 0:
            raise ValueError(f"chi_weight must be > 0, got {self.chi_weight}")


def build_g_downconversion(pumps: PumpSpec, modes: ModeSet) -> GMatrix:
    """Sum pump-component amplitudes onto every coupled signal/idler pair.

    Raises DanglingPumpPair if a declared spatial pairing references a
    spatial order that no mode of the matching kind carries.
    """
    if not pumps.components:
        raise EmptyPumpSpec("pump spec has no components")
    if len(modes) == 0:
        raise EmptyPumpSpec("mode set is empty")

    signal_spatials = {m.spatial for m in modes if m.kind is FieldKind.SIGNAL}
    idler_spatials = {m.spatial for m in modes if m.kind is FieldKind.IDLER}
    n = len(modes)
    g = np.zeros((n, n))
    for comp in pumps.components:
        if comp.pairs is not None:
            for sig_sp, idl_sp in comp.pairs:
                if sig_sp not in signal_spatials or idl_sp not in idler_spatials:
                    raise DanglingPumpPair(
                        f"pump pair ({sig_sp}, {idl_sp}) references a spatial "
                        "order absent from the mode set")
        for i, j in dc_partners(comp, modes):
            g[i, j] += comp.amplitude
            g[j, i] += comp.amplitude
    return GMatrix(g, modes)


def add_phase_modulation(g: GMatrix, pm: PmSpec) -> GMatrix:
    """Add chi couplings between modes differing only by one sideband step.

    Couples every pair sharing field kind, spatial order and comb index
    with |k_i - k_j| = 1.  Requires mode identities and at least two
    distinct sideband values.
    """
    if g.mode_map is None:
        raise NoPmTargets("phase modulation needs mode identities")
    k_set = {m.k for m in g.mode_map}
    if len(k_set) < 2:
        raise NoPmTargets("mode set carries a single sideband index")

    ladder = {}
    for i, m in enumerate(g.mode_map):
        ladder.setdefault((m.kind, m.spatial, m.j), []).append((m.k, i))
    out = np.array(g.entries)
    for group in ladder.values():
        group.sort()
        for (ka, ia), (kb, ib) in zip(group, group[1:]):
            if kb - ka == 1:
                out[ia, ib] += pm.chi_weight
                out[ib, ia] += pm.chi_weight
    return GMatrix(out, g.mode_map)


def g_to_edge_file(g: GMatrix) -> str:
    """Serialize to the edge format: header line N, then `i j w` per entry.

    Only upper-triangle non-zeros are listed; weights use 17 significant
    digits so a reload reproduces the matrix bit-exactly.
    """
    lines = [str(g.n)]
    rows, cols = np.nonzero(np.triu(g.entries, 1))
    for i, j in zip(rows, cols):
        lines.append(f"{i} {j} {g.entries[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def g_from_edge_file(text: str) -> GMatrix:
    """Parse the edge format back into a GMatrix (without mode identities)."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty edge file", line=1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"bad mode count {lines[0]!r}", line=1) from None
    if n < 0:
        raise ParseError("negative mode count", line=1)
    g = np.zeros((n, n))
    seen = set()
    for ln, raw in enumerate(lines[1:], start=2):
        s = raw.strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 3:
            raise ParseError(f"expected `i j w`, got {raw!r}", line=ln)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise ParseError(f"bad entry {raw!r}", line=ln) from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"index out of range in {raw!r}", line=ln)
        if i == j:
            raise ParseError("diagonal entries are not allowed", line=ln)
        if i > j:
            i, j = j, i
        if (i, j) in seen and g[i, j] != w:
            raise ParseError(
                f"conflicting duplicate for edge ({i}, {j})", line=ln)
        seen.add((i, j))
        g[i, j] = w
        g[j, i] = w
    return GMatrix(g)
