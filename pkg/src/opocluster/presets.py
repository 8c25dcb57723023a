"""Demo mode-set/pump designs realizing the three reference topologies.

Each builder returns a GraphConfig whose H-graph, after reduction and
pruning inside the recommended weight window, is exactly a path, a planar
grid, or a cubic block:

* ``chain_config``   -- one spatial mode, a signed comb-index ladder and two
  pump tones at P = +/-1; the H-graph is a 1D chain.
* ``grid_config``    -- columns are spatial orders (c, order-c), rows are a
  comb-index sequence; two structured pumps with explicit spatial pair
  lists wire nearest-neighbour columns only.
* ``block_config``   -- two copies of the 3x3 grid design on sideband
  indices +/-1 and +/-2; phase modulation supplies the inter-layer rungs.

Mode ordering in every builder puts one parity class of the target lattice
in the first index half, as the block reduction requires.
"""

from __future__ import annotations

from .configio import GraphConfig
from .hgraph import PmSpec
from .modes import FieldKind, ModeId, ModeSet, PumpComponent, PumpSpec

# prune thresholds (weight windows validated for the default sizes)
CHAIN_THRESHOLD = 0.42
GRID_THRESHOLD = 0.30
BLOCK_THRESHOLD = 0.33


def chain_config(length: int = 48) -> GraphConfig:
    """1D chain of ``length`` modes in a single spatial mode.

    Chain position p carries comb index -p (signal, even p) or +p (idler,
    odd p), so two pump tones at P = +/-1 couple exactly the adjacent
    positions.  Signals occupy the first index half.
    """
    if length < 2 or length % 2:
        raise ValueError(f"chain length must be even and >= 2, got {length}")
    signals = [ModeId(FieldKind.SIGNAL, (0, 0), -p, 1)
               for p in range(0, length, 2)]
    idlers = [ModeId(FieldKind.IDLER, (0, 0), p, -1)
              for p in range(1, length, 2)]
    pumps = PumpSpec((
        PumpComponent((0, 0), 1, 1.0),
        PumpComponent((0, 0), -1, 1.0),
    ))
    return GraphConfig(ModeSet(signals + idlers), pumps, None)


def _alpha(c: int, t: int) -> int:
    """Comb index of grid cell (column c, row t).

    Row sequences 0, 1, -2, 3, ... (even columns) and 1, -2, 3, -4, ...
    (odd columns) make adjacent-cell comb sums equal +/-1 and all other
    sums larger in magnitude.
    """
    if c % 2 == 0:
        return t if t % 2 else -t
    return -(t + 1) if t % 2 else t + 1


def _grid_modes(cols: int, rows: int, order: int, layer: int = 0):
    """Cell modes of one grid layer; kind alternates with (c + t) parity."""
    k_mag = 1 + layer
    out = []
    for c in range(cols):
        for t in range(rows):
            if (c + t) % 2 == 0:
                out.append((c, t, ModeId(
                    FieldKind.SIGNAL, (c, order - c), _alpha(c, t), k_mag)))
            else:
                out.append((c, t, ModeId(
                    FieldKind.IDLER, (c, order - c), _alpha(c, t), -k_mag)))
    return out


def _grid_pumps(cols: int, order: int) -> PumpSpec:
    """Two pump tones whose pair lists wire same and adjacent columns only."""
    sp = [(c, order - c) for c in range(cols)]
    diag = [(sp[c], sp[c]) for c in range(cols)]
    plus, minus = list(diag), list(diag)
    for c in range(cols - 1):
        if c % 2 == 0:
            plus.append((sp[c], sp[c + 1]))
            minus.append((sp[c + 1], sp[c]))
        else:
            plus.append((sp[c + 1], sp[c]))
            minus.append((sp[c], sp[c + 1]))
    return PumpSpec((
        PumpComponent((0, 2 * order), 1, 1.0, tuple(plus)),
        PumpComponent((0, 2 * order), -1, 1.0, tuple(minus)),
    ))


def grid_config(rows: int = 6, cols: int = 8) -> GraphConfig:
    """rows x cols planar grid; columns map to spatial orders (c, cols-1-c)."""
    if rows < 2 or cols < 2:
        raise ValueError(f"grid needs rows, cols >= 2, got {rows}x{cols}")
    order = cols - 1
    cells = _grid_modes(cols, rows, order)
    signals = [m for _, _, m in cells if m.kind is FieldKind.SIGNAL]
    idlers = [m for _, _, m in cells if m.kind is FieldKind.IDLER]
    return GraphConfig(
        ModeSet(signals + idlers), _grid_pumps(cols, order), None)


def block_config(cols: int = 3, rows: int = 3, layers: int = 2) -> GraphConfig:
    """cols x rows x layers block; layers sit on sideband magnitudes 1, 2, ...

    Down-conversion wires each in-layer grid (sideband offsets cancel only
    within a layer); phase modulation couples the same cell across
    adjacent layers, one sideband step apart.  The first index half is the
    even (c + t + layer) parity class of the block.
    """
    if layers < 2:
        raise ValueError(f"block needs >= 2 layers, got {layers}")
    order = cols - 1
    even, odd = [], []
    for layer in range(layers):
        for c, t, mode in _grid_modes(cols, rows, order, layer):
            (even if (c + t + layer) % 2 == 0 else odd).append(mode)
    return GraphConfig(
        ModeSet(even + odd), _grid_pumps(cols, order), PmSpec(1.0))
