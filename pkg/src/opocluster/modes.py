"""Spatiospectral mode identities and down-conversion pairing rules.

A mode of the OPO is labelled by its field kind (signal/idler), a
Hermite-Gaussian spatial index pair, a comb index j (frequency offset
j*FSR) and a sideband index k (offset k*Omega).  A structured pump
component couples signal/idler pairs subject to energy and transverse-order
conservation; the allowed spatial pairings are declared per component.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import EmptyEnumeration, InvalidCapacityInput


class FieldKind(enum.Enum):
    SIGNAL = "signal"
    IDLER = "idler"


@dataclass(frozen=True, order=True)
class ModeId:
    """One spatiospectral mode: (kind, HG spatial pair, comb j, sideband k).

    The comb index is signed: the mode sits at frequency
    omega_0 + j*FSR + k*Omega, so negative j/k are lower sidebands.
    """

    kind: FieldKind = field(compare=False)
    spatial: tuple[int, int]  # (azimuthal m, radial u)
    j: int
    k: int
    # order=True needs a comparable first field; sort key is built explicitly
    # in enumerate_modes, so exclude the enum from comparisons.

    def __post_init__(self):
        m, u = self.spatial
        if u < 0:
            raise ValueError(f"radial index must be >= 0, got {u}")
        if m < 0:
            raise ValueError(f"azimuthal index must be >= 0, got {m}")

    @property
    def order(self) -> int:
        """Transverse order m + u."""
        return self.spatial[0] + self.spatial[1]


SpatialPair = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class PumpComponent:
    """One spatial/frequency component of the structured pump.

    ``freq_offset`` is P in the pump frequency 2*omega_0 + P*FSR.  When
    ``pairs`` is given it lists the allowed (signal spatial, idler spatial)
    couplings; otherwise the component couples any signal/idler pair whose
    transverse orders both equal the pump's own order.
    """

    spatial: tuple[int, int]  # (l, p)
    freq_offset: int  # P
    amplitude: float = 1.0
    pairs: Optional[tuple[SpatialPair, ...]] = None

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError(f"pump amplitude must be > 0, got {self.amplitude}")
        l, p = self.spatial
        if l + p < 0:
            raise ValueError("pump spatial order must be >= 0")

    @property
    def order(self) -> int:
        return self.spatial[0] + self.spatial[1]

    def allows(self, signal_spatial: tuple[int, int],
               idler_spatial: tuple[int, int]) -> bool:
        if self.pairs is not None:
            return (signal_spatial, idler_spatial) in self.pairs
        want = self.order
        return (sum(signal_spatial) == want and sum(idler_spatial) == want)


@dataclass(frozen=True)
class PumpSpec:
    components: tuple[PumpComponent, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))


class ModeSet:
    """Ordered, duplicate-free list of modes with stable indices 0..N-1."""

    def __init__(self, modes: Iterable[ModeId]):
        self._modes = tuple(modes)
        self._index = {}
        for i, m in enumerate(self._modes):
            key = (m.kind, m.spatial, m.j, m.k)
            if key in self._index:
                raise ValueError(f"duplicate mode {m}")
            self._index[key] = i

    def __len__(self):
        return len(self._modes)

    def __iter__(self):
        return iter(self._modes)

    def __getitem__(self, i) -> ModeId:
        return self._modes[i]

    def __eq__(self, other):
        return isinstance(other, ModeSet) and self._modes == other._modes

    def index_of(self, mode: ModeId) -> int:
        return self._index[(mode.kind, mode.spatial, mode.j, mode.k)]

    @property
    def modes(self) -> tuple[ModeId, ...]:
        return self._modes

    def kinds(self) -> list[FieldKind]:
        return [m.kind for m in self._modes]


_KIND_SORT = {FieldKind.SIGNAL: 0, FieldKind.IDLER: 1}


def enumerate_modes(spatial_orders: Sequence[tuple[int, int]],
                    j_range: tuple[int, int],
                    k_values: Sequence[int],
                    kinds: Iterable[FieldKind]) -> ModeSet:
    """Cartesian product of kinds x spatial orders x comb range x sidebands.

    ``j_range`` is an inclusive interval (j_min, j_max).  Modes are listed
    in lexicographic order (kind, spatial, j, k) with signal < idler.
    """
    kinds = sorted(set(kinds), key=_KIND_SORT.__getitem__)
    spatial_orders = list(spatial_orders)
    j_min, j_max = j_range
    k_values = list(k_values)
    if not kinds or not spatial_orders or not k_values or j_min > j_max:
        raise EmptyEnumeration(
            "enumerate_modes needs non-empty kinds, spatial orders, "
            "j interval and k values")
    modes = [
        ModeId(kind, tuple(sp), j, k)
        for kind in kinds
        for sp in sorted(spatial_orders)
        for j in range(j_min, j_max + 1)
        for k in sorted(k_values)
    ]
    return ModeSet(modes)


def dc_partners(pump: PumpComponent, modes: ModeSet) -> list[tuple[int, int]]:
    """Indices of all (signal, idler) pairs this pump component couples.

    A pair qualifies when the comb offsets sum to the pump offset P, the
    sideband offsets cancel, and the spatial orders are allowed for this
    component.  Pairs are returned as (min index, max index), ascending.
    """
    if len(modes) == 0:
        raise EmptyEnumeration("dc_partners needs a non-empty mode set")
    signals = [(i, m) for i, m in enumerate(modes) if m.kind is FieldKind.SIGNAL]
    idlers = [(i, m) for i, m in enumerate(modes) if m.kind is FieldKind.IDLER]
    out = []
    for i, s in signals:
        for j, it in idlers:
            if s.j + it.j != pump.freq_offset:
                continue
            if s.k + it.k != 0:
                continue
            if not pump.allows(s.spatial, it.spatial):
                continue
            out.append((min(i, j), max(i, j)))
    out.sort()
    return out


def capacity_estimate(delta_over_omega: float, spectral_modes: int,
                      spatial_modes: int) -> int:
    """Parallel-mode capacity: floor(FSR/Omega) * spectral * spatial * 2.

    The factor 2 counts signal and idler fields separately.
    """
    if delta_over_omega < 1 or spectral_modes < 1 or spatial_modes < 1:
        raise InvalidCapacityInput(
            "capacity inputs must all be >= 1, got "
            f"({delta_over_omega}, {spectral_modes}, {spatial_modes})")
    sidebands = math.floor(delta_over_omega)
    if sidebands < 1:
        raise InvalidCapacityInput("FSR/Omega ratio floors to zero sidebands")
    return sidebands * int(spectral_modes) * int(spatial_modes) * 2
