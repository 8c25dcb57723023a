"""GKP binning, analog-information weighting and MWPM decoding.

Each homodyne outcome is reduced modulo the sqrt(pi) bin spacing; the bin
parity gives the measured bit and the residual gives a wrapped-Gaussian
flip likelihood.  Log-likelihood-ratio weights turn the lattice into a
weighted graph; syndrome defects are paired by exact minimum-weight
perfect matching over shortest-path distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.sparse.csgraph import dijkstra

from ._blossom import min_weight_perfect_matching
from .errors import InvalidVariance, OddDefects
from .rhg import RhgInstance

SQRT_PI = math.sqrt(math.pi)

# wrapped-Gaussian truncation; error < 1e-12 for sigma2 <= 1
_N_TRUNC = 8
# LLR clipping keeps shortest paths finite when p_flip ~ 0 or ~ 1/2
WEIGHT_MIN = 1e-4
WEIGHT_MAX = 25.0

_QUANT = float(1 << 26)  # fixed-point grid for exact integer matching


@dataclass(frozen=True)
class GkpOutcome:
    bit: int
    delta: float
    p_flip: float


@dataclass(frozen=True)
class MatchingProblem:
    defects: np.ndarray  # check indices, even count
    pair_weights: np.ndarray  # (n_defects, n_defects) shortest-path metric
    # dijkstra predecessors from each defect, for path reconstruction
    predecessors: np.ndarray = field(repr=False)


def _wrapped_flip_probability(delta, sigma2):
    """P(odd bin | residual delta) for a wrapped Gaussian of variance sigma2.

    Evaluated on |delta| with the shift window [-N+1, N], which is mapped
    onto itself by the odd/even reflection n -> 1 - n; this makes the
    symmetries p(delta) = p(-delta) and p(sqrt(pi)/2) = 1/2 exact even
    after truncation.
    """
    mag = np.abs(np.asarray(delta, dtype=float))
    base = np.arange(1, 2 * _N_TRUNC, 2)
    odd_shifts = np.stack([base, -base], axis=-1).ravel()  # 1,-1,3,-3,...
    even_shifts = 1 - odd_shifts  # elementwise mirror partners 0,2,-2,4,...

    def dens(shifts):
        x = mag[..., None] - shifts * SQRT_PI
        return np.exp(-0.5 * x * x / sigma2)

    odd_sum = dens(odd_shifts).sum(axis=-1)
    even_sum = dens(even_shifts).sum(axis=-1)
    total = odd_sum + even_sum
    # total only underflows for extreme sigma2 with |delta| at the bin
    # boundary, where the ratio tends to 1/2
    with np.errstate(invalid="ignore"):
        return np.where(total > 0, odd_sum / np.where(total > 0, total, 1.0), 0.5)


def gkp_decode_array(measured, sigma2: float):
    """Vectorized GKP binning; returns (bits, deltas, p_flips)."""
    if sigma2 <= 0:
        raise InvalidVariance(f"variance must be > 0, got {sigma2}")
    measured = np.asarray(measured, dtype=float)
    nearest = np.round(measured / SQRT_PI)
    delta = measured - nearest * SQRT_PI
    bits = (nearest.astype(np.int64) % 2).astype(np.int8)
    p = _wrapped_flip_probability(delta, sigma2)
    return bits, delta, p


def gkp_decode(measured: float, sigma2: float) -> GkpOutcome:
    """Maximum-likelihood GKP binning of one homodyne outcome."""
    bits, delta, p = gkp_decode_array(np.array([measured]), sigma2)
    return GkpOutcome(int(bits[0]), float(delta[0]), float(p[0]))


def marginal_flip_probability(sigma2: float) -> float:
    """P(nearest bin odd) for a centred Gaussian outcome of variance sigma2.

    This is the per-qubit flip probability before conditioning on the
    measured residual; it sets the uniform matching weight used by the
    Monte Carlo trials.
    """
    if sigma2 <= 0:
        raise InvalidVariance(f"variance must be > 0, got {sigma2}")
    sigma = math.sqrt(sigma2)
    p = 0.0
    for m in range(1, 2 * _N_TRUNC, 2):
        lo = (m - 0.5) * SQRT_PI / sigma
        hi = (m + 0.5) * SQRT_PI / sigma
        p += math.erfc(lo / math.sqrt(2)) - math.erfc(hi / math.sqrt(2))
    return p


def llr_weight(p_flip):
    """Matching weight -ln(p/(1-p)), clipped to [WEIGHT_MIN, WEIGHT_MAX]."""
    p = np.clip(np.asarray(p_flip, dtype=float), 1e-300, 1.0 - 1e-16)
    return np.clip(-np.log(p / (1.0 - p)), WEIGHT_MIN, WEIGHT_MAX)


def defect_pair_weights(lat: RhgInstance, per_qubit_weight,
                        defects: Sequence[int]) -> MatchingProblem:
    """All-pairs shortest-path weights between defects on the weighted lattice."""
    defects = np.asarray(defects, dtype=np.int64)
    if len(defects) % 2:
        raise OddDefects(f"defect count {len(defects)} is odd")
    w = np.asarray(per_qubit_weight, dtype=float)
    if w.shape != (lat.n_qubits,) or not np.all(np.isfinite(w)):
        raise ValueError("per-qubit weights must be finite, one per qubit")
    if len(defects) == 0:
        return MatchingProblem(defects, np.zeros((0, 0)),
                               np.zeros((0, 0), dtype=np.int32))
    graph = lat.weighted_graph(w)
    dist, pred = dijkstra(graph, indices=defects, return_predecessors=True)
    return MatchingProblem(defects, dist[:, defects], pred)


def mwpm(problem: MatchingProblem) -> list[tuple[int, int]]:
    """Exact minimum-weight perfect matching of the defect graph.

    Weights are quantized to a 2^-26 fixed-point grid and solved with an
    integer blossom algorithm, so the result is optimal for the quantized
    weights (quantization is ~1e-8 relative, far below the LLR scale).
    """
    m = len(problem.defects)
    if m % 2:
        raise OddDefects(f"defect count {m} is odd")
    if m == 0:
        return []
    scaled = np.round(problem.pair_weights * _QUANT).astype(np.int64)
    scaled = np.minimum(scaled, scaled.T)  # enforce exact symmetry
    partner = min_weight_perfect_matching(scaled)
    pairs = set()
    for i, j in enumerate(partner):
        a, b = int(problem.defects[i]), int(problem.defects[j])
        pairs.add((min(a, b), max(a, b)))
    return sorted(pairs)


def _path_edges(lat: RhgInstance, problem: MatchingProblem,
                source_row: int, target: int) -> list[int]:
    pred = problem.predecessors[source_row]
    edges = []
    v = target
    while pred[v] >= 0:
        u = int(pred[v])
        edges.append(lat.edge_between(u, v))
        v = u
    if v != int(problem.defects[source_row]):
        raise ValueError("no path between matched defects")
    return edges


def correction_from_matching(lat: RhgInstance, problem: MatchingProblem,
                             matching: Sequence[tuple[int, int]]) -> np.ndarray:
    """XOR of the shortest-path edge sets of every matched defect pair."""
    row_of = {int(c): i for i, c in enumerate(problem.defects)}
    correction = np.zeros(lat.n_qubits, dtype=bool)
    for a, b in matching:
        for q in _path_edges(lat, problem, row_of[a], b):
            correction[q] ^= True
    return correction


def decode_to_correction(lat: RhgInstance, flips, per_qubit_weight,
                         defects: Optional[np.ndarray] = None) -> np.ndarray:
    """Full matching decode: defects -> pair weights -> MWPM -> correction."""
    from .rhg import syndrome_from_flips

    if defects is None:
        defects = syndrome_from_flips(lat, flips)
    problem = defect_pair_weights(lat, per_qubit_weight, defects)
    matching = mwpm(problem)
    return correction_from_matching(lat, problem, matching)
