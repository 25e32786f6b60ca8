"""Probe sweeps, output phase, group delay, gain bands and drift-matrix stability."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np
from scipy.signal import find_peaks

from .errors import PoleError
from .model import Detunings, SystemParams
from .response import (drift_matrix, output_field, resonant_denominator, response_general,
                       response_general_batch)

RESONANCE_RTOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform probe grid in units of ``delta / omega_b``."""

    start: float = 0.5
    stop: float = 1.5
    points: int = 4001

    def __post_init__(self):
        if self.points < 9:
            raise ValueError("grid needs at least 9 points")
        if not (np.isfinite(self.start) and np.isfinite(self.stop) and self.start < self.stop):
            raise ValueError("grid needs finite start < stop")

    def _unit(self) -> np.ndarray:
        # exactly antisymmetric about the midpoint, so mirrored rows see
        # mirrored detunings bit for bit
        u = np.linspace(-1.0, 1.0, self.points)
        return 0.5 * (u - u[::-1])

    def values(self) -> np.ndarray:
        mid, half = 0.5 * (self.start + self.stop), 0.5 * (self.stop - self.start)
        return mid + half * self._unit()

    def offsets(self, ref: float) -> np.ndarray:
        """``values() - ref`` computed without cancellation."""
        mid, half = 0.5 * (self.start + self.stop), 0.5 * (self.stop - self.start)
        return (mid - ref) + half * self._unit()


@dataclass(frozen=True)
class StabilityReport:
    eigenvalues: np.ndarray
    max_real_part: float
    stable: bool
    ep_gap: float


@dataclass
class SpectrumTable:
    """Column-oriented spectrum; one entry per grid point.

    ``phi_t`` and ``tau_g`` are NaN where undefined (divergent rows and the
    rows bordering them).
    """

    delta_over_omega_b: np.ndarray
    t_p: np.ndarray
    abs_t_p_sq: np.ndarray
    re_quad: np.ndarray
    im_quad: np.ndarray
    phi_t: np.ndarray
    tau_g: np.ndarray
    divergent: np.ndarray
    omega_b: float
    stability: Optional[StabilityReport] = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.delta_over_omega_b)

    def rows(self):
        for i in range(len(self)):
            yield {
                "delta_over_omega_b": float(self.delta_over_omega_b[i]),
                "t_p": complex(self.t_p[i]),
                "abs_t_p_sq": float(self.abs_t_p_sq[i]),
                "re_quad": float(self.re_quad[i]),
                "im_quad": float(self.im_quad[i]),
                "phi_t": float(self.phi_t[i]),
                "tau_g": float(self.tau_g[i]),
                "divergent": bool(self.divergent[i]),
            }


@dataclass(frozen=True)
class Band:
    center: float
    height: float
    width: float
    start: float
    stop: float


def resonance_holds(params: SystemParams, det: Detunings, rtol: float = RESONANCE_RTOL) -> bool:
    wb = params.omega_b
    return all(abs(d - wb) <= rtol * abs(wb)
               for d in (det.Delta_a1, det.Delta_a2, det.Delta_m_tilde))


def _segments(mask: np.ndarray):
    """(start, stop) index pairs of maximal runs where ``mask`` is True."""
    idx = np.flatnonzero(np.diff(np.concatenate(([0], mask.astype(np.int8), [0]))))
    return list(zip(idx[::2], idx[1::2]))


def phase(eps_out: np.ndarray, divergent: Optional[np.ndarray] = None) -> np.ndarray:
    """Unwrapped output phase; unwrapping restarts after each divergent gap.

    Segments of a single row keep their principal value.
    """
    eps_out = np.asarray(eps_out, dtype=complex)
    if divergent is None:
        divergent = ~np.isfinite(eps_out)
    phi = np.full(eps_out.shape, np.nan)
    for a, b in _segments(~divergent):
        phi[a:b] = np.unwrap(np.angle(eps_out[a:b]))
    return phi


def group_delay(phi: np.ndarray, omega_pr: np.ndarray) -> np.ndarray:
    """``d phi / d omega_pr`` on a uniform grid (seconds for rad/s input).

    Second-order central differences inside, second-order one-sided
    differences at both ends.
    """
    phi = np.asarray(phi, dtype=float)
    w = np.asarray(omega_pr, dtype=float)
    if len(w) < 3 or len(phi) != len(w):
        raise ValueError("group delay needs at least 3 matching points")
    h = (w[-1] - w[0]) / (len(w) - 1)
    if not np.allclose(np.diff(w), h, rtol=1e-6, atol=0):
        raise ValueError("group delay needs a uniform grid; resample first")
    return np.gradient(phi, h, edge_order=2)


def _delay_with_gaps(phi, delta, divergent):
    tau = np.full(phi.shape, np.nan)
    n = len(phi)
    for a, b in _segments(~divergent):
        if b - a < 3:
            continue
        tau[a:b] = group_delay(phi[a:b], delta[a:b])
        if a > 0:
            tau[a] = np.nan
        if b < n:
            tau[b - 1] = np.nan
    return tau


def sweep_spectrum(grid: Grid, params: SystemParams, det: Detunings, G: complex,
                   eps_pr: float = 1.0, mode: str = "auto") -> SpectrumTable:
    """Evaluate transmission, phase and group delay over a probe grid.

    ``mode`` is ``"resonant"`` (closed form), ``"general"`` (4x4 solve) or
    ``"auto"`` (closed form only when every detuning equals ``omega_b``).
    Points at a pole are flagged divergent instead of raising.
    """
    if mode not in ("auto", "resonant", "general"):
        raise ValueError(f"unknown mode {mode!r}")
    if not eps_pr > 0:
        raise ValueError("eps_pr must be positive")
    x = grid.values()
    if x.size == 0:
        raise ValueError("empty grid")
    wb = params.omega_b
    delta = x * wb
    if mode == "auto":
        mode = "resonant" if resonance_holds(params, det) else "general"
    if mode == "resonant":
        lam = grid.offsets(1.0) * wb
        with np.errstate(divide="ignore", invalid="ignore"):
            den = resonant_denominator(lam, params, G)
            a1 = eps_pr / den
        scale = np.maximum(params.kappa_1, np.abs(lam))
        divergent = ~np.isfinite(a1) | (np.abs(den) <= 1e-14 * scale)
        a1 = np.where(divergent, np.nan, a1)
    else:
        amps, divergent, _ = response_general_batch(delta, params, det, G, eps_pr)
        a1 = amps[:, 0]
    eps = 2.0 * params.kappa_1 * a1 / eps_pr
    t_p = 1 - eps
    phi = phase(eps, divergent)
    tau = _delay_with_gaps(phi, delta, divergent)
    return SpectrumTable(
        delta_over_omega_b=x, t_p=t_p, abs_t_p_sq=np.abs(t_p) ** 2,
        re_quad=eps.real, im_quad=eps.imag, phi_t=phi, tau_g=tau,
        divergent=divergent, omega_b=wb,
        stability=drift_eigenvalues(params, det, G), meta={"mode": mode},
    )


def half_gain_level(table: SpectrumTable) -> float:
    """Level halfway between unity and the peak of ``|t_p|^2``."""
    finite = table.abs_t_p_sq[np.isfinite(table.abs_t_p_sq)]
    return 0.5 * (1.0 + float(finite.max()))


def find_amplification_bands(table: SpectrumTable,
                             threshold: Union[float, str] = 1.0) -> list[Band]:
    """Maximal grid intervals with ``|t_p|^2 > threshold``.

    ``threshold="half"`` uses :func:`half_gain_level`.  Divergent rows count
    as above any threshold with infinite height.
    """
    if threshold == "half":
        threshold = half_gain_level(table)
    y = np.where(table.divergent, np.inf, table.abs_t_p_sq)
    x = table.delta_over_omega_b
    bands = []
    for a, b in _segments(y > threshold):
        k = a + int(np.argmax(y[a:b]))
        bands.append(Band(center=float(x[k]), height=float(y[k]),
                          width=float(x[b - 1] - x[a]), start=float(x[a]), stop=float(x[b - 1])))
    return bands


def significant_extrema(y: np.ndarray, rel_prominence: float = 0.05):
    """Indices of positive peaks and negative dips standing out from the curve.

    A feature counts when its prominence is at least ``rel_prominence`` times
    ``max |y|``.  NaN entries split the series into independent segments.
    """
    y = np.asarray(y, dtype=float)
    finite = np.isfinite(y)
    if not finite.any():
        return np.array([], int), np.array([], int)
    prom = rel_prominence * np.abs(y[finite]).max()
    peaks, dips = [], []
    for a, b in _segments(finite):
        seg = y[a:b]
        p, _ = find_peaks(seg, prominence=prom)
        d, _ = find_peaks(-seg, prominence=prom)
        peaks.extend(a + i for i in p if seg[i] > 0)
        dips.extend(a + i for i in d if seg[i] < 0)
    return np.array(peaks, int), np.array(dips, int)


def drift_eigenvalues(params: SystemParams, det: Detunings, G: complex,
                      modes: Optional[Sequence[int]] = None) -> StabilityReport:
    """Eigenvalues of the drift matrix, sorted by real then imaginary part.

    ``modes`` restricts the analysis to a diagonal block, in (a1, a2, m, b)
    order; ``modes=(0, 1)`` gives the two-cavity subsystem.  ``ep_gap`` is
    the smallest distance between two eigenvalues and vanishes at an
    exceptional point.
    """
    M = drift_matrix(params, det, G)
    if modes is not None:
        idx = np.asarray(modes, dtype=int)
        if idx.size < 2:
            raise ValueError("need at least two modes")
        M = M[np.ix_(idx, idx)]
    ev = np.linalg.eigvals(M)
    ev = ev[np.lexsort((ev.imag, ev.real))]
    gap = min(abs(a - b) for a, b in combinations(ev, 2))
    mr = float(ev.real.max())
    return StabilityReport(eigenvalues=ev, max_real_part=mr, stable=mr < 0, ep_gap=float(gap))


def evaluate_point(delta: float, params: SystemParams, det: Detunings, G: complex,
                   eps_pr: float = 1.0):
    """Single-point transmission via the general solver; raises :class:`PoleError`."""
    amps = response_general(delta, params, det, G, eps_pr)
    return amps, output_field(amps.a_1p, params.kappa_1, eps_pr)


__all__ = [
    "Band", "Grid", "PoleError", "SpectrumTable", "StabilityReport", "drift_eigenvalues",
    "evaluate_point", "find_amplification_bands", "group_delay", "half_gain_level", "phase",
    "resonance_holds", "significant_extrema", "sweep_spectrum",
]
