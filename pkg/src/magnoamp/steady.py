"""Mean-field steady state of the driven four-mode system.

Eliminating the cavity and phonon amplitudes leaves a real cubic in the
magnon population ``x = |m_s|^2``::

    x * |i*Dt(x) + kappa_m + Sigma|^2 = Omega^2
    Dt(x)  = Delta_m - 2 g_2^2 omega_b x / (omega_b^2 + kappa_b^2)
    Sigma  = g_1^2 / (i Delta_a1 + kappa_1 + J^2 / (i Delta_a2 + kappa_2))

Each non-negative real root is one branch.  No attempt is made to pick the
physical branch; use :func:`magnoamp.spectra.drift_eigenvalues` for that.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .errors import EmptySolutionError, SingularConfigurationError
from .model import Detunings, DriveConfig, SystemParams

_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class SteadyState:
    a_1s: complex
    a_2s: complex
    m_s: complex
    b_s: complex
    Delta_m_tilde: float
    G_eff: complex
    branch_index: int
    residual: float

    @property
    def population(self) -> float:
        return abs(self.m_s) ** 2


def effective_detuning(Delta_m: float, g_2: float, b_s: complex) -> float:
    """Magnon detuning shifted by the static phonon displacement."""
    return Delta_m + g_2 * 2.0 * complex(b_s).real


def effective_coupling(g_2: float, m_s: complex) -> complex:
    return g_2 * m_s


def _cavity_self_energy(params: SystemParams, det: Detunings) -> complex:
    den2 = 1j * det.Delta_a2 + params.kappa_2
    if den2 == 0:
        raise SingularConfigurationError("i*Delta_a2 + kappa_2 vanishes")
    den1 = 1j * det.Delta_a1 + params.kappa_1 + params.J ** 2 / den2
    if den1 == 0:
        if params.g_1 == 0:
            return 0j
        raise SingularConfigurationError("cavity-1 dressed denominator vanishes")
    return params.g_1 ** 2 / den1


def _shift_per_population(params: SystemParams) -> float:
    wb, kb = params.omega_b, params.kappa_b
    return 2.0 * params.g_2 ** 2 * wb / (wb ** 2 + kb ** 2)


def _cubic_terms(params: SystemParams, det: Detunings):
    Sigma = _cavity_self_energy(params, det)
    A = params.kappa_m + Sigma.real
    B = det.Delta_m + Sigma.imag
    return A, B, _shift_per_population(params), params.Omega ** 2


def cubic_coefficients(params: SystemParams, det: Detunings) -> np.ndarray:
    """Coefficients (highest power first) of the population cubic in ``x``."""
    A, B, c, Om2 = _cubic_terms(params, det)
    return np.array([c * c, -2.0 * c * B, A * A + B * B, -Om2])


def _real_roots(A: float, B: float, c: float, Om2: float) -> list[float]:
    """Non-negative real roots of ``x (A^2 + (B - c x)^2) = Om2``.

    Companion-matrix roots of the expanded cubic decide which roots are real.
    Each accepted root is then refined by bracketing between the turning
    points, evaluating the factored form, which keeps full accuracy when
    ``B - c x`` nearly cancels.
    """
    if Om2 == 0:
        return [0.0]
    c3, c2, c1 = c * c, -2.0 * c * B, A * A + B * B
    if c3 == 0:
        return [] if c1 == 0 else [Om2 / c1]
    # rescale x = s*y so the leading and constant coefficients are both 1
    s = (Om2 / c3) ** (1.0 / 3.0)
    p = np.array([1.0, c2 * s * s / Om2, c1 * s / Om2, -1.0])
    cand = [r.real * s for r in np.roots(p) if abs(r.imag) < _IMAG_TOL * (1.0 + abs(r))]

    def f(x):
        return x * (A * A + (B - c * x) ** 2) - Om2

    turns = sorted(t.real for t in np.roots([3.0 * c3, 2.0 * c2, c1])
                   if t.imag == 0 and t.real > 0)
    edges = [0.0] + turns
    hi = max([s] + turns + [abs(x) for x in cand])
    while f(hi) <= 0:
        hi *= 2.0
    edges.append(hi)
    out = {}
    for x in cand:
        if x < 0:
            continue
        k = min(int(np.searchsorted(edges, x, side="right")) - 1, len(edges) - 2)
        a, b = edges[k], edges[k + 1]
        fa, fb = f(a), f(b)
        if fb == 0:
            out[k] = b
        elif fa * fb < 0:
            out[k] = brentq(f, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        else:
            # tangent (double) root: keep the companion value
            out.setdefault(k, x)
    return sorted(out.values())


def _back_substitute(x: float, params: SystemParams, det: Detunings, Sigma: complex):
    c = _shift_per_population(params)
    Dt = det.Delta_m - c * x
    m_s = params.Omega / (1j * Dt + params.kappa_m + Sigma)
    den2 = 1j * det.Delta_a2 + params.kappa_2
    den1 = 1j * det.Delta_a1 + params.kappa_1 + params.J ** 2 / den2
    a_1s = -1j * params.g_1 * m_s / den1 if params.g_1 else 0j
    a_2s = -1j * params.J * a_1s / den2
    pop = abs(m_s) ** 2
    b_s = -1j * params.g_2 * pop / (1j * params.omega_b + params.kappa_b)
    return a_1s, a_2s, m_s, b_s


def residual(state: SteadyState, params: SystemParams, drive: DriveConfig | None,
             det: Detunings) -> float:
    """Largest relative mismatch over the four steady-state relations."""
    a1, a2, m, b = state.a_1s, state.a_2s, state.m_s, state.b_s
    Omega = params.Omega or 0.0
    Dt = effective_detuning(det.Delta_m, params.g_2, b)
    rels = [
        (a1, -(1j * params.g_1 * m + 1j * params.J * a2) / (1j * det.Delta_a1 + params.kappa_1)),
        (a2, -1j * params.J * a1 / (1j * det.Delta_a2 + params.kappa_2)),
        (b, -1j * params.g_2 * abs(m) ** 2 / (1j * params.omega_b + params.kappa_b)),
        (m, (-1j * params.g_1 * a1 + Omega) / (1j * Dt + params.kappa_m)),
    ]
    return max(abs(lhs - rhs) / (1.0 + abs(rhs)) for lhs, rhs in rels)


def solve_steady_state(params: SystemParams, drive: DriveConfig | None,
                       det: Detunings) -> list[SteadyState]:
    """All steady-state branches, sorted by ascending magnon population.

    Raises
    ------
    SingularConfigurationError
        If a cavity denominator vanishes.
    EmptySolutionError
        If no non-negative real population solves the cubic.
    """
    if not params.drive_derived:
        raise ValueError("steady state needs the drive-derived (Omega) parameterization")
    if not params.kappa_m > 0:
        raise ValueError("kappa_m must be positive for a driven steady state")
    Sigma = _cavity_self_energy(params, det)
    roots = _real_roots(*_cubic_terms(params, det))
    if not roots:
        raise EmptySolutionError("no non-negative real magnon population")
    states = []
    for k, x in enumerate(roots):
        a1, a2, m, b = _back_substitute(x, params, det, Sigma)
        st = SteadyState(a1, a2, m, b,
                         Delta_m_tilde=effective_detuning(det.Delta_m, params.g_2, b),
                         G_eff=effective_coupling(params.g_2, m),
                         branch_index=k, residual=0.0)
        states.append(replace(st, residual=residual(st, params, drive, det)))
    return states


def count_real_roots(params: SystemParams, det: Detunings) -> int:
    return len(_real_roots(*_cubic_terms(params, det)))
