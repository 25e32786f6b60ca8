"""Weak-probe linear response and the cavity-1 output field.

Amplitudes oscillating at the probe sideband ``exp(-i delta t)`` obey

    (i delta + M) v = -eps_pr e_1,    v = (a1+, a2+, m+, b+)

where ``M`` is the drift matrix of the linearized mean-field equations.  The
counter-rotating sideband is dropped.  When every detuning equals
``omega_b`` the system collapses to a continued fraction in
``lam = delta - omega_b``, available as :func:`response_resonant`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .model import Detunings, SystemParams

POLE_CONDITION = 1e14


@dataclass(frozen=True)
class ResponseAmplitudes:
    a_1p: complex
    a_2p: complex
    m_p: complex
    b_p: complex
    delta: float


@dataclass(frozen=True)
class OutputField:
    eps_out_rescaled: complex
    t_p: complex
    re_quad: float
    im_quad: float


def drift_matrix(params: SystemParams, det: Detunings, G: complex) -> np.ndarray:
    """Coefficient matrix of the linearized equations, mode order (a1, a2, m, b)."""
    G = complex(G)
    return np.array([
        [-(1j * det.Delta_a1 + params.kappa_1), -1j * params.J, -1j * params.g_1, 0],
        [-1j * params.J, -(1j * det.Delta_a2 + params.kappa_2), 0, 0],
        [-1j * params.g_1, 0, -(1j * det.Delta_m_tilde + params.kappa_m), -1j * G],
        [0, 0, -1j * G.conjugate(), -(1j * params.omega_b + params.kappa_b)],
    ], dtype=complex)


def resonant_denominator(lam, params: SystemParams, G: complex):
    """Continued-fraction denominator of the resonant response (vectorized)."""
    lam = np.asarray(lam, dtype=float)
    mech = params.kappa_m - 1j * lam + abs(G) ** 2 / (params.kappa_b - 1j * lam)
    return (params.kappa_1 - 1j * lam
            + params.J ** 2 / (params.kappa_2 - 1j * lam)
            + params.g_1 ** 2 / mech)


def response_resonant(lam: float, params: SystemParams, G: complex, eps_pr: float) -> complex:
    """Closed-form ``a1+`` when ``Delta_a1 = Delta_a2 = Delta_m_tilde = omega_b``.

    Raises
    ------
    PoleError
        If the denominator vanishes, i.e. the probe sits exactly on a
        real-frequency pole (lasing threshold).
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        den = complex(resonant_denominator(lam, params, G))
    if den == 0 or not np.isfinite(den):
        raise PoleError(f"response pole at lambda={lam!r}", lam=lam,
                        delta=lam + params.omega_b)
    return eps_pr / den


def _system(deltas, params, det, G):
    M = drift_matrix(params, det, G)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    return M[None, :, :] + 1j * deltas[:, None, None] * np.eye(4)[None, :, :]


def response_general_batch(deltas, params: SystemParams, det: Detunings, G: complex,
                           eps_pr: float):
    """Solve the 4x4 system at many probe detunings.

    Returns
    -------
    amps : ndarray, shape (n, 4)
        ``(a1+, a2+, m+, b+)`` per detuning; NaN where divergent.
    divergent : ndarray of bool
        True where the condition estimate exceeds ``POLE_CONDITION``.
    cond : ndarray
        Condition estimate per detuning.
    """
    A = _system(deltas, params, det, G)
    cond = np.linalg.cond(A)
    divergent = ~np.isfinite(cond) | (cond > POLE_CONDITION)
    amps = np.full((A.shape[0], 4), np.nan + 1j * np.nan)
    ok = ~divergent
    if ok.any():
        rhs = np.zeros((int(ok.sum()), 4, 1), dtype=complex)
        rhs[:, 0, 0] = -eps_pr
        amps[ok] = np.linalg.solve(A[ok], rhs)[:, :, 0]
    return amps, divergent, cond


def response_general(delta: float, params: SystemParams, det: Detunings, G: complex,
                     eps_pr: float) -> ResponseAmplitudes:
    """Fluctuation amplitudes at one probe detuning, any detuning pattern."""
    amps, divergent, cond = response_general_batch([delta], params, det, G, eps_pr)
    if divergent[0]:
        ev = np.linalg.eigvals(drift_matrix(params, det, G))
        # det(M + i delta) = 0  <=>  eigenvalue mu = -i delta
        nearest = complex(ev[np.argmin(np.abs(ev + 1j * delta))])
        raise PoleError(
            f"singular response matrix at delta={delta!r} (cond={cond[0]:.3g}); "
            f"nearest drift eigenvalue {nearest:.6g}",
            delta=delta, lam=delta - params.omega_b, condition=float(cond[0]),
            nearest_eigenvalue=nearest)
    a1, a2, m, b = amps[0]
    return ResponseAmplitudes(complex(a1), complex(a2), complex(m), complex(b), float(delta))


def output_field(a_1p: complex, kappa_1: float, eps_pr: float) -> OutputField:
    """Rescaled output ``2 kappa_1 a1+ / eps_pr`` and transmission ``1 - that``."""
    if not eps_pr > 0:
        raise ValueError("eps_pr must be positive to rescale the output field")
    eps = 2.0 * kappa_1 * complex(a_1p) / eps_pr
    return OutputField(eps_out_rescaled=eps, t_p=1 - eps, re_quad=eps.real, im_quad=eps.imag)
