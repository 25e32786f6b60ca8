"""Physical parameters, unit conventions and derived drive quantities.

Every rate and frequency is stored as an angular quantity (rad/s).  Values
quoted as ``X/2pi`` are multiplied by ``2*pi`` on the way in
(see :func:`hz` and :func:`mhz`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

TWO_PI = 2.0 * math.pi


def hz(nu: float) -> float:
    """Angular frequency for an ordinary frequency given in Hz."""
    return TWO_PI * nu


def mhz(nu: float) -> float:
    return TWO_PI * nu * 1e6


def ghz(nu: float) -> float:
    return TWO_PI * nu * 1e9


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0546e-34
    gamma: float = TWO_PI * 28e9  # rad/s per tesla
    rho: float = 4.22e27  # Fe3+ ions per m^3

    def __post_init__(self):
        for name in ("hbar", "gamma", "rho"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SystemParams:
    """Mode frequencies, damping/gain rates and couplings (all rad/s).

    ``kappa_2`` is signed: a negative value makes the second cavity active
    (net gain).  Exactly one of ``G_direct`` and ``Omega`` must be set; it
    selects whether the effective magnomechanical coupling is supplied
    directly or derived from the magnon drive through the steady state.
    """

    omega_a1: float
    omega_a2: float
    omega_m: float
    omega_b: float
    kappa_1: float
    kappa_2: float
    kappa_m: float
    kappa_b: float
    g_1: float
    J: float
    g_2: float = 0.0
    G_direct: Optional[complex] = None
    Omega: Optional[float] = None
    K: float = 0.0

    def __post_init__(self):
        for name in ("omega_a1", "omega_a2", "omega_m", "omega_b", "kappa_1",
                     "kappa_2", "kappa_m", "kappa_b", "g_1", "J", "g_2", "K"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.kappa_1 > 0:
            raise ValueError("kappa_1 must be positive (lossy input cavity)")
        for name in ("kappa_m", "kappa_b", "g_1", "J", "g_2", "K"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if (self.G_direct is None) == (self.Omega is None):
            raise ValueError("exactly one of G_direct and Omega must be given")
        if self.G_direct is not None and not np.isfinite(self.G_direct):
            raise ValueError("G_direct must be finite")
        if self.Omega is not None and not (np.isfinite(self.Omega) and self.Omega >= 0):
            raise ValueError("Omega must be finite and non-negative")

    @property
    def drive_derived(self) -> bool:
        return self.Omega is not None

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DriveConfig:
    omega_pu: float
    omega_pr: float
    P_p: float = 0.0
    B_0: float = 0.0
    epsilon_pr: Optional[float] = None

    def __post_init__(self):
        if not (self.omega_pu > 0 and self.omega_pr > 0):
            raise ValueError("pump and probe frequencies must be positive")
        if self.P_p < 0 or self.B_0 < 0:
            raise ValueError("P_p and B_0 must be non-negative")
        if self.epsilon_pr is not None and self.epsilon_pr < 0:
            raise ValueError("epsilon_pr must be non-negative")

    def probe_amplitude(self, kappa_1: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
        """Explicit ``epsilon_pr`` if given, otherwise derived from ``P_p``."""
        if self.epsilon_pr is not None:
            return self.epsilon_pr
        return probe_amplitude(self.P_p, kappa_1, self.omega_pr, consts)

    def with_probe(self, omega_pr: float) -> "DriveConfig":
        return replace(self, omega_pr=omega_pr)


@dataclass(frozen=True)
class Detunings:
    Delta_a1: float
    Delta_a2: float
    Delta_m: float
    Delta_m_tilde: float
    delta: float
    lam: float

    def with_magnon_shift(self, Delta_m_tilde: float) -> "Detunings":
        return replace(self, Delta_m_tilde=Delta_m_tilde)

    def with_probe_detuning(self, delta: float, omega_b: float) -> "Detunings":
        return replace(self, delta=delta, lam=delta - omega_b)


@dataclass(frozen=True)
class SphereGeometry:
    diameter: float
    V_m: float
    N_spins: float
    S_total: float


def compute_detunings(params: SystemParams, drive: DriveConfig) -> Detunings:
    """Rotating-frame detunings with respect to the pump.

    The effective magnon detuning starts equal to the bare one; the
    steady-state solver refines it when the drive-derived mode is active.
    """
    delta = drive.omega_pr - drive.omega_pu
    Delta_m = params.omega_m - drive.omega_pu
    return Detunings(
        Delta_a1=params.omega_a1 - drive.omega_pu,
        Delta_a2=params.omega_a2 - drive.omega_pu,
        Delta_m=Delta_m,
        Delta_m_tilde=Delta_m,
        delta=delta,
        lam=delta - params.omega_b,
    )


def rabi_frequency(B_0: float, N_spins: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Magnon drive Rabi frequency ``sqrt(5)/4 * gamma * sqrt(N) * B_0``."""
    if B_0 < 0:
        raise ValueError("B_0 must be non-negative")
    if not N_spins > 0:
        raise ValueError("N_spins must be positive")
    return math.sqrt(5.0) / 4.0 * consts.gamma * math.sqrt(N_spins) * B_0


def probe_amplitude(P_p: float, kappa_1: float, omega_pr: float,
                    consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    if not omega_pr > 0:
        raise ValueError("omega_pr must be positive")
    if not kappa_1 > 0:
        raise ValueError("kappa_1 must be positive")
    if P_p < 0:
        raise ValueError("P_p must be non-negative")
    return math.sqrt(2.0 * P_p * kappa_1 / (consts.hbar * omega_pr))


def spin_count(diameter: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> SphereGeometry:
    """Volume, Fe3+ ion count and total spin of a YIG sphere.

    For a 250 um sphere this gives ``S_total ~ 8.6e16``.
    """
    if not diameter > 0:
        raise ValueError("diameter must be positive")
    V_m = 4.0 / 3.0 * math.pi * (diameter / 2.0) ** 3
    N = consts.rho * V_m
    return SphereGeometry(diameter=diameter, V_m=V_m, N_spins=N, S_total=2.5 * N)


def kerr_validity(K: float, m_s: complex, Omega: float) -> float:
    """Ratio ``K |m_s|^3 / Omega``; the Kerr-free model needs it well below 1.

    Callers treat a ratio of 0.1 or more as a validity warning.
    """
    mag3 = abs(m_s) ** 3
    if Omega <= 0:
        if K > 0 and mag3 > 0:
            raise ValueError("Kerr validity undefined without magnon drive (Omega=0)")
        return 0.0
    return K * mag3 / Omega
