"""
Magnon population and multistability
=====================================

With the magnomechanical coupling switched on, the magnon population solves
a cubic.  Ramping the drive shows the window with three branches.
"""

import numpy as np

from magnoamp import drift_eigenvalues, solve_steady_state
from magnoamp.model import Detunings, SystemParams, ghz, hz, mhz

wb = mhz(10)
params = SystemParams(omega_a1=ghz(10), omega_a2=ghz(10), omega_m=ghz(10), omega_b=wb,
                      kappa_1=mhz(2), kappa_2=mhz(-1), kappa_m=mhz(0.1), kappa_b=hz(100),
                      g_1=0.0, J=0.0, g_2=hz(10), Omega=1.0)
# magnon detuned ten linewidths above the pump
det = Detunings(wb, wb, mhz(1.0), mhz(1.0), 0.0, -wb)

for Omega in np.geomspace(5e10, 8e11, 9):
    states = solve_steady_state(params.replace(Omega=Omega), None, det)
    pops = ", ".join(f"{s.population:.3e}" for s in states)
    print(f"Omega = {Omega:.2e} rad/s: {len(states)} branch(es) |m_s|^2 = {pops}")

# Stability of each branch at one drive inside the window.  g_1 = 0 leaves the
# cavities decoupled, so only the magnon-phonon block matters here.  The drift
# matrix keeps the co-rotating sideband only, so it misses the intensity
# feedback that usually destabilizes the middle branch: all three print stable.
for s in solve_steady_state(params.replace(Omega=2e11), None, det):
    rep = drift_eigenvalues(params.replace(Omega=2e11), det.with_magnon_shift(s.Delta_m_tilde),
                            s.G_eff, modes=(2, 3))
    print(f"branch {s.branch_index}: max Re(eig) = {rep.max_real_part:.3e} rad/s")
