"""
Eigenvalue collision in the two-cavity subsystem
=================================================

For the passive/active cavity pair the two eigenvalues merge at
J = (kappa_1 + |kappa_2|) / 2 and the pair becomes stable once
J^2 > kappa_1 |kappa_2|.
"""

import numpy as np

from magnoamp import drift_eigenvalues
from magnoamp.model import Detunings, SystemParams, ghz, hz, mhz

wb = mhz(10)
det = Detunings(wb, wb, wb, wb, wb, 0.0)
base = SystemParams(omega_a1=ghz(10), omega_a2=ghz(10), omega_m=ghz(10), omega_b=wb,
                    kappa_1=mhz(2), kappa_2=mhz(-1), kappa_m=mhz(0.1), kappa_b=hz(100),
                    g_1=0.0, J=0.0, G_direct=0.0)

Js = np.linspace(0, mhz(3), 1000)
gaps = [drift_eigenvalues(base.replace(J=J), det, 0.0, modes=(0, 1)).ep_gap for J in Js]
k = int(np.argmin(gaps))
print(f"smallest eigenvalue gap at J/2pi = {Js[k] / mhz(1):.4f} MHz "
      f"(expected {(base.kappa_1 + abs(base.kappa_2)) / 2 / mhz(1):.4f} MHz)")

for J_mhz in (1.0, np.sqrt(2.0) - 0.01, np.sqrt(2.0) + 0.01, 1.5, 2.5):
    rep = drift_eigenvalues(base.replace(J=mhz(J_mhz)), det, 0.0, modes=(0, 1))
    print(f"J/2pi = {J_mhz:.3f} MHz: eigenvalues / 2pi MHz = "
          f"{np.round(rep.eigenvalues / mhz(1), 4)}, stable = {rep.stable}")
