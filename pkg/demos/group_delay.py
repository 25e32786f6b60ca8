"""
Slow and fast light from the output phase
==========================================

The group delay is the derivative of the unwrapped output phase with
respect to the probe frequency.  Positive values are slow light, negative
values fast light.
"""


from magnoamp import Grid, run_preset, significant_extrema, sweep_spectrum
from magnoamp.model import Detunings, SystemParams, ghz, hz, mhz

# A bare lossy cavity first: the delay at resonance is 1/kappa_1.
wb = mhz(10)
bare = SystemParams(omega_a1=ghz(10), omega_a2=ghz(10), omega_m=ghz(10), omega_b=wb,
                    kappa_1=mhz(2), kappa_2=mhz(-1), kappa_m=mhz(0.1), kappa_b=hz(100),
                    g_1=0.0, J=0.0, G_direct=0.0)
det = Detunings(wb, wb, wb, wb, wb, 0.0)
for n in (4001, 8001):
    t = sweep_spectrum(Grid(0.5, 1.5, n), bare, det, 0.0)
    print(f"{n} points: tau_g(0) = {t.tau_g[n // 2]:.6e} s, 1/kappa_1 = {1 / bare.kappa_1:.6e} s")

# The full system on a fine grid.
table = run_preset("fig6")
peaks, dips = significant_extrema(table.tau_g)
x = table.delta_over_omega_b
print("slow-light peaks:", [f"{x[i]:.4f}: {table.tau_g[i]:.3e} s" for i in peaks])
print("fast-light dips: ", [f"{x[i]:.4f}: {table.tau_g[i]:.3e} s" for i in dips])
print("drift matrix stable:", table.stability.stable)
