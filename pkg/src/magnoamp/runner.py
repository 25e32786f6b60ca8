"""Run orchestration and CSV output."""
from __future__ import annotations

import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import COLUMNS, RunConfig, SweepSpec
from .presets import preset_config
from .spectra import (SpectrumTable, drift_eigenvalues, find_amplification_bands, half_gain_level,
                      sweep_spectrum)
from .steady import SteadyState, solve_steady_state


def operating_point(cfg: RunConfig, branch: int = 0):
    """Detunings and effective coupling the probe sees.

    In the drive-derived parameterization the steady state is solved and
    branch ``branch`` (ascending population) supplies ``G`` and the shifted
    magnon detuning.
    """
    p = cfg.params
    det = cfg.detunings()
    if not p.drive_derived:
        return det, p.G_direct, None
    states = solve_steady_state(p, cfg.drive_config, det)
    st = states[min(branch, len(states) - 1)]
    return det.with_magnon_shift(st.Delta_m_tilde), st.G_eff, st


def run_config(cfg: RunConfig, branch: int = 0) -> SpectrumTable:
    det, G, st = operating_point(cfg, branch)
    eps = cfg.drive_config.probe_amplitude(cfg.params.kappa_1)
    table = sweep_spectrum(cfg.grid, cfg.params, det, G, eps, mode=cfg.mode)
    if st is not None:
        table.meta["steady_state"] = st
    return table


def run_preset(name: str, kappa2_over_2pi_mhz: float | None = None) -> SpectrumTable:
    table = run_config(preset_config(name, kappa2_over_2pi_mhz))
    table.meta["preset"] = name
    return table


def _fmt(v) -> str:
    v = float(v)
    return repr(v) if np.isfinite(v) else ""


def format_csv(table: SpectrumTable, columns=COLUMNS) -> str:
    """CSV text: shortest round-trip floats, LF endings, empty undefined fields."""
    cols = {
        "delta_over_omega_b": table.delta_over_omega_b,
        "re_tp": table.t_p.real,
        "im_tp": table.t_p.imag,
        "abs_tp_sq": table.abs_t_p_sq,
        "re_quad": table.re_quad,
        "im_quad": table.im_quad,
        "phi_t": table.phi_t,
        "tau_g": table.tau_g,
    }
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for i in range(len(table)):
        fields = []
        for c in columns:
            if c == "divergent":
                fields.append("1" if table.divergent[i] else "0")
            else:
                fields.append(_fmt(cols[c][i]))
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


def emit_csv(table: SpectrumTable, destination, columns=COLUMNS) -> bytes:
    """Write the table as CSV to a path or binary/text stream; returns the bytes."""
    data = format_csv(table, columns).encode("utf-8")
    _write(data, destination)
    return data


def _write(data: bytes, destination):
    if destination is None:
        return
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as fh:
            fh.write(data)
    elif isinstance(destination, io.TextIOBase):
        destination.write(data.decode("utf-8"))
    else:
        destination.write(data)


@dataclass
class SweepResult:
    values: tuple
    tables: list
    errors: list
    summary: list

    def summary_csv(self) -> str:
        head = ["value", "n_bands", "threshold", "max_height", "total_width",
                "central_height", "centers", "error"]
        lines = [",".join(head)]
        for row in self.summary:
            lines.append(",".join([
                repr(row["value"]), str(row["n_bands"]), _fmt(row["threshold"]),
                _fmt(row["max_height"]), _fmt(row["total_width"]), _fmt(row["central_height"]),
                ";".join(repr(c) for c in row["centers"]), row["error"],
            ]))
        return "\n".join(lines) + "\n"


def band_summary(value, table: SpectrumTable | None, error: str = "") -> dict:
    nan = float("nan")
    if table is None:
        return dict(value=value, n_bands=0, threshold=nan, max_height=nan, total_width=nan,
                    central_height=nan, centers=[], error=error)
    level = half_gain_level(table)
    bands = find_amplification_bands(table, level)
    central = [b.height for b in bands if b.start <= 1.0 <= b.stop]
    return dict(value=value, n_bands=len(bands), threshold=level,
                max_height=max((b.height for b in bands), default=nan),
                total_width=sum(b.width for b in bands),
                central_height=central[0] if central else nan,
                centers=[b.center for b in bands], error=error)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    """One independent spectrum per axis value, in input order.

    Per-value failures are recorded in the summary instead of aborting.
    """
    def one(cfg):
        try:
            return run_config(cfg), ""
        except (ArithmeticError, ValueError) as exc:
            return None, f"{type(exc).__name__}: {exc}".replace(",", ";")

    configs = spec.configs()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(one, configs))
    tables = [t for t, _ in results]
    errors = [e for _, e in results]
    summary = [band_summary(v, t, e) for v, (t, e) in zip(spec.values, results)]
    return SweepResult(values=tuple(spec.values), tables=tables, errors=errors, summary=summary)


def steady_csv(states: list[SteadyState]) -> str:
    head = ["branch_index", "population", "re_a1s", "im_a1s", "re_a2s", "im_a2s", "re_ms",
            "im_ms", "re_bs", "im_bs", "Delta_m_tilde", "re_G", "im_G", "residual"]
    lines = [",".join(head)]
    for s in states:
        vals = [s.population, s.a_1s.real, s.a_1s.imag, s.a_2s.real, s.a_2s.imag,
                s.m_s.real, s.m_s.imag, s.b_s.real, s.b_s.imag, s.Delta_m_tilde,
                s.G_eff.real, s.G_eff.imag, s.residual]
        lines.append(",".join([str(s.branch_index)] + [_fmt(v) for v in vals]))
    return "\n".join(lines) + "\n"


def eigen_csv(cfg: RunConfig, branch: int = 0) -> str:
    det, G, _ = operating_point(cfg, branch)
    rep = drift_eigenvalues(cfg.params, det, G)
    lines = ["index,re_eig,im_eig,max_real_part,stable,ep_gap"]
    for i, ev in enumerate(rep.eigenvalues):
        lines.append(f"{i},{_fmt(ev.real)},{_fmt(ev.imag)},{_fmt(rep.max_real_part)},"
                     f"{int(rep.stable)},{_fmt(rep.ep_gap)}")
    return "\n".join(lines) + "\n"
