"""Run configuration: a small ``[section]`` / ``key = value`` document.

Frequencies are written as ordinary frequencies with the unit in the key
name (``J_over_2pi_MHz = 0.6``) and converted to rad/s once, on load.

Example::

    [system]
    J_over_2pi_MHz = 0.6
    kappa_2_over_2pi_MHz = -1.0

    [grid]
    start = 0.5
    stop = 1.5
    points = 4001

    [run]
    mode = resonant
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property

from .errors import ConfigError
from .model import (DEFAULT_CONSTANTS, TWO_PI, DriveConfig, SystemParams, compute_detunings,
                    probe_amplitude, rabi_frequency, spin_count)
from .spectra import Grid

_UNIT = {"GHz": 1e9, "MHz": 1e6, "kHz": 1e3, "Hz": 1.0}

# key -> default (None means "absent unless given")
SYSTEM_KEYS = {
    "omega_a1_over_2pi_GHz": 10.0,
    "omega_a2_over_2pi_GHz": 10.0,
    "omega_m_over_2pi_GHz": 10.0,
    "omega_b_over_2pi_MHz": 10.0,
    "kappa_1_over_2pi_MHz": 2.0,
    "kappa_2_over_2pi_MHz": -1.0,
    "kappa_m_over_2pi_MHz": 0.1,
    "kappa_b_over_2pi_Hz": 100.0,
    "g_1_over_2pi_MHz": 1.0,
    "J_over_2pi_MHz": 0.0,
    "g_2_over_2pi_Hz": 0.0,
    "G_over_2pi_MHz": 3.5,
    "Omega_over_2pi_MHz": None,
    "K_over_2pi_Hz": 0.0,
}
DRIVE_KEYS = {
    "omega_pu_over_2pi_GHz": 9.99,
    "P_p_W": 0.0,
    "epsilon_pr": None,
    "B_0_T": 0.0,
    "sphere_diameter_um": 250.0,
}
GRID_KEYS = {"start": 0.5, "stop": 1.5, "points": 4001}
MODES = ("resonant", "general")
PARAMETERIZATIONS = ("direct-G", "drive-derived")
COLUMNS = ("delta_over_omega_b", "re_tp", "im_tp", "abs_tp_sq", "re_quad", "im_quad",
           "phi_t", "tau_g", "divergent")
RUN_KEYS = {"mode": "general", "parameterization": "direct-G", "outputs": ",".join(COLUMNS)}


def to_angular(key: str, value: float) -> float:
    """Convert a ``*_over_2pi_<unit>`` value to rad/s."""
    unit = key.rsplit("_", 1)[1]
    return TWO_PI * value * _UNIT[unit]


@dataclass(frozen=True)
class RunConfig:
    """Validated run settings; ``system``/``drive`` keep the user-unit values.

    The rad/s quantities are derived once and cached (``params``, ``drive_config``).
    """

    system: dict = field(default_factory=lambda: dict(SYSTEM_KEYS))
    drive: dict = field(default_factory=lambda: dict(DRIVE_KEYS))
    grid: Grid = field(default_factory=Grid)
    mode: str = "general"
    parameterization: str = "direct-G"
    outputs: tuple = COLUMNS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}", key="mode")
        if self.parameterization not in PARAMETERIZATIONS:
            raise ConfigError(f"parameterization must be one of {PARAMETERIZATIONS}",
                              key="parameterization")
        bad = [c for c in self.outputs if c not in COLUMNS]
        if bad or not self.outputs:
            raise ConfigError(f"unknown output columns {bad}", key="outputs")
        # validates the physics eagerly so a bad document fails at load time
        try:
            self.params
            self.drive_config
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def with_values(self, **changes) -> "RunConfig":
        """Copy with some ``[system]`` or ``[drive]`` keys replaced."""
        system, drive = dict(self.system), dict(self.drive)
        for k, v in changes.items():
            if k in SYSTEM_KEYS:
                system[k] = v
            elif k in DRIVE_KEYS:
                drive[k] = v
            else:
                raise ConfigError("unknown parameter", key=k)
        return replace(self, system=system, drive=drive)

    @cached_property
    def omega_pu(self) -> float:
        return to_angular("omega_pu_over_2pi_GHz", self.drive["omega_pu_over_2pi_GHz"])

    @cached_property
    def params(self) -> SystemParams:
        s = self.system
        ang = {k: to_angular(k, v) for k, v in s.items() if "_over_2pi_" in k and v is not None}
        direct = self.parameterization == "direct-G"
        Omega = None
        if not direct:
            if s.get("Omega_over_2pi_MHz") is not None:
                Omega = ang["Omega_over_2pi_MHz"]
            else:
                geom = spin_count(self.drive["sphere_diameter_um"] * 1e-6, DEFAULT_CONSTANTS)
                Omega = rabi_frequency(self.drive["B_0_T"], geom.N_spins, DEFAULT_CONSTANTS)
        return SystemParams(
            omega_a1=ang["omega_a1_over_2pi_GHz"], omega_a2=ang["omega_a2_over_2pi_GHz"],
            omega_m=ang["omega_m_over_2pi_GHz"], omega_b=ang["omega_b_over_2pi_MHz"],
            kappa_1=ang["kappa_1_over_2pi_MHz"], kappa_2=ang["kappa_2_over_2pi_MHz"],
            kappa_m=ang["kappa_m_over_2pi_MHz"], kappa_b=ang["kappa_b_over_2pi_Hz"],
            g_1=ang["g_1_over_2pi_MHz"], J=ang["J_over_2pi_MHz"], g_2=ang["g_2_over_2pi_Hz"],
            G_direct=complex(ang["G_over_2pi_MHz"]) if direct else None,
            Omega=Omega, K=ang["K_over_2pi_Hz"],
        )

    @cached_property
    def drive_config(self) -> DriveConfig:
        """Drive settings with the probe parked at ``delta = omega_b``."""
        p = self.params
        omega_pr = self.omega_pu + p.omega_b
        eps = self.drive.get("epsilon_pr")
        if eps is None:
            P = self.drive["P_p_W"]
            eps = probe_amplitude(P, p.kappa_1, omega_pr) if P > 0 else 1.0
        return DriveConfig(omega_pu=self.omega_pu, omega_pr=omega_pr,
                           P_p=self.drive["P_p_W"], B_0=self.drive["B_0_T"], epsilon_pr=eps)

    def detunings(self):
        return compute_detunings(self.params, self.drive_config)


def _parse_number(text: str, lineno: int, key: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(f"malformed number {text!r}", line=lineno, key=key) from None
    if not math.isfinite(v):
        raise ConfigError("value must be finite", line=lineno, key=key)
    return v


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    Raises
    ------
    ConfigError
        On unknown sections or keys, malformed numbers, duplicate keys or
        violated invariants; the message names the line and key.
    """
    sections = {"system": {}, "drive": {}, "grid": {}, "run": {}}
    known = {"system": SYSTEM_KEYS, "drive": DRIVE_KEYS, "grid": GRID_KEYS, "run": RUN_KEYS}
    where = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in sections:
                raise ConfigError(f"unknown section [{current}]", line=lineno)
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if current is None:
            raise ConfigError("key outside of any section", line=lineno, key=key)
        if key not in known[current]:
            raise ConfigError(f"unknown key in [{current}]", line=lineno, key=key)
        if key in sections[current]:
            raise ConfigError("duplicate key", line=lineno, key=key)
        where[key] = lineno
        if current == "run":
            sections[current][key] = value
        elif current == "grid" and key == "points":
            v = _parse_number(value, lineno, key)
            if v != int(v):
                raise ConfigError("points must be an integer", line=lineno, key=key)
            sections[current][key] = int(v)
        else:
            sections[current][key] = _parse_number(value, lineno, key)

    system = {**SYSTEM_KEYS, **sections["system"]}
    drive = {**DRIVE_KEYS, **sections["drive"]}
    g = {**GRID_KEYS, **sections["grid"]}
    try:
        grid = Grid(g["start"], g["stop"], int(g["points"]))
    except ValueError as exc:
        bad = "points" if int(g["points"]) < 9 else "start"
        raise ConfigError(str(exc), line=where.get(bad), key=bad) from None
    run = {**RUN_KEYS, **sections["run"]}
    outputs = tuple(c.strip() for c in run["outputs"].split(",") if c.strip())
    try:
        return RunConfig(system=system, drive=drive, grid=grid, mode=run["mode"],
                         parameterization=run["parameterization"], outputs=outputs)
    except ConfigError as exc:
        if exc.line is None and exc.key in where:
            raise ConfigError(str(exc).split(": ", 1)[-1], line=where[exc.key],
                              key=exc.key) from None
        raise


def emit_config(cfg: RunConfig) -> str:
    """Serialize a config so that ``parse_config`` reproduces it exactly."""
    out = ["[system]"]
    out += [f"{k} = {v!r}" for k, v in cfg.system.items() if v is not None]
    out += ["", "[drive]"]
    out += [f"{k} = {v!r}" for k, v in cfg.drive.items() if v is not None]
    out += ["", "[grid]", f"start = {cfg.grid.start!r}", f"stop = {cfg.grid.stop!r}",
            f"points = {cfg.grid.points}", "", "[run]", f"mode = {cfg.mode}",
            f"parameterization = {cfg.parameterization}", f"outputs = {','.join(cfg.outputs)}"]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SweepSpec:
    base: RunConfig
    axis: str
    values: tuple

    def __post_init__(self):
        if self.axis not in SYSTEM_KEYS and self.axis not in DRIVE_KEYS:
            raise ConfigError("sweep axis is not a parameter", key=self.axis)
        if not self.values:
            raise ConfigError("sweep needs at least one value", key=self.axis)
        if not all(math.isfinite(v) for v in self.values):
            raise ConfigError("sweep values must be finite", key=self.axis)

    def configs(self) -> list:
        return [self.base.with_values(**{self.axis: v}) for v in self.values]


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


__all__ = ["COLUMNS", "RunConfig", "SweepSpec", "emit_config", "load_config", "parse_config",
           "to_angular"]
