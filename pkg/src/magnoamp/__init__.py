"""Probe transmission, group delay and steady states of a gain-loss cavity pair
coupled to a magnon and a phonon mode."""
from .config import COLUMNS, RunConfig, SweepSpec, emit_config, load_config, parse_config
from .errors import ConfigError, EmptySolutionError, PoleError, SingularConfigurationError
from .model import (DEFAULT_CONSTANTS, TWO_PI, Detunings, DriveConfig, PhysicalConstants,
                    SystemParams, compute_detunings, ghz, hz, kerr_validity, mhz,
                    probe_amplitude, rabi_frequency, spin_count)
from .presets import KAPPA2_CALIBRATION, PRESETS, preset_config
from .response import (OutputField, ResponseAmplitudes, drift_matrix, output_field,
                       response_general, response_general_batch, response_resonant)
from .runner import emit_csv, format_csv, run_config, run_preset, run_sweep
from .spectra import (Band, Grid, SpectrumTable, StabilityReport, drift_eigenvalues,
                      evaluate_point, find_amplification_bands, group_delay, half_gain_level,
                      phase, significant_extrema, sweep_spectrum)
from .steady import (SteadyState, count_real_roots, cubic_coefficients, effective_coupling,
                     effective_detuning, residual, solve_steady_state)

__version__ = "0.1.0"

__all__ = [
    "Band", "COLUMNS", "compute_detunings", "ConfigError", "count_real_roots",
    "cubic_coefficients", "DEFAULT_CONSTANTS", "Detunings", "drift_eigenvalues",
    "drift_matrix", "DriveConfig", "effective_coupling", "effective_detuning", "emit_config",
    "emit_csv", "EmptySolutionError", "evaluate_point", "find_amplification_bands",
    "format_csv", "ghz", "Grid", "group_delay", "half_gain_level", "hz", "KAPPA2_CALIBRATION",
    "kerr_validity", "load_config", "mhz", "output_field", "OutputField", "parse_config",
    "phase", "PhysicalConstants", "PoleError", "preset_config", "PRESETS", "probe_amplitude",
    "rabi_frequency", "residual", "response_general", "response_general_batch",
    "response_resonant", "ResponseAmplitudes", "run_config", "run_preset", "run_sweep",
    "RunConfig", "significant_extrema", "SingularConfigurationError", "solve_steady_state",
    "SpectrumTable", "spin_count", "StabilityReport", "SteadyState", "sweep_spectrum",
    "SweepSpec", "SystemParams", "TWO_PI",
]
