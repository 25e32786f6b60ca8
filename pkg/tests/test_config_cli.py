import math
import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from magnoamp import cli
from magnoamp.config import (COLUMNS, RunConfig, SweepSpec, emit_config,
                             parse_config, to_angular)
from magnoamp.errors import ConfigError
from magnoamp.model import TWO_PI
from magnoamp.presets import KAPPA2_CALIBRATION, PRESETS, preset_config
from magnoamp.runner import emit_csv, format_csv, run_config, run_preset, run_sweep

DOC = """\
# comment
[system]
J_over_2pi_MHz = 0.6
kappa_2_over_2pi_MHz = -1.0   # gain

[grid]
start = 0.5
stop = 1.5
points = 101

[run]
mode = resonant
"""


def test_parse_basic_and_units():
    cfg = parse_config(DOC)
    assert cfg.params.J == pytest.approx(TWO_PI * 0.6e6)
    assert cfg.params.kappa_2 == pytest.approx(-TWO_PI * 1e6)
    assert cfg.grid.points == 101 and cfg.mode == "resonant"
    assert cfg.params.kappa_b == pytest.approx(TWO_PI * 100)
    assert to_angular("omega_a1_over_2pi_GHz", 10.0) == TWO_PI * 1e10


def test_default_pump_honors_detuning_condition():
    det = RunConfig().detunings()
    wb = RunConfig().params.omega_b
    assert det.Delta_a1 == pytest.approx(wb, rel=1e-6)
    assert det.delta == pytest.approx(wb, rel=1e-6)


@pytest.mark.parametrize("doc,line,key", [
    ("[system]\nJ_over_2pi_MHz = abc\n", 2, "J_over_2pi_MHz"),
    ("[system]\nnope = 1\n", 2, "nope"),
    ("[bogus]\n", 1, None),
    ("[system]\nJ_over_2pi_MHz = 1\nJ_over_2pi_MHz = 2\n", 3, "J_over_2pi_MHz"),
    ("[grid]\npoints = 10.5\n", 2, "points"),
    ("[grid]\npoints = 3\n", 2, "points"),
    ("[system]\nkappa_1_over_2pi_MHz = inf\n", 2, "kappa_1_over_2pi_MHz"),
    ("J_over_2pi_MHz = 1\n", 1, "J_over_2pi_MHz"),
    ("[system]\nJ_over_2pi_MHz\n", 2, None),
    ("[run]\nmode = fast\n", 2, "mode"),
])
def test_parse_errors_name_line_and_key(doc, line, key):
    with pytest.raises(ConfigError) as info:
        parse_config(doc)
    assert info.value.line == line
    assert info.value.key == key
    assert f"line {line}" in str(info.value)


def test_invariant_violation_is_config_error():
    with pytest.raises(ConfigError):
        parse_config("[system]\nkappa_1_over_2pi_MHz = -2\n")


finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
positive = st.floats(1e-3, 50, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(J=st.floats(0, 20), k1=positive, k2=finite, g1=st.floats(0, 20), G=st.floats(0, 20),
       start=st.floats(0.0, 0.9), span=st.floats(0.05, 2.0), points=st.integers(9, 5000),
       mode=st.sampled_from(["resonant", "general"]), pump=st.floats(9.0, 11.0))
def test_config_round_trip(J, k1, k2, g1, G, start, span, points, mode, pump):
    doc = (f"[system]\nJ_over_2pi_MHz = {J!r}\nkappa_1_over_2pi_MHz = {k1!r}\n"
           f"kappa_2_over_2pi_MHz = {k2!r}\ng_1_over_2pi_MHz = {g1!r}\nG_over_2pi_MHz = {G!r}\n"
           f"[drive]\nomega_pu_over_2pi_GHz = {pump!r}\n"
           f"[grid]\nstart = {start!r}\nstop = {start + span!r}\npoints = {points}\n"
           f"[run]\nmode = {mode}\n")
    once = parse_config(doc)
    twice = parse_config(emit_config(once))
    assert twice == once
    assert twice.params == once.params


# target values per preset (ordinary frequencies, MHz)
PRESET_VALUES = {
    "fig2a": dict(J=0.6, g1=0.0, G=0.0), "fig2b": dict(J=0.8, g1=0.0, G=0.0),
    "fig2c": dict(J=2.0, g1=0.0, G=0.0), "fig2d": dict(J=6.0, g1=0.0, G=0.0),
    "fig3a": dict(J=3.0, g1=1.0, G=0.0), "fig3b": dict(J=3.0, g1=1.2, G=0.0),
    "fig3c": dict(J=3.0, g1=1.5, G=0.0), "fig3d": dict(J=3.0, g1=2.0, G=0.0),
    "fig4a": dict(J=0.64, g1=6.0, G=2.0), "fig4b": dict(J=0.8, g1=6.0, G=2.0),
    "fig4c": dict(J=2.0, g1=6.0, G=2.0), "fig4d": dict(J=4.0, g1=6.0, G=2.0),
    "fig6": dict(J=6.3, g1=6.1, G=2.0),
}


@pytest.mark.parametrize("name", sorted(PRESET_VALUES))
def test_preset_fidelity(name):
    p = preset_config(name).params
    want = PRESET_VALUES[name]
    assert p.J == pytest.approx(TWO_PI * want["J"] * 1e6, rel=1e-15)
    assert p.g_1 == pytest.approx(TWO_PI * want["g1"] * 1e6, rel=1e-15)
    assert abs(p.G_direct) == pytest.approx(TWO_PI * want["G"] * 1e6, rel=1e-15)
    # shared experimental parameters
    assert p.omega_a1 == p.omega_a2 == pytest.approx(TWO_PI * 10e9)
    assert p.omega_b == pytest.approx(TWO_PI * 10e6)
    assert p.kappa_1 == pytest.approx(TWO_PI * 2e6)
    assert p.kappa_m == pytest.approx(TWO_PI * 0.1e6)
    assert p.kappa_b == pytest.approx(TWO_PI * 100)
    family = name[:4]
    assert p.kappa_2 == pytest.approx(TWO_PI * KAPPA2_CALIBRATION[family][0] * 1e6)


def test_fig5_presets_shift_magnon_detuning():
    for name, ratio in (("fig5a", 0.5), ("fig5b", 1.5)):
        cfg = preset_config(name)
        det = cfg.detunings()
        assert det.Delta_m_tilde == pytest.approx(ratio * cfg.params.omega_b, rel=1e-6)
        assert cfg.mode == "general"


def test_preset_unknown_and_override():
    with pytest.raises(KeyError):
        preset_config("fig9")
    cfg = preset_config("fig2a", kappa2_over_2pi_mhz=-0.3)
    assert cfg.params.kappa_2 == pytest.approx(-TWO_PI * 0.3e6)
    assert set(KAPPA2_CALIBRATION) == {re.sub(r"^(fig\d)[a-d]$", r"\1", n) for n in PRESETS}


def test_csv_format():
    cfg = preset_config("threshold")
    text = format_csv(run_config(cfg))
    lines = text.split("\n")
    assert lines[0] == ",".join(COLUMNS)
    assert text.endswith("\n") and "\r" not in text
    assert len(lines) == cfg.grid.points + 2
    row = lines[1].split(",")
    assert len(row) == len(COLUMNS) and row[-1] in ("0", "1")
    assert float(row[0]) == 0.5


def test_csv_missing_fields_for_divergent_rows():
    cfg = preset_config("threshold").with_values(J_over_2pi_MHz=math.sqrt(2.0))
    t = run_config(cfg)
    assert t.divergent.sum() == 1
    i = int(np.flatnonzero(t.divergent)[0])
    fields = format_csv(t).split("\n")[i + 1].split(",")
    assert fields[-1] == "1" and fields[1] == "" and fields[7] == ""


def test_csv_float_round_trip(tmp_path):
    t = run_preset("fig4c")
    data = emit_csv(t, tmp_path / "out.csv")
    assert (tmp_path / "out.csv").read_bytes() == data
    vals = np.loadtxt(tmp_path / "out.csv", delimiter=",", skiprows=1, usecols=3)
    assert np.array_equal(vals, t.abs_t_p_sq)


def test_sweep_determinism_across_workers():
    spec = SweepSpec(preset_config("fig2a"), "J_over_2pi_MHz", (0.6, 0.8, 2.0, 6.0, 1.1))
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=8)
    assert serial.summary_csv() == parallel.summary_csv()
    for a, b in zip(serial.tables, parallel.tables):
        assert format_csv(a) == format_csv(b)
    assert [r["value"] for r in serial.summary] == list(spec.values)


def test_sweep_records_failures():
    base = RunConfig(parameterization="drive-derived").with_values(
        Omega_over_2pi_MHz=1.0, kappa_2_over_2pi_MHz=0.0, J_over_2pi_MHz=1.0,
        omega_a2_over_2pi_GHz=9.99)
    res = run_sweep(SweepSpec(base, "g_1_over_2pi_MHz", (1.0,)))
    assert res.tables == [None] and "SingularConfigurationError" in res.errors[0]
    with pytest.raises(ConfigError):
        SweepSpec(base, "nonsense", (1.0,))
    with pytest.raises(ConfigError):
        SweepSpec(base, "J_over_2pi_MHz", ())


def test_drive_derived_run_uses_steady_state():
    cfg = RunConfig(parameterization="drive-derived").with_values(
        Omega_over_2pi_MHz=1e3, g_2_over_2pi_Hz=1.0)
    t = run_config(cfg)
    st_ = t.meta["steady_state"]
    assert st_.residual < 1e-9 and abs(st_.G_eff) > 0
    assert len(t) == cfg.grid.points


def test_drive_derived_from_field():
    cfg = RunConfig(parameterization="drive-derived").with_values(B_0_T=1e-10)
    assert cfg.params.Omega > 0


# --- command line -------------------------------------------------------------

def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_preset_stdout(capsys):
    code, out, _ = run_cli(["preset", "fig4c", "--grid", "0.9:1.1:21"], capsys)
    assert code == 0
    assert out.splitlines()[0] == ",".join(COLUMNS) and len(out.splitlines()) == 22


def test_cli_spectrum_config_and_out(tmp_path, capsys):
    cfgp = tmp_path / "run.cfg"
    cfgp.write_text(DOC)
    outp = tmp_path / "s.csv"
    code, _, _ = run_cli(["spectrum", "--config", str(cfgp), "--out", str(outp)], capsys)
    assert code == 0 and len(outp.read_text().splitlines()) == 102
    code, out, _ = run_cli(["delay", "--config", str(cfgp)], capsys)
    assert code == 0 and out.startswith("delta_over_omega_b,phi_t,tau_g,divergent\n")


def test_cli_kappa2_override(capsys):
    _, a, _ = run_cli(["preset", "fig2a", "--grid", "0.9:1.1:11"], capsys)
    _, b, _ = run_cli(["preset", "fig2a", "--grid", "0.9:1.1:11", "--kappa2-over-2pi-mhz",
                       "-0.2"], capsys)
    assert a != b


def test_cli_eigen_and_sweep(tmp_path, capsys):
    code, out, _ = run_cli(["eigen", "--config", "/dev/null"], capsys)
    assert code == 0 and len(out.splitlines()) == 5
    code, out, _ = run_cli(["sweep", "--axis", "J_over_2pi_MHz", "--values", "0.6,2",
                            "--grid", "0.5:1.5:101"], capsys)
    assert code == 0 and len(out.splitlines()) == 3
    code, _, _ = run_cli(["sweep", "--axis", "J_over_2pi_MHz", "--values", "0.6,2",
                          "--out", str(tmp_path / "sw"), "--grid", "0.5:1.5:101"], capsys)
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "sw").iterdir()) == [
        "summary.csv", "table_000.csv", "table_001.csv"]


def test_cli_steady(tmp_path, capsys):
    cfgp = tmp_path / "s.cfg"
    cfgp.write_text("[system]\nOmega_over_2pi_MHz = 1000\ng_2_over_2pi_Hz = 1\n"
                    "[run]\nparameterization = drive-derived\n")
    code, out, _ = run_cli(["steady", "--config", str(cfgp)], capsys)
    assert code == 0 and out.startswith("branch_index,population")
    code, _, err = run_cli(["steady"], capsys)
    assert code == 2 and "parameterization" in err


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[system]\nJ_over_2pi_MHz = x\n")
    code, _, err = run_cli(["spectrum", "--config", str(bad)], capsys)
    assert code == 2 and "line 2" in err
    assert run_cli(["preset", "nope"], capsys)[0] == 2
    assert run_cli(["spectrum", "--grid", "1:2"], capsys)[0] == 2
    assert run_cli(["spectrum", "--config", str(tmp_path / "missing.cfg")], capsys)[0] == 4
    assert run_cli(["preset", "fig2a", "--out", str(tmp_path / "no" / "x.csv")], capsys)[0] == 4
    sing = tmp_path / "sing.cfg"
    sing.write_text("[system]\nOmega_over_2pi_MHz = 1\nkappa_2_over_2pi_MHz = 0\n"
                    "omega_a2_over_2pi_GHz = 9.99\nJ_over_2pi_MHz = 1\n"
                    "[run]\nparameterization = drive-derived\n")
    assert run_cli(["steady", "--config", str(sing)], capsys)[0] == 3
