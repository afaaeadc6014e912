import csv
import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from dotchain import plateau_coupling, solve_hold_time
from dotchain.cli import main
from dotchain.config import config_from_strings, load_config_file
from dotchain.harness import run_figure2, run_figure3, run_measure_demo, run_prepare

from oracles import kron_chain, P_ONE


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def cfg_with(**overrides):
    return config_from_strings({k: str(v) for k, v in overrides.items()})


def test_figure2_outputs(tmp_path, dev, golden):
    paths = run_figure2(cfg_with(), tmp_path)
    header, rows = read_csv(paths["figure2a"])
    assert header == ["epsilon_mev", "coupling_mev"]
    assert len(rows) == 2001
    eps = [float(r[0]) for r in rows]
    coupling = [float(r[1]) for r in rows]
    assert eps[0] == -2.5 and eps[-1] == 2.5
    assert max(coupling) == pytest.approx(golden["ising_coupling_max_default_mev"], rel=1e-4)
    assert max(coupling) == pytest.approx(5.54e-4, rel=5e-3)
    assert all(b >= a for a, b in zip(coupling, coupling[1:]))

    header, rows = read_csv(paths["figure2c"])
    assert header == ["t_ns", "epsilon_mev", "coupling_mev"]
    assert len(rows) == 2001
    t = np.array([float(r[0]) for r in rows])
    eps_t = np.array([float(r[1]) for r in rows])
    c_t = np.array([float(r[2]) for r in rows])
    tau2 = solve_hold_time(1.0, dev)
    assert t[0] == 0.0 and t[-1] == pytest.approx(2.0 + tau2, rel=1e-12)
    assert eps_t.min() == -2.5 and eps_t.max() == 2.5
    # flat top at the plateau coupling throughout the hold
    hold = (t >= 1.0) & (t <= 1.0 + tau2)
    plateau = plateau_coupling(cfg_with().build_pulse(), dev)
    assert hold.sum() > 100
    assert np.allclose(c_t[hold], plateau, rtol=1e-12)
    assert paths["manifest"].exists()


def test_figure2_rejects_invalid_before_writing(tmp_path):
    from dotchain.config import ConfigError

    with pytest.raises(ConfigError):
        cfg_with(tunnel_coupling_mev=0)
    assert list(tmp_path.iterdir()) == []


def test_figure3_grid(tmp_path):
    cfg = cfg_with(trials=400, seed=5, sigma_over_pi="0.0,0.05")
    paths = run_figure3(cfg, tmp_path)
    header, rows = read_csv(paths["fidelity"])
    assert header == ["n", "sigma_over_pi", "mc_mean", "mc_stderr", "exact_mean", "trials", "seed"]
    assert len(rows) == 19 + 2  # n-sweep 2..20 plus two sigma rows

    n_sweep = rows[:19]
    assert [int(r[0]) for r in n_sweep] == list(range(2, 21))
    assert all(float(r[1]) == 0.03 for r in n_sweep)
    means = [float(r[2]) for r in n_sweep]
    errs = [float(r[3]) for r in n_sweep]
    exacts = [float(r[4]) for r in n_sweep]
    # monotone non-increasing within sampling error; exact strictly decreasing
    for k in range(len(means) - 1):
        assert means[k + 1] <= means[k] + 4 * (errs[k] + errs[k + 1])
        assert exacts[k + 1] < exacts[k]
    for r in rows:
        assert abs(float(r[2]) - float(r[4])) <= 4 * float(r[3]) + 1e-12
        assert int(r[5]) == 400 and int(r[6]) == 5

    sigma_rows = rows[19:]
    assert [float(r[1]) for r in sigma_rows] == [0.0, 0.05]
    assert all(int(r[0]) == 20 for r in sigma_rows)
    # sigma = 0 row: both estimators exactly 1
    assert float(sigma_rows[0][2]) == 1.0
    assert float(sigma_rows[0][4]) == 1.0


def test_prepare_defaults(tmp_path):
    report = run_prepare(cfg_with(n_qubits=10), tmp_path / "run")
    assert report.fidelity_to_ideal >= 1 - 1e-8
    assert all(s >= 1 - 1e-8 for s in report.stabilizers)
    assert report.passed
    assert report.bond_phase_rad == pytest.approx(math.pi, rel=1e-9)
    written = json.loads((tmp_path / "run" / "prepare_report.json").read_text())
    assert written["passed"] is True
    assert written["n_qubits"] == 10
    header, rows = read_csv(tmp_path / "run" / "stabilizers.csv")
    assert header == ["site", "expectation"]
    assert len(rows) == 10


def test_prepare_single_qubit(tmp_path):
    report = run_prepare(cfg_with(n_qubits=1), tmp_path)
    assert report.fidelity_to_ideal == pytest.approx(1.0, abs=1e-12)
    assert report.passed


def test_prepare_half_phase(tmp_path, dev):
    # rectangular pulse at half the calibrated hold leaves the bond at pi/2:
    # single-bond fidelity (5 + 3 cos(pi/2))/8 = 0.625
    tau2 = solve_hold_time(0.0, dev)
    report = run_prepare(cfg_with(n_qubits=2, tau1_ns=0.0, tau2_ns=tau2 / 2), tmp_path)
    assert report.bond_phase_rad == pytest.approx(math.pi / 2, rel=1e-9)
    assert report.fidelity_to_ideal == pytest.approx(0.625, rel=1e-6)
    assert not report.passed


def test_measure_demo(tmp_path):
    cfg = cfg_with(n_qubits=4, seed=3)
    paths = run_measure_demo(cfg, tmp_path)
    header, schedule_rows = read_csv(paths["schedule"])
    assert header == ["round", "qubit"]
    assert {int(r[0]) for r in schedule_rows} == {0, 1}  # path 2-coloring
    assert sorted(int(r[1]) for r in schedule_rows) == [0, 1, 2, 3]

    header, record_rows = read_csv(paths["records"])
    assert header == ["round", "qubit", "axis_x", "axis_y", "axis_z", "outcome", "probability"]
    assert len(record_rows) == 4
    for row in record_rows:
        assert [float(row[2]), float(row[3]), float(row[4])] == [0.0, 0.0, 1.0]
        assert int(row[5]) in (-1, 1)
        assert 0.0 <= float(row[6]) <= 1.0


def test_measure_demo_empty_pattern(tmp_path):
    paths = run_measure_demo(cfg_with(n_qubits=3, measure_pattern="none"), tmp_path)
    _, record_rows = read_csv(paths["records"])
    _, schedule_rows = read_csv(paths["schedule"])
    assert record_rows == [] and schedule_rows == []


def test_measure_demo_statistics(tmp_path, dev):
    # all-z joint outcome frequencies on the 3-qubit cluster against the
    # Born weights from direct enumeration
    from dotchain.harness import prepare_chain
    from dotchain.measurement import Z_AXIS, run_schedule, schedule_rounds

    cfg = cfg_with(n_qubits=3)
    state, _ = prepare_chain(cfg)
    schedule = schedule_rounds(range(3))
    bases = {q: Z_AXIS for q in range(3)}
    trials = 10_000
    counts = np.zeros(8)
    for t in range(trials):
        records = run_schedule(state, schedule, bases, seed=t)
        index = 0
        for record in sorted(records, key=lambda r: r.qubit):
            index = (index << 1) | (record.outcome == 1)
        counts[index] += 1
    born = np.abs(state.amplitudes) ** 2
    tv = 0.5 * np.sum(np.abs(counts / trials - born))
    assert tv < 0.02


def test_manifest_contents(tmp_path):
    paths = run_figure2(cfg_with(seed=9), tmp_path)
    manifest = json.loads(paths["manifest"].read_text())
    assert manifest["command"] == "figure2"
    assert manifest["artifact"] == "dotchain"
    assert "PCG64" in manifest["rng_algorithm"]
    assert manifest["constants"]["coulomb_ev_nm"] == 1.43996
    assert "seed = 9" in manifest["config_text"]


def test_manifest_rerun_reproduces_bytes(tmp_path):
    cfg = cfg_with(trials=200, seed=21, sigma_over_pi="0.03")
    first = run_figure3(cfg, tmp_path / "a")
    again = config_from_strings(load_config_file(first["manifest"]))
    second = run_figure3(again, tmp_path / "b")
    assert first["fidelity"].read_bytes() == second["fidelity"].read_bytes()


def test_cli_prepare_exit_codes(tmp_path, dev):
    runner = CliRunner()
    ok = runner.invoke(main, ["prepare", "--qubits", "4", "--out", str(tmp_path / "ok")])
    assert ok.exit_code == 0, ok.output
    assert "verification passed" in ok.output

    # validation failure: zero tunnel coupling rejected before any run
    bad_cfg = tmp_path / "bad.cfg"
    bad_cfg.write_text("tunnel_coupling_mev = 0.0\n")
    bad = runner.invoke(
        main, ["prepare", "--config", str(bad_cfg), "--out", str(tmp_path / "bad")]
    )
    assert bad.exit_code == 1

    # threshold failure: miscalibrated hold -> stabilizers below 1 - 1e-6
    tau2 = solve_hold_time(0.0, dev)
    half_cfg = tmp_path / "half.cfg"
    half_cfg.write_text(f"tau1_ns = 0.0\ntau2_ns = {tau2 / 2!r}\nn_qubits = 2\n")
    failed = runner.invoke(
        main, ["prepare", "--config", str(half_cfg), "--out", str(tmp_path / "half")]
    )
    assert failed.exit_code == 2


def test_cli_overrides(tmp_path):
    runner = CliRunner()
    out = tmp_path / "f3"
    result = runner.invoke(
        main,
        [
            "figure3",
            "--trials",
            "150",
            "--seed",
            "8",
            "--sigma-over-pi",
            "0.02",
            "--out",
            str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    _, rows = read_csv(out / "fidelity.csv")
    assert len(rows) == 19 + 1
    assert float(rows[-1][1]) == 0.02
    assert int(rows[-1][5]) == 150 and int(rows[-1][6]) == 8


def test_cli_unknown_config_key(tmp_path):
    runner = CliRunner()
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("coupling = 3\n")
    result = runner.invoke(main, ["figure2", "--config", str(cfg), "--out", str(tmp_path)])
    assert result.exit_code == 1


def test_cli_missing_config_is_validation_failure(tmp_path):
    runner = CliRunner()
    result = runner.invoke(
        main, ["figure2", "--config", str(tmp_path / "absent.cfg"), "--out", str(tmp_path)]
    )
    assert result.exit_code == 1


def test_cli_reports_unreachable_calibration(tmp_path):
    # 20 ns ramps alone overshoot a pi bond phase; auto-calibration must fail
    # with the ramp-only phase in the diagnostics, not crash or write files
    runner = CliRunner()
    cfg = tmp_path / "long_ramp.cfg"
    cfg.write_text("tau1_ns = 20.0\nn_qubits = 2\n")
    out = tmp_path / "out"
    result = runner.invoke(main, ["prepare", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 1
    assert "unreachable" in result.output
    assert not out.exists()


def test_kron_helper_sanity():
    # guard the oracle itself: P1 x P1 on a 2-qubit chain marks index 3
    op = kron_chain(2, {0: P_ONE, 1: P_ONE})
    assert np.array_equal(np.diag(op).real, [0, 0, 0, 1])
