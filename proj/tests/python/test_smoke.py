"""Smoke tests for the python module and the CLI."""

import json
import math
import os
import subprocess

import numpy as np
import pytest

import rydnm


def test_trace_distance_reference_values():
    mixed = rydnm.DensityMatrix(np.eye(2, dtype=complex) / 2)
    plus = rydnm.DensityMatrix(np.full((2, 2), 0.5, dtype=complex))
    assert abs(rydnm.trace_distance(mixed, plus) - 0.5) < 1e-12
    assert abs(rydnm.trace_distance_two_level(mixed, plus) - 0.5) < 1e-12

    ones = rydnm.DensityMatrix.pure(2, 0)
    twos = rydnm.DensityMatrix.pure(2, 1)
    assert rydnm.trace_distance(ones, twos) == pytest.approx(1.0)


def test_tensor_product_and_partial_trace():
    sys_part = np.diag([0.25, 0.75]).astype(complex)
    det_part = np.diag([0.5, 0.3, 0.2]).astype(complex)
    full = rydnm.tensor_product(sys_part, det_part)
    assert full.shape == (6, 6)
    reduced = rydnm.partial_trace_detector(rydnm.DensityMatrix(full))
    assert np.allclose(reduced.matrix, sys_part)


def test_presets_and_derived_couplings():
    assert rydnm.preset_names() == ["fig2a", "fig2b", "fig2c", "fig3", "fig4"]
    cfg = rydnm.preset("fig3")
    assert cfg.physics.lasers.delta_p_mhz == -50.0
    couplings = rydnm.derive_couplings(cfg.physics.geometry)
    assert couplings.j_mhz() == pytest.approx(3.16, abs=5e-3)
    assert couplings.u1_mhz() == pytest.approx(-36.9, abs=5e-2)
    assert couplings.u2_mhz() == pytest.approx(-0.8, abs=5e-2)

    with pytest.raises(ValueError):
        rydnm.preset("fig9")


def test_propagation_conserves_trace_and_distance():
    cfg = rydnm.preset("fig3")
    cfg.integrator.t_max_us = 0.2
    model = rydnm.build_full_model(cfg.physics)
    assert np.allclose(model.hamiltonian, model.hamiltonian.conj().T)

    rho1 = rydnm.initial_state(rydnm.InitialState.state1)
    rho2 = rydnm.initial_state(rydnm.InitialState.state2)
    traj1 = rydnm.propagate(rho1, model, cfg.integrator)
    traj2 = rydnm.propagate(rho2, model, cfg.integrator)
    assert max(traj1.trace_defect) < 1e-8

    series = rydnm.distance_series(traj1, traj2)
    assert series.d_s[0] == pytest.approx(1.0, abs=1e-12)
    assert all(ds <= df + 1e-10 for ds, df in zip(series.d_s, series.d_full))
    nm = rydnm.non_markovianity(series)
    assert nm.n >= 0.0


def test_dark_state_detector_dynamics():
    lasers = rydnm.LaserParams()
    lasers.omega_p_mhz = 1.2
    lasers.omega_c_mhz = 20.0
    cfg = rydnm.IntegratorConfig()
    cfg.t_max_us = 2.0
    traj = rydnm.detector_only_propagate(
        rydnm.DensityMatrix.pure(3, 0), lasers, 0.0, cfg
    )
    assert traj.pop_e[-1] < 1e-4  # optical pumping towards the dark state


def test_detect_revivals_reference():
    t = [2 * math.pi * i / 200 for i in range(201)]
    series = [math.cos(x) ** 2 for x in t]
    revivals = rydnm.detect_revivals(t, series)
    assert len(revivals) == 1
    assert revivals[0].t_us == pytest.approx(math.pi, abs=0.1)
    assert rydnm.detect_revivals(t, sorted(series)) == []


def test_run_scenario_writes_artifacts(tmp_path):
    cfg = rydnm.parse_config(
        json.dumps(
            {
                "preset": "fig3",
                "label": "smoke",
                "integrator": {"t_max_us": 0.1},
                "output": {"out_dir": str(tmp_path)},
            }
        )
    )
    result = rydnm.run_scenario(cfg)
    assert (tmp_path / "smoke_trajectory.csv").exists()
    summary = json.loads((tmp_path / "smoke_summary.json").read_text())
    assert set(summary) == {
        "N",
        "positive_intervals",
        "revivals",
        "final_pops",
        "diagnostics",
    }
    assert summary["final_pops"]["pop1_rho1"] == pytest.approx(
        result.summary.final_pop1_rho1
    )
    header = (tmp_path / "smoke_trajectory.csv").read_text().splitlines()[0]
    assert header == (
        "t_us,pop1_rho1,pop2_rho1,pop_e_rho1,pop_r_rho1,pop1_rho2,D_S,"
        "sigma_S_per_us,D_full,trace_defect"
    )


def test_config_validation_errors():
    with pytest.raises(ValueError, match="geometry.R_um"):
        rydnm.parse_config('{"geometry": {"R_um": -1, "RD1_um": 1, "RD2_um": 1}}')
    with pytest.raises(ValueError, match="unknown key"):
        rydnm.parse_config('{"preset": "fig3", "nope": 1}')


def test_sweep_smoke():
    spec = rydnm.parse_sweep_spec(
        json.dumps(
            {
                "base": {"preset": "fig2a", "integrator": {"t_max_us": 0.2}},
                "parameters": [
                    {"name": "omega_p", "min": 1.2, "max": 20, "steps": 2}
                ],
            }
        )
    )
    cells = rydnm.run_sweep(spec, 2)
    assert [cell.ok for cell in cells] == [True, True]
    csv = rydnm.sweep_csv(spec, cells)
    assert csv.startswith("cell,omega_p,N,half_life_us,steady_pop1,status")


@pytest.fixture()
def cli():
    path = os.environ.get("RYDNM_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("RYDNM_CLI not set")
    return path


def test_cli_presets_and_validate(cli, tmp_path):
    listing = subprocess.run(
        [cli, "presets"], capture_output=True, text=True, check=True
    )
    assert "fig3" in listing.stdout

    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"preset": "fig2a"}))
    validated = subprocess.run(
        [cli, "validate", str(config)], capture_output=True, text=True
    )
    assert validated.returncode == 0
    assert json.loads(validated.stdout)["label"] == "fig2a"

    config.write_text(json.dumps({"integrator": {"dt_us": -1}}))
    rejected = subprocess.run(
        [cli, "validate", str(config)], capture_output=True, text=True
    )
    assert rejected.returncode == 1
    assert "integrator.dt_us" in rejected.stderr


def test_cli_run_exit_codes(cli, tmp_path):
    ok = subprocess.run(
        [
            cli,
            "run",
            "--preset",
            "fig2a",
            "--t-max-us",
            "0.1",
            "--out-dir",
            str(tmp_path),
        ],
        capture_output=True,
        text=True,
    )
    assert ok.returncode == 0
    assert (tmp_path / "fig2a_trajectory.csv").exists()

    # dt * omega_max beyond the stability guard aborts with exit code 2
    aborted = subprocess.run(
        [
            cli,
            "run",
            "--preset",
            "fig3",
            "--dt-us",
            "0.001",
            "--t-max-us",
            "0.1",
            "--out-dir",
            str(tmp_path),
        ],
        capture_output=True,
        text=True,
    )
    assert aborted.returncode == 2
