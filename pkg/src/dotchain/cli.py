"""Command-line entry points.

Exit codes: 0 success, 1 config/validation failure, 2 verification-threshold
failure (prepare only).
"""

from __future__ import annotations

import sys

import click

from .config import ConfigError, config_from_strings, load_config_file
from .harness import run_figure2, run_figure3, run_measure_demo, run_prepare
from .pulse import CalibrationError


def _load(config_path, overrides: dict[str, str]):
    raw = load_config_file(config_path) if config_path else {}
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return config_from_strings(raw)


_common = [
    # note: no exists=True — a missing file must exit 1 (validation failure),
    # not 2 (click usage error), per the exit-code contract
    click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Config file or run manifest."),
    click.option("--out", "out_dir", type=click.Path(file_okay=False), default="out", show_default=True, help="Output directory."),
    click.option("--seed", type=int, default=None, help="Override the base seed."),
    click.option("--trials", type=int, default=None, help="Override the Monte Carlo trial count."),
    click.option("--qubits", type=int, default=None, help="Override the chain length."),
    click.option("--sigma-over-pi", type=float, default=None, help="Override the noise level list with a single value."),
]


def _with_common(func):
    for option in reversed(_common):
        func = option(func)
    return func


def _overrides(seed, trials, qubits, sigma_over_pi) -> dict[str, str]:
    return {
        "seed": None if seed is None else str(seed),
        "trials": None if trials is None else str(trials),
        "n_qubits": None if qubits is None else str(qubits),
        "sigma_over_pi": None if sigma_over_pi is None else repr(sigma_over_pi),
    }


@click.group()
def main():
    """Cluster-state preparation in a double-quantum-dot qubit chain."""


@main.command()
@_with_common
def figure2(config_path, out_dir, seed, trials, qubits, sigma_over_pi):
    """Coupling-vs-detuning sweep and calibrated pulse waveform CSVs."""
    try:
        cfg = _load(config_path, _overrides(seed, trials, qubits, sigma_over_pi))
        paths = run_figure2(cfg, out_dir)
    except (ConfigError, CalibrationError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    for name, path in paths.items():
        click.echo(f"{name}: {path}")


@main.command()
@_with_common
def figure3(config_path, out_dir, seed, trials, qubits, sigma_over_pi):
    """Fidelity grids over chain length and noise level."""
    try:
        cfg = _load(config_path, _overrides(seed, trials, qubits, sigma_over_pi))
        paths = run_figure3(cfg, out_dir)
    except (ConfigError, CalibrationError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    for name, path in paths.items():
        click.echo(f"{name}: {path}")


@main.command()
@_with_common
def prepare(config_path, out_dir, seed, trials, qubits, sigma_over_pi):
    """Prepare the cluster state and verify fidelity and stabilizers."""
    try:
        cfg = _load(config_path, _overrides(seed, trials, qubits, sigma_over_pi))
        report = run_prepare(cfg, out_dir)
    except CalibrationError as exc:
        raise click.ClickException(
            f"calibration failed: {exc} (ramp-only phase {exc.ramp_phase_rad:.6g} rad)"
        ) from exc
    except (ConfigError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"n={report.n_qubits} hold={report.hold_ns:.6g} ns "
        f"bond_phase={report.bond_phase_rad:.9g} rad"
    )
    click.echo(f"fidelity_to_ideal={report.fidelity_to_ideal:.12g}")
    click.echo(f"min_stabilizer={min(report.stabilizers):.12g}")
    if not report.passed:
        click.echo("verification FAILED: stabilizer below threshold", err=True)
        sys.exit(2)
    click.echo("verification passed")


@main.command("measure-demo")
@_with_common
def measure_demo(config_path, out_dir, seed, trials, qubits, sigma_over_pi):
    """Prepare the cluster, then run the configured measurement pattern."""
    try:
        cfg = _load(config_path, _overrides(seed, trials, qubits, sigma_over_pi))
        paths = run_measure_demo(cfg, out_dir)
    except (ConfigError, CalibrationError, ValueError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    for name, path in paths.items():
        click.echo(f"{name}: {path}")


if __name__ == "__main__":
    main()
