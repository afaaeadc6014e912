"""Detuning pulses and the two-qubit phase they accumulate.

The entangling operation is a trapezoidal detuning sweep applied to every
molecule at once: ramp from eps_low to eps_high in ramp_up_ns, hold, ramp
back. The conditional phase picked up by each nearest-neighbor bond is the
time integral of the Ising coupling along the sweep, divided by hbar. A
cluster state needs that phase to equal pi, which fixes the hold time.

The integrand ising_coupling(adiabatic_angle(eps(t))) is nearly a step: the
admixture switches within |eps| of a few tunnel couplings while the ramp
spans the full charging energy. Ramp segments are therefore integrated with
adaptive quadrature, with a forced breakpoint at the eps = 0 crossing; the
hold segment is a constant and is added in closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .constants import HBAR_MEV_NS
from .physics import DeviceParams, adiabatic_angle, ising_coupling

QUAD_RTOL = 1e-9


class CalibrationError(ValueError):
    """Requested bond phase cannot be reached with a non-negative hold time."""

    def __init__(self, message: str, ramp_phase_rad: float):
        super().__init__(message)
        self.ramp_phase_rad = ramp_phase_rad


@dataclass(frozen=True)
class DetuningPulse:
    """Piecewise-linear detuning trapezoid eps(t).

    eps_low -> eps_high over ramp_up_ns, constant over hold_ns, back over
    ramp_down_ns (defaults to ramp_up_ns, the symmetric trapezoid).
    """

    ramp_up_ns: float
    hold_ns: float
    ramp_down_ns: float | None = None
    eps_low_mev: float = -2.5
    eps_high_mev: float = 2.5

    def __post_init__(self) -> None:
        if self.ramp_down_ns is None:
            object.__setattr__(self, "ramp_down_ns", self.ramp_up_ns)
        values = (
            self.ramp_up_ns,
            self.hold_ns,
            self.ramp_down_ns,
            self.eps_low_mev,
            self.eps_high_mev,
        )
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"pulse parameters must be finite, got {self}")
        if self.ramp_up_ns < 0 or self.hold_ns < 0 or self.ramp_down_ns < 0:
            raise ValueError("pulse durations must be >= 0")
        if self.eps_low_mev >= self.eps_high_mev:
            raise ValueError("eps_low_mev must be below eps_high_mev")

    @property
    def duration_ns(self) -> float:
        return self.ramp_up_ns + self.hold_ns + self.ramp_down_ns

    def detuning_at(self, t_ns: float) -> float:
        """Detuning eps(t) in meV for t inside [0, duration]."""
        if not math.isfinite(t_ns) or t_ns < 0.0 or t_ns > self.duration_ns:
            raise ValueError(
                f"t={t_ns} ns outside pulse duration [0, {self.duration_ns}] ns"
            )
        lo, hi = self.eps_low_mev, self.eps_high_mev
        if t_ns <= self.ramp_up_ns:
            if self.ramp_up_ns == 0.0:
                return lo
            return lo + (hi - lo) * (t_ns / self.ramp_up_ns)
        t_ns -= self.ramp_up_ns
        if t_ns <= self.hold_ns:
            return hi
        t_ns -= self.hold_ns
        if self.ramp_down_ns == 0.0:
            return lo
        return hi + (lo - hi) * (t_ns / self.ramp_down_ns)

    def time_reversed(self) -> "DetuningPulse":
        return DetuningPulse(
            ramp_up_ns=self.ramp_down_ns,
            hold_ns=self.hold_ns,
            ramp_down_ns=self.ramp_up_ns,
            eps_low_mev=self.eps_low_mev,
            eps_high_mev=self.eps_high_mev,
        )


def symmetric_pulse(dev: DeviceParams, ramp_ns: float, hold_ns: float) -> DetuningPulse:
    """Trapezoid between -Ec/2 and +Ec/2 for the given device."""
    half = dev.charging_energy_mev / 2.0
    return DetuningPulse(
        ramp_up_ns=ramp_ns, hold_ns=hold_ns, eps_low_mev=-half, eps_high_mev=half
    )


def _ramp_coupling_integral_mev2(pulse: DetuningPulse, dev: DeviceParams) -> float:
    """Integral of the Ising coupling over detuning, across [eps_low, eps_high].

    Units meV^2 (meV integrated over meV). A linear ramp of duration T
    contributes T * integral / (eps_high - eps_low) to the time integral.
    """
    tc = dev.tunnel_coupling_mev

    def integrand(eps: float) -> float:
        return ising_coupling(dev, adiabatic_angle(eps, tc))

    lo, hi = pulse.eps_low_mev, pulse.eps_high_mev
    # The admixture switches within |eps| ~ tc; force a breakpoint there.
    points = [0.0] if lo < 0.0 < hi else None
    value, _ = quad(integrand, lo, hi, points=points, epsabs=0.0, epsrel=QUAD_RTOL, limit=200)
    return value


def plateau_coupling(pulse: DetuningPulse, dev: DeviceParams) -> float:
    """Ising coupling in meV while the pulse holds at eps_high."""
    return ising_coupling(dev, adiabatic_angle(pulse.eps_high_mev, dev.tunnel_coupling_mev))


def accumulated_phase(pulse: DetuningPulse, dev: DeviceParams) -> float:
    """Conditional phase (radians) a nearest-neighbor bond acquires over the pulse.

    (1/hbar) * integral of ising_coupling(adiabatic_angle(eps(t))) dt, exact
    on the hold plateau and adaptive (relative tolerance 1e-9) on the ramps.
    """
    ramp_time = pulse.ramp_up_ns + pulse.ramp_down_ns
    total_mev_ns = pulse.hold_ns * plateau_coupling(pulse, dev)
    if ramp_time > 0.0:
        per_mev = _ramp_coupling_integral_mev2(pulse, dev)
        total_mev_ns += ramp_time * per_mev / (pulse.eps_high_mev - pulse.eps_low_mev)
    return total_mev_ns / HBAR_MEV_NS


def solve_hold_time(
    tau1_ns: float,
    dev: DeviceParams,
    target_phase_rad: float = math.pi,
    eps_low_mev: float | None = None,
    eps_high_mev: float | None = None,
) -> float:
    """Hold time (ns) for which the accumulated bond phase equals the target.

    The phase is strictly increasing and affine in the hold time, so the
    closed-form estimate is already the root; a bracketed Brent solve on
    accumulated_phase polishes it to relative 1e-9. Raises CalibrationError,
    carrying the ramp-only phase, when the ramps alone overshoot the target.
    """
    if target_phase_rad <= 0 or not math.isfinite(target_phase_rad):
        raise ValueError("target_phase_rad must be positive and finite")
    if tau1_ns < 0 or not math.isfinite(tau1_ns):
        raise ValueError("tau1_ns must be >= 0 and finite")
    half = dev.charging_energy_mev / 2.0
    lo = -half if eps_low_mev is None else eps_low_mev
    hi = half if eps_high_mev is None else eps_high_mev

    def pulse_with(hold: float) -> DetuningPulse:
        return DetuningPulse(
            ramp_up_ns=tau1_ns, hold_ns=hold, eps_low_mev=lo, eps_high_mev=hi
        )

    ramp_phase = accumulated_phase(pulse_with(0.0), dev)
    rate = plateau_coupling(pulse_with(0.0), dev) / HBAR_MEV_NS  # rad/ns
    missing = target_phase_rad - ramp_phase
    if missing < -abs(target_phase_rad) * 1e-12 or (missing > 0 and rate <= 0.0):
        raise CalibrationError(
            f"target phase {target_phase_rad:.6g} rad unreachable: ramps alone "
            f"accumulate {ramp_phase:.6g} rad and the plateau adds "
            f"{rate:.6g} rad/ns",
            ramp_phase_rad=ramp_phase,
        )
    if missing <= 0.0:
        return 0.0

    estimate = missing / rate

    def objective(hold: float) -> float:
        return accumulated_phase(pulse_with(hold), dev) - target_phase_rad

    lo_h, hi_h = 0.0, estimate * 1.5 + 1e-12
    f_hi = objective(hi_h)
    while f_hi < 0.0:
        hi_h *= 2.0
        f_hi = objective(hi_h)
    root = brentq(objective, lo_h, hi_h, xtol=1e-15, rtol=8.9e-16)
    return float(root)


def bond_phase_vector(pulse: DetuningPulse, dev: DeviceParams, n_qubits: int) -> np.ndarray:
    """Per-bond accumulated phase for an n-qubit chain.

    The sweep is collective, so all n_qubits - 1 bonds receive the same
    phase.
    """
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits for a bond, got {n_qubits}")
    return np.full(n_qubits - 1, accumulated_phase(pulse, dev))


def check_adiabaticity(
    pulse: DetuningPulse, dev: DeviceParams, coherence_budget_ns: float | None = None
) -> list[str]:
    """Sanity warnings for the rapid-adiabatic-passage assumption.

    The sweep model assumes the ramp is slow against the tunnel coupling
    (tau1 >= 10 hbar/tc) yet the whole pulse fits inside the coherence
    budget. Violations are returned and emitted as warnings, not errors:
    the evolution itself stays ideal.
    """
    messages = []
    tc_time = HBAR_MEV_NS / dev.tunnel_coupling_mev
    for name, ramp in (("ramp_up_ns", pulse.ramp_up_ns), ("ramp_down_ns", pulse.ramp_down_ns)):
        if ramp < 10.0 * tc_time:
            messages.append(
                f"{name}={ramp:.4g} ns is below 10*hbar/tc = {10 * tc_time:.4g} ns; "
                "the sweep may not be adiabatic"
            )
    if coherence_budget_ns is not None and pulse.duration_ns > coherence_budget_ns:
        messages.append(
            f"pulse duration {pulse.duration_ns:.4g} ns exceeds the coherence "
            f"budget {coherence_budget_ns:.4g} ns"
        )
    for m in messages:
        warnings.warn(m, stacklevel=2)
    return messages
