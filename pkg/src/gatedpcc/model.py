"""Physical parameters, unit handling and derived transition frequencies.

Internal convention: every frequency and rate is in cm^-1 and every time is
multiplied by 2*pi*c, so ``omega * t`` is a dimensionless phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

TWO_PI_C = 0.1883651567  # rad ps^-1 per cm^-1


@dataclass(frozen=True)
class UnitSystem:
    two_pi_c: float = TWO_PI_C

    def to_angular(self, nu_cm):
        """cm^-1 -> rad/ps."""
        return np.asarray(nu_cm, dtype=float) * self.two_pi_c

    def to_time(self, t_ps):
        """ps -> internal time unit (cm), so that nu[cm^-1] * t is a phase."""
        return np.asarray(t_ps, dtype=float) * self.two_pi_c

    def from_time(self, t_internal):
        return np.asarray(t_internal, dtype=float) / self.two_pi_c


UNITS = UnitSystem()


def to_internal_time(t_ps):
    return UNITS.to_time(t_ps)


def from_internal_time(t_int):
    return UNITS.from_time(t_int)


def _check_finite(name, value, nonneg=False, positive=False):
    if value is None or not math.isfinite(value):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    if positive and value <= 0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    if nonneg and value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class TsjModel:
    """Anharmonic oscillator with two-state-jump modulation.

    Frequencies and rates in cm^-1. ``k_up = 0`` is the low-temperature limit
    used by the closed-form signals.
    """

    omega0: float
    omega1: float
    delta0: float
    delta1: float
    k_up: float = 0.0
    k_down: float = 7.68
    gamma_e: float = 0.0
    gamma_f: float = 0.0
    mu_eg: float = 1.0
    rho_ee0: float = 1.0
    rho_ff0: float = 1.0

    def __post_init__(self):
        for name in ("omega0", "omega1", "delta0", "delta1", "mu_eg"):
            _check_finite(name, getattr(self, name))
        for name in ("k_up", "k_down", "gamma_e", "gamma_f", "rho_ee0", "rho_ff0"):
            _check_finite(name, getattr(self, name), nonneg=True)

    @property
    def mu_fe(self) -> float:
        return math.sqrt(2.0) * self.mu_eg

    @property
    def k_total(self) -> float:
        return self.k_up + self.k_down

    @property
    def low_temperature(self) -> bool:
        return self.k_up == 0.0

    @property
    def dephasing_active(self) -> bool:
        return self.gamma_e > 0 or self.gamma_f > 0

    def replace(self, **changes) -> "TsjModel":
        return replace(self, **changes)


def reference_model(dephasing: bool = True) -> TsjModel:
    """Parameter set used throughout the bundled figure recipes."""
    return TsjModel(
        omega0=12500.0,
        omega1=125.0,
        delta0=250.0,
        delta1=5.0,
        k_up=0.0,
        k_down=7.68,
        gamma_e=8.56 if dephasing else 0.0,
        gamma_f=17.22 if dephasing else 0.0,
    )


class GateShape(str, Enum):
    GAUSSIAN = "gaussian"
    LORENTZIAN = "lorentzian"
    PHYSICAL_SPECTRUM = "physical_spectrum"


@dataclass(frozen=True)
class GateConfig:
    """One detector: gate family, bandwidths (cm^-1) and center (ps, cm^-1).

    For the physical spectrum only ``sigma_w`` (playing the role of Gamma) is used.
    """

    shape: GateShape
    sigma_t: float | None
    sigma_w: float
    center_t: float = 0.0
    center_w: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "shape", GateShape(self.shape))
        _check_finite("sigma_w", self.sigma_w, positive=True)
        if self.shape is GateShape.PHYSICAL_SPECTRUM:
            if self.sigma_t is not None:
                _check_finite("sigma_t", self.sigma_t, nonneg=True)
        else:
            _check_finite("sigma_t", self.sigma_t, positive=True)
        _check_finite("center_t", self.center_t)
        _check_finite("center_w", self.center_w)

    @property
    def gamma(self) -> float:
        return self.sigma_w

    @property
    def total_width(self) -> float:
        """sigma_T + sigma_w, the Lorentzian line half-width contributed by the gate."""
        if self.shape is GateShape.PHYSICAL_SPECTRUM:
            return self.sigma_w
        return self.sigma_t + self.sigma_w

    def at(self, t=None, w=None) -> "GateConfig":
        changes = {}
        if t is not None:
            changes["center_t"] = float(t)
        if w is not None:
            changes["center_w"] = float(w)
        return replace(self, **changes)


class TransitionFrequencies(NamedTuple):
    eg_plus: float
    eg_minus: float
    fe_plus: float
    fe_minus: float


def derived_frequencies(model: TsjModel) -> TransitionFrequencies:
    """omega_eg^pm = Omega0 pm Omega1, omega_fe^pm = Omega0 + Delta0 pm (Omega1 + Delta1)."""
    fe_mid = model.omega0 + model.delta0
    fe_split = model.omega1 + model.delta1
    return TransitionFrequencies(
        eg_plus=model.omega0 + model.omega1,
        eg_minus=model.omega0 - model.omega1,
        fe_plus=fe_mid + fe_split,
        fe_minus=fe_mid - fe_split,
    )


def complex_detuning(w, w_res, gate: GateConfig, dephasing: float = 0.0):
    """(w - w_res) - i (sigma_T + sigma_w + dephasing), in cm^-1."""
    if gate.shape is GateShape.PHYSICAL_SPECTRUM:
        raise ValueError("complex_detuning needs a two-parameter (Gaussian/Lorentzian) gate")
    if dephasing < 0:
        raise ValueError("dephasing must be >= 0")
    width = gate.sigma_t + gate.sigma_w + dephasing
    return (np.asarray(w, dtype=float) - w_res) - 1j * width
