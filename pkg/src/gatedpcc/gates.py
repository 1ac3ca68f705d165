"""Detector spectrograms D(t, w; t', tau) and Wigner spectrograms W_D(t, w; t', w').

Public functions take times in ps and frequencies in cm^-1. The ``*_internal``
variants take internal times (ps * 2 pi c) and are what the integrators use.
Step functions follow theta(0) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import GateConfig, GateShape, to_internal_time


def _step(x):
    return (np.asarray(x) >= 0).astype(float)


@dataclass(frozen=True)
class GaussianBandwidths:
    sigma_w_tilde: float
    sigma_t_tilde: float
    n_d: float
    a_coef: float


def gaussian_bandwidths(gate: GateConfig) -> GaussianBandwidths:
    st, sw = gate.sigma_t, gate.sigma_w
    swt2 = st**2 + sw**2
    stt2 = st**2 + 1.0 / (sw**-2 + st**-2)
    # n_d is fixed by requiring W_D to be the tau-Fourier transform of D.
    return GaussianBandwidths(
        sigma_w_tilde=math.sqrt(swt2),
        sigma_t_tilde=math.sqrt(stt2),
        n_d=sw / math.sqrt(swt2),
        a_coef=st**2 / swt2,
    )


def _require(gate, shape):
    if gate.shape is not shape:
        raise ValueError(f"expected a {shape.value} gate, got {gate.shape.value}")


# --- internal-unit kernels -------------------------------------------------

def gaussian_spectrogram_internal(gate, dt, tau):
    st, sw = gate.sigma_t, gate.sigma_w
    dt = np.asarray(dt, dtype=float)
    tau = np.asarray(tau, dtype=float)
    swt2 = st**2 + sw**2
    expo = -(st**2) * dt**2 - 0.5 * swt2 * tau**2 - (st**2 * dt + 1j * gate.center_w) * tau
    return sw / math.sqrt(2 * math.pi) * np.exp(expo)


def lorentzian_spectrogram_internal(gate, dt, tau):
    st, sw = gate.sigma_t, gate.sigma_w
    dt = np.asarray(dt, dtype=float)
    tau = np.asarray(tau, dtype=float)
    support = _step(dt) * _step(dt + tau)
    decay = np.where(tau >= 0, -sw * tau, sw * tau)
    expo = -(1j * gate.center_w + st) * tau - 2 * st * dt + decay
    expo = np.where(support > 0, expo, -np.inf)
    return support * np.exp(expo) / (2 * sw)


def physical_spectrum_spectrogram_internal(gate, dt, tau):
    """dt = t' - t here as well; support is t' <= t and t' + tau <= t."""
    g = gate.gamma
    dt = np.asarray(dt, dtype=float)
    tau = np.asarray(tau, dtype=float)
    lag = -dt  # t - t'
    support = _step(lag) * _step(lag - tau)
    expo = -g * lag + (0.5 * g - 1j * gate.center_w) * tau
    expo = np.where(support > 0, expo, -np.inf)
    return support * np.exp(expo)


def gaussian_wigner_internal(gate, dt, w_prime):
    bw = gaussian_bandwidths(gate)
    dt = np.asarray(dt, dtype=float)
    dw = np.asarray(w_prime, dtype=float) - gate.center_w
    expo = (
        -0.5 * bw.sigma_t_tilde**2 * dt**2
        - dw**2 / (2 * bw.sigma_w_tilde**2)
        - 1j * bw.a_coef * dw * dt
    )
    return bw.n_d * np.exp(expo)


def lorentzian_wigner_internal(gate, dt, w_prime):
    st, sw = gate.sigma_t, gate.sigma_w
    dt = np.asarray(dt, dtype=float)
    dw = np.asarray(w_prime, dtype=float) - gate.center_w
    z_minus = 1j * dw - st - sw
    z_plus = 1j * dw - st + sw
    dtp = np.maximum(dt, 0.0)
    bracket = -1.0 / z_minus + (-np.expm1(-z_plus * dtp)) / z_plus
    return _step(dt) * np.exp(-2 * st * dtp) * bracket / (2 * sw)


_SPECTROGRAMS = {
    GateShape.GAUSSIAN: gaussian_spectrogram_internal,
    GateShape.LORENTZIAN: lorentzian_spectrogram_internal,
    GateShape.PHYSICAL_SPECTRUM: physical_spectrum_spectrogram_internal,
}

_WIGNERS = {
    GateShape.GAUSSIAN: gaussian_wigner_internal,
    GateShape.LORENTZIAN: lorentzian_wigner_internal,
}


def spectrogram_internal(gate, t_prime, tau):
    """D at absolute internal time t' (not the offset)."""
    dt = np.asarray(t_prime, dtype=float) - to_internal_time(gate.center_t)
    return _SPECTROGRAMS[gate.shape](gate, dt, tau)


def wigner_internal(gate, t_prime, w_prime):
    if gate.shape not in _WIGNERS:
        raise ValueError(f"no closed-form Wigner spectrogram for {gate.shape.value} gates")
    dt = np.asarray(t_prime, dtype=float) - to_internal_time(gate.center_t)
    return _WIGNERS[gate.shape](gate, dt, w_prime)


# --- public API (ps, cm^-1) --------------------------------------------------

def gaussian_spectrogram(gate: GateConfig, t_prime, tau):
    _require(gate, GateShape.GAUSSIAN)
    return spectrogram_internal(gate, to_internal_time(t_prime), to_internal_time(tau))


def gaussian_wigner(gate: GateConfig, t_prime, w_prime):
    _require(gate, GateShape.GAUSSIAN)
    return wigner_internal(gate, to_internal_time(t_prime), w_prime)


def lorentzian_spectrogram(gate: GateConfig, t_prime, tau):
    _require(gate, GateShape.LORENTZIAN)
    return spectrogram_internal(gate, to_internal_time(t_prime), to_internal_time(tau))


def lorentzian_wigner(gate: GateConfig, t_prime, w_prime):
    _require(gate, GateShape.LORENTZIAN)
    return wigner_internal(gate, to_internal_time(t_prime), w_prime)


def physical_spectrum_spectrogram(gate: GateConfig, t_prime, tau):
    _require(gate, GateShape.PHYSICAL_SPECTRUM)
    return spectrogram_internal(gate, to_internal_time(t_prime), to_internal_time(tau))


def spectrogram(gate: GateConfig, t_prime, tau):
    return spectrogram_internal(gate, to_internal_time(t_prime), to_internal_time(tau))


def wigner(gate: GateConfig, t_prime, w_prime):
    return wigner_internal(gate, to_internal_time(t_prime), w_prime)


def lorentzian_split(gate: GateConfig, t_prime, tau):
    """(D_>, D_<): the tau >= 0 and tau < 0 pieces of the Lorentzian spectrogram."""
    _require(gate, GateShape.LORENTZIAN)
    tau = np.asarray(tau, dtype=float)
    d = lorentzian_spectrogram(gate, t_prime, tau)
    return np.where(tau >= 0, d, 0.0), np.where(tau < 0, d, 0.0)


# --- event form ------------------------------------------------------------

@dataclass(frozen=True)
class GateEvents:
    """A separable spectrogram written on its two ordered field events x_a <= x_b.

    D = amplitude * exp(rate * (x_a - center)) * exp(gap_rate * (x_b - x_a))
    whenever lower <= x_a and x_b <= upper (internal time units).
    """

    amplitude: float
    rate: float
    center: float
    gap_rate: complex
    lower: float
    upper: float

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.lower) & (x <= self.upper)
        return np.where(inside, self.amplitude * np.exp(self.rate * np.where(inside, x - self.center, 0.0)), 0.0)


def event_form(gate: GateConfig, order: str) -> GateEvents:
    """Event form of D_> (order '>', tau >= 0) or D_< (order '<', tau < 0).

    For '>' the first event is t' and the second t' + tau; for '<' the first is
    t' + tau and the second t'. Gaussian gates are not separable.
    """
    if order not in (">", "<"):
        raise ValueError("order must be '>' or '<'")
    tc = float(to_internal_time(gate.center_t))
    w = gate.center_w
    if gate.shape is GateShape.LORENTZIAN:
        st, sw = gate.sigma_t, gate.sigma_w
        gap = -(1j * w + st + sw) if order == ">" else (1j * w - st - sw)
        return GateEvents(1.0 / (2 * sw), -2 * st, tc, gap, tc, math.inf)
    if gate.shape is GateShape.PHYSICAL_SPECTRUM:
        g = gate.gamma
        gap = (0.5 * g - 1j * w) if order == ">" else (0.5 * g + 1j * w)
        return GateEvents(1.0, g, tc, gap, -math.inf, tc)
    raise ValueError("Gaussian spectrograms have no separable event form")
