"""Closed-form gated signals for Lorentzian gates in the low-temperature limit.

Conventions (see README): hbar = 1, density-of-states factors = 1, every
prefactor collapses into ``scale``. S^(1) keeps its customary leading minus
sign, so it is negative on resonance; S^(2) is the plain value of the
coincidence integrals (positive on the dominant peaks).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .model import GateConfig, GateShape, TsjModel, complex_detuning, derived_frequencies, to_internal_time

EXP_GUARD = 50.0


@dataclass(frozen=True)
class DetectorPair:
    """det1 sees the e->g photon at (t1, w1); det2 the earlier f->e photon at (t2, w2)."""

    det1: GateConfig
    det2: GateConfig

    def __post_init__(self):
        if self.det1.center_t < self.det2.center_t:
            raise ValueError("detector ordering requires t1 >= t2")

    @property
    def t1(self) -> float:
        return self.det1.center_t

    @property
    def t2(self) -> float:
        return self.det2.center_t


def _guarded_exp(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.real > EXP_GUARD):
        warnings.warn("exponential growth guard engaged: real exponent clamped at +50", RuntimeWarning, stacklevel=3)
        z = np.where(z.real > EXP_GUARD, EXP_GUARD + 1j * z.imag, z)
    return np.exp(z)


def _require_closed_regime(model, *gates):
    if not model.low_temperature:
        raise ValueError("closed forms need k_up = 0; use the oracle or chain evaluators for general rates")
    for g in gates:
        if g.shape is not GateShape.LORENTZIAN:
            raise ValueError("closed forms exist only for Lorentzian gates")


def _s1_bracket(t_int, w, gate, w_minus, w_plus, split, k, dephasing):
    st = gate.sigma_t
    dm = complex_detuning(w, w_minus, gate, dephasing)
    dp = complex_detuning(w, w_plus, gate, dephasing)
    coef = 2j * split / (k - 2j * split)
    jump = coef * _guarded_exp(-k * t_int) / (k + 2 * st)
    return 1.0 / (2 * st * dm) + jump * (1.0 / dm - 1.0 / (dp - 1j * k))


def _check_times(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("closed-form signals require detection times t >= 0")
    return t


def s1_closed(t, w, gate: GateConfig, model: TsjModel, scale: float = 1.0):
    """Gated single-photon signal of the e->g emission (signed, see module doc)."""
    _require_closed_regime(model, gate)
    t = _check_times(t)
    fr = derived_frequencies(model)
    b = _s1_bracket(to_internal_time(t), w, gate, fr.eg_minus, fr.eg_plus, model.omega1, model.k_down, model.gamma_e)
    return -np.imag(b) * scale * model.mu_eg**2 * model.rho_ee0 / gate.sigma_w


def s1_fe_closed(t, w, gate: GateConfig, model: TsjModel, scale: float = 1.0):
    """f->e analogue of :func:`s1_closed`; used only as the g2 denominator."""
    _require_closed_regime(model, gate)
    t = _check_times(t)
    fr = derived_frequencies(model)
    split = model.omega1 + model.delta1
    b = _s1_bracket(to_internal_time(t), w, gate, fr.fe_minus, fr.fe_plus, split, model.k_down, model.gamma_f)
    return -np.imag(b) * scale * model.mu_fe**2 * model.rho_ff0 / gate.sigma_w


# --- S^(2) -----------------------------------------------------------------

def _f(x, c, T):
    return _guarded_exp(-x * T) / (x * (x + c))


def _fprime(x, c, T):
    return _guarded_exp(-x * T) * (-T / (x * (x + c)) - (2 * x + c) / (x * (x + c)) ** 2)


def cascade_integral(a, b, c, T):
    """Ordered double-window integral that every S^(2) term reduces to.

    J(a, b, c, T) = [f(a) - f(b)]/(a - b) + 1/(a b c),  f(x) = e^{-xT}/(x(x+c)),
    with the removable singularity at a = b handled by the derivative.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    diff = a - b
    close = np.abs(diff) < 1e-6 * (np.abs(a) + np.abs(b))
    safe = np.where(close, 1.0, diff)
    dd = (_f(a, c, T) - _f(b, c, T)) / safe
    if np.any(close):
        mid = 0.5 * (a + b)
        dd = np.where(close, _fprime(mid, c, T), dd)
    return dd + 1.0 / (a * b * c)


def _s2_diagram(diagram, w1, w2, t1, t2, g1, g2, model, scale):
    """One coincidence diagram, complex, before the real-part reduction. Times in ps."""
    _require_closed_regime(model, g1, g2)
    if np.any(np.asarray(t1) < np.asarray(t2)) or np.any(np.asarray(t2) < 0):
        raise ValueError("coincidence closed forms require t1 >= t2 >= 0")
    fr = derived_frequencies(model)
    k = model.k_down
    T = to_internal_time(np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float))
    b = 2 * g2.sigma_t
    c = 2 * g1.sigma_t
    d_eg_m = complex_detuning(w1, fr.eg_minus, g1, model.gamma_e)
    d_eg_p = complex_detuning(w1, fr.eg_plus, g1, model.gamma_e)
    d_fe_m = complex_detuning(w2, fr.fe_minus, g2, model.gamma_f)
    d_fe_p = complex_detuning(w2, fr.fe_plus, g2, model.gamma_f)
    split_e = model.omega1
    split_f = model.omega1 + model.delta1
    gam_e = 2j * split_e / (k - 2j * split_e)
    if diagram == "i":
        a_m, a_p = 1j * d_fe_m, 1j * d_fe_p
        gam_f = 2j * split_f / (k - 2j * split_f)
    elif diagram == "ii":
        a_m, a_p = -1j * np.conj(d_fe_m), -1j * np.conj(d_fe_p)
        gam_f = -2j * split_f / (k + 2j * split_f)
    else:
        raise ValueError("diagram must be 'i' or 'ii'")
    inv_m = 1.0 / (1j * d_eg_m)
    inv_p = 1.0 / (1j * d_eg_p + k)
    ek1 = _guarded_exp(-k * to_internal_time(t1))
    ek2 = _guarded_exp(-k * to_internal_time(t2))
    term1 = inv_m * cascade_integral(a_m, b, c, T)
    term2 = gam_e * ek1 * (inv_m - inv_p) * cascade_integral(a_p, b, c + k, T)
    term3 = gam_f * ek2 * inv_m * (cascade_integral(a_m, b + k, c, T) - cascade_integral(a_p + k, b + k, c, T))
    pref = scale * model.mu_eg**2 * model.mu_fe**2 * model.rho_ff0 / (4 * g1.sigma_w * g2.sigma_w)
    return pref * (term1 + term2 + term3)


def s2_i_closed(pair: DetectorPair, model: TsjModel, scale: float = 1.0) -> complex:
    """Non-rephasing diagram (i)."""
    return complex(_s2_diagram("i", pair.det1.center_w, pair.det2.center_w, pair.t1, pair.t2, pair.det1, pair.det2, model, scale))


def s2_ii_closed(pair: DetectorPair, model: TsjModel, scale: float = 1.0) -> complex:
    """Rephasing diagram (ii)."""
    return complex(_s2_diagram("ii", pair.det1.center_w, pair.det2.center_w, pair.t1, pair.t2, pair.det1, pair.det2, model, scale))


def s2_total_grid(w1, w2, t1, t2, gate1, gate2, model, scale=1.0):
    """2 Re(S_i + S_ii) on broadcast arrays of w1, w2 (gate centers are ignored)."""
    si = _s2_diagram("i", w1, w2, t1, t2, gate1, gate2, model, scale)
    sii = _s2_diagram("ii", w1, w2, t1, t2, gate1, gate2, model, scale)
    return 2.0 * np.real(si + sii)


def s2_total(pair: DetectorPair, model: TsjModel, scale: float = 1.0) -> float:
    return float(s2_total_grid(pair.det1.center_w, pair.det2.center_w, pair.t1, pair.t2, pair.det1, pair.det2, model, scale))


def g2_ratio(num, den1, den2):
    """num/(den1*den2) with NaN wherever the denominator is negligible."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den1, dtype=float) * np.asarray(den2, dtype=float)
    bad = ~(np.abs(den) > 1e-30 * np.abs(num)) | (den == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(bad, np.nan, num / np.where(bad, 1.0, den))
    return out


def g2_normalized_grid(w1, w2, t1, t2, gate1, gate2, model, scale=1.0):
    """The global prefactor multiplies every signal once and cancels by definition,
    so ``scale`` is accepted for symmetry and ignored."""
    num = s2_total_grid(w1, w2, t1, t2, gate1, gate2, model)
    d1 = s1_closed(t1, w1, gate1, model)
    d2 = s1_fe_closed(t2, w2, gate2, model)
    return g2_ratio(num, d1, d2)


def g2_normalized(pair: DetectorPair, model: TsjModel, scale: float = 1.0) -> float:
    """Coincidences normalized by the single-detector signals; NaN when undefined."""
    return float(g2_normalized_grid(pair.det1.center_w, pair.det2.center_w, pair.t1, pair.t2, pair.det1, pair.det2, model, scale))
