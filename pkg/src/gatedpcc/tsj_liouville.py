"""Spin-space Green's functions of the stochastic Liouville equation.

Spin index 0 is the up state u, index 1 the down state d. Every propagator is
returned without its (-i/hbar) theta(t) prefactor, as an array of shape
``t.shape + (2, 2)``. Public functions take times in ps; ``*_internal``
variants take internal time (ps * 2 pi c).

Dephasing (gamma_e for eg/ge, gamma_f for fe/ef) enters the coherence blocks
as a uniform decay exp(-gamma t), which is the time-domain counterpart of
adding gamma to the widths of the complex detunings.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
import scipy.linalg

from .model import TsjModel, to_internal_time

TRACE = np.array([1.0, 1.0])
SPIN_UP = np.array([1.0, 0.0])


class CoherencePair(str, Enum):
    EG = "eg"
    FE = "fe"
    GE = "ge"
    EF = "ef"

    def energy_gaps(self, model: TsjModel) -> tuple[float, float]:
        """(eps0^nu - eps0^nu', eps1^nu - eps1^nu') for this block."""
        if self in (CoherencePair.EG, CoherencePair.GE):
            gaps = (model.omega0, model.omega1)
        else:
            gaps = (model.omega0 + model.delta0, model.omega1 + model.delta1)
        if self in (CoherencePair.GE, CoherencePair.EF):
            return (-gaps[0], -gaps[1])
        return gaps

    def dephasing(self, model: TsjModel) -> float:
        if self in (CoherencePair.EG, CoherencePair.GE):
            return model.gamma_e
        return model.gamma_f


POPULATION = "population"


def spin_generator(model: TsjModel) -> np.ndarray:
    """Rate matrix of the jump process acting on (p_u, p_d)."""
    ku, kd = model.k_up, model.k_down
    return np.array([[-kd, ku], [kd, -ku]], dtype=complex)


def coherence_generator(pair: CoherencePair, model: TsjModel) -> np.ndarray:
    e0, e1 = pair.energy_gaps(model)
    g = pair.dephasing(model)
    diag = np.diag([-1j * (e0 + e1) - g, -1j * (e0 - e1) - g])
    return spin_generator(model) + diag


def block_generator(block, model: TsjModel) -> np.ndarray:
    if block == POPULATION:
        return spin_generator(model)
    return coherence_generator(CoherencePair(block), model)


def eta_roots(pair: CoherencePair, model: TsjModel) -> tuple[complex, complex]:
    """Eigenvalues of the coherence block generator, principal square root."""
    pair = CoherencePair(pair)
    e0, e1 = pair.energy_gaps(model)
    ku, kd = model.k_up, model.k_down
    g = pair.dephasing(model)
    root = np.sqrt(complex((kd + ku) ** 2 / 4 - e1**2 + 1j * e1 * (kd - ku)))
    base = -(kd + ku) / 2 - 1j * e0 - g
    return complex(base + root), complex(base - root)


def _as_time(t):
    t = np.asarray(t, dtype=float)
    return t, (t >= 0)


def population_propagator_internal(t, model: TsjModel) -> np.ndarray:
    t, causal = _as_time(t)
    kappa = model.k_total
    ls = spin_generator(model).real
    if kappa > 0:
        frac = -np.expm1(-kappa * np.where(causal, t, 0.0)) / kappa
    else:
        frac = np.zeros_like(t)
    out = np.eye(2) + frac[..., None, None] * ls
    return out * causal[..., None, None]


def coherence_propagator_internal(pair, t, model: TsjModel) -> np.ndarray:
    pair = CoherencePair(pair)
    t, causal = _as_time(t)
    eta1, eta2 = eta_roots(pair, model)
    if abs(eta1 - eta2) < 1e-10 * max(abs(eta1), abs(eta2), 1e-300):
        return sle_expm_oracle_internal(pair, t, model)
    gen = coherence_generator(pair, model)
    eye = np.eye(2)
    c1 = (eta2 * eye - gen) / (eta2 - eta1)
    c2 = (eta1 * eye - gen) / (eta1 - eta2)
    ts = np.where(causal, t, 0.0)[..., None, None]
    out = c1 * np.exp(eta1 * ts) + c2 * np.exp(eta2 * ts)
    return out * causal[..., None, None]


def sle_expm_oracle_internal(block, t, model: TsjModel) -> np.ndarray:
    t, causal = _as_time(t)
    gen = block_generator(block, model)
    ts = np.where(causal, t, 0.0)
    mats = scipy.linalg.expm(ts[..., None, None] * gen)
    return mats * causal[..., None, None]


def population_propagator(t, model: TsjModel) -> np.ndarray:
    return population_propagator_internal(to_internal_time(t), model)


def coherence_propagator(pair, t, model: TsjModel) -> np.ndarray:
    return coherence_propagator_internal(pair, to_internal_time(t), model)


def sle_expm_oracle(block, t, model: TsjModel) -> np.ndarray:
    """Matrix exponential of the SLE block generator (independent reference)."""
    return sle_expm_oracle_internal(block, to_internal_time(t), model)


def propagator_internal(block, t, model: TsjModel) -> np.ndarray:
    if block == POPULATION:
        return population_propagator_internal(t, model)
    return coherence_propagator_internal(block, t, model)


# --- low-temperature closed forms (k_up = 0) ---------------------------------

def _require_low_t(model):
    if not model.low_temperature:
        raise ValueError("closed form valid only for k_up = 0; use the general propagators")


def population_propagator_low_t(t, model: TsjModel) -> np.ndarray:
    _require_low_t(model)
    t, causal = _as_time(to_internal_time(t))
    e = np.exp(-model.k_down * np.where(causal, t, 0.0))
    out = np.empty(t.shape + (2, 2))
    out[..., 0, 0] = e
    out[..., 0, 1] = 0.0
    out[..., 1, 0] = 1.0 - e
    out[..., 1, 1] = 1.0
    return out * causal[..., None, None]


def coherence_propagator_low_t(pair, t, model: TsjModel) -> np.ndarray:
    _require_low_t(model)
    pair = CoherencePair(pair)
    k = model.k_down
    e0, e1 = pair.energy_gaps(model)
    g = pair.dephasing(model)
    t, causal = _as_time(to_internal_time(t))
    ts = np.where(causal, t, 0.0)
    up = np.exp(-(k + 1j * (e0 + e1) + g) * ts)
    down = np.exp(-(1j * (e0 - e1) + g) * ts)
    out = np.zeros(t.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = up
    out[..., 1, 0] = k / (k + 2j * e1) * (down - up)
    out[..., 1, 1] = down
    return out * causal[..., None, None]


def matter_correlation_v1(t_prime, tau, model: TsjModel):
    """<<I| G_ge(tau) G_ee(t') |rho_ee>> in the low-temperature limit.

    Times in ps. The e->g emission correlation oscillates as exp(+i w tau),
    i.e. it is carried by the ge block.
    """
    _require_low_t(model)
    k = model.k_down
    w1 = model.omega1
    wm = model.omega0 - w1
    wp = model.omega0 + w1
    tp = np.asarray(to_internal_time(t_prime), dtype=float)
    ta = np.asarray(to_internal_time(tau), dtype=float)
    causal = (tp >= 0) & (ta >= 0)
    tp0 = np.where(causal, tp, 0.0)
    ta0 = np.where(causal, ta, 0.0)
    damp = np.exp(-model.gamma_e * ta0)
    coef = 2j * w1 / (k - 2j * w1)
    val = np.exp(1j * wm * ta0) + coef * np.exp(-k * tp0) * (np.exp(1j * wm * ta0) - np.exp((-k + 1j * wp) * ta0))
    return model.rho_ee0 * damp * val * causal
