import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gatedpcc.model import TsjModel, reference_model, to_internal_time
from gatedpcc.tsj_liouville import (
    POPULATION,
    SPIN_UP,
    TRACE,
    CoherencePair,
    block_generator,
    coherence_propagator,
    coherence_propagator_internal,
    coherence_propagator_low_t,
    eta_roots,
    matter_correlation_v1,
    population_propagator,
    population_propagator_low_t,
    sle_expm_oracle,
)

rates = st.floats(0.0, 30.0)
pos_rates = st.floats(0.05, 30.0)
pairs = st.sampled_from(list(CoherencePair))


def _model(ku=0.0, kd=7.68, w1=125.0, dephasing=True):
    return reference_model(dephasing).replace(k_up=ku, k_down=kd, omega1=w1)


def test_eta_roots_low_temperature_eg():
    m = _model(dephasing=False)
    eta1, eta2 = eta_roots(CoherencePair.EG, m)
    assert eta1 == pytest.approx(-1j * 12375.0, abs=1e-9)
    assert eta2 == pytest.approx(-7.68 - 1j * 12625.0, abs=1e-9)


def test_eta_roots_without_splitting():
    m = _model(ku=2.0, kd=5.0, w1=0.0, dephasing=False)
    eta1, eta2 = eta_roots(CoherencePair.EG, m)
    assert eta1 == pytest.approx(-12500j, abs=1e-9)
    assert eta2 == pytest.approx(-7.0 - 12500j, abs=1e-9)


@given(pos_rates, pos_rates, st.floats(0.1, 300), pairs)
def test_eta_roots_solve_characteristic_polynomial(ku, kd, w1, pair):
    m = _model(ku, kd, w1)
    gen = block_generator(pair, m)
    tr, det = np.trace(gen), np.linalg.det(gen)
    for eta in eta_roots(pair, m):
        assert abs(eta**2 - tr * eta + det) <= 1e-12 * max(1.0, abs(eta) ** 2)


def test_population_limits():
    m = _model(ku=3.0, kd=3.0)
    assert np.allclose(population_propagator(0.0, m), np.eye(2))
    assert np.allclose(population_propagator(1e3, m), 0.5, atol=1e-12)


@given(st.floats(0, 50))
def test_population_low_t_form(t):
    m = _model()
    e = math.exp(-7.68 * to_internal_time(t))
    expected = np.array([[e, 0.0], [1 - e, 1.0]])
    assert np.allclose(population_propagator(t, m), expected, atol=1e-12, rtol=0)
    assert np.allclose(population_propagator_low_t(t, m), expected, atol=1e-12, rtol=0)


def test_population_decay_at_3p3_ps():
    g = sle_expm_oracle(POPULATION, 3.3, _model())
    assert g[0, 0] == pytest.approx(8.5e-3, rel=0.03)
    assert g[0, 0] == pytest.approx(math.exp(-7.68 * 3.3 * 0.1883651567), rel=1e-12)


def test_coherence_low_t_explicit_matrices():
    m = _model(dephasing=False)
    t = to_internal_time(0.37)
    k = 7.68
    for pair, split, wp, wm in [
        (CoherencePair.EG, 125.0, 12625.0, 12375.0),
        (CoherencePair.FE, 130.0, 12880.0, 12620.0),
    ]:
        up, down = np.exp(-(k + 1j * wp) * t), np.exp(-1j * wm * t)
        expected = np.array([[up, 0], [k / (k + 2j * split) * (down - up), down]])
        assert np.allclose(coherence_propagator(pair, 0.37, m), expected, atol=1e-12, rtol=0)
        assert np.allclose(coherence_propagator_low_t(pair, 0.37, m), expected, atol=1e-12, rtol=0)


@pytest.mark.parametrize("block", [POPULATION, *CoherencePair])
def test_identity_at_zero(block):
    m = _model(ku=1.0)
    assert np.allclose(sle_expm_oracle(block, 0.0, m), np.eye(2))
    prop = population_propagator(0.0, m) if block == POPULATION else coherence_propagator(block, 0.0, m)
    assert np.allclose(prop, np.eye(2), atol=1e-14)


def test_causality():
    m = _model()
    assert np.all(population_propagator(-0.1, m) == 0)
    assert np.all(coherence_propagator(CoherencePair.GE, -0.1, m) == 0)


@settings(max_examples=200)
@given(rates, pos_rates, st.floats(0, 300), st.floats(0, 5), pairs)
def test_propagators_match_expm(ku, kd, w1, t, pair):
    m = _model(ku, kd, w1)
    assert np.allclose(population_propagator(t, m), sle_expm_oracle(POPULATION, t, m), atol=1e-10, rtol=0)
    assert np.allclose(coherence_propagator(pair, t, m), sle_expm_oracle(pair, t, m), atol=1e-10, rtol=0)


@given(pos_rates, st.floats(0, 1), pairs)
def test_low_t_forms_match_general(kd, t, pair):
    m = _model(0.0, kd)
    assert np.allclose(population_propagator_low_t(t, m), population_propagator(t, m), atol=1e-12, rtol=0)
    assert np.allclose(coherence_propagator_low_t(pair, t, m), coherence_propagator(pair, t, m), atol=1e-12, rtol=0)


@given(rates, pos_rates, st.floats(0, 10))
def test_population_preserves_trace(ku, kd, t):
    g = population_propagator(t, _model(ku, kd))
    assert np.allclose(TRACE @ g, TRACE, atol=1e-10)


@given(rates, pos_rates, pairs, st.floats(0, 1), st.floats(0, 1))
def test_semigroup(ku, kd, pair, a, b):
    m = _model(ku, kd)
    horizon = 10.0 / kd / 0.1883651567
    t1, t2 = a * horizon, b * horizon
    for f in (lambda t: population_propagator(t, m), lambda t: coherence_propagator(pair, t, m)):
        assert np.allclose(f(t1 + t2), f(t1) @ f(t2), atol=1e-10, rtol=0)


def test_degenerate_roots_fall_back_to_expm():
    # k/2 = Omega_1 with k_up = k_down = k/2 makes the discriminant vanish
    m = TsjModel(omega0=100.0, omega1=2.0, delta0=0.0, delta1=0.0, k_up=2.0, k_down=2.0)
    eta1, eta2 = eta_roots(CoherencePair.EG, m)
    assert abs(eta1 - eta2) < 1e-6
    t = np.linspace(0, 3, 7)
    assert np.allclose(coherence_propagator_internal(CoherencePair.EG, t, m),
                       sle_expm_oracle(CoherencePair.EG, t / 0.1883651567, m), atol=1e-10)


def test_matter_correlation_limits():
    m = _model()
    assert matter_correlation_v1(0.4, 0.0, m) == pytest.approx(1.0)
    tau = 0.013
    expected = np.exp(1j * 12375.0 * to_internal_time(tau) - 8.56 * to_internal_time(tau))
    assert matter_correlation_v1(1e4, tau, m) == pytest.approx(expected, rel=1e-12)


@given(st.floats(0, 5), st.floats(0, 0.5))
def test_matter_correlation_matches_propagator_product(tp, tau):
    m = _model().replace(rho_ee0=0.6)
    chain = TRACE @ coherence_propagator(CoherencePair.GE, tau, m) @ population_propagator(tp, m) @ SPIN_UP * 0.6
    assert matter_correlation_v1(tp, tau, m) == pytest.approx(chain, rel=1e-12, abs=1e-14)
