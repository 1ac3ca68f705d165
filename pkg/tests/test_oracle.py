import math

import numpy as np
import pytest

from gatedpcc.model import GateConfig, GateShape, reference_model
from gatedpcc.oracle import (
    ConvergenceError,
    OracleResult,
    QuadratureRule,
    QuadratureSpec,
    integrate_s1,
    integrate_s1_chain,
    integrate_s1_wigner,
    integrate_s2,
    integrate_s2_total,
)
from gatedpcc.signals import DetectorPair, s1_closed, s2_i_closed, s2_ii_closed, s2_total

LOR = GateShape.LORENTZIAN
GAU = GateShape.GAUSSIAN
PS = GateShape.PHYSICAL_SPECTRUM


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(order=1)
    with pytest.raises(ValueError):
        QuadratureSpec(truncation=2.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rule="simpson")
    assert QuadratureSpec().efolds == pytest.approx(math.log(1e12))


@pytest.mark.parametrize("t, w", [(0.0, 12375.0), (0.2, 12625.0), (1.3, 12500.0), (3.3, 12380.0)])
def test_integrate_s1_matches_closed_form(t, w, model, lorentz_b):
    res = integrate_s1(t, w, lorentz_b, model)
    assert isinstance(res, OracleResult) and res.rel_change < 1e-7
    assert float(res) == pytest.approx(float(s1_closed(t, w, lorentz_b, model)), rel=1e-4)


def test_trapezoid_rule_agrees(model, lorentz_b):
    spec = QuadratureSpec(rule=QuadratureRule.TRAPEZOID, order=16, target_rel_err=2e-5, max_refinements=5)
    ref = float(s1_closed(0.3, 12400.0, lorentz_b, model))
    assert float(integrate_s1(0.3, 12400.0, lorentz_b, model, spec)) == pytest.approx(ref, rel=1e-4)


def test_convergence_error_carries_estimates(model, lorentz_b):
    spec = QuadratureSpec(order=2, phase_per_panel=50.0, target_rel_err=1e-15, max_refinements=1)
    with pytest.raises(ConvergenceError) as info:
        integrate_s1(0.3, 12400.0, lorentz_b, model, spec)
    assert len(info.value.estimates) == 2


def test_physical_spectrum_s1_is_finite(model):
    gate = GateConfig(PS, None, 18.0)
    vals = [float(integrate_s1(t, 12375.0, gate, model)) for t in (0.0033, 3.3)]
    assert all(np.isfinite(vals))
    assert vals[0] == 0.0 or abs(vals[0]) < abs(vals[1])


def test_s1_chain_collocation(model, lorentz_b):
    ref = float(s1_closed(0.5, 12625.0, lorentz_b, model))
    assert float(integrate_s1_chain(0.5, 12625.0, lorentz_b, model)) == pytest.approx(ref, rel=1e-6)


@pytest.mark.slow
def test_gaussian_single_peak_and_linewidth():
    m = reference_model().replace(omega1=0.0)
    narrow, broad = GateConfig(GAU, 7.0, 8.0), GateConfig(GAU, 10.0, 12.0)
    peak = float(integrate_s1(0.5, 12500.0, narrow, m))
    side = [float(integrate_s1(0.5, 12500.0 + d, narrow, m)) for d in (-15.0, 15.0)]
    assert abs(peak) > max(abs(s) for s in side)
    assert side[0] == pytest.approx(side[1], rel=1e-6)
    ratio_narrow = side[1] / peak
    ratio_broad = float(integrate_s1(0.5, 12515.0, broad, m)) / float(integrate_s1(0.5, 12500.0, broad, m))
    assert ratio_broad > ratio_narrow


def _pair(w1, w2, t2=3.3, delay=0.0033, gates=((0.7, 0.8), (0.75, 0.85))):
    (a, b), (c, d) = gates
    return DetectorPair(GateConfig(LOR, a, b, center_t=t2 + delay, center_w=w1), GateConfig(LOR, c, d, center_t=t2, center_w=w2))


def test_integrate_s2_matches_closed_diagrams(model):
    p = _pair(12375.0, 12880.0)
    ri = integrate_s2("i", p, model)
    rii = integrate_s2("ii", p, model)
    ci, cii = s2_i_closed(p, model), s2_ii_closed(p, model)
    assert abs(complex(ri) - ci) < 1e-3 * abs(ci)
    assert abs(complex(rii) - cii) < 1e-3 * abs(cii)
    total, _ = integrate_s2_total(p, model)
    assert total == pytest.approx(s2_total(p, model), rel=1e-3)


def test_integrate_s2_without_jumps_ignores_rates():
    m = reference_model().replace(omega1=0.0, delta1=0.0)
    p = _pair(12500.0, 12750.0, delay=0.5, gates=((7, 8), (7.5, 8.5)))
    a = complex(integrate_s2("i", p, m))
    b = complex(integrate_s2("i", p, m.replace(k_down=30.0)))
    assert a == pytest.approx(b, rel=1e-6)


def test_integrate_s2_rejects_gaussian(model):
    g = GateConfig(GAU, 7, 8)
    with pytest.raises(ValueError):
        integrate_s2("i", DetectorPair(g.at(t=1.0), g.at(t=0.5)), model)


def test_wigner_route_preconditions(model, lorentz_b):
    with pytest.raises(ValueError):
        integrate_s1_wigner(0.1, 12500.0, GateConfig(PS, None, 8.0), model)
    with pytest.raises(ValueError):
        integrate_s1_wigner(0.1, 12500.0, lorentz_b, reference_model(dephasing=False))
    with pytest.raises(ValueError):
        integrate_s1_wigner(0.1, 12500.0, lorentz_b, model.replace(k_up=1.0))


def test_wigner_route_zero_population(model, lorentz_b):
    assert float(integrate_s1_wigner(0.5, 12400.0, lorentz_b, model.replace(rho_ee0=0.0))) == 0.0


@pytest.mark.slow
def test_wigner_route_without_jumps_equals_closed_form(model, lorentz_b):
    m = model.replace(omega1=0.0)
    ref = float(s1_closed(0.4, 12490.0, lorentz_b, m))
    res = integrate_s1_wigner(0.4, 12490.0, lorentz_b, m, QuadratureSpec(target_rel_err=1e-5))
    assert float(res) == pytest.approx(ref, rel=1e-3)
