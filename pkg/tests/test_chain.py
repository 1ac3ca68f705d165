import numpy as np
import pytest

from gatedpcc.chain import EventWeight, integration_window, s1_chain, s1_fe_chain, s1_layout, s2_chain, s2_total_chain
from gatedpcc.model import GateConfig, GateShape, reference_model
from gatedpcc.oracle import integrate_s1
from gatedpcc.signals import _s2_diagram, s1_closed, s1_fe_closed, s2_total_grid

LOR = GateShape.LORENTZIAN
PS = GateShape.PHYSICAL_SPECTRUM


@pytest.mark.parametrize("t", [0.0, 0.05, 0.7, 3.3, 20.0])
def test_s1_chain_equals_closed_form(t, model, lorentz_b):
    w = np.linspace(12300, 12700, 41)
    ref = s1_closed(t, w, lorentz_b, model)
    assert np.allclose(s1_chain(t, w, lorentz_b, model), ref, rtol=1e-11, atol=1e-13 * np.abs(ref).max())
    ref_fe = s1_fe_closed(t, w + 250, lorentz_b, model)
    assert np.allclose(s1_fe_chain(t, w + 250, lorentz_b, model), ref_fe, rtol=1e-11, atol=1e-13 * np.abs(ref_fe).max())


@pytest.mark.parametrize("diagram", ["i", "ii"])
@pytest.mark.parametrize("t1, t2", [(0.0066, 0.0033), (3.3033, 3.3), (6.6, 3.3), (66.0, 33.0)])
def test_s2_chain_equals_closed_form(diagram, t1, t2, model):
    g1, g2 = GateConfig(LOR, 7.0, 18.0), GateConfig(LOR, 7.5, 18.5)
    w1, w2 = np.meshgrid(np.linspace(12300, 12700, 9), np.linspace(12550, 12950, 9), indexing="ij")
    ref = _s2_diagram(diagram, w1, w2, t1, t2, g1, g2, model, 1.0)
    val = s2_chain(diagram, w1, w2, t1, t2, g1, g2, model)
    assert np.max(np.abs(val - ref)) < 1e-11 * np.max(np.abs(ref))


def test_s2_total_chain(model):
    g1, g2 = GateConfig(LOR, 0.7, 0.8), GateConfig(LOR, 0.75, 0.85)
    w1 = np.array([12375.0, 12625.0, 12500.0])
    w2 = np.array([12880.0, 12620.0, 12750.0])
    ref = s2_total_grid(w1, w2, 3.3033, 3.3, g1, g2, model)
    assert np.allclose(s2_total_chain(w1, w2, 3.3033, 3.3, g1, g2, model), ref, rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("gate", [GateConfig(LOR, 7.0, 8.0), GateConfig(PS, None, 8.0)])
def test_s1_chain_matches_oracle_with_upward_jumps(gate):
    hot = reference_model().replace(k_up=3.0)
    for t, w in [(0.4, 12380.0), (2.0, 12620.0)]:
        ref = float(integrate_s1(t, w, gate, hot))
        assert float(s1_chain(t, w, gate, hot)) == pytest.approx(ref, rel=1e-6)


def test_chain_rejects_gaussian(model):
    with pytest.raises(ValueError):
        s1_layout(0.0, 12500.0, GateConfig(GateShape.GAUSSIAN, 7, 8), model)
    with pytest.raises(ValueError):
        s2_chain("i", 1.0, 1.0, 1.0, 2.0, GateConfig(LOR, 1, 1), GateConfig(LOR, 1, 1), model)


def test_event_weight():
    ev = EventWeight(2.0, -1.0, 1.0, 1.0, np.inf)
    assert ev(0.5) == 0.0
    assert ev(1.0) == 2.0
    assert ev(2.0) == pytest.approx(2.0 * np.exp(-1.0))
    assert ev.covers(5.0) and not ev.covers(0.0)


def test_integration_window_breaks_at_detection_time(model, lorentz_b):
    lay = s1_layout(1.0, 12400.0, lorentz_b, model)
    gens = [np.asarray(g) for g in lay.generators(model)]
    win = integration_window(lay.events, gens)
    tc = lay.events[0].center
    assert win.start == pytest.approx(tc)
    assert win.end > tc
    assert win.breaks[0] == win.start and win.breaks[-1] == win.end
