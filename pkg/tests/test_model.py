import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gatedpcc.model import (
    TWO_PI_C,
    GateConfig,
    GateShape,
    TsjModel,
    complex_detuning,
    derived_frequencies,
    from_internal_time,
    reference_model,
    to_internal_time,
)


def test_reference_transition_frequencies():
    fr = derived_frequencies(reference_model())
    assert (fr.eg_plus, fr.eg_minus) == (12625.0, 12375.0)
    assert (fr.fe_plus, fr.fe_minus) == (12880.0, 12620.0)


def test_no_jump_degeneracy():
    fr = derived_frequencies(TsjModel(omega0=12500, omega1=0, delta0=250, delta1=0))
    assert fr.eg_plus == fr.eg_minus == 12500.0
    assert fr.fe_plus == fr.fe_minus == 12750.0


@pytest.mark.parametrize(
    "w, res, st_, sw, deph, expected",
    [
        (12375.0, 12375.0, 7.0, 18.0, 0.0, -25j),
        (12400.0, 12375.0, 0.7, 0.8, 0.0, 25 - 1.5j),
        (12375.0, 12375.0, 7.0, 18.0, 8.56, -33.56j),
    ],
)
def test_complex_detuning_examples(w, res, st_, sw, deph, expected):
    gate = GateConfig(GateShape.LORENTZIAN, st_, sw)
    assert complex_detuning(w, res, gate, deph) == pytest.approx(expected, abs=1e-12)


def test_complex_detuning_rejects_physical_spectrum():
    with pytest.raises(ValueError):
        complex_detuning(1.0, 0.0, GateConfig(GateShape.PHYSICAL_SPECTRUM, None, 1.0))


def test_unit_conversion_reproduces_decay_at_3p3_ps():
    assert math.exp(-7.68 * to_internal_time(3.3)) == pytest.approx(8.5e-3, rel=0.03)
    assert to_internal_time(1.0) == TWO_PI_C


@given(st.floats(-1e4, 1e4, allow_nan=False))
def test_time_conversion_round_trip(t):
    assert from_internal_time(to_internal_time(t)) == pytest.approx(t, rel=1e-15, abs=1e-300)


@pytest.mark.parametrize("field", ["k_down", "gamma_e", "rho_ee0"])
def test_model_rejects_negative_rates(field):
    with pytest.raises(ValueError):
        reference_model().replace(**{field: -1.0})


def test_model_rejects_nonfinite():
    with pytest.raises(ValueError):
        TsjModel(omega0=np.nan, omega1=1, delta0=1, delta1=1)


def test_gate_validation():
    with pytest.raises(ValueError):
        GateConfig(GateShape.LORENTZIAN, None, 8.0)
    with pytest.raises(ValueError):
        GateConfig(GateShape.GAUSSIAN, 1.0, 0.0)
    ps = GateConfig(GateShape.PHYSICAL_SPECTRUM, None, 18.0)
    assert ps.gamma == 18.0 and ps.total_width == 18.0


def test_flags():
    m = reference_model()
    assert m.low_temperature and m.dephasing_active
    assert not reference_model(dephasing=False).dephasing_active
    assert m.mu_fe == pytest.approx(math.sqrt(2))
