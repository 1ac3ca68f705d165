"""Gated photon-coincidence spectra of an anharmonic oscillator with two-state-jump modulation."""

from .model import GateConfig, GateShape, TsjModel, derived_frequencies, reference_model

__all__ = ["GateConfig", "GateShape", "TsjModel", "derived_frequencies", "reference_model"]
__version__ = "0.1.0"
