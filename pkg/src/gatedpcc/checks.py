"""Fast self-consistency suite run by ``gatedpcc check``."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .gates import gaussian_bandwidths
from .model import GateConfig, GateShape, reference_model
from .oracle import integrate_s1
from .signals import s1_closed
from .tsj_liouville import POPULATION, CoherencePair, coherence_propagator, population_propagator, sle_expm_oracle


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f} s)"


def _timed(name, fn):
    start = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, passed, detail, time.perf_counter() - start)


def check_fourier_uncertainty(n: int = 1000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst = np.inf
    for st, sw in rng.uniform(0.1, 100.0, size=(n, 2)):
        bw = gaussian_bandwidths(GateConfig(GateShape.GAUSSIAN, st, sw))
        worst = min(worst, bw.sigma_w_tilde / bw.sigma_t_tilde)
    return worst > 1.0, f"min sigma_w~/sigma_t~ = {worst:.12g} over {n} gates"


def check_propagators(n: int = 200, seed: int = 1, tol: float = 1e-10):
    rng = np.random.default_rng(seed)
    base = reference_model()
    worst = 0.0
    for _ in range(n):
        model = base.replace(k_up=float(rng.uniform(0, 10)), k_down=float(rng.uniform(0.1, 20)))
        t = float(rng.uniform(0, 5))
        worst = max(worst, float(np.max(np.abs(population_propagator(t, model) - sle_expm_oracle(POPULATION, t, model)))))
        for pair in CoherencePair:
            ref = sle_expm_oracle(pair, t, model)
            err = np.max(np.abs(coherence_propagator(pair, t, model) - ref)) / max(1.0, np.max(np.abs(ref)))
            worst = max(worst, float(err))
    return worst < tol, f"max deviation from expm = {worst:.2e} over {n} models (tol {tol:g})"


def check_s1_oracle(tol: float = 1e-4):
    model = reference_model()
    gate = GateConfig(GateShape.LORENTZIAN, 7.0, 8.0)
    pts = [(0.0, 12375.0), (0.1, 12625.0), (0.5, 12500.0), (1.0, 12370.0), (3.3, 12630.0)]
    worst = 0.0
    for t, w in pts:
        closed = float(s1_closed(t, w, gate, model))
        ref = float(integrate_s1(t, w, gate, model))
        worst = max(worst, abs(closed - ref) / abs(ref))
    return worst < tol, f"max relative S1 deviation = {worst:.2e} over {len(pts)} points (tol {tol:g})"


def run_checks():
    return [
        _timed("fourier-uncertainty", check_fourier_uncertainty),
        _timed("propagator-vs-expm", check_propagators),
        _timed("s1-closed-vs-oracle", check_s1_oracle),
    ]
