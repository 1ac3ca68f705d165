"""Exact evaluation of gated signals for separable (Lorentzian, physical-spectrum) gates.

A gated signal is an integral over ordered field events 0 <= x_1 <= ... <= x_m
of a product of spin-space propagators and event weights. Writing
psi_j(x) for the partial integral "event j happened before x" gives a linear
ODE chain

    psi_0' = G_0 psi_0,   psi_j' = G_j psi_j + w_j(x) psi_{j-1},   S' = w_m(x) <I|psi_{m-1}>,

whose coefficient matrix is block bidiagonal. Event weights are exponentials
in x times indicator functions, so on each short sub-step a gauge rescaling
makes the system autonomous and one matrix exponential (Van Loan's block
trick) advances it exactly. No quadrature is involved.

The stage layouts defined here are shared with the quadrature oracle, which
integrates the same chain by collocation instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .gates import GateEvents, event_form
from .model import GateConfig, GateShape, TsjModel
from .tsj_liouville import POPULATION, SPIN_UP, TRACE, CoherencePair, block_generator

HORIZON = 40.0  # e-folds of the slowest decay kept past the last breakpoint
NEGLIGIBLE = 45.0  # weights below e^-45 ahead of the first event window are skipped


@dataclass(frozen=True)
class EventWeight:
    """amplitude * exp(rate * (x - center)) on lower <= x <= upper (internal time)."""

    amplitude: float
    rate: float
    center: float
    lower: float
    upper: float

    @classmethod
    def first(cls, ev: GateEvents) -> "EventWeight":
        return cls(ev.amplitude, ev.rate, ev.center, ev.lower, ev.upper)

    @classmethod
    def second(cls, ev: GateEvents) -> "EventWeight":
        return cls(1.0, 0.0, ev.center, ev.lower, ev.upper)

    def covers(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.lower) & (x <= self.upper)
        arg = np.where(inside, self.rate * (x - self.center), 0.0)
        return np.where(inside, self.amplitude * np.exp(arg), 0.0)


@dataclass(frozen=True)
class ChainLayout:
    """Stage sequence of one signal pathway.

    Stage j evolves under block_generator(blocks[j]) + gaps[j]; events[j] moves
    stage j into j+1 and the last event closes the chain with the trace.
    """

    init: np.ndarray
    blocks: tuple
    gaps: tuple
    events: tuple
    prefactor: float
    sign_real: float | None = None  # S1-type layouts report sign_real * 2 Re(value)

    def generators(self, model: TsjModel, batch_shape=()):
        out = []
        for block, gap in zip(self.blocks, self.gaps):
            gen = block_generator(block, model)
            gap = np.asarray(gap, dtype=complex)
            g = gen + gap[..., None, None] * np.eye(2)
            out.append(np.broadcast_to(g, tuple(batch_shape) + (2, 2)))
        return out


def _check_separable(*gates):
    for g in gates:
        if g.shape is GateShape.GAUSSIAN:
            raise ValueError("Gaussian gates are not separable; use the quadrature oracle")


def gap_rate(gate: GateConfig, w, order: str):
    """Exponent of the spectrogram between its two events, vectorized over w."""
    w = np.asarray(w, dtype=float)
    if gate.shape is GateShape.LORENTZIAN:
        st, sw = gate.sigma_t, gate.sigma_w
        return -(1j * w + st + sw) if order == ">" else (1j * w - st - sw)
    if gate.shape is GateShape.PHYSICAL_SPECTRUM:
        g = gate.gamma
        return (0.5 * g - 1j * w) if order == ">" else (0.5 * g + 1j * w)
    raise ValueError("Gaussian spectrograms have no separable event form")


def s1_layout(t, w, gate: GateConfig, model: TsjModel, pair=CoherencePair.GE) -> ChainLayout:
    _check_separable(gate)
    pair = CoherencePair(pair)
    g = gate.at(t=t)
    ev = event_form(g, ">")
    if pair in (CoherencePair.GE, CoherencePair.EG):
        rho, mu2 = model.rho_ee0, model.mu_eg**2
    else:
        rho, mu2 = model.rho_ff0, model.mu_fe**2
    return ChainLayout(
        init=rho * SPIN_UP,
        blocks=(POPULATION, pair.value),
        gaps=(0.0, gap_rate(g, w, ">")),
        events=(EventWeight.first(ev), EventWeight.second(ev)),
        prefactor=mu2,
        sign_real=-1.0,
    )


def s2_layout(diagram, w1, w2, t1, t2, gate1: GateConfig, gate2: GateConfig, model: TsjModel) -> ChainLayout:
    """Diagram i: det2 with tau_2 >= 0 through the ef block; diagram ii: tau_2 < 0 through fe."""
    _check_separable(gate1, gate2)
    if diagram not in ("i", "ii"):
        raise ValueError("diagram must be 'i' or 'ii'")
    if t1 < t2:
        raise ValueError("requires t1 >= t2")
    g1 = gate1.at(t=t1)
    g2 = gate2.at(t=t2)
    order2 = ">" if diagram == "i" else "<"
    ev2 = event_form(g2, order2)
    ev1 = event_form(g1, ">")
    block2 = CoherencePair.EF if diagram == "i" else CoherencePair.FE
    return ChainLayout(
        init=model.rho_ff0 * SPIN_UP,
        blocks=(POPULATION, block2.value, POPULATION, CoherencePair.GE.value),
        gaps=(0.0, gap_rate(g2, w2, order2), 0.0, gap_rate(g1, w1, ">")),
        events=(EventWeight.first(ev2), EventWeight.second(ev2), EventWeight.first(ev1), EventWeight.second(ev1)),
        prefactor=model.mu_eg**2 * model.mu_fe**2,
    )


@dataclass(frozen=True)
class Window:
    start: float
    end: float
    breaks: tuple


def integration_window(events, gens, horizon: float = HORIZON, negligible: float = NEGLIGIBLE) -> Window:
    """Interval of the last event that carries weight, split at every support boundary."""
    decays = [abs(ev.rate) for ev in events if ev.rate < 0]
    for g in gens[1:]:
        slow = -float(np.max(np.linalg.eigvals(g).real))
        if slow > 0:
            decays.append(slow)
    finite = sorted({b for ev in events for b in (ev.lower, ev.upper) if math.isfinite(b) and b >= 0} | {0.0})
    if math.isinf(events[-1].upper):
        if not decays:
            raise ValueError("integrand does not decay; the chain has no finite horizon")
        end = finite[-1] + horizon / min(decays)
    else:
        end = events[-1].upper
    start = max(0.0, events[0].lower) if math.isfinite(events[0].lower) else 0.0
    if events[0].rate > 0 and math.isfinite(events[0].upper):
        start = max(start, events[0].center - negligible / events[0].rate)
    start = min(start, end)
    breaks = tuple(sorted({start, end} | {b for b in finite if start < b < end}))
    return Window(start, end, breaks)


def chain_integral(layout: ChainLayout, model: TsjModel, batch_shape=()):
    """Raw chain value (complex), vectorized over the batch carried by the gaps."""
    bshape = tuple(batch_shape)
    gens = layout.generators(model, bshape)
    events = layout.events
    n = len(gens) - 1
    if len(events) != n + 1:
        raise ValueError("need one event per stage")
    dim = 2 * (n + 1) + 1
    # gaps only shift imaginary parts across the batch, so one representative fixes the window
    rep = [np.asarray(g).reshape(-1, 2, 2)[0] for g in gens]
    win = integration_window(events, rep)

    state = np.zeros(bshape + (dim,), dtype=complex)
    state[..., 0:2] = scipy.linalg.expm(rep[0] * win.start) @ np.asarray(layout.init, dtype=complex)

    rates = np.array([ev.rate for ev in events])
    scale_max = max([abs(r) for r in rates] + [1e-300])
    gen_norm = max(float(np.max(np.abs(g))) for g in gens)
    h_max = min(1.0 / scale_max, 8.0 / max(gen_norm, 1e-300))
    eye = np.eye(2)
    for p0, p1 in zip(win.breaks[:-1], win.breaks[1:]):
        mid = 0.5 * (p0 + p1)
        active = np.array([ev.covers(mid) for ev in events], dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(rates * active)])  # gauge rate per stage, S last
        steps = max(1, int(math.ceil((p1 - p0) / h_max)))
        h = (p1 - p0) / steps
        base = np.zeros(bshape + (dim, dim), dtype=complex)
        for j in range(n + 1):
            base[..., 2 * j:2 * j + 2, 2 * j:2 * j + 2] = gens[j] - cum[j] * eye
        base[..., dim - 1, dim - 1] = -cum[n + 1]
        cum_comp = np.concatenate([np.repeat(cum[: n + 1], 2), [cum[n + 1]]])
        growth = np.exp(cum_comp * h)
        for j, ev in enumerate(events):
            if not active[j]:
                continue
            c = ev.amplitude * math.exp(ev.rate * (p0 - ev.center))
            if j < n:
                base[..., 2 * j + 2:2 * j + 4, 2 * j:2 * j + 2] += c * eye
            else:
                base[..., dim - 1, 2 * n:2 * n + 2] += c * TRACE
        # Later sub-steps differ from the first by the diagonal similarity
        # diag(growth)^s, so one exponential serves the whole piece.
        prop = scipy.linalg.expm(base * h)
        diff = cum_comp[:, None] - cum_comp[None, :]
        for s in range(steps):
            step = prop * np.exp(diff * (s * h))
            state = np.einsum("...ij,...j->...i", step, state) * growth
    return state[..., dim - 1]


def s1_chain(t, w, gate: GateConfig, model: TsjModel, scale: float = 1.0):
    """S^(1) for one detection time t (ps), vectorized over w. Same sign convention as s1_closed."""
    w = np.asarray(w, dtype=float)
    lay = s1_layout(t, w, gate, model)
    val = chain_integral(lay, model, w.shape)
    return lay.sign_real * 2.0 * np.real(val) * scale * lay.prefactor


def s1_fe_chain(t, w, gate: GateConfig, model: TsjModel, scale: float = 1.0):
    """f->e single-detector analogue, the g2 denominator for detector 2."""
    w = np.asarray(w, dtype=float)
    lay = s1_layout(t, w, gate, model, pair=CoherencePair.EF)
    val = chain_integral(lay, model, w.shape)
    return lay.sign_real * 2.0 * np.real(val) * scale * lay.prefactor


def s2_chain(diagram, w1, w2, t1, t2, gate1: GateConfig, gate2: GateConfig, model: TsjModel, scale: float = 1.0):
    """One coincidence diagram (complex) for fixed t1 >= t2 (ps), vectorized over (w1, w2)."""
    w1, w2 = np.broadcast_arrays(np.asarray(w1, dtype=float), np.asarray(w2, dtype=float))
    lay = s2_layout(diagram, w1, w2, t1, t2, gate1, gate2, model)
    return chain_integral(lay, model, w1.shape) * scale * lay.prefactor


def s2_total_chain(w1, w2, t1, t2, gate1, gate2, model, scale=1.0):
    si = s2_chain("i", w1, w2, t1, t2, gate1, gate2, model, scale)
    sii = s2_chain("ii", w1, w2, t1, t2, gate1, gate2, model, scale)
    return 2.0 * np.real(si + sii)
