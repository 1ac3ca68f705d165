"""Relative |S2| at the four candidate peaks for the Fig. 4-7 parameter sets.

Values are normalized to the strongest peak of each panel. Physical-spectrum
panels go through the exact chain evaluator.
"""

from gatedpcc.chain import s2_total_chain
from gatedpcc.model import GateConfig, GateShape, derived_frequencies, reference_model
from gatedpcc.signals import s2_total_grid

MODEL = reference_model()
FR = derived_frequencies(MODEL)
PEAKS = [("eg-", "fe-", FR.eg_minus, FR.fe_minus), ("eg-", "fe+", FR.eg_minus, FR.fe_plus),
         ("eg+", "fe-", FR.eg_plus, FR.fe_minus), ("eg+", "fe+", FR.eg_plus, FR.fe_plus)]
FIG4 = {"a": ((0.7, 0.8), (0.75, 0.85)), "b": ((7, 8), (7.5, 8.5)), "c": ((7, 18), (7.5, 18.5)), "d": ((17, 18), (17.5, 18.5))}
FIG5 = {"a": (0.0033, 0.0033), "b": (1, 1), "c": (3.3, 0.0033), "d": (0.0033, 3.3),
        "e": (3.3, 3.3), "f": (3.3, 33), "g": (33, 3.3), "h": (33, 33)}


def peaks(g1, g2, t2, delay, time_scale=1.0, model=MODEL):
    t2, t1 = t2 * time_scale, (t2 + delay) * time_scale
    out = []
    for *_, w1, w2 in PEAKS:
        if g1.shape is GateShape.LORENTZIAN:
            out.append(abs(float(s2_total_grid(w1, w2, t1, t2, g1, g2, model))))
        else:
            out.append(abs(float(s2_total_chain(w1, w2, t1, t2, g1, g2, model))))
    top = max(out)
    return [v / top for v in out]


def line(label, vals):
    cells = "  ".join(f"({a},{b})={v:.3f}" for (a, b, *_), v in zip(PEAKS, vals))
    return f"{label:5s} {cells}"


def report(time_scale=1.0):
    lor = GateShape.LORENTZIAN
    ps = GateShape.PHYSICAL_SPECTRUM
    rows = []
    for p, ((a, b), (c, d)) in FIG4.items():
        rows.append(line(f"4{p}", peaks(GateConfig(lor, a, b), GateConfig(lor, c, d), 3.3, 0.0033, time_scale)))
    (a, b), (c, d) = FIG4["c"]
    for p, (t2, dl) in FIG5.items():
        rows.append(line(f"5{p}", peaks(GateConfig(lor, a, b), GateConfig(lor, c, d), t2, dl, time_scale)))
    for p, (t2, dl) in FIG5.items():
        rows.append(line(f"6{p}", peaks(GateConfig(ps, None, b), GateConfig(ps, None, d), t2, dl, time_scale)))
    for p, ((_, b), (_, d)) in FIG4.items():
        rows.append(line(f"7{p}", peaks(GateConfig(ps, None, b), GateConfig(ps, None, d), 3.3, 3.3, time_scale)))
    return rows


if __name__ == "__main__":
    print("\n".join(report()))
