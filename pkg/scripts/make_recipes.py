"""Regenerate the bundled figure recipes in src/gatedpcc/recipes/.

Frequency windows are +-4 line widths around the outermost transitions, where
a line width is the largest sigma_T + sigma_w + dephasing among the detectors.
"""

from pathlib import Path

from gatedpcc.model import derived_frequencies, reference_model

OUT = Path(__file__).resolve().parents[1] / "src" / "gatedpcc" / "recipes"
MODEL = reference_model()
FR = derived_frequencies(MODEL)
POINTS = 201

FIG3 = {"a": (0.7, 0.8), "b": (7, 8), "c": (7, 18), "d": (17, 18)}
FIG3_TIMES = ["0 ps", "50 fs", "100 fs", "200 fs", "500 fs", "1 ps", "2 ps", "3.3 ps"]
FIG4 = {
    "a": ((0.7, 0.8), (0.75, 0.85)),
    "b": ((7, 8), (7.5, 8.5)),
    "c": ((7, 18), (7.5, 18.5)),
    "d": ((17, 18), (17.5, 18.5)),
}
FIG5_TIMES = {
    "a": ("3.3 fs", "3.3 fs"),
    "b": ("1 ps", "1 ps"),
    "c": ("3.3 ps", "3.3 fs"),
    "d": ("3.3 fs", "3.3 ps"),
    "e": ("3.3 ps", "3.3 ps"),
    "f": ("3.3 ps", "33 ps"),
    "g": ("33 ps", "3.3 ps"),
    "h": ("33 ps", "33 ps"),
}

HEADER = 'format = "pcc-scan/1"\nkind = "{kind}"\ndescription = "{desc}"\n\n[model]\npreset = "reference"\n'


def _f(x):
    return f'"{x:g} cm-1"'


def _window(lo, hi, width):
    return lo - 4 * width, hi + 4 * width


def _axis(name, lo, hi, count=POINTS):
    return f'\n[axes.{name}]\nmin = {_f(lo)}\nmax = {_f(hi)}\ncount = {count}\n'


def fig3(panel):
    st, sw = FIG3[panel]
    text = HEADER.format(kind="s1", desc=f"Fig. 3{panel}: S1 snapshots, sigma_T={st:g}, sigma_w={sw:g} cm-1")
    text += f'\n[detector]\nshape = "lorentzian"\nsigma_t = {_f(st)}\nsigma_w = {_f(sw)}\nt = "axis"\nw = "axis"\n'
    text += "\n[axes.t]\nvalues = [" + ", ".join(f'"{t}"' for t in FIG3_TIMES) + "]\n"
    text += _axis("w", 12300, 12700, 400)
    return text


def _s2(desc, det1, det2, t2, delay, shape="lorentzian"):
    text = HEADER.format(kind="s2", desc=desc)
    widths = []
    for name, (st, sw), deph in (("detector1", det1, MODEL.gamma_e), ("detector2", det2, MODEL.gamma_f)):
        text += f'\n[{name}]\nshape = "{shape}"\n'
        if shape == "lorentzian":
            text += f"sigma_t = {_f(st)}\n"
            widths.append(st + sw + deph)
        else:
            widths.append(sw + deph)
        text += f'sigma_w = {_f(sw)}\nw = "axis"\n'
    text += f'\n[times]\nt2 = "{t2}"\ndelay = "{delay}"\n'
    width = max(widths)
    text += _axis("w1", *_window(FR.eg_minus, FR.eg_plus, width))
    text += _axis("w2", *_window(FR.fe_minus, FR.fe_plus, width))
    return text


def fig4(panel):
    g1, g2 = FIG4[panel]
    desc = f"Fig. 4{panel}: S2 frequency correlation, t2=3.3 ps, t1-t2=3.3 fs"
    return _s2(desc, g1, g2, "3.3 ps", "3.3 fs")


def fig5(panel):
    t2, delay = FIG5_TIMES[panel]
    g1, g2 = FIG4["c"]
    return _s2(f"Fig. 5{panel}: S2 with Fig. 4c gates, t2={t2}, t1-t2={delay}", g1, g2, t2, delay)


def fig6(panel):
    t2, delay = FIG5_TIMES[panel]
    (_, sw1), (_, sw2) = FIG4["c"]
    desc = f"Fig. 6{panel}: physical spectrum, Gamma=sigma_w, t2={t2}, t1-t2={delay}"
    return _s2(desc, (None, sw1), (None, sw2), t2, delay, shape="physical_spectrum")


def fig7(panel):
    (_, sw1), (_, sw2) = FIG4[panel]
    desc = f"Fig. 7{panel}: physical spectrum, Gamma=sigma_w of Fig. 4{panel}, t2=3.3 ps, t1-t2=3.3 ps"
    return _s2(desc, (None, sw1), (None, sw2), "3.3 ps", "3.3 ps", shape="physical_spectrum")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    jobs = [(f"fig3{p}", fig3, p) for p in "abcd"] + [(f"fig4{p}", fig4, p) for p in "abcd"]
    jobs += [(f"fig5{p}", fig5, p) for p in "abcdefgh"] + [(f"fig6{p}", fig6, p) for p in "abcdefgh"]
    jobs += [(f"fig7{p}", fig7, p) for p in "abcd"]
    for name, fn, panel in jobs:
        (OUT / f"{name}.toml").write_text(fn(panel), encoding="utf-8")
    print(f"wrote {len(jobs)} recipes to {OUT}")


if __name__ == "__main__":
    main()
