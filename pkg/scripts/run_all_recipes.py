"""Evaluate every bundled figure recipe and write the grids to a directory.

    python scripts/run_all_recipes.py out/ [--format csv|json] [--threads N] [--points N]

--points resamples every axis to N evenly spaced values (handy for quick looks).
"""

import argparse
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from gatedpcc.grid import write_grid
from gatedpcc.scan import AxisSpec, bundled_recipes, load_scan, run_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--points", type=int, default=None)
    ap.add_argument("--only", nargs="*", default=None, help="recipe names, e.g. fig4a fig7d")
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, path in bundled_recipes().items():
        if args.only and name not in args.only:
            continue
        spec = load_scan(path)
        if args.points:
            spec = replace(spec, axes=tuple(
                AxisSpec(a.name, tuple(np.linspace(a.values[0], a.values[-1], args.points).tolist())) for a in spec.axes
            ))
        start = time.perf_counter()
        grid = run_scan(spec, threads=args.threads)
        out = write_grid(grid, args.outdir / f"{name}.{args.format}", args.format)
        print(f"{name:6s} {grid.metadata['method']:7s} {grid.values.shape} {time.perf_counter() - start:6.1f} s -> {out}")


if __name__ == "__main__":
    main()
