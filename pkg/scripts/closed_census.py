"""Congruence census of the closed families over the torus curve with the ellipse generator.

Usage: python3 scripts/closed_census.py [--m 3] [--a 1.2] [--grid-b 8] [--n 2048]
"""

import argparse
import time
from pathlib import Path

import numpy as np

from curvedfold import io
from curvedfold.analysis import classify_closed
from curvedfold.builtins import ellipse_curvature_by_arclength, torus_curve
from curvedfold.strip import build_strip, is_admissible


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--a", type=float, default=1.2, help="ellipse semi-axis ratio")
    ap.add_argument("--grid-b", type=int, default=8)
    ap.add_argument("--n", type=int, default=2048)
    ap.add_argument("--out", default="out/census")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    C = torus_curve(args.m, n=args.n)
    mu, k = ellipse_curvature_by_arclength(args.a, len(C.s), C.length)
    F = build_strip(C, np.arccos(mu / C.kappa))
    print(f"L = {C.length:.6f}, k = L / (ellipse length) = {k:.5f}")
    print(f"min kappa = {C.kappa.min():.5f}, 2 pi / L = {2 * np.pi / C.length:.5f}, "
          f"admissible = {is_admissible(F)}")
    cen = classify_closed(F, args.grid_b)
    print(f"{len(cen.members)} members, {cen.n_classes} congruence classes "
          f"({time.perf_counter() - t0:.1f}s)")
    for c in cen.classes:
        print("  ", ", ".join(f"F^{cen.labels[i][0]}_{cen.labels[i][1]}/{args.grid_b}" for i in c))

    rows = [[*cen.labels[i], *cen.labels[j], int(cen.matrix[i, j]), float(cen.residual[i, j])]
            for i in range(len(cen.labels)) for j in range(i + 1, len(cen.labels))]
    path = io.write_text(Path(args.out) / "census.csv",
                         io.csv_text(["i", "k", "j", "k2", "congruent", "residual"], rows))
    print(f"pairwise table written to {path}")


if __name__ == "__main__":
    main()
