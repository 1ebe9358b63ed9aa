"""Solve for the torsion that gives F and its reversed inverse dual the same mean curvature.

Usage: python3 scripts/equal_mean_curvature.py [--d 0.1] [--alpha 1.0471975512] [--n 2048]
"""

import argparse
from pathlib import Path

import numpy as np

from curvedfold import io
from curvedfold.analysis import classify_quartet, equal_mean_curvature_torsion
from curvedfold.builtins import perturbed_helix_kappa_of_s
from curvedfold.strip import sample_mesh


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=float, default=0.1, help="perturbation of the helix")
    ap.add_argument("--alpha", type=float, default=np.pi / 3)
    ap.add_argument("--n", type=int, default=2048)
    ap.add_argument("--out", default="out/meanH")
    args = ap.parse_args(argv)

    kappa, total = perturbed_helix_kappa_of_s(args.d)
    sol = equal_mean_curvature_torsion(kappa, lambda s: args.alpha + 0 * s, total, n=args.n)
    rep = classify_quartet(sol.F)
    print(f"interval length {sol.length:.6f} after {sol.halvings} halvings")
    print(f"tau(0) = {sol.tau0:.10f}, -B2(0)/(2 B1(0)) = {-sol.B2_0 / (2 * sol.B1_0):.10f}")
    print(f"sup |H - H1| = {sol.h_residual:.2e}, quadratic residual = {sol.quadratic_residual:.2e}")
    print(f"N = {rep.n_congruence_classes} ({rep.fired_case}), registration count = {rep.n_oracle}")
    out = Path(args.out)
    c = sol.F.crease
    io.write_text(out / "tau.csv", io.csv_text(["s", "tau"], zip(c.s, c.tau)))
    io.write_text(out / "F_F1.obj", io.obj_text([sample_mesh(sol.F), sample_mesh(sol.F1)], ["F", "F1"]))
    print(f"torsion table and meshes written to {out}/")


if __name__ == "__main__":
    main()
