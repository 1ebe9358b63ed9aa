"""Classify the isomer quartets of the interval examples and export their meshes.

Usage: python3 scripts/reproduce_examples.py [--n 2048] [--out out/examples]
"""

import argparse
from pathlib import Path

import numpy as np

from curvedfold import io
from curvedfold.analysis import classify_quartet, midpoint_criterion
from curvedfold.builtins import arctan_curve, helix, perturbed_helix, quarter_circle
from curvedfold.errors import PlanarCurve
from curvedfold.isomers import isomer_quartet
from curvedfold.strip import build_origami_map, build_strip, sample_mesh

CASES = {
    "helix": (helix, np.pi / 4),
    "arctan_curve": (arctan_curve, lambda s: np.pi * (s + 10) / 24),
    "quarter_circle": (quarter_circle, lambda s: np.pi / 4 - s / 2),
    "perturbed_helix": (perturbed_helix, np.pi / 3),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2048)
    ap.add_argument("--out", default="out/examples")
    args = ap.parse_args(argv)
    out = Path(args.out)

    print(f"{'example':16s} {'n':>2s} {'N':>2s} {'oracle':>6s}  case                      midpoint")
    for name, (curve, alpha) in CASES.items():
        F = build_strip(curve(n=args.n), alpha)
        rep = classify_quartet(F)
        try:
            mid = midpoint_criterion(F)
        except PlanarCurve:
            mid = "planar"
        print(f"{name:16s} {rep.n_right_classes:2d} {rep.n_congruence_classes:2d} {rep.n_oracle:6d}  "
              f"{rep.fired_case:25s} {mid}")
        q = isomer_quartet(F)
        meshes = [sample_mesh(s) for s in q.members]
        io.write_text(out / f"{name}_quartet.obj", io.obj_text(meshes, list(q.names)))
        io.write_text(out / f"{name}_origami.obj", io.origami_obj_text(build_origami_map(F)))
        io.write_text(out / f"{name}.json", io.json_text(rep.as_dict()))
    print(f"meshes and reports written to {out}/")


if __name__ == "__main__":
    main()
