"""Command-line entry point.

Exit codes: 0 success, 2 invalid configuration, 3 geometric precondition failure.
"""

import argparse
import ast
import json
import math
import operator
import os
import re
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from . import analysis, builtins, io, isomers, strip as strip_mod
from .config import DEFAULT_N, DEFAULT_NV, DEFAULT_TOL, Tolerances
from .curves import resample_by_arclength
from .errors import GeometryError

COMMANDS = ("build", "isomers", "classify", "census", "develop", "meanH", "examples")
OUT_ENV = "CURVEDFOLD_OUT"


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    example: Optional[str] = None
    params: dict = field(default_factory=dict)
    samples: Optional[str] = None
    closed: bool = False
    alpha: Optional[str] = None
    n: int = DEFAULT_N
    eps: Optional[float] = None
    n_v: int = DEFAULT_NV
    grid_b: int = 8
    tol: dict = field(default_factory=dict)
    out: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.command != "examples" and not (self.example or self.samples):
            raise ConfigError("need an example name or a samples file")
        if self.example and self.samples:
            raise ConfigError("give either an example or a samples file, not both")
        if self.example and self.example not in builtins.EXAMPLES:
            raise ConfigError(f"unknown example {self.example!r}")
        if self.n < 16:
            raise ConfigError("n must be at least 16")
        if self.n_v < 3 or self.n_v % 2 == 0:
            raise ConfigError("n_v must be odd and at least 3")
        if self.grid_b < 1:
            raise ConfigError("grid_b must be positive")
        if self.eps is not None and not self.eps > 0:
            raise ConfigError("eps must be positive")
        try:
            DEFAULT_TOL.with_overrides(**self.tol)
        except KeyError as e:
            raise ConfigError(str(e)) from None
        return self

    @property
    def tolerances(self) -> Tolerances:
        return DEFAULT_TOL.with_overrides(**self.tol)

    @property
    def out_dir(self) -> Path:
        return Path(self.out or os.environ.get(OUT_ENV, "out"))


# --- small expression language for alpha specs ---------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow, ast.USub: operator.neg,
        ast.UAdd: operator.pos}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt, "sin": math.sin, "cos": math.cos, "tan": math.tan}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval(node.operand))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        return _FUNCS[node.func.id](*[_eval(a) for a in node.args])
    raise ConfigError(f"unsupported expression element: {ast.dump(node)}")


def number(text: str) -> float:
    """Evaluate ``"10pi/24"``-style numbers (implicit multiplication before names)."""
    t = re.sub(r"(\d)\s*(pi|e\b|sqrt)", r"\1*\2", str(text).strip())
    try:
        return _eval(ast.parse(t, mode="eval"))
    except SyntaxError:
        raise ConfigError(f"cannot parse number {text!r}") from None


def parse_alpha(spec: str, crease):
    """Turn an alpha spec into sampled values on ``crease``.

    ``const(x)``, ``linear(a, b)`` meaning ``a s + b`` in the curve's native
    arc length, ``ellipse_mu(a)`` for the angle realizing the curvature of an
    ellipse scaled to the crease length, or a path to a one-column file.
    """
    m = re.fullmatch(r"\s*(\w+)\s*\((.*)\)\s*", spec or "")
    if not m:
        if spec and Path(spec).exists():
            a = io.read_samples(spec).ravel()
            if len(a) != len(crease.s):
                raise ConfigError(f"alpha file has {len(a)} values, crease has {len(crease.s)} samples")
            return a
        raise ConfigError(f"cannot parse alpha spec {spec!r}")
    name, args = m.group(1), [x for x in m.group(2).split(",") if x.strip()]
    vals = [number(x) for x in args]
    s = crease.s + crease.origin
    if name == "const" and len(vals) == 1:
        return np.full(len(s), vals[0])
    if name == "linear" and len(vals) == 2:
        return vals[0] * s + vals[1]
    if name == "ellipse_mu" and len(vals) == 1:
        if not crease.closed:
            raise ConfigError("ellipse_mu needs a closed crease")
        mu, _ = builtins.ellipse_curvature_by_arclength(vals[0], len(crease.s), crease.length)
        ratio = mu / crease.kappa
        if np.any(ratio >= 1):
            raise ConfigError("ellipse generator too curved for this crease")
        return np.arccos(ratio)
    raise ConfigError(f"unknown alpha spec {spec!r}")


# --- config assembly ----------------------------------------------------------------

def _kv(items, numeric=True):
    out = {}
    for it in items or []:
        if "=" not in it:
            raise ConfigError(f"expected key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = number(v) if numeric else v
    return out


def make_config(args) -> JobConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config: {e}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    allowed = {f.name for f in fields(JobConfig)} - {"command"}
    unknown = set(data) - allowed - {"command"}
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
    if "command" in data and data["command"] != args.command:
        raise ConfigError("config command does not match the subcommand")
    data = {k: v for k, v in data.items() if k != "command"}
    for key in ("example", "samples", "alpha", "n", "eps", "n_v", "grid_b", "out"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if getattr(args, "closed", False):
        data["closed"] = True
    params = dict(data.get("params", {}))
    params.update(_kv(getattr(args, "param", None)))
    data["params"] = params
    tol = dict(data.get("tol", {}))
    tol.update(_kv(getattr(args, "tol", None)))
    data["tol"] = tol
    try:
        cfg = JobConfig(command=args.command, **data)
    except TypeError as e:
        raise ConfigError(str(e)) from None
    if isinstance(cfg.n, float):
        cfg.n = int(cfg.n)
    return cfg.validate()


def load_crease(cfg: JobConfig):
    if cfg.example:
        try:
            return builtins.build_example(cfg.example, n=cfg.n, **cfg.params)
        except KeyError as e:
            raise ConfigError(str(e)) from None
    pts = io.read_samples(cfg.samples)
    return resample_by_arclength(pts, cfg.n, closed=cfg.closed, tol=cfg.tolerances)


def load_strip(cfg: JobConfig):
    crease = load_crease(cfg)
    spec = cfg.alpha or (builtins.EXAMPLES[cfg.example].alpha if cfg.example else None)
    if spec is None:
        raise ConfigError("an alpha spec is required for sample-file creases")
    alpha = parse_alpha(spec, crease)
    width = cfg.eps
    return strip_mod.build_strip(crease, alpha, width, tol=cfg.tolerances)


def _alpha_stats(s):
    return {"min": float(s.alpha.min()), "max": float(s.alpha.max()),
            "mean": float(s.alpha.mean())}


# --- commands --------------------------------------------------------------------------

def cmd_examples(cfg, out):
    rows = []
    for name, ex in builtins.EXAMPLES.items():
        rows.append({"name": name, "params": ex.params, "alpha": ex.alpha, "anchor": ex.anchor})
        p = ", ".join(f"{k}={v:.6g}" for k, v in ex.params.items())
        print(f"{name}({p})  alpha={ex.alpha}\n    {ex.anchor}")
    return {"examples": rows}


def cmd_build(cfg, out):
    tol = cfg.tolerances
    F = load_strip(cfg)
    mesh = strip_mod.sample_mesh(F, cfg.n_v, tol=tol)
    phi = strip_mod.build_origami_map(F)
    io.write_text(out / "strip.obj", io.obj_text([mesh], ["F"], polyline=F.crease.points))
    io.write_text(out / "origami.obj", io.origami_obj_text(phi, cfg.n_v))
    H = strip_mod.mean_curvature_along_crease(F)
    return {
        "length": F.crease.length, "closed": F.closed, "width": F.width,
        "admissible": strip_mod.is_admissible(F, tol), "alpha": _alpha_stats(F),
        "beta_residual": float(F.beta_residual().max()),
        "max_angle_defect": mesh.max_angle_defect,
        "mean_curvature": {"min": float(H.min()), "max": float(H.max())},
    }


def cmd_isomers(cfg, out):
    tol = cfg.tolerances
    F = load_strip(cfg)
    q = isomers.isomer_quartet(F, tol)
    for name, s in zip(q.names, q.members):
        m = strip_mod.sample_mesh(s, cfg.n_v, tol=tol)
        io.write_text(out / f"{name}.obj", io.obj_text([m], [name], polyline=s.crease.points))
    R = q.right_matrix(tol)
    return {
        "names": list(q.names),
        "alpha": {n: _alpha_stats(s) for n, s in zip(q.names, q.members)},
        "admissible": strip_mod.is_admissible(F, tol),
        "right_equivalence": R.astype(int).tolist(),
        "n_right_classes": isomers.count_classes(R),
    }


def cmd_classify(cfg, out):
    F = load_strip(cfg)
    rep = analysis.classify_quartet(F, tol=cfg.tolerances)
    d = rep.as_dict()
    print(f"N={rep.n_congruence_classes} n={rep.n_right_classes} case={rep.fired_case} "
          f"registration={rep.n_oracle}")
    return d


def cmd_census(cfg, out):
    F = load_strip(cfg)
    cen = analysis.classify_closed(F, cfg.grid_b, tol=cfg.tolerances)
    if cen.circle_crease:
        print("circle crease: classification skipped")
        return {"circle_crease": True}
    l = F.crease.length
    rows = []
    for a, la in enumerate(cen.labels):
        for b, lb in enumerate(cen.labels):
            if b <= a:
                continue
            rows.append([la[0], la[1] * l / cfg.grid_b, lb[0], lb[1] * l / cfg.grid_b,
                         int(cen.matrix[a, b]), float(cen.residual[a, b])])
    io.write_text(out / "census.csv",
                  io.csv_text(["i", "b", "j", "b2", "congruent", "residual"], rows))
    print(f"{len(cen.labels)} members, {cen.n_classes} congruence classes")
    return {
        "members": [[i, k * l / cfg.grid_b] for i, k in cen.labels],
        "classes": [[list(cen.labels[k]) for k in c] for c in cen.classes],
        "n_classes": cen.n_classes, "size_bound": cen.size_bound, "bound_ok": cen.bound_ok,
        "circle_crease": False,
    }


def _circle_fit(P):
    A = np.c_[2 * P, np.ones(len(P))]
    b = (P**2).sum(1)
    x = np.linalg.lstsq(A, b, rcond=None)[0]
    centre = x[:2]
    r = np.sqrt(x[2] + centre @ centre)
    return centre, r, float(np.abs(np.linalg.norm(P - centre, axis=1) - r).max())


def cmd_develop(cfg, out):
    F = load_strip(cfg)
    phi = strip_mod.build_origami_map(F)
    g = phi.crease_pattern
    io.write_text(out / "pattern.svg", io.svg_text(phi))
    io.write_text(out / "pattern.csv",
                  io.csv_text(["s", "x", "y", "mu"], [[a, p[0], p[1], m] for a, p, m in
                                                     zip(g.s, g.points, g.mu)]))
    from .curves import is_simple
    meas = g.measured_curvature()
    centre, r, dev = _circle_fit(np.asarray(g.points))
    return {
        "length": g.length, "simple": is_simple(g),
        "curvature_error": float(np.abs(meas - g.mu).max()),
        "circle_fit": {"radius": float(r), "max_deviation": dev},
    }


def cmd_meanH(cfg, out):
    tol = cfg.tolerances
    crease = load_crease(cfg)
    if crease.closed:
        raise ConfigError("meanH needs an interval crease")
    spec = cfg.alpha or (builtins.EXAMPLES[cfg.example].alpha if cfg.example else None)
    if spec is None:
        raise ConfigError("an alpha spec is required")
    kappa = CubicSpline(crease.s, crease.kappa)
    a = CubicSpline(crease.s, parse_alpha(spec, crease))
    sol = analysis.equal_mean_curvature_torsion(kappa, a, crease.length, n=cfg.n, tol=tol)
    s = sol.F.crease.s
    io.write_text(out / "tau.csv", io.csv_text(["s", "tau"], zip(s, sol.F.crease.tau)))
    for name, st in (("F", sol.F), ("F1", sol.F1)):
        m = strip_mod.sample_mesh(st, cfg.n_v, tol=tol)
        io.write_text(out / f"{name}.obj", io.obj_text([m], [name], polyline=st.crease.points))
    return {"length": sol.length, "halvings": sol.halvings, "tau0": sol.tau0,
            "tau0_limit": -sol.B2_0 / (2 * sol.B1_0), "H_residual": sol.h_residual,
            "quadratic_residual": sol.quadratic_residual}


HANDLERS = {"build": cmd_build, "isomers": cmd_isomers, "classify": cmd_classify,
            "census": cmd_census, "develop": cmd_develop, "meanH": cmd_meanH,
            "examples": cmd_examples}


def build_parser():
    p = argparse.ArgumentParser(prog="curvedfold", description="Developable strips, isomers and curved foldings.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON job file; flags override its keys")
        sp.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./out)")
        if name == "examples":
            continue
        sp.add_argument("--example", help="built-in curve name")
        sp.add_argument("--param", action="append", metavar="KEY=VALUE", help="example parameter")
        sp.add_argument("--samples", help="file of xyz rows")
        sp.add_argument("--closed", action="store_true", help="samples describe a closed curve")
        sp.add_argument("--alpha", help="const(x) | linear(a,b) | ellipse_mu(a) | file")
        sp.add_argument("--n", type=int, help="arc-length steps")
        sp.add_argument("--eps", type=float, help="band half-width")
        sp.add_argument("--n-v", dest="n_v", type=int, help="rulings across the band (odd)")
        sp.add_argument("--tol", action="append", metavar="KEY=VALUE", help="tolerance override")
        if name == "census":
            sp.add_argument("--grid-b", dest="grid_b", type=int, help="shifts per family")
    return p


def run(cfg: JobConfig):
    out = cfg.out_dir / cfg.command
    result = HANDLERS[cfg.command](cfg, out)
    io.write_text(out / f"{cfg.command}.json", io.json_text(result))
    return result


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
    except (ConfigError, KeyError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        run(cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except GeometryError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
