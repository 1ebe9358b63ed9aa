"""Text emitters: OBJ meshes, SVG crease patterns, CSV tables and JSON reports.

All writers format numbers explicitly so identical inputs give identical bytes.
"""

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .strip import OrigamiMap, StripMesh


def _f(x):
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def obj_text(meshes, names=None, polyline=None):
    """OBJ with one ``o`` block per mesh and an optional shared polyline as ``l`` records."""
    names = names or [f"mesh{i}" for i in range(len(meshes))]
    out = ["# curvedfold mesh export"]
    base = 0
    for name, m in zip(names, meshes):
        out.append(f"o {name}")
        for p in m.flat_vertices:
            out.append(f"v {_f(p[0])} {_f(p[1])} {_f(p[2])}")
        for a, b, c in m.faces + base + 1:
            out.append(f"f {a} {b} {c}")
        base += len(m.flat_vertices)
    if polyline is not None:
        out.append("o crease")
        for p in polyline:
            out.append(f"v {_f(p[0])} {_f(p[1])} {_f(p[2])}")
        idx = " ".join(str(base + 1 + i) for i in range(len(polyline)))
        out.append(f"l {idx}")
    return "\n".join(out) + "\n"


def origami_obj_text(phi: OrigamiMap, n_v=9, eps=None):
    up, lo = phi.meshes(n_v, eps)
    return obj_text([up, lo], ["upper", "lower"], polyline=phi.upper.crease.points)


def svg_text(phi: OrigamiMap, tick_every=None, tick_len=None, width_px=800):
    """Crease pattern with ruling ticks: ``beta_L`` to the left, ``beta_R`` to the right."""
    g = phi.crease_pattern
    P = np.asarray(g.points)
    n = len(phi.beta_left)
    P = P[:n]
    T = np.gradient(P, axis=0)
    T /= np.linalg.norm(T, axis=1)[:, None]
    tick_every = tick_every or max(1, n // 48)
    tick_len = tick_len or 0.04 * g.length

    def rot(v, a):
        c, s = np.cos(a), np.sin(a)
        return np.stack([c * v[:, 0] - s * v[:, 1], s * v[:, 0] + c * v[:, 1]], 1)

    idx = np.arange(0, n, tick_every)
    left = P[idx] + tick_len * rot(T[idx], phi.beta_left[idx])
    right = P[idx] + tick_len * rot(T[idx], -phi.beta_right[idx])
    allp = np.vstack([P, left, right])
    lo, hi = allp.min(0), allp.max(0)
    pad = 0.05 * max(hi - lo)
    lo, hi = lo - pad, hi + pad
    w, h = hi - lo
    height_px = int(round(width_px * h / w))

    def pt(p):
        return f"{_f(p[0])},{_f(p[1])}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" height="{height_px}" '
        f'viewBox="{_f(lo[0])} {_f(-hi[1])} {_f(w)} {_f(h)}">',
        '<g transform="scale(1,-1)" fill="none" stroke-linecap="round">',
        f'<polyline stroke="black" stroke-width="{_f(0.004 * w)}" points="{" ".join(pt(p) for p in P)}"/>',
    ]
    sw = _f(0.002 * w)
    for k, i in enumerate(idx):
        out.append(f'<line stroke="#c03030" stroke-width="{sw}" x1="{_f(P[i, 0])}" y1="{_f(P[i, 1])}" '
                   f'x2="{_f(left[k, 0])}" y2="{_f(left[k, 1])}"/>')
        out.append(f'<line stroke="#3050c0" stroke-width="{sw}" x1="{_f(P[i, 0])}" y1="{_f(P[i, 1])}" '
                   f'x2="{_f(right[k, 0])}" y2="{_f(right[k, 1])}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def csv_text(header, rows):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([f"{x:.12g}" if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(f"{x:.12g}") if np.isfinite(x) else str(x)
    return x


def json_text(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def read_samples(path):
    """Rows of numbers from a CSV/whitespace file; a non-numeric first row is taken as a header."""
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            if rows:
                raise
    return np.array(rows, dtype=float)
