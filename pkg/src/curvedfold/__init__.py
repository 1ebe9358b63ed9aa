"""Developable strips along space curves, their isomers and curved foldings."""

from .config import DEFAULT_N, DEFAULT_TOL, Tolerances
from .curves import (
    Isometry3,
    PlaneCurve,
    SpaceCurve,
    curve_from_kappa_tau,
    detect_curve_symmetries,
    is_simple,
    plane_curve_from_mu,
    resample_by_arclength,
    reverse_curve,
)
from .strip import (
    DevelopableStrip,
    OrigamiMap,
    build_origami_map,
    build_strip,
    is_admissible,
    mean_curvature_along_crease,
    sample_mesh,
    strips_intersect_only_along_crease,
)
from .isomers import (
    closed_family,
    dual,
    inverse,
    inverse_dual,
    isomer_quartet,
    reverse_strip,
    right_equivalent,
    transplant,
)
from .analysis import (
    classify_closed,
    classify_quartet,
    equal_mean_curvature_torsion,
    midpoint_criterion,
    mu_symmetry,
)

__version__ = "0.1.0"
