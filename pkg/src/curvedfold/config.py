"""Numerical tolerances and default resolutions, kept in one place.

Length-type tolerances (``len``, ``sym``, ``plane``) are relative and get
multiplied by the curve length where they are used.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    len: float = 1e-6
    frame: float = 1e-8
    tau: float = 1e-5
    kappa: float = 1e-9
    sym: float = 1e-4
    ode: float = 1e-5
    periodic: float = 1e-5
    alpha: float = 1e-9
    beta: float = 1e-6
    plane: float = 1e-6
    kappa_var: float = 1e-6
    musym: float = 1e-6
    flat: float = 1e-6
    deriv: float = 1e-6
    H: float = 1e-6

    def with_overrides(self, **kw) -> "Tolerances":
        unknown = set(kw) - set(self.__dataclass_fields__)
        if unknown:
            raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **kw)


DEFAULT_TOL = Tolerances()

# arc-length steps per curve; interval domains carry n + 1 samples
DEFAULT_N = 2048
# half-width of the meshed band, as a fraction of the crease length
DEFAULT_WIDTH_FRACTION = 0.05
DEFAULT_WIDTH_RADIUS_FRACTION = 0.1   # cap: this fraction of the smallest curvature radius
DEFAULT_NV = 9
