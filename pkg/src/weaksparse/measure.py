"""Step functions, weights, and exact norms on a dyadic grid.

Everything here is piecewise constant on the finest cells, so every
integral is a plain sum times the cell volume and every norm below is
exact up to float rounding; no quadrature error enters any check.

Conventions.
  * A GridFunction stores one float per finest cell in lexicographic
    cell order; values are finite.
  * A Weight is a GridFunction with strictly positive values, so dual
    weights w^(1-p') and weighted averages never hit a division by zero
    or 0 to a negative power.
  * ExponentTuple holds a Hoelder pair (p1, p2) with 1 < p1, p2 < inf
    and derived p from 1/p = 1/p1 + 1/p2, restricted to p > 1.
  * The weak L^p quasi-norm is computed as an exact maximum: for a step
    function the map t -> t * w({|f| >= t})^(1/p) is increasing between
    jumps of the distribution function, so the supremum is attained at
    a value of |f|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import DyadicCube, GridConfig, cell_view, check_cube


class GridFunction:
    """Real-valued step function on the finest cells; immutable after init."""

    __slots__ = ("config", "values")

    def __init__(self, config: GridConfig, values):
        arr = np.array(values, dtype=np.float64, copy=True).ravel()
        if arr.shape != (config.cell_count,):
            raise ValueError(
                f"expected {config.cell_count} cell values, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("cell values must be finite")
        arr.flags.writeable = False
        self.config = config
        self.values = arr

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            if other.config != self.config:
                raise ValueError("grid mismatch")
            return GridFunction(self.config, self.values * other.values)
        return GridFunction(self.config, self.values * float(other))

    __rmul__ = __mul__

    def __abs__(self):
        return GridFunction(self.config, np.abs(self.values))

    def restricted(self, q: DyadicCube) -> "GridFunction":
        """Zero outside q, unchanged on it (multiplication by the indicator)."""
        check_cube(q, self.config)
        out = np.zeros_like(self.values)
        view = cell_view(out, q, self.config)
        view[...] = cell_view(self.values, q, self.config)
        return GridFunction(self.config, out)

    def __repr__(self):
        return (
            f"{type(self).__name__}(n={self.config.dimension}, "
            f"K={self.config.finest_level}, "
            f"range=[{self.values.min():.4g}, {self.values.max():.4g}])"
        )


class Weight(GridFunction):
    """Strictly positive GridFunction, used as the density of a measure w dx."""

    __slots__ = ()

    def __init__(self, config: GridConfig, values):
        super().__init__(config, values)
        if self.values.min() <= 0.0:
            raise ValueError("weights must be strictly positive")


def constant(config: GridConfig, value: float) -> GridFunction:
    return GridFunction(config, np.full(config.cell_count, float(value)))


def indicator(config: GridConfig, q: DyadicCube) -> GridFunction:
    out = np.zeros(config.cell_count)
    cell_view(out, q, config)[...] = 1.0
    return GridFunction(config, out)


def _conjugate(p: float) -> float:
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentTuple:
    """Hoelder pair (p1, p2) with p from 1/p = 1/p1 + 1/p2; requires p > 1."""

    p1: float
    p2: float

    def __post_init__(self):
        for name, v in (("p1", self.p1), ("p2", self.p2)):
            if not (1.0 < v < np.inf):
                raise ValueError(f"{name} must satisfy 1 < {name} < inf")
        if 1.0 / self.p1 + 1.0 / self.p2 >= 1.0:
            raise ValueError("1/p1 + 1/p2 must be < 1 so that p > 1")

    @property
    def p(self) -> float:
        return 1.0 / (1.0 / self.p1 + 1.0 / self.p2)

    @property
    def p_prime(self) -> float:
        return _conjugate(self.p)

    @property
    def p1_prime(self) -> float:
        return _conjugate(self.p1)

    @property
    def p2_prime(self) -> float:
        return _conjugate(self.p2)

    def swapped(self) -> "ExponentTuple":
        return ExponentTuple(self.p2, self.p1)


def _same_grid(*fns: GridFunction) -> GridConfig:
    cfg = fns[0].config
    for f in fns[1:]:
        if f.config != cfg:
            raise ValueError("grid mismatch")
    return cfg


def average(f: GridFunction, q: DyadicCube) -> float:
    """Plain mean over the cells of q; cells have equal measure, so exact."""
    check_cube(q, f.config)
    return float(cell_view(f.values, q, f.config).mean())


def weighted_measure(w: Weight, q: DyadicCube) -> float:
    """w(Q) = integral of w over Q."""
    check_cube(q, w.config)
    return float(cell_view(w.values, q, w.config).sum()) * w.config.cell_volume


def weighted_average(f: GridFunction, w: Weight, q: DyadicCube) -> float:
    """Average of f against the measure w dx on q."""
    cfg = _same_grid(f, w)
    check_cube(q, cfg)
    fv = cell_view(f.values, q, cfg)
    wv = cell_view(w.values, q, cfg)
    return float((fv * wv).sum() / wv.sum())


def integral(f: GridFunction, w: Weight) -> float:
    cfg = _same_grid(f, w)
    return float((f.values * w.values).sum()) * cfg.cell_volume


def dual_weight(w: Weight, pi: float) -> Weight:
    """Cellwise w^(1 - pi'), the dual weight for the exponent pi."""
    if not (1.0 < pi < np.inf):
        raise ValueError("exponent must be in (1, inf)")
    return Weight(w.config, w.values ** (1.0 - _conjugate(pi)))


def joint_weight(w1: Weight, w2: Weight, P: ExponentTuple) -> Weight:
    """Cellwise w1^(p/p1) * w2^(p/p2)."""
    cfg = _same_grid(w1, w2)
    return Weight(
        cfg, w1.values ** (P.p / P.p1) * w2.values ** (P.p / P.p2)
    )


def lp_norm(f: GridFunction, w: Weight, p: float) -> float:
    """(integral |f|^p w dx)^(1/p) for p in (0, inf)."""
    cfg = _same_grid(f, w)
    if not 0.0 < p < np.inf:
        raise ValueError("p must be in (0, inf)")
    s = float((np.abs(f.values) ** p * w.values).sum()) * cfg.cell_volume
    return s ** (1.0 / p)


def weak_norm(f: GridFunction, w: Weight, p: float) -> float:
    """sup_t t * w({|f| >= t})^(1/p), evaluated exactly at the jumps.

    For step functions the superlevel sets are unions of cells and the
    candidate values are the distinct nonzero values of |f|.
    """
    cfg = _same_grid(f, w)
    if not 0.0 < p < np.inf:
        raise ValueError("p must be in (0, inf)")
    a = np.abs(f.values)
    order = np.argsort(-a, kind="stable")
    av = a[order]
    mass = np.cumsum(w.values[order]) * cfg.cell_volume
    # last index of each run of equal values = full mass of {|f| >= value}
    last = np.nonzero(np.append(av[1:] != av[:-1], True))[0]
    t = av[last]
    m = mass[last]
    pos = t > 0.0
    if not pos.any():
        return 0.0
    return float(np.max(t[pos] * m[pos] ** (1.0 / p)))


def kolmogorov_check(
    f: GridFunction, q: DyadicCube, p: float
) -> tuple[float, float, bool]:
    """Low-exponent norm vs weak-L1 bound on q with the normalized measure dx/|Q|.

    Checks ||f||_{L^p(dx/|Q|)} <= (1/p + 1/(1-p))^(1/p) ||f||_{L^{1,inf}(dx/|Q|)}
    for 0 < p < 1; returns (lhs, rhs, pass).
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    check_cube(q, f.config)
    vals = np.abs(cell_view(f.values, q, f.config)).ravel()
    n = vals.size
    lhs = float(np.mean(vals**p)) ** (1.0 / p)
    # exact weak-L1 quasi-norm under the normalized counting measure
    sv = np.sort(vals)[::-1]
    ranks = np.arange(1, n + 1) / n
    weak1 = float(np.max(sv * ranks)) if n else 0.0
    const = (1.0 / p + 1.0 / (1.0 - p)) ** (1.0 / p)
    rhs = const * weak1
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-12)
