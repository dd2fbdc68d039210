"""The exponent slope experiment.

For each family point the measured weak and strong quantities are the
maxima of the normalized operator ratios over a deterministic test set:
indicators of the left dyadic intervals (aligned with the power-weight
singularity at 0) plus seeded random nonnegative functions, with the
two operator slots ranging over the set independently.  Fitting log
quantity against log joint-constant gives an empirical exponent; theory
provides an upper envelope, so only one-sided comparisons against the
predicted exponents are meaningful.

Slopes use a plain least-squares fit over all points, no point dropping.
Set WSL_THREADS to evaluate family points in parallel; results are
gathered in delta order either way.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dyadic import DyadicCube, GridConfig
from .exponents import alpha
from .families import WeightFamilySpec, build_family
from .measure import (
    ExponentTuple,
    GridFunction,
    Weight,
    dual_weight,
    indicator,
    joint_weight,
    lp_norm,
    weak_norm,
)
from .sparse import SparseFamily, sparse_eval


@dataclass(frozen=True)
class ExperimentRow:
    delta: float
    apvec: float
    weak: float
    strong: float
    ratio_weak: float
    ratio_strong: float


@dataclass(frozen=True)
class SlopeResult:
    rows: tuple[ExperimentRow, ...]
    weak_slope: float
    strong_slope: float


def fit_loglog_slope(x, y) -> float:
    """Least-squares slope of log y against log x."""
    lx = np.log(np.asarray(x, dtype=np.float64))
    ly = np.log(np.asarray(y, dtype=np.float64))
    return float(np.polyfit(lx, ly, 1)[0])


def default_test_functions(
    config: GridConfig, seed: int, random_count: int = 8
) -> list[GridFunction]:
    """Left-interval indicators for every level plus seeded random functions."""
    fns = [
        indicator(config, DyadicCube(k, (0,) * config.dimension))
        for k in range(config.finest_level + 1)
    ]
    rng = np.random.default_rng(seed)
    for _ in range(random_count):
        fns.append(GridFunction(config, rng.uniform(0.0, 2.0, config.cell_count)))
    return fns


def thread_map(fn, items):
    """Map preserving order; WSL_THREADS > 1 enables a thread pool."""
    workers = int(os.environ.get("WSL_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _pair_sweep(
    S: SparseFamily,
    w1: Weight,
    w2: Weight,
    P: ExponentTuple,
    fns: list[GridFunction],
) -> tuple[float, float]:
    """Max weak and strong normalized quantities over all test-function pairs.

    Shares one sparse evaluation per pair between the two norms; equivalent
    to maximizing global_weak_quantity and global_strong_quantity.
    """
    s1 = dual_weight(w1, P.p1)
    s2 = dual_weight(w2, P.p2)
    v = joint_weight(w1, w2, P)
    slot1 = [abs(f) * s1 for f in fns]
    slot2 = [abs(f) * s2 for f in fns]
    norms1 = [lp_norm(f, s1, P.p1) for f in fns]
    norms2 = [lp_norm(f, s2, P.p2) for f in fns]
    if any(n == 0.0 for n in norms1 + norms2):
        raise ValueError("test functions must not vanish identically")
    weak = strong = 0.0
    for g1, n1 in zip(slot1, norms1):
        for g2, n2 in zip(slot2, norms2):
            g = sparse_eval(S, g1, g2)
            weak = max(weak, weak_norm(g, v, P.p) / (n1 * n2))
            strong = max(strong, lp_norm(g, v, P.p) / (n1 * n2))
    return weak, strong


def slope_experiment(
    spec: WeightFamilySpec,
    P: ExponentTuple,
    config: GridConfig,
    S: SparseFamily,
    test_functions: list[GridFunction] | None = None,
    test_seed: int = 90210,
) -> SlopeResult:
    """Measure empirical weak/strong exponents along a weight family."""
    family = build_family(spec, P, config)
    if len(family) < 4:
        raise ValueError("family must have at least 4 points for a slope fit")
    constants = [row[3] for row in family]
    if np.ptp(np.log(constants)) < 1e-9:
        raise ValueError("no dynamic range")
    for prev, nxt in zip(constants, constants[1:]):
        if not nxt > prev:
            raise ValueError("family constants not strictly increasing")
    fns = test_functions or default_test_functions(config, test_seed)
    report = alpha(P)

    def measure(row):
        d, w1, w2, apv = row
        weak, strong = _pair_sweep(S, w1, w2, P, fns)
        return ExperimentRow(
            delta=d,
            apvec=apv,
            weak=weak,
            strong=strong,
            ratio_weak=weak / apv**report.alpha,
            ratio_strong=strong / apv**report.gamma,
        )

    rows = tuple(thread_map(measure, family))
    weak_slope = fit_loglog_slope([r.apvec for r in rows], [r.weak for r in rows])
    strong_slope = fit_loglog_slope(
        [r.apvec for r in rows], [r.strong for r in rows]
    )
    return SlopeResult(rows, weak_slope, strong_slope)
