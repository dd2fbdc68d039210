"""Measured testing-condition quantities for the bilinear sparse operator.

Each function returns the exact value of one side (or the ratio of both
sides) of a weighted-norm inequality whose implicit constant is not
explicit in theory.  Ratios are therefore never asserted against a
theoretical number here; suites pin first-run values and watch for
growth trends instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import ainfty_constant, apvec_constant
from .dyadic import DyadicCube, cell_view, check_cube, cube_index, level_averages
from .measure import (
    ExponentTuple,
    GridFunction,
    Weight,
    dual_weight,
    joint_weight,
    lp_norm,
    weak_norm,
    weighted_measure,
)
from .sparse import SparseFamily, sparse_eval


@dataclass(frozen=True)
class TestingReport:
    """One measured inequality instance: lhs, constant-free rhs, their ratio."""

    lhs: float
    rhs_without_constant: float
    ratio: float
    context: str

    @property
    def defined(self) -> bool:
        return np.isfinite(self.ratio)


def _make_report(lhs: float, rhs: float, context: str) -> TestingReport:
    ratio = lhs / rhs if rhs > 0.0 else float("nan")
    return TestingReport(lhs, rhs, ratio, context)


def _dual_data(w1: Weight, w2: Weight, P: ExponentTuple):
    return dual_weight(w1, P.p1), dual_weight(w2, P.p2), joint_weight(w1, w2, P)


def global_weak_quantity(
    S: SparseFamily,
    w1: Weight,
    w2: Weight,
    P: ExponentTuple,
    f1: GridFunction,
    f2: GridFunction,
) -> float:
    """Weak norm of the sparse image of (|f1| s1, |f2| s2) over the product norms."""
    s1, s2, v = _dual_data(w1, w2, P)
    n1 = lp_norm(f1, s1, P.p1)
    n2 = lp_norm(f2, s2, P.p2)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("test functions must not vanish identically")
    g = sparse_eval(S, abs(f1) * s1, abs(f2) * s2)
    return weak_norm(g, v, P.p) / (n1 * n2)


def global_strong_quantity(
    S: SparseFamily,
    w1: Weight,
    w2: Weight,
    P: ExponentTuple,
    f1: GridFunction,
    f2: GridFunction,
) -> float:
    """Same normalization with the strong L^p(v) norm on top."""
    s1, s2, v = _dual_data(w1, w2, P)
    n1 = lp_norm(f1, s1, P.p1)
    n2 = lp_norm(f2, s2, P.p2)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("test functions must not vanish identically")
    g = sparse_eval(S, abs(f1) * s1, abs(f2) * s2)
    return lp_norm(g, v, P.p) / (n1 * n2)


def local_testing_quantity(
    S: SparseFamily,
    w1: Weight,
    w2: Weight,
    P: ExponentTuple,
    f1: GridFunction,
    f2: GridFunction,
    q: DyadicCube,
) -> float:
    """Localized testing integral at a family cube q, fully normalized.

    Integrates the sparse image of the q-masked data against v over q and
    divides by the product norms times v(q)^(1/p').
    """
    if q not in S:
        raise ValueError("testing cube must belong to the family")
    s1, s2, v = _dual_data(w1, w2, P)
    n1 = lp_norm(f1, s1, P.p1)
    n2 = lp_norm(f2, s2, P.p2)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("test functions must not vanish identically")
    g = sparse_eval(S, (abs(f1) * s1).restricted(q), (abs(f2) * s2).restricted(q))
    cfg = S.config
    num = float(
        (cell_view(g.values, q, cfg) * cell_view(v.values, q, cfg)).sum()
    ) * cfg.cell_volume
    return num / (n1 * n2 * weighted_measure(v, q) ** (1.0 / P.p_prime))


def local_sigma_testing_ratio(
    S: SparseFamily,
    w1: Weight,
    w2: Weight,
    P: ExponentTuple,
    f2: GridFunction,
    qt: DyadicCube,
) -> TestingReport:
    """Localized bound with the first slot saturated by the dual weight.

    lhs: L^p(v) norm over qt of the sparse image of (s1 masked to qt, |f2| s2).
    rhs (constant-free): the A_infty mixed factor times apvec^(1/p) times
    ||f2||_{L^{p2}(s2)} times s1(qt)^(1/p1).
    """
    cfg = S.config
    check_cube(qt, cfg)
    s1, s2, v = _dual_data(w1, w2, P)
    if float(f2.values.min()) < 0.0:
        raise ValueError("f2 must be nonnegative")
    outside = np.ones(cfg.cell_count, dtype=bool)
    cell_view(outside, qt, cfg)[...] = False
    if np.any(f2.values[outside] != 0.0):
        raise ValueError("localization hypothesis violated: supp f2 not inside qt")
    n2 = lp_norm(f2, s2, P.p2)
    if n2 == 0.0:
        raise ValueError("f2 must not vanish identically")
    g = sparse_eval(S, s1.restricted(qt), abs(f2) * s2)
    lhs = lp_norm(g.restricted(qt), v, P.p)
    a1 = ainfty_constant(s1).value
    a2 = ainfty_constant(s2).value
    av = ainfty_constant(v).value
    mixed = max(min(a1, a2) ** (1.0 / P.p), min(a1, av) ** (1.0 / P.p2_prime))
    rhs = (
        mixed
        * apvec_constant(w1, w2, P).value ** (1.0 / P.p)
        * n2
        * weighted_measure(s1, qt) ** (1.0 / P.p1)
    )
    ctx = f"S={len(S)} cubes, qt={qt}, P=({P.p1:g},{P.p2:g})"
    return _make_report(lhs, rhs, ctx)


def sparse_sum_norm_ratios(
    S: SparseFamily, w1: Weight, w2: Weight, P: ExponentTuple
) -> tuple[TestingReport, TestingReport]:
    """Norms of the two aggregate sparse sums against their Carleson bounds.

    First: L^p(v) norm of sum <s1>_Q <s2>_Q chi_Q versus
    apvec^(1/p) (sum <s1>_Q^{p/p1} <s2>_Q^{p/p2} |Q|)^{1/p}.
    Second: L^{p2'}(s2) norm of sum <s1>_Q <v>_Q chi_Q versus
    apvec^(1/p) (sum <s1>_Q^{p2'/p1} <v>_Q^{p2'/p'} |Q|)^{1/p2'}.
    """
    cfg = S.config
    s1, s2, v = _dual_data(w1, w2, P)
    a1 = level_averages(s1.values, cfg)
    a2 = level_averages(s2.values, cfg)
    av = level_averages(v.values, cfg)
    apv = apvec_constant(w1, w2, P).value

    sum1 = np.zeros(cfg.cell_count)
    sum2 = np.zeros(cfg.cell_count)
    carleson1 = 0.0
    carleson2 = 0.0
    for q in S.cubes:
        k, i = q.level, cube_index(q)
        vol = q.volume
        cell_view(sum1, q, cfg)[...] += a1[k][i] * a2[k][i]
        cell_view(sum2, q, cfg)[...] += a1[k][i] * av[k][i]
        carleson1 += a1[k][i] ** (P.p / P.p1) * a2[k][i] ** (P.p / P.p2) * vol
        carleson2 += (
            a1[k][i] ** (P.p2_prime / P.p1)
            * av[k][i] ** (P.p2_prime / P.p_prime)
            * vol
        )
    lhs1 = lp_norm(GridFunction(cfg, sum1), v, P.p)
    rhs1 = apv ** (1.0 / P.p) * carleson1 ** (1.0 / P.p)
    lhs2 = lp_norm(GridFunction(cfg, sum2), s2, P.p2_prime)
    rhs2 = apv ** (1.0 / P.p) * carleson2 ** (1.0 / P.p2_prime)
    ctx = f"S={len(S)} cubes, P=({P.p1:g},{P.p2:g})"
    return _make_report(lhs1, rhs1, ctx), _make_report(lhs2, rhs2, ctx)
