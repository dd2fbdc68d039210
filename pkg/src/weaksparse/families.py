"""Weight-family generators for constant sweeps and slope experiments.

The power family w(x) = x^a on [0,1) is the standard way to push a
Muckenhoupt constant toward infinity: with a_i(delta) = (1 - delta)
(p_i - 1), the joint constant grows as delta drops to 0.  Cell values
are exact closed-form integrals of x^a over each cell, so refinement
changes nothing but resolution.

The random family exponentiates a seeded multiscale field; scaling the
log-field is what the delta knob does there, which keeps the constants
monotone (per-cube moment quantities are log-convex in the scale and
equal 1 at scale 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import apvec_constant
from .dyadic import GridConfig, expand_level_values
from .measure import ExponentTuple, Weight


def power_weight(a: float, config: GridConfig) -> Weight:
    """Cell-averaged x^a on the 1D grid; requires a > -1 for integrability."""
    if config.dimension != 1:
        raise ValueError("power weights are one-dimensional")
    if a <= -1.0:
        raise ValueError("not locally integrable: need a > -1")
    edges = np.arange(config.cell_count + 1, dtype=np.float64) / config.cell_count
    prim = edges ** (a + 1.0)
    vals = np.diff(prim) / ((a + 1.0) * config.cell_volume)
    return Weight(config, vals)


def multiscale_field(config: GridConfig, seed: int) -> np.ndarray:
    """Seeded log-field: independent gaussians per cube, amplitude 2^(-k/2)."""
    rng = np.random.default_rng(seed)
    field = np.zeros(config.cell_count)
    for k in range(config.finest_level + 1):
        g = rng.standard_normal(config.level_cube_count(k))
        field += 2.0 ** (-0.5 * k) * expand_level_values(g, k, config)
    return field


def random_weight(config: GridConfig, seed: int, roughness: float) -> Weight:
    """exp(roughness * multiscale field); moderate constants for roughness <= 1."""
    return Weight(config, np.exp(roughness * multiscale_field(config, seed)))


@dataclass(frozen=True)
class WeightFamilySpec:
    """A parametrized family of weight pairs, indexed by delta in (0, 1].

    kind "power": w_i = x^{a_i(delta)} with a_i = (1 - delta)(p_i - 1).
    kind "random_ap": log w_i = (1 - delta) * roughness * G_i for seeded
    multiscale fields G_i.
    """

    kind: str
    deltas: tuple[float, ...]
    seed: int = 0
    roughness: float = 0.6

    def __post_init__(self):
        if self.kind not in ("power", "random_ap"):
            raise ValueError("kind must be 'power' or 'random_ap'")
        if not self.deltas:
            raise ValueError("delta list must be nonempty")
        if any(not 0.0 < d <= 1.0 for d in self.deltas):
            raise ValueError("deltas must lie in (0, 1]")


def build_family(
    spec: WeightFamilySpec, P: ExponentTuple, config: GridConfig
) -> list[tuple[float, Weight, Weight, float]]:
    """Weight pairs with their joint constants, ordered by decreasing delta."""
    rows = []
    if spec.kind == "random_ap":
        g1 = multiscale_field(config, spec.seed)
        g2 = multiscale_field(config, spec.seed + 1)
    for d in sorted(spec.deltas, reverse=True):
        if spec.kind == "power":
            w1 = power_weight((1.0 - d) * (P.p1 - 1.0), config)
            w2 = power_weight((1.0 - d) * (P.p2 - 1.0), config)
        else:
            scale = (1.0 - d) * spec.roughness
            w1 = Weight(config, np.exp(scale * g1))
            w2 = Weight(config, np.exp(scale * g2))
        rows.append((d, w1, w2, apvec_constant(w1, w2, P).value))
    return rows
