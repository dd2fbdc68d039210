"""Sparse families: verification, generation, evaluation, and the split.

A family of cubes is 1/2-sparse when each member keeps at least half of
itself clear of the other members below it.  Towers are the extreme
sparse example, the full binary tree the extreme non-sparse one.
"""

import numpy as np

from weaksparse import (
    GridConfig,
    all_cubes,
    constant,
    cube,
    family_from_cubes,
    generate_sparse,
    indicator,
    restrict,
    sparse_eval,
    sparse_split_eval,
    tower_family,
    verify_sparse,
)

cfg = GridConfig(1, 6)

tower = tower_family(cfg)
print(f"tower family {[q.level for q in tower.cubes]}: every witness is exactly half")
for q in tower.cubes[:3]:
    print(f"  level {q.level}: |E_Q| = {tower.witness[q].size} of {cfg.cells_per_cube(q.level)} cells")

ok, offender = verify_sparse(list(all_cubes(cfg)), cfg)
print(f"\nfull binary tree verifies: {ok} (first offender: {offender})")

fam = generate_sparse(cfg, seed=7, budget=0.3)
print(f"\nseeded generator: {len(fam)} cubes, always passes verification")

small = GridConfig(1, 2)
half = indicator(small, cube(1, 0))
out = sparse_eval(family_from_cubes(small, [cube(0, 0), cube(1, 0)]), half, half)
print(f"\ntwo-cube family applied to a half indicator: {out.values}")
print("  (5/4 on the left half from both cubes, 1/4 on the right from the root)")

qt = cube(2, 0)
f1 = constant(cfg, 1.0)
f2 = indicator(cfg, qt)
a1, a2 = sparse_split_eval(tower, qt, f1, f2)
total = sparse_eval(tower, f1.restricted(qt), f2)
print(f"\nsplit at [0, 1/4): containing-branch max {a1.values.max():.4f},")
print(f"inside-branch max {a2.values.max():.4f},")
print(f"sum reproduces the localized evaluation: {np.allclose(a1.values + a2.values, total.values, rtol=1e-13)}")

sub = restrict(tower, qt)
print(f"\nrestriction to [0, 1/4): levels {[q.level for q in sub.cubes]} (still sparse)")
