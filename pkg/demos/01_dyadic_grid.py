"""Tour of the dyadic grid: cubes, nesting, and partitions.

Every object in this package lives on a finite dyadic grid of the unit
cube.  This script walks through the basic geometry: how cubes are
indexed, how they relate to each other, and how a fixed level tiles the
whole cube.
"""

import numpy as np

from weaksparse import GridConfig, all_cubes, cells_of, cube, parent, relation

cfg = GridConfig(dimension=1, finest_level=3)
print(f"grid: [0,1) split into {cfg.cell_count} cells of volume {cfg.cell_volume}")

print("\nall cubes, level-major:")
for q in all_cubes(cfg):
    a = q.coords[0] * 2.0**-q.level
    b = a + 2.0**-q.level
    print(f"  level {q.level}  [{a:.3f}, {b:.3f})  cells {cells_of(q, cfg).tolist()}")

q = cube(2, 3)
print(f"\ncube {q} covers [{3/4}, {1}) and its parent is {parent(q)}")

print("\nrelations are always nested-or-disjoint:")
pairs = [(cube(1, 0), cube(1, 1)), (cube(2, 0), cube(1, 0)), (cube(1, 1), cube(1, 1))]
for a, b in pairs:
    print(f"  relation({a}, {b}) = {relation(a, b).value}")

print("\neach level partitions the unit interval:")
for k in range(cfg.finest_level + 1):
    covered = np.concatenate(
        [cells_of(q, cfg) for q in all_cubes(cfg) if q.level == k]
    )
    assert np.array_equal(np.sort(covered), np.arange(cfg.cell_count))
    print(f"  level {k}: {2**k} cubes cover all {cfg.cell_count} cells exactly once")

cfg2 = GridConfig(dimension=2, finest_level=2)
print(f"\nsame machinery in 2D: {sum(1 for _ in all_cubes(cfg2))} cubes at K=2,")
print(f"cube (1,(1,0)) occupies cells {cells_of(cube(1, 1, 0), cfg2).tolist()}")
