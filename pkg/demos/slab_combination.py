"""Combine brick covers of vertical strips into a 4-colored cover of a grid.

The grid is sliced by its column coordinate.  Each strip is cut into square
bricks colored ``row // w mod 3``, which is a 3-colored, ``w``-disjoint cover
of the strip.  The slab combination glues these into one cover of the whole
grid whose four colors are each ``s``-disjoint.
"""

import math

from nagata_covers import (RealValuedFunction, brick_provider, certify, combined_constant,
                           gen_grid, hurewicz_trace)

pg = gen_grid(40, 60)
space = pg.space
column = RealValuedFunction(pg.embedding[:, 0])
row = RealValuedFunction(pg.embedding[:, 1])
provider = brick_provider(space, column, row, n=2, c=math.sqrt(10), length=1.0)

for s in (1.0, 2.0, 4.0):
    trace = hurewicz_trace(space, column, provider, s)
    cert = certify(space, trace.cover, s)
    print(f"s={s:g}: {trace.cover.set_count} sets, separations {cert.per_color_separation}, "
          f"diameter {cert.max_diameter:g} <= {trace.bound:.1f}")

print(f"diameter constant for n=2, c=sqrt(10): {combined_constant(2, math.sqrt(10)):.2f}")
