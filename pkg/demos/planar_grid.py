"""Three-colored covers of planar graphs from annulus covers.

For each graph the annuli around a base point are cut into arcs and colored
alternately; the slab combination along the distance to the base point then
merges them.  The printout shows the parameter ``K`` that worked, the worst
annulus diameter relative to its width, and the final certificate.
"""

from nagata_covers import gen_grid, gen_hyperbolic_tiling, gen_random_planar, planar_nagata_trace

graphs = {
    "grid 40x40": gen_grid(40, 40),
    "{7,3} tiling, depth 5": gen_hyperbolic_tiling(7, 3, 5),
    "Delaunay, 2000 points": gen_random_planar(2000, seed=1),
}

for name, pg in graphs.items():
    print(name)
    for s in (1.0, 2.0, 4.0, 8.0):
        result = planar_nagata_trace(pg, 0, s)
        cert = result.certificate
        worst = max(a.diameter_constant for a in result.annuli)
        print(f"  s={s:g}: K={result.K:g} annuli={len(result.annuli)} worst diam/t={worst:.1f} "
              f"separations={cert.per_color_separation} diam/s={cert.max_diameter / s:.1f}")
