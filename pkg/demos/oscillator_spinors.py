# Oscillator algebras: build Osc(lambda), look at curvature and count parallel spinors.

from biinvariant.catalog import catalog
from biinvariant.geometry import classify, prop2_blocks
from biinvariant.holonomy import holonomy_algebra
from biinvariant.spin import adapt, parallel_spinor_dim, spin_holonomy

for lams in (["1"], ["1", "2"], ["1", "1", "1"]):
    e = catalog("osc", {"lambda": lams})
    d = e.algebra
    hol = holonomy_algebra(d)
    print(f"Osc({', '.join(lams)}): dim {d.dim}, signature {d.signature()[:2]}")
    print(f"  holonomy dim {hol.dimension}, abelian {hol.is_abelian}")
    print(f"  parallel spinors {parallel_spinor_dim(d)}")  # 2^m

# curvature flags; the H,H Killing block is tr(A^2)
e = catalog("osc", {"lambda": ["1", "3"]})
rep = classify(e.algebra)
print(rep.flags(), "R =", rep.scalar)
print("B(H,H) =", prop2_blocks(e.extension).hh_killing[0, 0])

# the same holonomy written in the adapted spinor frame: A^2 X . alpha
ab = adapt(catalog("osc").extension)
for M in spin_holonomy(ab.source, ab):
    print([[str(x) for x in row] for row in M.to_lists()])
