# T*SU(2): neutral signature, holonomy everything, exactly one parallel spinor.

from biinvariant.catalog import catalog
from biinvariant.geometry import classify
from biinvariant.holonomy import holonomy_algebra, invariant_subspace_check
from biinvariant.linalg import unit
from biinvariant.spin import parallel_spinor_dim, theorem2_bound

for c in ("0", "1", "-2"):
    e = catalog("T*su2", {"c": c})
    d = e.algebra
    print(f"c = {c}: signature {d.signature()[:2]}, dim P = {parallel_spinor_dim(d)}")

e = catalog("T*su2")
d = e.algebra
rep = classify(d)
print("Ric^2 = 0:", rep.ricci_2step_nilpotent, " Ric = 0:", rep.ricci_flat)

hol = holonomy_algebra(d)
print("holonomy dim", hol.dimension)
hstar = [unit(d.dim, e.extension.alpha_index(i)) for i in range(3)]
h = [unit(d.dim, e.extension.h_index(i)) for i in range(3)]
print("h* invariant:", invariant_subspace_check(hol, hstar))
print("h invariant: ", invariant_subspace_check(hol, h))

# the lower bound is sharp here
print(theorem2_bound(e.extension))

# compare with the abelian extension by quaternions: bound 2
print(theorem2_bound(catalog("D_abelian_simple").extension))
