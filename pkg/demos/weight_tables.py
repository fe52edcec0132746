# The su(2) weight counts N_0 - N_2 for the real representations rho_k and sigma_k.

from biinvariant.cli import su2_table

rho = su2_table("rho", 20)
print("rho:  ", {r["k"]: r["value"] for r in rho["rows"]})

sigma = su2_table("sigma", 10)
print("sigma:", {r["k"]: r["value"] for r in sigma["rows"]})

# k = 1, 2 mod 4 gives nothing
print([r["k"] for r in rho["rows"] if r["value"] == 0])
