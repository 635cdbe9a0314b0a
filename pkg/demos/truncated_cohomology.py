"""
Cohomology of truncated current algebras
========================================

Brute-force Chevalley-Eilenberg cohomology of sl2[z]/z^N, bigraded by
cohomological degree (t) and z-degree (q), next to the free
super-commutative series built from the exponents.
"""

from maclab import EigenData, build_chevalley, twisted_exponents
from maclab import build_complex, build_truncated, cohomology_dims, predict_truncated

ed = EigenData(build_chevalley("A1"))
ex = twisted_exponents(ed)

for N in (1, 2, 3):
    g = build_truncated(ed, None, N)
    table = cohomology_dims(build_complex(g))
    pred = predict_truncated(ex, [1], N)
    print(f"N={N}  dim={g.dim:2}  H* = {table}")
    print(f"      predicted  {pred}   match={table.to_bipoly() == pred}")

# Twisted: the fixed points of the A2 flip inside A2[z], mod z^2.
tw = EigenData(build_chevalley("A2").lift_automorphism("(1 2)"))
g = build_truncated(tw, None, 2)
table = cohomology_dims(build_complex(g))
print(g.descriptor, "->", table)
print("predicted", predict_truncated(twisted_exponents(tw), [1], 2, k=2))

# Relative to g_0 the table keeps only the generators of positive z-degree.
print(cohomology_dims(build_complex(build_truncated(ed, None, 2), relative=True)))
