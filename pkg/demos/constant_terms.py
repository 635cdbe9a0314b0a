"""
Affine constant terms
=====================

Expand the product over the truncated affine root set S_N in the weight
lattice, keep the weight-zero part, and compare with the two product
formulas.  The last block ties the constant term to the Euler
characteristic of a relative cohomology table.
"""

from maclab import EigenData, build_chevalley, twisted_exponents
from maclab import build_SN, lhs_constant_term, rhs_binomial_form, rhs_theorem_form
from maclab import build_complex, build_truncated, cohomology_dims, euler_cross_check
from maclab import build_root_system, finite_macdonald_lhs, finite_macdonald_rhs

for t, auto, N in [("A1", "id", 2), ("A2", "id", 2), ("A2", "(1 2)", 2), ("A2", "(1 2)", 4), ("A3", "(1 3)", 2)]:
    ed = EigenData(build_chevalley(t).lift_automorphism(auto))
    s = build_SN(ed, N)
    lhs = lhs_constant_term(s)
    same = lhs == rhs_theorem_form(s) == rhs_binomial_form(twisted_exponents(ed), N, ed.k)
    print(f"{t} {auto:6} N={N}  |S_N|={len(s):3}  CT = {lhs}   both forms agree: {same}")

# the finite identity
rs = build_root_system("B2")
print("B2, N=1:", finite_macdonald_lhs(rs, 1), "=", finite_macdonald_rhs(rs, 1))

ed = EigenData(build_chevalley("A1"))
rel = cohomology_dims(build_complex(build_truncated(ed, None, 3), relative=True))
rep = euler_cross_check(rel, twisted_exponents(ed), [1], 3, 1, lhs_constant_term(build_SN(ed, 3)))
print(rep)
