"""
Folding diagrams and twisted exponents
======================================

Fold a Dynkin diagram by one of its automorphisms, split the algebra into
sigma-eigenspaces, and read off the exponents of each eigenspace from a
principal sl2 sitting inside the fixed subalgebra.
"""

from maclab import EigenData, build_chevalley, twisted_exponents

# an order-2 flip of A_n and D_n, the E6 flip, and D4 triality
cases = [
    ("A2", "(1 2)"),
    ("A3", "(1 3)"),
    ("A4", "(1 4)(2 3)"),
    ("A5", "(1 5)(2 4)"),
    ("D4", "(3 4)"),
    ("D5", "(4 5)"),
    ("E6", "(1 6)(3 5)"),
    ("D4", "(1 3 4)"),
]

for t, auto in cases:
    ed = EigenData(build_chevalley(t).lift_automorphism(auto))
    ex = twisted_exponents(ed)
    dims = [s.dim for s in ed.eigenspaces()]
    print(f"{t:3} {auto:12} L_0 = {str(ed.folded.folded_type):3}  dims {dims}  exps {ex}")

# The eigenspace exponents always re-assemble into the exponents of L.
ed = EigenData(build_chevalley("E6").lift_automorphism("(1 6)(3 5)"))
ex = twisted_exponents(ed)
print(sorted(ex[0] + ex[1]))
