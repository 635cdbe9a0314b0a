"""
Explicit cocycles from invariant polynomials
============================================

Pull back trace(x^d) along sl_n[z] and take a z-coefficient: a 0-cochain
with symmetric coefficients which is closed.  Contracting with a grading
derivation J gives a closed 1-cochain.
"""

from maclab import build_chevalley, build_complex, build_truncated, invariant_trace_power
from maclab import coefficient_cochain, is_cocycle, j_twisted_cocycle

alg = build_chevalley("A2")
g = build_truncated(alg, "iwahori", 3)
cubic = invariant_trace_power(alg, 3)

for n in range(3):
    phi = coefficient_cochain(g, cubic, n)
    omega = j_twisted_cocycle(g, phi, "type_d")
    print(f"[z^{n}] tr(x^3): {len(phi.coeffs):3} terms, closed {is_cocycle(build_complex(g, 3), phi)}; "
          f"J-contraction: {len(omega.coeffs):3} terms, closed {is_cocycle(build_complex(g, 2), omega)}")

# break one coefficient and the differential notices
phi = coefficient_cochain(g, cubic, 2)
bad = phi.copy()
key = next(k for k in sorted(bad.coeffs) if any(g.basis[i].z for i in k[1]))
bad.coeffs[key] += 1
print("perturbed:", is_cocycle(build_complex(g, 3), bad))
