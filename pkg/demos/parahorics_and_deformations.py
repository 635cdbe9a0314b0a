"""
Parahoric truncations and deformations
======================================

With a smaller parabolic the cohomology stops being free: a coinvariant
factor appears.  Deforming z^N to z^N - t makes the quotient semisimple for
t != 0 and the total dimensions jump exactly for that reason.
"""
from fractions import Fraction

from maclab import EigenData, build_chevalley, twisted_exponents
from maclab import build_complex, build_deformed, build_truncated, cohomology_dims
from maclab import build_iwahori_nilpotent_quotient, predict_nilpotent
from maclab.qseries import coinvariant_series

ed = EigenData(build_chevalley("A1"))

iw = build_truncated(ed, "iwahori", 1)
print("Iwahori, N=1:", cohomology_dims(build_complex(iw)))
print("relative    :", cohomology_dims(build_complex(iw, relative=True)))
print("Coinv(sl2, h):", coinvariant_series([1], [0]))

# p/(z^2 - t)p for the full parahoric: same dimensions for every t
for t in (Fraction(0), Fraction(1), Fraction(-3, 2)):
    g = build_deformed(ed, None, 2, t)
    table = cohomology_dims(build_complex(g))
    print(f"t={t}: killing rank {g.killing_rank()}, dims by degree {table.forget_z()}")

# for the Iwahori the t=0 and t=1 answers differ
for t in (Fraction(0), Fraction(1)):
    table = cohomology_dims(build_complex(build_deformed(ed, "iwahori", 1, t)))
    print(f"Iwahori t={t}: {table.forget_z()}")

# b / z^N n: one extra degree-1 class per Cartan direction
for N in (1, 2):
    g = build_iwahori_nilpotent_quotient(ed, N)
    print(g.descriptor, cohomology_dims(build_complex(g)), "|", predict_nilpotent(twisted_exponents(ed), N))
