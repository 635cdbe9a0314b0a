from __future__ import annotations

from fractions import Fraction

import pytest
from helpers import algebra, table

from maclab.chevalley import UnsupportedFeature, build_chevalley, invariant_trace_power
from maclab.cohomology import (
    Cochain,
    CohomologyTable,
    ComplexError,
    KoszulComplex,
    SliceCapError,
    build_complex,
    coefficient_cochain,
    cohomology_dims,
    is_cocycle,
    j_twisted_cocycle,
    multiply_tables,
    superpoly_slice_dims,
    type_d_grading,
    weighted_euler,
)
from maclab.graded import abelian, build_truncated, from_chevalley
from maclab.qseries import LaurentQ


def sl2():
    return from_chevalley(build_chevalley("A1"))


def test_sl2_chain_dims_and_table():
    cx = build_complex(sl2())
    dims = cx.chain_dims()
    assert [sum(v for (c, _), v in dims.items() if c == d) for d in range(4)] == [1, 3, 3, 1]
    assert cohomology_dims(cx).nonzero() == {(0, 0, 0): 1, (3, 0, 0): 1}
    assert weighted_euler(cohomology_dims(cx)) == LaurentQ()


def test_truncated_sl2_chain_total():
    cx = build_complex(algebra("A1", "id", "full", 2))
    dims = cx.chain_dims()
    assert sum(dims.values()) == 64
    assert {z for _, z in dims} == {0, 1, 2, 3}
    assert table("A1", "id", "full", 2).nonzero() == {(0, 0, 0): 1, (3, 0, 0): 1, (3, 3, 0): 1, (6, 3, 0): 1}


def test_abelian_and_zero_algebras():
    assert cohomology_dims(build_complex(abelian(2))).forget_z() == {0: 1, 1: 2, 2: 1}
    assert cohomology_dims(build_complex(abelian(0))).nonzero() == {(0, 0, 0): 1}


def test_relative_tables():
    assert str(table("A1", "id", "full", 2, relative=True)) == "1 + q^3*t^3"
    assert str(table("A1", "id", "iwahori", 1, relative=True)) == "1 + q*t^2"
    assert cohomology_dims(build_complex(sl2(), relative=True)).nonzero() == {(0, 0, 0): 1}


def test_absolute_is_g0_times_relative():
    rel = table("A1", "id", "iwahori", 2, relative=True)
    h_g0 = CohomologyTable({(0, 0): 1, (1, 0): 1})
    assert multiply_tables(h_g0, rel) == table("A1", "id", "iwahori", 2)


def test_nonzero_weight_slices_vanish():
    cx = build_complex(algebra("A1", "id", "full", 2))
    for z in cx.z_values():
        for w in [(2,), (-2,), (4,)]:
            assert cx.slice_cohomology(z, w) == {}


def test_euler_invariance():
    for kind, N in [("full", 2), ("iwahori", 2), ("nil", 2)]:
        for rel in (False, True):
            cx = build_complex(algebra("A1", "id", kind, N), relative=rel)
            assert weighted_euler(cx) == weighted_euler(cohomology_dims(cx))


def test_table_json_roundtrip():
    t = table("A1", "id", "full", 3)
    assert CohomologyTable.from_json(t.to_json()) == t
    assert t.to_records()[0] == {"coh": 0, "z": 0, "dim": 1}


def test_slice_cap():
    cx = build_complex(algebra("A1", "id", "full", 3), slice_cap=5)
    with pytest.raises(SliceCapError, match="z="):
        cohomology_dims(cx)


def test_d_squared_checked():
    cx = KoszulComplex(algebra("A1", "id", "full", 2))
    assert cx.check
    for c in range(4):
        for mono in cx.monomials(c, 3):
            acc = {}
            for m, v in cx.d_monomial(mono).items():
                for m2, v2 in cx.d_monomial(m).items():
                    acc[m2] = acc.get(m2, 0) + v * v2
            assert not any(acc.values())


def test_superpoly_slices():
    g = algebra("A1", "id", "full", 3)
    assert superpoly_slice_dims(g, 0, 2).nonzero() == {(0, 0, 0): 1}
    assert superpoly_slice_dims(g, 1, 2).nonzero() == {(1, 1, 1): 1, (1, 2, 1): 1}
    with pytest.raises(ComplexError, match="N=3"):
        superpoly_slice_dims(g, 1, 3)


def test_superpoly_abelian_one_dim():
    g = abelian(1)
    g.N = 5
    t = superpoly_slice_dims(g, 2, 0, relative=False)
    # Lambda^c (x) S^2 of a 1-dim space, zero differential
    assert t.nonzero() == {(0, 0, 2): 1, (1, 0, 2): 1}


def test_coefficient_cochains_close():
    g = algebra("A1", "id", "full", 2)
    form = invariant_trace_power(build_chevalley("A1"), 2)
    phi = coefficient_cochain(g, form, 1)
    assert phi and {sum(g.basis[i].z for i in s) for _, s in phi.coeffs} == {1}
    assert is_cocycle(build_complex(g, 2), phi)
    g3 = algebra("A2", "id", "full", 2)
    phi3 = coefficient_cochain(g3, invariant_trace_power(build_chevalley("A2"), 3), 1)
    assert is_cocycle(build_complex(g3, 3), phi3)


def test_non_invariant_cochain_not_closed():
    g = sl2()
    cx = build_complex(g, 1)
    e = next(i for i, b in enumerate(g.basis) if b.name.startswith("e"))
    assert not is_cocycle(cx, Cochain(0, 1, {((), (e,)): 1}))


def test_j_twisted_cocycles():
    g = algebra("A1", "id", "iwahori", 3)
    phi = coefficient_cochain(g, invariant_trace_power(build_chevalley("A1"), 2), 2)
    om = j_twisted_cocycle(g, phi, "type_d")
    assert om.degree == 1 and om.coeffs and is_cocycle(build_complex(g, 1), om)
    gf = algebra("A1", "id", "full", 2)
    phi = coefficient_cochain(gf, invariant_trace_power(build_chevalley("A1"), 2), 1)
    om = j_twisted_cocycle(gf, phi, "z")
    assert om.coeffs and {gf.basis[w[0]].z for w, _ in om.coeffs} == {1}
    assert is_cocycle(build_complex(gf, 1), om)
    assert not j_twisted_cocycle(gf, phi, "zero").coeffs


def test_type_d_grading_kills_g0():
    g = algebra("A2", "id", "iwahori", 2)
    d = type_d_grading(g)
    assert all(d[i] == 0 for i in g.g0)
    phi = coefficient_cochain(g, invariant_trace_power(build_chevalley("A2"), 2), 1)
    with pytest.raises(ComplexError, match="derivation"):
        j_twisted_cocycle(g, phi, [1] * g.dim)
    # a weight grading is a derivation but is nonzero on root vectors of g_0 = sl3
    gf = algebra("A2", "id", "full", 2)
    phi = coefficient_cochain(gf, invariant_trace_power(build_chevalley("A2"), 2), 1)
    with pytest.raises(ComplexError, match="g_0"):
        j_twisted_cocycle(gf, phi, [b.weight[0] for b in gf.basis])


def test_cochain_errors():
    g = algebra("A1", "id", "full", 2)
    form = invariant_trace_power(build_chevalley("A1"), 2)
    with pytest.raises(ComplexError):
        coefficient_cochain(g, form, 2)
    with pytest.raises(ComplexError):
        is_cocycle(build_complex(g, 1), coefficient_cochain(g, form, 1))
    gb = build_truncated(build_chevalley("B2"), None, 1)
    with pytest.raises(UnsupportedFeature):
        coefficient_cochain(gb, form, 0)


def test_deformed_tensor_square():
    assert table("A1", "id", "full", 2, tdef=Fraction(1)).forget_z() == {0: 1, 3: 2, 6: 1}
