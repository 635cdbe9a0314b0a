from __future__ import annotations

import pytest
from helpers import eigen, table, texps

from maclab.constterm import (
    ConstantTermError,
    ProductCapError,
    build_SN,
    euler_cross_check,
    expand_constant_term,
    finite_macdonald_lhs,
    lhs_constant_term,
    rhs_binomial_form,
    rhs_theorem_form,
)
from maclab.qseries import LaurentQ, q_binomial
from maclab.rootdata import build_root_system


def P(*c):
    return LaurentQ.from_list(list(c))


def test_SN_enumeration():
    s = build_SN(eigen("A1"), 2)
    assert sorted((r.weight, r.n) for r in s.roots) == [((-1,), 1), ((-1,), 2), ((1,), 0), ((1,), 1)]
    s = build_SN(eigen("A2"), 1)
    assert len(s) == 6 and sum(r.n == 0 for r in s.roots) == 3
    s = build_SN(eigen("A2", "(1 2)"), 2)
    assert len([r for r in s.roots if r.n == 1]) == 4


def test_SN_requires_multiple_of_k():
    with pytest.raises(ConstantTermError):
        build_SN(eigen("A2", "(1 2)"), 3)


@pytest.mark.parametrize("t, auto, N, want", [
    ("A1", "id", 1, P(1, 1)),
    ("A1", "id", 2, P(1, 1, 2, 1, 1)),
    ("A2", "(1 2)", 2, P(1, 1, 2, 2, 2, 1, 1)),
    ("A2", "id", 1, P(1, 1) * P(1, 1, 1)),
])
def test_three_forms(t, auto, N, want):
    ed = eigen(t, auto)
    s = build_SN(ed, N)
    assert lhs_constant_term(s) == want
    assert lhs_constant_term(s, prune=False) == want
    assert rhs_theorem_form(s) == want
    assert rhs_binomial_form(texps(t, auto), N, ed.k) == want


def test_binomial_form_factorization():
    assert rhs_binomial_form({0: [1], 1: [2]}, 2, 2) == P(1, 0, 1) * P(1, 1, 1, 1, 1)


@pytest.mark.parametrize("t, N, want", [("A1", 1, P(1, 1)), ("A1", 2, q_binomial(4, 2)), ("A2", 1, P(1, 1) * P(1, 1, 1))])
def test_finite_identity(t, N, want):
    assert finite_macdonald_lhs(build_root_system(t), N) == want


def test_untwisted_n1_matches_finite():
    assert lhs_constant_term(build_SN(eigen("A2"), 1)) == finite_macdonald_lhs(build_root_system("A2"), 1)


def test_product_cap():
    with pytest.raises(ProductCapError):
        lhs_constant_term(build_SN(eigen("A2"), 2), cap=5)


def test_empty_product():
    assert expand_constant_term([], 0) == LaurentQ.one()


def test_euler_sl2_full_n2():
    rep = euler_cross_check(table("A1", "id", "full", 2, relative=True), texps("A1"), [1], 2, 1,
                            lhs_constant_term(build_SN(eigen("A1"), 2)))
    assert rep.equal and rep.from_table == P(1, 0, 0, -1)
    assert '"equal": true' in rep.to_json() and str(rep).startswith("EQUAL")


def test_euler_mismatch_is_reported():
    rep = euler_cross_check(table("A1", "id", "full", 2, relative=True), texps("A1"), [1], 2, 1, P(1))
    assert not rep.equal and "MISMATCH" in str(rep)


def test_euler_trivial():
    rep = euler_cross_check(LaurentQ.one(), {}, [], 1, 1, LaurentQ.one())
    assert rep.equal
