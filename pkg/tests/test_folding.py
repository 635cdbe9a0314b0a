from __future__ import annotations

import pytest

from maclab.folding import (
    FoldingError,
    fold,
    format_cycles,
    orbit_labels,
    parse_cycles,
    standard_automorphism,
    validate_automorphism,
)
from maclab.rootdata import CartanType, build_root_system


def _fold(t, cyc):
    rs = build_root_system(t)
    return fold(rs, validate_automorphism(rs, parse_cycles(cyc, rs.rank)))


def test_parse_and_format_roundtrip():
    assert parse_cycles("(1 3 4)", 4) == (2, 1, 3, 0)
    assert parse_cycles("id", 3) == (0, 1, 2)
    assert format_cycles(parse_cycles("(1 2)(3 4)", 4)) == "(1 2)(3 4)"
    assert format_cycles((0, 1)) == "id"


@pytest.mark.parametrize("text, where", [
    ("(1 2", "position 0"), ("(1 x)", "position 0"), ("(1 2)(2 3)", "position 5"),
    ("(1 5)", "position 0"), ("(1 2) ]", "position 6"),
])
def test_parse_errors_report_position(text, where):
    with pytest.raises(FoldingError, match=where):
        parse_cycles(text, 4)


def test_validate():
    rs = build_root_system("A3")
    assert validate_automorphism(rs, parse_cycles("(1 3)", 3)).order_k == 2
    assert validate_automorphism(build_root_system("A2"), (0, 1)).order_k == 1
    with pytest.raises(FoldingError, match=r"\(1, 2\)"):
        validate_automorphism(build_root_system("B2"), (1, 0))


def test_orbits():
    rs = build_root_system("D4")
    a = validate_automorphism(rs, parse_cycles("(1 3 4)", 4))
    assert orbit_labels(a) == [((0, 2, 3), 3), ((1,), 1)]
    rs = build_root_system("A3")
    assert orbit_labels(validate_automorphism(rs, (2, 1, 0))) == [((0, 2), 2), ((1,), 1)]


@pytest.mark.parametrize("t, cyc, folded", [
    ("A2", "(1 2)", "B1"), ("A3", "(1 3)", "C2"), ("D4", "(1 3 4)", "G2"),
    ("A7", "(1 7)(2 6)(3 5)", "C4"), ("A8", "(1 8)(2 7)(3 6)(4 5)", "B4"),
    ("D6", "(5 6)", "B5"), ("E6", "(1 6)(3 5)", "F4"), ("E6", "id", "E6"),
])
def test_folded_types(t, cyc, folded):
    fd = _fold(t, cyc)
    assert str(fd.folded_type) == folded
    assert fd.rank == len(fd.orbits)


def test_standard_automorphisms():
    assert standard_automorphism(CartanType.parse("D4"), 3) == parse_cycles("(1 3 4)", 4)
    assert str(_fold("E6", format_cycles(standard_automorphism(CartanType.parse("E6"), 2))).folded_type) == "F4"
