"""Cached builders shared by the test modules."""
from __future__ import annotations

from functools import lru_cache

from maclab.chevalley import EigenData, build_chevalley, twisted_exponents
from maclab.cohomology import build_complex, cohomology_dims
from maclab.graded import build_deformed, build_iwahori_nilpotent_quotient, build_truncated
from maclab.rootdata import subsystem_exponents


@lru_cache(maxsize=None)
def eigen(t: str, auto: str = "id") -> EigenData:
    return EigenData(build_chevalley(t).lift_automorphism(auto))


@lru_cache(maxsize=None)
def texps(t: str, auto: str = "id") -> dict:
    return twisted_exponents(eigen(t, auto))


def full(ed: EigenData) -> frozenset:
    return frozenset(range(ed.l0))


@lru_cache(maxsize=None)
def algebra(t: str, auto: str, kind: str, N: int, tdef=None):
    """kind: 'full', 'iwahori' or 'nil'."""
    ed = eigen(t, auto)
    if kind == "nil":
        return build_iwahori_nilpotent_quotient(ed, N)
    S = full(ed) if kind == "full" else frozenset()
    if tdef is not None:
        return build_deformed(ed, S, N, tdef)
    return build_truncated(ed, S, N)


@lru_cache(maxsize=None)
def table(t: str, auto: str, kind: str, N: int, relative: bool = False, tdef=None):
    g = algebra(t, auto, kind, N, tdef)
    return cohomology_dims(build_complex(g, relative=relative))


def g0_exps(t: str, auto: str, kind: str) -> list[int]:
    ed = eigen(t, auto)
    S = full(ed) if kind == "full" else ()
    return subsystem_exponents(ed.folded.folded_cartan, sorted(S))
