"""Diagram automorphisms and folded root data.

Simple-root indices are 0-based internally; the cycle-notation parser reads
the 1-based node labels used on the command line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    SERIES,
    CartanType,
    FoldedLabel,
    RootDataError,
    RootSystem,
    cartan_matrix,
)


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class DiagramAutomorphism:
    base: CartanType
    perm: tuple[int, ...]
    order_k: int

    def __call__(self, i: int) -> int:
        return self.perm[i]

    @property
    def is_identity(self) -> bool:
        return self.order_k == 1

    def cycles_string(self) -> str:
        return format_cycles(self.perm)


@dataclass(frozen=True)
class FoldedData:
    orbits: tuple[tuple[int, ...], ...]
    folded_type: CartanType | FoldedLabel
    folded_simple_roots: tuple[tuple[Fraction, ...], ...]
    folded_cartan: tuple[tuple[int, ...], ...]
    # folded node J corresponds to node node_map[J] of the catalogue type
    node_map: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.orbits)

    def orbit_of(self, i: int) -> int:
        for J, orb in enumerate(self.orbits):
            if i in orb:
                return J
        raise KeyError(i)


def parse_cycles(text: str, rank: int) -> tuple[int, ...]:
    """Parse ``"(1 3 4)"``, ``"(1 2)(3 4)"`` or ``"id"`` into a 0-based permutation."""
    s = text.strip()
    perm = list(range(rank))
    if s.lower() in ("", "id", "identity", "()"):
        return tuple(perm)
    seen: set[int] = set()
    for m in re.finditer(r"\(([^()]*)\)|(\S)", s):
        if m.group(2) == "(":
            raise FoldingError(f"unclosed cycle starting at position {m.start()} in {text!r}")
        if m.group(2) is not None:
            raise FoldingError(f"unexpected character {m.group(2)!r} at position {m.start()} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cyc = [int(x) - 1 for x in body]
        except ValueError:
            raise FoldingError(f"non-integer node label in cycle at position {m.start()} of {text!r}") from None
        for x in cyc:
            if not 0 <= x < rank:
                raise FoldingError(f"node {x + 1} out of range 1..{rank} at position {m.start()} of {text!r}")
            if x in seen:
                raise FoldingError(f"node {x + 1} repeated at position {m.start()} of {text!r}")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


def format_cycles(perm) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "id"


def _order(perm) -> int:
    k = 1
    cur = tuple(perm)
    ident = tuple(range(len(perm)))
    while cur != ident:
        cur = tuple(perm[c] for c in cur)
        k += 1
    return k


def validate_automorphism(rs: RootSystem, perm) -> DiagramAutomorphism:
    if isinstance(perm, str):
        perm = parse_cycles(perm, rs.rank)
    perm = tuple(perm)
    n = rs.rank
    if sorted(perm) != list(range(n)):
        raise FoldingError(f"{perm} is not a bijection on {n} nodes")
    A = rs.cartan_matrix
    for i in range(n):
        for j in range(n):
            if A[perm[i]][perm[j]] != A[i][j]:
                raise FoldingError(
                    f"permutation does not preserve the Cartan matrix at ({i + 1}, {j + 1}): "
                    f"A[{perm[i] + 1}][{perm[j] + 1}] = {A[perm[i]][perm[j]]} != {A[i][j]}"
                )
    k = _order(perm)
    if k > 3:
        raise FoldingError(f"automorphism order {k} not supported")
    return DiagramAutomorphism(rs.cartan_type, perm, k)


def orbit_labels(a: DiagramAutomorphism) -> list[tuple[tuple[int, ...], int]]:
    n = len(a.perm)
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        orb = {i}
        j = a.perm[i]
        while j != i:
            orb.add(j)
            j = a.perm[j]
        seen |= orb
        t = tuple(sorted(orb))
        out.append((t, len(t)))
    return out


def folded_cartan_matrix(A, orbits) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of the fixed subalgebra in orbit order.

    Entry (I, J) is ``<alpha_J, alpha_I^vee>`` where the coroot of the orbit
    I is the multiple of ``sum_{i in I} h_i`` taking the value 2 on alpha_I.
    """
    out = []
    for I in orbits:
        i0 = I[0]
        den = sum(A[i][i0] for i in I)
        row = []
        for J in orbits:
            j0 = J[0]
            num = 2 * sum(A[i][j0] for i in I)
            val = Fraction(num, den)
            if val.denominator != 1:
                raise FoldingError("folded Cartan entry not integral")
            row.append(int(val))
        out.append(tuple(row))
    return tuple(out)


def _catalogue(rank: int, twisted: bool):
    order = "BCFGADE" if twisted else SERIES
    for s in order:
        if rank == 1 and twisted and s == "B":
            yield FoldedLabel("B", 1), ((2,),)
            continue
        try:
            t = CartanType(s, rank)
        except RootDataError:
            continue
        if rank == 1 and s != "A":
            continue
        yield t, cartan_matrix(t)


def _match(A0, C) -> tuple[int, ...] | None:
    """Bijection f of nodes with C[f(i)][f(j)] == A0[i][j], identity tried first."""
    n = len(A0)
    ident = tuple(range(n))
    if all(C[i][j] == A0[i][j] for i in range(n) for j in range(n)):
        return ident
    assign: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            if C[c][c] != A0[i][i]:
                continue
            ok = all(
                C[c][assign[p]] == A0[i][p] and C[assign[p]][c] == A0[p][i]
                for p in range(i)
            )
            if not ok:
                continue
            used[c] = True
            assign.append(c)
            if extend(i + 1):
                return True
            assign.pop()
            used[c] = False
        return False

    if extend(0):
        return tuple(assign)
    return None


def recognize(A0, twisted: bool):
    """Identify a Cartan matrix within the catalogue of its rank.

    Exact (identity-ordering) matches win over reordered ones; for a
    nontrivial fold non-simply-laced series are tried first, which names the
    rank-one fold B1 and separates B2 from C2 by node order.
    """
    n = len(A0)
    cands = list(_catalogue(n, twisted))
    for t, C in cands:
        if all(C[i][j] == A0[i][j] for i in range(n) for j in range(n)):
            return t, tuple(range(n))
    for t, C in cands:
        f = _match(A0, C)
        if f is not None:
            return t, f
    raise FoldingError(f"folded Cartan matrix {A0} matches no catalogue type")


def fold(rs: RootSystem, a: DiagramAutomorphism) -> FoldedData:
    orbits = tuple(o for o, _ in orbit_labels(a))
    A0 = folded_cartan_matrix(rs.cartan_matrix, orbits)
    n = rs.rank
    simple = []
    for orb in orbits:
        v = [Fraction(0)] * n
        for i in orb:
            v[i] = Fraction(1, len(orb))
        simple.append(tuple(v))
    if a.is_identity:
        t, f = rs.cartan_type, tuple(range(n))
        if tuple(A0) != tuple(rs.cartan_matrix):
            raise FoldingError("identity fold changed the Cartan matrix")
    else:
        t, f = recognize(A0, twisted=True)
    return FoldedData(orbits, t, tuple(simple), A0, f)


def standard_automorphism(t: CartanType, k: int) -> tuple[int, ...]:
    """The usual diagram automorphism of order k (0-based permutation)."""
    n = t.rank
    if k == 1:
        return tuple(range(n))
    if t.series == "A" and k == 2 and n >= 2:
        return tuple(reversed(range(n)))
    if t.series == "D" and k == 2:
        p = list(range(n))
        p[n - 2], p[n - 1] = n - 1, n - 2
        return tuple(p)
    if t.series == "D" and n == 4 and k == 3:
        return (2, 1, 3, 0)  # (1 3 4)
    if t.series == "E" and n == 6 and k == 2:
        return (5, 1, 4, 3, 2, 0)
    raise FoldingError(f"no diagram automorphism of order {k} for {t}")
