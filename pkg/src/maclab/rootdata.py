"""Cartan matrices, root systems, Weyl groups and exponents of simple types.

Conventions: ``cartan_matrix[i][j] = <alpha_j, alpha_i^vee>`` and roots are
integer vectors in the simple-root basis.  Node numbering follows Bourbaki;
for D_4 node 2 is the branch node.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

SERIES = "ABCDEFG"

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


class RootDataError(ValueError):
    pass


class WeylOrderCapError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise RootDataError(f"unknown series {self.series!r}")
        lo, hi = _RANK_BOUNDS[self.series]
        if self.rank < lo or (hi is not None and self.rank > hi):
            if hi is None:
                bound = f"rank >= {lo}"
            elif lo == hi:
                bound = f"rank == {lo}"
            else:
                bound = f"{lo} <= rank <= {hi}"
            raise RootDataError(
                f"type {self.series}{self.rank} invalid: series {self.series} requires {bound}"
            )

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootDataError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.series}{self.rank}"


@dataclass(frozen=True)
class FoldedLabel:
    """Name for a folded type outside the usual rank bounds (B1, C1)."""

    series: str
    rank: int

    def __str__(self):
        return f"{self.series}{self.rank}"


def cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    s = t.series
    if s in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if s == "B":
            # alpha_n short
            link(n - 2, n - 1, -1, -2)
        elif s == "C":
            # alpha_n long
            link(n - 2, n - 1, -2, -1)
    elif s == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif s == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif s == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif s == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return tuple(tuple(r) for r in A)


def symmetrizer(A: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Squared root lengths ``(alpha_i, alpha_i)``, shortest normalized to 2.

    Requires A indecomposable-or-not; each connected component is normalized
    separately.
    """
    n = len(A)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] != 0 and d[j] is None:
                    # (a_i, a_j) = A[i][j] d_i / 2 = A[j][i] d_j / 2
                    d[j] = d[i] * A[i][j] / A[j][i]
                    comp.append(j)
                    stack.append(j)
        lo = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / lo * 2
    return tuple(d)  # type: ignore[arg-type]


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType | None
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    heights: tuple[int, ...]
    root_lengths: tuple[Fraction, ...] = field(repr=False, default=())

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def roots(self) -> list[tuple[int, ...]]:
        return list(self.positive_roots) + [neg(r) for r in self.positive_roots]

    def index(self, root) -> int:
        return self._index[tuple(root)]

    @property
    def _index(self):
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {r: i for i, r in enumerate(self.positive_roots)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def is_root(self, v) -> bool:
        v = tuple(v)
        return v in self._index or neg(v) in self._index

    def pairing(self, beta, i) -> int:
        """``<beta, alpha_i^vee>``."""
        return sum(c * self.cartan_matrix[i][j] for j, c in enumerate(beta))

    def inner(self, x, y) -> Fraction:
        A, d = self.cartan_matrix, self.root_lengths
        return sum(
            (Fraction(x[i] * y[j] * A[i][j]) * d[i] / 2
             for i in range(self.rank) for j in range(self.rank) if x[i] and y[j]),
            Fraction(0),
        )

    def reflect(self, beta, i) -> tuple[int, ...]:
        p = self.pairing(beta, i)
        out = list(beta)
        out[i] -= p
        return tuple(out)

    def coroot(self, beta) -> tuple[Fraction, ...]:
        """Coroot of ``beta`` in the basis of simple coroots."""
        L = self.inner(beta, beta)
        return tuple(Fraction(c) * self.root_lengths[i] / L for i, c in enumerate(beta))

    def to_fundamental(self, beta) -> tuple[int, ...]:
        return tuple(self.pairing(beta, i) for i in range(self.rank))


def neg(v):
    return tuple(-x for x in v)


def root_system_from_cartan(A, cartan_type: CartanType | None = None) -> RootSystem:
    A = tuple(tuple(int(x) for x in row) for row in A)
    n = len(A)
    for i in range(n):
        if A[i][i] != 2:
            raise RootDataError("Cartan matrix diagonal must be 2")
        for j in range(n):
            if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                raise RootDataError(f"invalid Cartan entry at ({i}, {j})")
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                r = tuple(
                    b - (sum(c * A[i][j] for j, c in enumerate(beta)) if k == i else 0)
                    for k, b in enumerate(beta)
                )
                if all(x >= 0 for x in r) and any(r) and r not in found:
                    found.add(r)
                    new.append(r)
        frontier = new
    pos = sorted(found, key=lambda r: (sum(r), r))
    return RootSystem(
        cartan_type,
        A,
        tuple(pos),
        tuple(sum(r) for r in pos),
        symmetrizer(A),
    )


def build_root_system(t: CartanType | str) -> RootSystem:
    if isinstance(t, str):
        t = CartanType.parse(t)
    return root_system_from_cartan(cartan_matrix(t), t)


class WeylGroup:
    """Weyl group enumerated as reduced words from a breadth-first closure.

    ``elements`` materializes integer matrices acting on simple-root
    coordinates (column j is the image of alpha_j) on first access.
    """

    def __init__(self, cartan_matrix, words):
        self.cartan_matrix = cartan_matrix
        self.words = words
        self._elements = None

    @property
    def order(self) -> int:
        return len(self.words)

    def __len__(self):
        return len(self.words)

    @property
    def elements(self):
        if self._elements is None:
            A = self.cartan_matrix
            n = len(A)
            ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
            mats = {(): ident}
            out = []
            for w in self.words:
                if w not in mats:
                    mats[w] = _left_reflect(A, w[0], mats[w[1:]])
                out.append(mats[w])
            self._elements = tuple(out)
        return self._elements


DEFAULT_WEYL_CAP = 10**6


def _left_reflect(A, i, M):
    # s_i changes only coordinate i of each column
    n = len(A)
    row = tuple(
        M[i][c] - sum(A[i][j] * M[j][c] for j in range(n) if A[i][j])
        for c in range(n)
    )
    return M[:i] + (row,) + M[i + 1:]


def weyl_group(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> WeylGroup:
    """Enumerate W by breadth-first closure over the simple reflections."""
    A = rs.cartan_matrix
    n = rs.rank
    expected = product_of_exponents_plus_one(exponents(rs))
    if expected > cap:
        raise WeylOrderCapError(f"Weyl group order {expected} exceeds cap {cap}")
    # W acts freely on the orbit of a regular vector
    start = tuple(10**k + 1 for k in range(n))
    nbrs = [[(j, A[i][j]) for j in range(n) if j != i and A[i][j]] for i in range(n)]
    seen = {start}
    words = [()]
    frontier = [(start, ())]
    while frontier:
        new = []
        for v, w in frontier:
            for i in range(n):
                # s_i(v)_i = v_i - <v, alpha_i^vee> = -v_i - sum_j A_ij v_j
                vi = -v[i] - sum(a * v[j] for j, a in nbrs[i])
                u = v[:i] + (vi,) + v[i + 1:]
                if u not in seen:
                    seen.add(u)
                    words.append((i,) + w)
                    new.append((u, (i,) + w))
                    if len(words) > cap:
                        raise WeylOrderCapError(f"Weyl group order exceeds cap {cap}")
        frontier = new
    return WeylGroup(A, tuple(words))


def weyl_order(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP, method: str = "orbit") -> int:
    """|W| by the orbit-stabilizer chain (default) or by full enumeration."""
    if method == "enumerate":
        return weyl_group(rs, cap).order
    if method != "orbit":
        raise ValueError(f"unknown method {method!r}")
    return weyl_order_orbit_chain(rs.cartan_matrix)


def _weight_orbit(A, lam) -> int:
    # s_j(lam)_i = lam_i - lam_j * A[i][j]  (fundamental-weight coordinates)
    n = len(A)
    seen = {lam}
    frontier = [lam]
    while frontier:
        new = []
        for v in frontier:
            for j in range(n):
                if v[j]:
                    u = tuple(v[i] - v[j] * A[i][j] for i in range(n))
                    if u not in seen:
                        seen.add(u)
                        new.append(u)
        frontier = new
    return len(seen)


def weyl_order_orbit_chain(A) -> int:
    """|W| = |W . omega_last| * |W_stab|, recursing on the stabilizer's diagram.

    The stabilizer of a fundamental weight is the parabolic subgroup on the
    remaining nodes, so no group element is ever listed.
    """
    A = [list(r) for r in A]
    out = 1
    while A:
        n = len(A)
        out *= _weight_orbit(A, tuple(int(i == n - 1) for i in range(n)))
        A = [r[:-1] for r in A[:-1]]
    return out


def exponents(rs: RootSystem) -> list[int]:
    """Exponents as the dual partition of the height distribution."""
    if not rs.positive_roots:
        return [0] * rs.rank
    counts: dict[int, int] = {}
    for h in rs.heights:
        counts[h] = counts.get(h, 0) + 1
    top = max(counts)
    seq = [counts.get(h, 0) for h in range(1, top + 1)]
    if any(a < b for a, b in zip(seq, seq[1:])):
        raise RootDataError("height distribution not weakly decreasing")
    exps = [sum(1 for c in seq if c >= j) for j in range(1, seq[0] + 1)]
    return sorted(exps)


def product_of_exponents_plus_one(exps: Sequence[int]) -> int:
    out = 1
    for m in exps:
        out *= m + 1
    return out


def subsystem_exponents(A, subset: Sequence[int]) -> list[int]:
    """Exponents of the (possibly reducible) subsystem on ``subset`` nodes,
    padded with zeros to the full rank (one per central direction)."""
    subset = sorted(subset)
    n = len(A)
    if subset:
        sub = [[A[i][j] for j in subset] for i in subset]
        exps = exponents(root_system_from_cartan(sub))
    else:
        exps = []
    return sorted([0] * (n - len(subset)) + exps)
