"""Chevalley-Eilenberg complexes of graded Lie algebras.

Cochains are ``Lambda^c(V*) (x) S^p(g*)`` with ``V = g`` (absolute) or ``V``
the span of basis vectors outside the marked reductive subalgebra g_0
(relative, further cut down to g_0-invariants).  Every rank computation
happens on one slice of fixed (degree, z-degree, weight); h_0 acts on a
slice of nonzero weight by an invertible scalar homotopic to zero, so only
weight-zero slices carry cohomology.
"""
from __future__ import annotations

import json
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Iterable, Mapping

from .chevalley import InvariantForm, UnsupportedFeature
from .graded import GradedLie
from .linalg import add_into, nullspace, rank
from .qseries import BiPoly, LaurentQ

DEFAULT_SLICE_CAP = 200_000


class ComplexError(RuntimeError):
    pass


class SliceCapError(ComplexError):
    pass


def _sorted_sign(seq):
    """Sort an exterior word; returns (sign, tuple) or (0, None) on repeats."""
    s = list(seq)
    sign = 1
    n = len(s)
    for i in range(1, n):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, n):
        if s[i] == s[i - 1]:
            return 0, None
    return sign, tuple(s)


@dataclass
class Cochain:
    degree: int
    sym: int
    coeffs: dict = field(default_factory=dict)  # (wedge, sym) -> scalar

    def __bool__(self):
        return bool(self.coeffs)

    def copy(self) -> "Cochain":
        return Cochain(self.degree, self.sym, dict(self.coeffs))

    def z_degrees(self, g: GradedLie) -> set[int]:
        return {sum(g.basis[i].z for i in w) + sum(g.basis[i].z for i in s) for (w, s) in self.coeffs}


class KoszulComplex:
    """Koszul complex of ``g`` with coefficients in ``S^sym_degree(g*)``."""

    def __init__(self, g: GradedLie, sym_degree: int = 0, relative: bool = False,
                 z_max: int | None = None, slice_cap: int = DEFAULT_SLICE_CAP, check: bool = True):
        self.g = g
        self.sym_degree = sym_degree
        self.relative = relative
        self.z_max = z_max
        self.slice_cap = slice_cap
        self.check = check
        n = g.dim
        g0 = set(g.g0) if relative else set()
        if relative and not g.g0:
            g0 = set()
        self.g0 = sorted(g0)
        self.V = [i for i in range(n) if i not in g0]
        # d x^k = - sum_{i<j} c_ij^k x^i x^j ;  x_i . x^k = - sum_j c_ij^k x^j
        self.dx: list[list] = [[] for _ in range(n)]
        self.act: list[dict] = [dict() for _ in range(n)]
        for (i, j), v in g.table.items():
            for k, c in v.items():
                self.dx[k].append((i, j, -c))
                self.act[i].setdefault(k, {})
                self.act[i][k][j] = self.act[i][k].get(j, 0) - c
                self.act[j].setdefault(k, {})
                self.act[j][k][i] = self.act[j][k].get(i, 0) + c
        self.zdeg = [b.z for b in g.basis]
        self.wdual = [tuple(-x for x in b.weight) for b in g.basis]
        wl = len(g.basis[0].weight) if n else 0
        self.zero_weight = (0,) * wl
        self._dcache: dict = {}

    # -- grading ------------------------------------------------------------------
    def zkey(self, z: int) -> int:
        m = self.g.graded_mod
        return z if m == 0 else z % m

    def _key(self, mono) -> tuple:
        w, s = mono
        z = sum(self.zdeg[i] for i in w) + sum(self.zdeg[i] for i in s)
        wt = [0] * len(self.zero_weight)
        for i in w:
            for a, x in enumerate(self.wdual[i]):
                wt[a] += x
        for i in s:
            for a, x in enumerate(self.wdual[i]):
                wt[a] += x
        return z, tuple(wt)

    def monomials(self, c: int, z: int | None = None, weight=None) -> list:
        """Ordered monomial basis of degree ``c`` (optionally one slice)."""
        g = self.g
        zcap = self.z_max
        V = self.V
        if zcap is not None:
            V = [i for i in V if self.zdeg[i] <= zcap]
        allidx = range(g.dim) if zcap is None else [i for i in range(g.dim) if self.zdeg[i] <= zcap]
        syms = list(combinations_with_replacement(allidx, self.sym_degree))
        out = []
        for w in combinations(V, c):
            for s in syms:
                zz, wt = self._key((w, s))
                if zcap is not None and zz > zcap:
                    continue
                if z is not None and self.zkey(zz) != z:
                    continue
                if weight is not None and wt != weight:
                    continue
                out.append((w, s))
        if len(out) > self.slice_cap:
            raise SliceCapError(f"slice (coh={c}, z={z}, s={self.sym_degree}) has {len(out)} monomials > cap {self.slice_cap}")
        return out

    def chain_dims(self, all_weights: bool = True) -> dict[tuple[int, int], int]:
        """(degree, z) -> dimension of the cochain space (before invariants)."""
        out: dict = {}
        for c in range(len(self.V) + 1):
            for mono in self.monomials(c):
                zz, wt = self._key(mono)
                if not all_weights and wt != self.zero_weight:
                    continue
                key = (c, self.zkey(zz))
                out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def z_values(self) -> list[int]:
        maxz = sum(sorted(self.zdeg)[-len(self.V):]) if self.V else 0
        maxz += self.sym_degree * (max(self.zdeg) if self.zdeg else 0)
        if self.z_max is not None:
            maxz = min(maxz, self.z_max)
        m = self.g.graded_mod
        if m:
            return list(range(m))
        return list(range(maxz + 1))

    # -- differential ------------------------------------------------------------------
    def d_monomial(self, mono) -> dict:
        cached = self._dcache.get(mono)
        if cached is not None:
            return cached
        w, s = mono
        out: dict = {}
        for r, k in enumerate(w):
            sgn = -1 if r % 2 else 1
            for i, j, c in self.dx[k]:
                sg, nw = _sorted_sign(w[:r] + (i, j) + w[r + 1:])
                if sg:
                    key = (nw, s)
                    add_into(out, {key: sg * sgn * c})
        if self.sym_degree:
            sgn = -1 if len(w) % 2 else 1
            for i in range(self.g.dim):
                acts = self.act[i]
                if not acts:
                    continue
                sg, nw = _sorted_sign(w + (i,))
                if not sg:
                    continue
                for r, k in enumerate(s):
                    row = acts.get(k)
                    if not row:
                        continue
                    for j, c in row.items():
                        ns = tuple(sorted(s[:r] + (j,) + s[r + 1:]))
                        add_into(out, {(nw, ns): sg * sgn * c})
        self._dcache[mono] = out
        return out

    def d(self, x: Cochain) -> Cochain:
        if x.sym != self.sym_degree:
            raise ComplexError(f"cochain has symmetric degree {x.sym}, complex has {self.sym_degree}")
        out: dict = {}
        for mono, v in x.coeffs.items():
            if len(mono[0]) != x.degree or len(mono[1]) != x.sym:
                raise ComplexError("cochain monomial does not match its degree")
            add_into(out, self.d_monomial(mono), v)
        return Cochain(x.degree + 1, x.sym, out)

    def act_monomial(self, x: int, mono) -> dict:
        """Coadjoint action of basis vector ``x`` on a cochain monomial."""
        w, s = mono
        acts = self.act[x]
        out: dict = {}
        if not acts:
            return out
        for r, k in enumerate(w):
            row = acts.get(k)
            if not row:
                continue
            for j, c in row.items():
                sg, nw = _sorted_sign(w[:r] + (j,) + w[r + 1:])
                if sg:
                    add_into(out, {(nw, s): sg * c})
        for r, k in enumerate(s):
            row = acts.get(k)
            if not row:
                continue
            for j, c in row.items():
                ns = tuple(sorted(s[:r] + (j,) + s[r + 1:]))
                add_into(out, {(w, ns): c})
        return out

    # -- slices ------------------------------------------------------------------
    def invariant_basis(self, monos: list) -> list[dict]:
        """Basis (over monomial positions) of the g_0-invariants of a slice."""
        if not self.relative or not self.g0:
            return [{p: 1} for p in range(len(monos))]
        rows: dict = {}
        for p, mono in enumerate(monos):
            for x in self.g0:
                for tgt, c in self.act_monomial(x, mono).items():
                    rows.setdefault((x, tgt), {})[p] = c
        return nullspace([r for r in rows.values() if r], len(monos))

    def slice_cohomology(self, z: int, weight=None) -> dict[int, int]:
        """Cohomology dimensions ``{c: dim}`` of one (z, weight) slice."""
        weight = self.zero_weight if weight is None else weight
        top = len(self.V)
        monos = [self.monomials(c, z, weight) for c in range(top + 2)]
        pos = [{m: p for p, m in enumerate(ms)} for ms in monos]
        bases = [self.invariant_basis(ms) if ms else [] for ms in monos]
        images: list[list[dict]] = []
        ranks = []
        for c in range(top + 1):
            imgs = []
            for vec in bases[c]:
                acc: dict = {}
                for p, v in vec.items():
                    add_into(acc, self.d_monomial(monos[c][p]), v)
                tgt: dict = {}
                for mono, v in acc.items():
                    q = pos[c + 1].get(mono)
                    if q is None:
                        raise ComplexError(
                            f"differential leaves the slice (coh={c + 1}, z={z}) at {mono}; relative cochain not basic"
                        )
                    tgt[q] = v
                imgs.append(tgt)
            images.append(imgs)
            ranks.append(rank(imgs))
        if self.check:
            for c in range(top):
                for y in images[c]:
                    acc: dict = {}
                    for q, v in y.items():
                        add_into(acc, self.d_monomial(monos[c + 1][q]), v)
                    if acc:
                        raise ComplexError(f"d^2 != 0 on slice (coh={c}, z={z}, s={self.sym_degree})")
        out = {}
        for c in range(top + 1):
            h = len(bases[c]) - ranks[c] - (ranks[c - 1] if c else 0)
            if h < 0:
                raise ComplexError("negative cohomology dimension")
            if h:
                out[c] = h
        return out

    def relative_chain_dims(self) -> dict[tuple[int, int], int]:
        out = {}
        for z in self.z_values():
            for c in range(len(self.V) + 1):
                ms = self.monomials(c, z, self.zero_weight)
                if ms:
                    n = len(self.invariant_basis(ms))
                    if n:
                        out[(c, z)] = n
        return dict(sorted(out.items()))


def build_complex(g: GradedLie, sym_degree: int = 0, relative: bool = False, z_max: int | None = None,
                  slice_cap: int = DEFAULT_SLICE_CAP) -> KoszulComplex:
    if relative:
        for i in g.g0:
            if g.basis[i].z != 0:
                raise ComplexError("relative marker must sit in z-degree 0")
    return KoszulComplex(g, sym_degree, relative, z_max, slice_cap)


# -- tables ---------------------------------------------------------------------------


class CohomologyTable:
    """(coh, z, s) -> dimension."""

    def __init__(self, entries: Mapping | None = None, sym: bool = False):
        self.entries: dict = {}
        for key, v in (entries or {}).items():
            if len(key) == 2:
                key = (key[0], key[1], 0)
            if v:
                self.entries[tuple(key)] = self.entries.get(tuple(key), 0) + v
        self.sym = sym

    def __getitem__(self, key):
        if len(key) == 2:
            key = (key[0], key[1], 0)
        return self.entries.get(tuple(key), 0)

    def __eq__(self, o):
        return isinstance(o, CohomologyTable) and self.entries == o.entries

    def nonzero(self) -> dict:
        return dict(sorted(self.entries.items()))

    def to_bipoly(self) -> BiPoly:
        return BiPoly(self.entries)

    def euler(self) -> LaurentQ:
        out: dict = {}
        for (c, z, _), v in self.entries.items():
            out[z] = out.get(z, 0) + (-1) ** c * v
        return LaurentQ(out)

    def forget_z(self) -> dict[int, int]:
        return self.to_bipoly().forget_q()

    def total(self) -> int:
        return sum(self.entries.values())

    def to_records(self) -> list[dict]:
        out = []
        for (c, z, s), v in sorted(self.entries.items()):
            rec = {"coh": c, "z": z, "dim": v}
            if self.sym or s:
                rec["s"] = s
            out.append(rec)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_records(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CohomologyTable":
        recs = json.loads(text)
        sym = any("s" in r for r in recs)
        return cls({(r["coh"], r["z"], r.get("s", 0)): r["dim"] for r in recs}, sym)

    def __str__(self):
        return str(self.to_bipoly())

    def __repr__(self):
        return f"CohomologyTable({self})"


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MACLAB_THREADS", "1")))
    except ValueError:
        return 1


# forked workers inherit the complex; it holds closures and is not picklable
_SHARED: list = []


def _slice_task(z):
    return z, _SHARED[0].slice_cohomology(z)


def _fork_context():
    try:
        return multiprocessing.get_context("fork")
    except ValueError:
        return None


def cohomology_dims(cx: KoszulComplex, z_range: Iterable[int] | None = None, workers: int | None = None) -> CohomologyTable:
    zs = list(z_range) if z_range is not None else cx.z_values()
    if cx.z_max is not None:
        zs = [z for z in zs if z <= cx.z_max]
    workers = workers or _workers()
    results: dict = {}
    ctx = _fork_context()
    if workers > 1 and len(zs) > 1 and ctx is not None:
        _SHARED[:] = [cx]
        try:
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                for z, res in pool.map(_slice_task, zs):
                    results[z] = res
        finally:
            _SHARED.clear()
    else:
        for z in zs:
            results[z] = cx.slice_cohomology(z)
    entries = {}
    for z in sorted(results):
        for c, v in results[z].items():
            entries[(c, z, cx.sym_degree)] = v
    return CohomologyTable(entries, sym=cx.sym_degree > 0)


def relative_cohomology_dims(cx: KoszulComplex, z_range=None, workers=None) -> CohomologyTable:
    if not cx.relative:
        raise ComplexError("complex has no relative marker")
    return cohomology_dims(cx, z_range, workers)


def superpoly_slice_dims(g: GradedLie, p: int, D: int, relative: bool = True, workers=None) -> CohomologyTable:
    """Dimensions of ``H^c(g, g_0; S^p g*)`` for z-degree <= D.

    Valid as a window of the untruncated parahoric only when the truncation
    level of ``g`` exceeds D.
    """
    N = getattr(g, "N", None)
    if N is None or N <= D:
        raise ComplexError(f"truncation level N={N} must exceed the z-bound D={D}")
    cx = build_complex(g, p, relative=relative, z_max=D)
    return cohomology_dims(cx, range(D + 1), workers)


def weighted_euler(x) -> LaurentQ:
    """Weighted Euler characteristic of a table or of a complex's chains."""
    if isinstance(x, CohomologyTable):
        return x.euler()
    if isinstance(x, KoszulComplex):
        dims = x.relative_chain_dims() if x.relative else x.chain_dims(all_weights=True)
        out: dict = {}
        for (c, z), v in dims.items():
            out[z] = out.get(z, 0) + (-1) ** c * v
        return LaurentQ(out)
    raise TypeError("weighted_euler expects a CohomologyTable or KoszulComplex")


def multiply_tables(a: CohomologyTable, b: CohomologyTable) -> CohomologyTable:
    return CohomologyTable((a.to_bipoly() * b.to_bipoly()).c)


# -- explicit cocycles ---------------------------------------------------------------


def coefficient_cochain(g: GradedLie, form: InvariantForm, n: int) -> Cochain:
    """``[z^n]`` of the pulled-back invariant polynomial, as a 0-cochain in S^d."""
    ed = g.eigen
    if ed is None or ed.alg.cartan_type is None or ed.alg.cartan_type.series != "A":
        raise UnsupportedFeature("coefficient_cochain needs an algebra of type A")
    if form.alg.cartan_type != ed.alg.cartan_type:
        raise ComplexError("form and algebra have different types")
    N = getattr(g, "N", None)
    if N is not None and n >= N:
        raise ComplexError(f"z-exponent {n} must be below the truncation level {N}")
    d = form.degree
    cand = [i for i in range(g.dim) if g.basis[i].z <= n]
    zero = tuple(0 for _ in g.basis[0].weight)
    coeffs: dict = {}
    for I in combinations_with_replacement(cand, d):
        if sum(g.basis[i].z for i in I) != n:
            continue
        wt = tuple(sum(col) for col in zip(*(g.basis[i].weight for i in I)))
        if wt != zero:
            continue
        val = form.multilinear([ed.vectors[g.basis[i].eig] for i in I])
        if not val:
            continue
        mult = factorial(d)
        for i in set(I):
            mult //= factorial(I.count(i))
        coeffs[((), I)] = val * mult
    return Cochain(0, d, coeffs)


def derivation_diagonal(g: GradedLie, J) -> list:
    """Diagonal entries of a grading derivation given by name or list."""
    if J == "zero" or J is None:
        return [0] * g.dim
    if J == "z":
        return [b.z for b in g.basis]
    if J == "type_d":
        return type_d_grading(g)
    return list(J)


def type_d_grading(g: GradedLie, d0: int = 1, dJ: Mapping[int, int] | None = None) -> list:
    """``2 <rho_d, alpha + n delta>`` with d_J = 0 on the parabolic subset."""
    ed = g.eigen
    if ed is None:
        raise ComplexError("type-d grading needs an algebra built from root data")
    l0 = ed.l0
    S = _parabolic_of(g)
    if dJ is None:
        dJ = {J: (0 if J in S else 1) for J in range(l0)}
    # highest weight of L_{1 mod k}
    idx = ed.indices(1 % ed.k)
    theta = max((ed.weights[m] for m in idx), key=lambda w: (sum(w), w))
    out = []
    for b in g.basis:
        n, mu = b.z, b.weight
        val = n * d0 + sum(dJ[J] * (mu[J] + n * theta[J]) for J in range(l0))
        out.append(2 * val)
    return out


def _parabolic_of(g: GradedLie) -> set[int]:
    S = set()
    for i in g.g0:
        for J, c in enumerate(g.basis[i].weight):
            if c:
                S.add(J)
    return S


def check_derivation(g: GradedLie, diag) -> bool:
    for (i, j), v in g.table.items():
        for m, c in v.items():
            if diag[i] + diag[j] != diag[m]:
                raise ComplexError(f"J is not a derivation at [{g.basis[i].name}, {g.basis[j].name}]")
    for i in g.g0:
        if diag[i]:
            raise ComplexError(f"J does not annihilate g_0 at {g.basis[i].name}")
    return True


def j_twisted_cocycle(g: GradedLie, phi: Cochain, J="type_d") -> Cochain:
    """``x (x) s_1...s_{d-1} -> phi(Jx, s_1, ..., s_{d-1})`` as a 1-cochain."""
    if phi.degree != 0 or phi.sym < 1:
        raise ComplexError("phi must be a 0-cochain with symmetric coefficients")
    diag = derivation_diagonal(g, J)
    check_derivation(g, diag)
    d = phi.sym
    out: dict = {}
    for (_, s), c in phi.coeffs.items():
        for i in set(s):
            ji = diag[i]
            if not ji:
                continue
            r = s.index(i)
            rest = s[:r] + s[r + 1:]
            add_into(out, {((i,), rest): Fraction(ji * s.count(i)) * c / d})
    return Cochain(1, d - 1, out)


def is_cocycle(cx: KoszulComplex, x: Cochain) -> bool:
    if x.sym != cx.sym_degree:
        raise ComplexError(f"cochain symmetric degree {x.sym} != complex symmetric degree {cx.sym_degree}")
    for (w, s) in x.coeffs:
        if any(i >= cx.g.dim for i in w + s):
            raise ComplexError("cochain refers to basis vectors outside the algebra")
    return not cx.d(x)
