"""Finite-dimensional quotients of (twisted) parahoric loop algebras.

A basis vector of every algebra here is ``v * z^n`` where ``v`` is a weight
vector of the sigma-eigenspace ``L_{n mod k}``.  All quotients share the
same spanning set; they differ in how ``v * z^s`` is reduced once ``s``
reaches the truncation level.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .chevalley import ChevalleyAlgebra, EigenData, killing_rank, with_identity
from .fields import field_name
from .folding import format_cycles
from .linalg import add_into, nullspace, scaled


class GradedLieError(ValueError):
    pass


@dataclass(frozen=True)
class BasisVector:
    name: str
    z: int
    weight: tuple[int, ...]
    eig: int | None = None  # index into EigenData.vectors


class GradedLie:
    """Lie algebra with basis tagged by z-degree and h_0-weight.

    ``table[(i, j)]`` for ``i < j`` is the sparse bracket ``[b_i, b_j]``.
    ``graded_mod`` is 0 for a genuine z-grading; otherwise brackets only
    preserve z-degree modulo ``graded_mod``.
    """

    def __init__(
        self,
        basis: Sequence[BasisVector],
        table: dict,
        g0: Sequence[int] = (),
        k: int = 1,
        descriptor: str = "",
        graded_mod: int = 0,
        eigen: EigenData | None = None,
    ):
        self.basis = list(basis)
        self.table = {key: v for key, v in table.items() if v}
        self.g0 = tuple(sorted(g0))
        self.k = k
        self.descriptor = descriptor
        self.graded_mod = graded_mod
        self.eigen = eigen
        self.N: int | None = None  # truncation level, when built from loops

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> str:
        return field_name(self.k)

    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        v = self.table.get((j, i))
        return scaled(v, -1) if v else {}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.bracket_basis(i, j)
                if w:
                    add_into(out, w, a * b)
        return out

    def check_jacobi(self) -> bool:
        n = self.dim
        ad = [[self.bracket_basis(i, j) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                cij = ad[i][j]
                for k in range(j + 1, n):
                    acc: dict = {}
                    for m, c in ad[j][k].items():
                        add_into(acc, ad[i][m], c)
                    for m, c in ad[k][i].items():
                        add_into(acc, ad[j][m], c)
                    for m, c in cij.items():
                        add_into(acc, ad[m][k], -c)
                    if acc:
                        raise GradedLieError(
                            f"Jacobi fails on ({self.basis[i].name}, {self.basis[j].name}, {self.basis[k].name})"
                        )
        return True

    def check_grading(self) -> bool:
        for (i, j), v in self.table.items():
            s = self.basis[i].z + self.basis[j].z
            w = tuple(a + b for a, b in zip(self.basis[i].weight, self.basis[j].weight))
            for m in v:
                zm = self.basis[m].z
                ok = zm == s if not self.graded_mod else (zm - s) % self.graded_mod == 0
                if not ok or self.basis[m].weight != w:
                    raise GradedLieError(f"bracket [{self.basis[i].name}, {self.basis[j].name}] breaks the grading")
        return True

    def killing_rank(self) -> int:
        return killing_rank(self.dim, self.bracket_basis)

    def center_dim(self) -> int:
        rows: dict = {}
        for (i, j), v in self.table.items():
            for m, c in v.items():
                # v_i [b_i, b_j] and v_j [b_j, b_i]
                rows.setdefault((j, m), {})[i] = rows.get((j, m), {}).get(i, 0) + c
                rows.setdefault((i, m), {})[j] = rows.get((i, m), {}).get(j, 0) - c
        return len(nullspace([r for r in rows.values() if any(r.values())], self.dim))

    def index_of(self, name: str) -> int:
        for i, b in enumerate(self.basis):
            if b.name == name:
                return i
        raise KeyError(name)

    def __repr__(self):
        return f"GradedLie({self.descriptor or 'anonymous'}, dim={self.dim})"


def abelian(dim: int, z_degrees: Sequence[int] | None = None) -> GradedLie:
    zs = list(z_degrees) if z_degrees is not None else [0] * dim
    basis = [BasisVector(f"x{i + 1}", zs[i], ()) for i in range(dim)]
    return GradedLie(basis, {}, descriptor=f"abelian({dim})")


def from_chevalley(alg: ChevalleyAlgebra) -> GradedLie:
    """A simple Lie algebra as a GradedLie concentrated in z-degree 0."""
    return build_truncated(alg, None, 1) if alg.k == 1 else build_deformed(alg, None, alg.k, 1)


# -- construction ------------------------------------------------------------------


def _vector_name(ed: EigenData, m: int) -> str:
    v = ed.vectors[m]
    if len(v) == 1:
        (g, c), = v.items()
        if c == 1:
            return ed.alg.basis_name(g)
    return f"y{ed.labels[m]}_{m}"


def _level_name(base: str, n: int) -> str:
    if n == 0:
        return base
    if n == 1:
        return f"{base}*z"
    return f"{base}*z^{n}"


def _orbit_set(ed: EigenData, parabolic) -> frozenset[int]:
    l0 = ed.l0
    if parabolic is None or parabolic == "full":
        return frozenset(range(l0))
    if parabolic in ("iwahori", "empty"):
        return frozenset()
    S = frozenset(parabolic)
    if any(not 0 <= J < l0 for J in S):
        raise GradedLieError(f"parabolic subset {sorted(S)} outside orbit indices 0..{l0 - 1}")
    return S


def _in_ZS(wt, S) -> bool:
    return all(c == 0 for J, c in enumerate(wt) if J not in S)


def _descriptor(ed: EigenData, S, N, t=None, extra: str = "") -> str:
    alg = ed.alg
    cyc = format_cycles(alg.automorphism.perm) if alg.automorphism else "id"
    s = "{" + ",".join(str(J + 1) for J in sorted(S)) + "}"
    parts = [str(alg.cartan_type), cyc, f"S={s}", f"N={N}"]
    if t is not None:
        parts.append(f"t={t}")
    if extra:
        parts.append(extra)
    return " / ".join(parts)


def _eigendata(alg) -> EigenData:
    if isinstance(alg, EigenData):
        return alg
    if alg.sigma is None:
        alg = with_identity(alg)
    return EigenData(alg)


def _assemble(ed: EigenData, entries, reduce: Callable, g0_pred, descriptor, graded_mod) -> GradedLie:
    ed_k = ed.k
    index = {e: i for i, e in enumerate(entries)}
    basis = []
    for m, n in entries:
        basis.append(BasisVector(_level_name(_vector_name(ed, m), n), n, ed.weights[m], m))
    table: dict = {}
    for p, (m1, n1) in enumerate(entries):
        for q in range(p + 1, len(entries)):
            m2, n2 = entries[q]
            br = ed.bracket(m1, m2)
            if not br:
                continue
            out: dict = {}
            for m, c in br.items():
                for (mm, s), f in reduce(m, n1 + n2):
                    add_into(out, {index[(mm, s)]: c * f})
            if out:
                table[(p, q)] = out
    g0 = [i for i, (m, n) in enumerate(entries) if g0_pred(m, n)]
    return GradedLie(basis, table, g0, ed_k, descriptor, graded_mod, ed)


def _entries(ed: EigenData, S, N, top_keep) -> list[tuple[int, int]]:
    out = []
    for n in range(N + 1):
        for m in ed.indices(n):
            wt = ed.weights[m]
            if n == 0:
                if ed.is_negative(wt) and not _in_ZS(wt, S):
                    continue
            elif n == N:
                if not top_keep(wt):
                    continue
            out.append((m, n))
    return out


def build_polynomial_quotient(alg, parabolic, coeffs: Sequence, descriptor_extra: str = "") -> GradedLie:
    """``p / P(z^k) p`` for monic ``P(u) = u^d + coeffs[d-1] u^(d-1) + ... + coeffs[0]``."""
    ed = _eigendata(alg)
    k = ed.k
    d = len(coeffs)
    if d < 1:
        raise GradedLieError("polynomial must have positive degree")
    N = d * k
    S = _orbit_set(ed, parabolic)

    def in_p0(wt):
        return not ed.is_negative(wt) or _in_ZS(wt, S)

    entries = _entries(ed, S, N, lambda wt: not in_p0(wt))
    keep = set(entries)
    coeffs = [Fraction(c) if not hasattr(c, "b") else c for c in coeffs]

    def reduce(m, s):
        if (m, s) in keep:
            return [((m, s), 1)]
        if s < N:
            raise GradedLieError("bracket left the parahoric")
        out: dict = {}
        # z^N x = -sum_j c_j z^{jk} x  modulo P(z^k) p
        for j, c in enumerate(coeffs):
            if not c:
                continue
            for key, f in reduce(m, s - N + j * k):
                out[key] = out.get(key, 0) - c * f
        return [(key, f) for key, f in out.items() if f]

    shifts = [N - j * k for j, c in enumerate(coeffs) if c]
    mod = 0
    for x in shifts:
        mod = gcd(mod, x)
    g0 = _g0_predicate(ed, S)
    desc = _descriptor(ed, S, N, extra=descriptor_extra or f"P={_poly_text(coeffs)}")
    g = _assemble(ed, entries, reduce, g0, desc, mod)
    g.N = N
    return g


def _poly_text(coeffs) -> str:
    d = len(coeffs)
    terms = [f"u^{d}"]
    for j in range(d - 1, -1, -1):
        c = coeffs[j]
        if c:
            mon = "" if j == 0 else ("u" if j == 1 else f"u^{j}")
            terms.append(f"{'+' if c > 0 else '-'} {abs(c) if (abs(c) != 1 or not mon) else ''}{mon}")
    return " ".join(terms)


def _g0_predicate(ed: EigenData, S):
    def pred(m, n):
        return n == 0 and _in_ZS(ed.weights[m], S)

    return pred


def build_truncated(alg, parabolic, N: int) -> GradedLie:
    """``p / z^N p`` for the standard parahoric with parabolic subset ``S``.

    ``parabolic`` is a set of 0-based orbit indices, or "full"/None for
    ``p_0 = L_0`` and "iwahori" for the empty subset.
    """
    ed = _eigendata(alg)
    if N <= 0 or N % ed.k:
        raise GradedLieError(f"N={N} must be a positive multiple of k={ed.k}")
    d = N // ed.k
    g = build_polynomial_quotient(ed, parabolic, [0] * d, descriptor_extra="")
    S = _orbit_set(ed, parabolic)
    g.descriptor = _descriptor(ed, S, N)
    g.graded_mod = 0
    return g


def build_deformed(alg, parabolic, N: int, t) -> GradedLie:
    """``p / (z^N - t) p``; z-degree tags become a filtration (mod N grading)."""
    ed = _eigendata(alg)
    if N <= 0 or N % ed.k:
        raise GradedLieError(f"N={N} must be a positive multiple of k={ed.k}")
    d = N // ed.k
    coeffs = [0] * d
    coeffs[0] = -Fraction(t) if t is not None else 0
    g = build_polynomial_quotient(ed, parabolic, coeffs)
    S = _orbit_set(ed, parabolic)
    g.descriptor = _descriptor(ed, S, N, t if t is not None else 0)
    return g


def build_iwahori_nilpotent_quotient(alg, N: int) -> GradedLie:
    """``b / z^N n`` for the Iwahori ``b`` and its nilpotent subalgebra ``n``."""
    ed = _eigendata(alg)
    if N <= 0 or N % ed.k:
        raise GradedLieError(f"N={N} must be a positive multiple of k={ed.k}")
    S: frozenset[int] = frozenset()
    entries = _entries(ed, S, N, lambda wt: not ed.is_positive(wt))
    keep = set(entries)

    def reduce(m, s):
        if (m, s) in keep:
            return [((m, s), 1)]
        if s < N:
            raise GradedLieError("bracket left the Iwahori")
        return []

    g = _assemble(ed, entries, reduce, _g0_predicate(ed, S), _descriptor(ed, S, N, extra="b/z^N n"), 0)
    g.N = N
    return g


def iwahori(alg, N: int) -> GradedLie:
    return build_truncated(alg, "iwahori", N)
