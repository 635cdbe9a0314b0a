"""Simple Lie algebras in a Chevalley basis, lifted diagram automorphisms,
sigma-eigenspaces, principal sl_2 triples and twisted exponents.

Basis ordering: ``h_1..h_l`` (simple coroots), then ``e_beta`` for the
positive roots in root-system order, then ``f_beta = e_{-beta}`` in the
same order.  Structure constants come from the extraspecial-pair algorithm
with ``N_{alpha,beta} = +(p+1)`` on extraspecial pairs and the convention
``N_{-alpha,-beta} = -N_{alpha,beta}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import factorial

from .fields import root_of_unity, to_scalar
from .folding import DiagramAutomorphism, FoldedData, fold, validate_automorphism
from .linalg import add_into, nullspace, scaled, solve
from .rootdata import CartanType, RootSystem, build_root_system, neg


class ChevalleyError(RuntimeError):
    pass


class UnsupportedFeature(NotImplementedError):
    pass


def _structure_constants(rs: RootSystem):
    pos = list(rs.positive_roots)
    order = {r: i for i, r in enumerate(pos)}
    inner = rs.inner
    length = {}

    def ln(x):
        x = tuple(x)
        v = length.get(x)
        if v is None:
            v = length[x] = inner(x, x)
        return v

    def is_pos(x):
        return tuple(x) in order

    def add(x, y):
        return tuple(a + b for a, b in zip(x, y))

    table: dict[tuple, Fraction] = {}
    extraspecial: dict[tuple, tuple] = {}

    def N(x, y):
        s = add(x, y)
        if not rs.is_root(s):
            return Fraction(0)
        xp, yp = is_pos(x), is_pos(y)
        if xp and yp:
            return table[(tuple(x), tuple(y))]
        if not xp and not yp:
            return -N(neg(x), neg(y))
        if not xp:
            return -N(y, x)
        z = neg(s)
        if is_pos(z):
            return N(z, x) * ln(z) / ln(y)
        return N(y, z) * ln(z) / ln(x)

    for xi in pos:
        if sum(xi) == 1:
            continue
        pairs = []
        for a in pos:
            b = tuple(p - q for p, q in zip(xi, a))
            if b in order and order[a] < order[b]:
                pairs.append((a, b))
        alpha, beta = pairs[0]
        p = 0
        while rs.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
            p += 1
        nab = Fraction(p + 1)
        extraspecial[xi] = (alpha, beta)
        table[(alpha, beta)] = nab
        table[(beta, alpha)] = -nab
        for zeta, eta in pairs[1:]:
            t2 = Fraction(0)
            bz = tuple(b - z for b, z in zip(beta, zeta))
            if rs.is_root(bz):
                t2 += N(beta, neg(zeta)) * N(alpha, neg(eta)) / ln(bz)
            az = tuple(a - z for a, z in zip(alpha, zeta))
            if rs.is_root(az):
                t2 += N(neg(zeta), alpha) * N(beta, neg(eta)) / ln(az)
            val = ln(xi) * t2 / nab
            table[(zeta, eta)] = val
            table[(eta, zeta)] = -val
    return N, extraspecial


@dataclass(frozen=True)
class BasisLabel:
    kind: str  # "h", "e", "f"
    index: int  # simple index for h, positive-root index for e/f

    def __str__(self):
        return f"{self.kind}{self.index + 1}"


class ChevalleyAlgebra:
    """A simple Lie algebra over Z with an optional lifted automorphism."""

    def __init__(self, rs: RootSystem, check: bool = True):
        self.rs = rs
        self.cartan_type = rs.cartan_type
        l = rs.rank
        P = len(rs.positive_roots)
        self.l, self.P = l, P
        self.dim = l + 2 * P
        self.labels = (
            [BasisLabel("h", i) for i in range(l)]
            + [BasisLabel("e", j) for j in range(P)]
            + [BasisLabel("f", j) for j in range(P)]
        )
        self._N, self.extraspecial = _structure_constants(rs)
        self.root_index: dict[tuple, int] = {}
        for j, r in enumerate(rs.positive_roots):
            self.root_index[r] = l + j
            self.root_index[neg(r)] = l + P + j
        self.sigma: list[dict] | None = None
        self.automorphism: DiagramAutomorphism | None = None
        self._table = self._build_table()
        if check:
            self.check_jacobi()

    # -- basic data ---------------------------------------------------------
    def root_of(self, i: int):
        if i < self.l:
            return None
        j = (i - self.l) % self.P
        r = self.rs.positive_roots[j]
        return r if i < self.l + self.P else neg(r)

    def basis_name(self, i: int) -> str:
        return str(self.labels[i])

    def coroot_vector(self, beta) -> dict:
        c = self.rs.coroot(beta)
        out = {}
        for i, x in enumerate(c):
            if x:
                if x.denominator != 1:
                    raise ChevalleyError(f"non-integral coroot for {beta}")
                out[i] = int(x)
        return out

    def N(self, x, y) -> int:
        v = self._N(tuple(x), tuple(y))
        if v.denominator != 1:
            raise ChevalleyError(f"non-integral structure constant N{x, y} = {v}")
        return int(v)

    def _build_table(self):
        table: dict[tuple[int, int], dict] = {}
        n = self.dim
        rs = self.rs
        for i in range(n):
            ri = self.root_of(i)
            for j in range(i + 1, n):
                rj = self.root_of(j)
                if ri is None and rj is None:
                    continue
                if ri is None:
                    c = rs.pairing(rj, i)
                    if c:
                        table[(i, j)] = {j: c}
                    continue
                s = tuple(a + b for a, b in zip(ri, rj))
                if not any(s):
                    table[(i, j)] = self.coroot_vector(ri) if i < j and ri in rs.positive_roots else scaled(self.coroot_vector(rj), -1)
                    continue
                if s in self.root_index:
                    c = self.N(ri, rj)
                    if c:
                        table[(i, j)] = {self.root_index[s]: c}
        return table

    def bracket_basis(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        v = self._table.get((j, i))
        return scaled(v, -1) if v else {}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.bracket_basis(i, j)
                if w:
                    add_into(out, w, a * b)
        return out

    def ad_matrix_columns(self, u: dict) -> list[dict]:
        return [self.bracket(u, {j: 1}) for j in range(self.dim)]

    # -- verification -------------------------------------------------------
    def check_jacobi(self):
        """Exhaustive check that ``ad`` is a homomorphism on basis pairs.

        Equivalent to the Jacobi identity on all basis triples.
        """
        n = self.dim
        ad = [[self.bracket_basis(i, j) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                cij = ad[i][j]
                for k in range(n):
                    # [i,[j,k]] - [j,[i,k]] - [[i,j],k]
                    acc: dict = {}
                    for m, c in ad[j][k].items():
                        add_into(acc, ad[i][m], c)
                    for m, c in ad[i][k].items():
                        add_into(acc, ad[j][m], -c)
                    for m, c in cij.items():
                        add_into(acc, ad[m][k], -c)
                    if acc:
                        raise ChevalleyError(
                            f"Jacobi identity fails on ({self.basis_name(i)}, {self.basis_name(j)}, {self.basis_name(k)})"
                        )
        return True

    # -- automorphism -------------------------------------------------------
    def lift_automorphism(self, d: DiagramAutomorphism | tuple | str) -> "ChevalleyAlgebra":
        if not isinstance(d, DiagramAutomorphism):
            d = validate_automorphism(self.rs, d)
        perm = d.perm
        l = self.l
        images: dict[int, tuple[int, int]] = {}
        for i in range(l):
            images[i] = (perm[i], 1)

        def proot(r):
            out = [0] * l
            for i, c in enumerate(r):
                out[perm[i]] = c
            return tuple(out)

        for r in self.rs.positive_roots:
            for sgn in (1, -1):
                root = r if sgn == 1 else neg(r)
                idx = self.root_index[root]
                target = self.root_index[proot(root)]
                if sum(r) == 1:
                    images[idx] = (target, 1)
                    continue
                a, b = self.extraspecial[r]
                if sgn == -1:
                    a, b = neg(a), neg(b)
                ca = images[self.root_index[a]][1]
                cb = images[self.root_index[b]][1]
                num = self.N(proot(a), proot(b))
                den = self.N(a, b)
                c = Fraction(ca * cb * num, den)
                if c not in (1, -1):
                    raise ChevalleyError(f"sign propagation produced {c} at [{a}, {b}]")
                images[idx] = (target, int(c))
        sigma = [{images[i][0]: images[i][1]} for i in range(self.dim)]
        # automorphism check on all basis pairs
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = _apply_cols(sigma, self.bracket_basis(i, j))
                rhs = self.bracket(sigma[i], sigma[j])
                if lhs != rhs:
                    raise ChevalleyError(
                        f"lifted automorphism clashes on [{self.basis_name(i)}, {self.basis_name(j)}]"
                    )
        out = _copy_with_sigma(self, sigma, d)
        # sigma^k = id
        v = {i: 1 for i in range(self.dim)}
        w = dict(v)
        for _ in range(d.order_k):
            w = _apply_cols(sigma, w)
        if w != v:
            raise ChevalleyError("sigma^k != identity")
        return out

    @cached_property
    def folded(self) -> FoldedData:
        if self.automorphism is None:
            raise ChevalleyError("no automorphism attached")
        return fold(self.rs, self.automorphism)

    @property
    def k(self) -> int:
        return 1 if self.automorphism is None else self.automorphism.order_k


def _apply_cols(cols: list[dict], vec: dict) -> dict:
    out: dict = {}
    for c, v in vec.items():
        add_into(out, cols[c], v)
    return out


def _copy_with_sigma(alg: ChevalleyAlgebra, sigma, d) -> ChevalleyAlgebra:
    new = object.__new__(ChevalleyAlgebra)
    new.__dict__.update({k: v for k, v in alg.__dict__.items() if k != "folded"})
    new.sigma = sigma
    new.automorphism = d
    return new


def build_chevalley(t: CartanType | str, check: bool = True) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(build_root_system(t), check=check)


def lift_automorphism(alg: ChevalleyAlgebra, d) -> ChevalleyAlgebra:
    return alg.lift_automorphism(d)


def with_identity(alg: ChevalleyAlgebra) -> ChevalleyAlgebra:
    return alg.lift_automorphism(tuple(range(alg.l)))


# -- eigenspaces ----------------------------------------------------------------


@dataclass
class Eigenspace:
    label: int
    vectors: list[dict]
    weights: list[tuple[int, ...]]  # h_0-weights in simple-root coordinates of L_0

    @property
    def dim(self) -> int:
        return len(self.vectors)


def _dense_inverse(M):
    n = len(M)
    rows = []
    for i in range(n):
        r = {j: M[i][j] for j in range(n) if M[i][j]}
        for j in range(n):
            if i == j:
                r[n + j] = Fraction(1)
        rows.append(r)
    from .linalg import rref

    piv = rref(rows)
    if sorted(piv) != list(range(n)):
        raise ChevalleyError("singular change of basis")
    return [[piv[i].get(n + j, 0) for j in range(n)] for i in range(n)]


class EigenData:
    """Weight bases of all sigma-eigenspaces ``L_a`` with coordinate maps."""

    def __init__(self, alg: ChevalleyAlgebra):
        if alg.sigma is None:
            alg = with_identity(alg)
        self.alg = alg
        self.k = k = alg.k
        self.folded = alg.folded
        orbits = self.folded.orbits
        self.l0 = len(orbits)

        def weight_of(i):
            r = alg.root_of(i)
            if r is None:
                return (0,) * self.l0
            return tuple(sum(r[x] for x in orb) for orb in orbits)

        self.weight_of_basis = [weight_of(i) for i in range(alg.dim)]
        blocks: dict[tuple, list[int]] = {}
        for i in range(alg.dim):
            blocks.setdefault(self.weight_of_basis[i], []).append(i)
        self.vectors: list[dict] = []
        self.labels: list[int] = []
        self.weights: list[tuple] = []
        self._block_of: dict[int, tuple] = {}
        self._block_members: dict[tuple, list[int]] = {}
        self._block_inverse: dict[tuple, list] = {}
        sigma = alg.sigma
        for wt in sorted(blocks, key=lambda w: (-sum(w), tuple(-x for x in w))):
            idx = blocks[wt]
            pos = {g: p for p, g in enumerate(idx)}
            members = []
            for a in range(k):
                qa = root_of_unity(k, a)
                # rows of (sigma - q^a) restricted to the block
                cols = []
                for g in idx:
                    col = {pos[t]: to_scalar(c, k) for t, c in sigma[g].items()}
                    col[pos[g]] = col.get(pos[g], 0) - qa
                    if not col[pos[g]]:
                        del col[pos[g]]
                    cols.append(col)
                rows: dict[int, dict] = {}
                for c, col in enumerate(cols):
                    for r, v in col.items():
                        rows.setdefault(r, {})[c] = v
                for v in nullspace(list(rows.values()), len(idx)):
                    vec = {idx[p]: x for p, x in v.items() if x}
                    members.append(len(self.vectors))
                    self.vectors.append(vec)
                    self.labels.append(a)
                    self.weights.append(wt)
            if len(members) != len(idx):
                raise ChevalleyError(
                    f"eigenspace dimensions {len(members)} != block size {len(idx)} at weight {wt}"
                )
            M = [[self.vectors[m].get(g, 0) for m in members] for g in idx]
            self._block_inverse[wt] = _dense_inverse(M)
            self._block_members[wt] = members
            for g in idx:
                self._block_of[g] = wt
        self._bracket_cache: dict[tuple[int, int], dict] = {}

    def coords(self, vec: dict) -> dict:
        """Coordinates of an L-vector in the eigenvector basis."""
        by_block: dict[tuple, dict] = {}
        for g, x in vec.items():
            by_block.setdefault(self._block_of[g], {})[g] = x
        out: dict = {}
        for wt, part in by_block.items():
            members = self._block_members[wt]
            inv = self._block_inverse[wt]
            idx = sorted(self._block_of_members(wt))
            pos = {g: p for p, g in enumerate(idx)}
            for r, m in enumerate(members):
                s = 0
                for g, x in part.items():
                    c = inv[r][pos[g]]
                    if c:
                        s = s + c * x
                if s:
                    out[m] = s
        return out

    def _block_of_members(self, wt):
        return [g for g, w in self._block_of.items() if w == wt]

    def bracket(self, i: int, j: int) -> dict:
        key = (i, j)
        v = self._bracket_cache.get(key)
        if v is None:
            v = self.coords(self.alg.bracket(self.vectors[i], self.vectors[j]))
            self._bracket_cache[key] = v
        return v

    def eigenspaces(self) -> list[Eigenspace]:
        out = []
        for a in range(self.k):
            idx = [m for m in range(len(self.vectors)) if self.labels[m] == a]
            out.append(Eigenspace(a, [self.vectors[m] for m in idx], [self.weights[m] for m in idx]))
        return out

    def indices(self, a: int) -> list[int]:
        return [m for m in range(len(self.vectors)) if self.labels[m] == a % self.k]

    def is_positive(self, wt) -> bool:
        return any(wt) and all(x >= 0 for x in wt)

    def is_negative(self, wt) -> bool:
        return any(wt) and all(x <= 0 for x in wt)

    def l_a(self, a: int) -> int:
        return sum(1 for m in self.indices(a) if not any(self.weights[m]))


def eigenspaces(alg: ChevalleyAlgebra, k: int | None = None) -> list[Eigenspace]:
    ed = EigenData(alg)
    if k is not None and k != ed.k:
        raise ChevalleyError(f"automorphism has order {ed.k}, not {k}")
    spaces = ed.eigenspaces()
    if sum(s.dim for s in spaces) != alg.dim:
        raise ChevalleyError("eigenspace dimensions do not sum to dim L")
    return spaces


# -- principal sl_2 and exponents ---------------------------------------------------


@dataclass
class PrincipalTriple:
    h: dict
    e: dict
    f: dict


def principal_sl2(ed: EigenData | ChevalleyAlgebra) -> PrincipalTriple:
    if isinstance(ed, ChevalleyAlgebra):
        ed = EigenData(ed)
    alg = ed.alg
    A = alg.rs.cartan_matrix
    l = alg.l
    # solve sum_i c_i A[i][j] = 2 for all j
    cols = [{j: Fraction(A[i][j]) for j in range(l) if A[i][j]} for i in range(l)]
    c = solve(cols, {j: Fraction(2) for j in range(l)})
    if c is None:
        raise ChevalleyError("singular system for the principal Cartan element")
    h = {i: x for i, x in c.items() if x}
    l0 = ed.l0
    e: dict = {}
    fcols = []
    for J in range(l0):
        unit = tuple(int(x == J) for x in range(l0))
        neg_unit = tuple(-x for x in unit)
        pe = [m for m in ed.indices(0) if ed.weights[m] == unit]
        pf = [m for m in ed.indices(0) if ed.weights[m] == neg_unit]
        if len(pe) != 1 or len(pf) != 1:
            raise ChevalleyError("simple root space of L_0 is not one-dimensional")
        add_into(e, ed.vectors[pe[0]])
        fcols.append(ed.vectors[pf[0]])
    brs = [alg.bracket(e, fc) for fc in fcols]
    y = solve(brs, h)
    if y is None:
        raise ChevalleyError("cannot solve [e, f] = h")
    f: dict = {}
    for J, x in y.items():
        add_into(f, fcols[J], x)
    if alg.bracket(h, f) != scaled(f, -2) or alg.bracket(h, e) != scaled(e, 2):
        raise ChevalleyError("principal triple relations fail")
    return PrincipalTriple(h, e, f)


def principal_grading(ed: EigenData, h: dict | None = None) -> list[int]:
    """ad(h)/2 eigenvalue of every eigenvector."""
    if h is None:
        h = principal_sl2(ed).h
    out = []
    for v in ed.vectors:
        w = ed.alg.bracket(h, v)
        if not w:
            out.append(0)
            continue
        g = next(iter(v))
        lam = w.get(g, 0) / v[g]
        if scaled(v, lam) != w:
            raise ChevalleyError("weight vector is not an ad(h) eigenvector")
        half = Fraction(lam) / 2 if not hasattr(lam, "b") else Fraction(lam.a) / 2
        if half.denominator != 1:
            raise ChevalleyError(f"non-integral ad(h)/2 eigenvalue {half}")
        out.append(int(half))
    return out


def twisted_exponents(ed: EigenData | ChevalleyAlgebra, k: int | None = None) -> dict[int, list[int]]:
    if isinstance(ed, ChevalleyAlgebra):
        ed = EigenData(ed)
    grades = principal_grading(ed)
    out = {}
    for a in range(ed.k):
        dims: dict[int, int] = {}
        for m in ed.indices(a):
            dims[grades[m]] = dims.get(grades[m], 0) + 1
        top = max(dims) if dims else 0
        exps = []
        for m in range(0, top + 1):
            mult = dims.get(m, 0) - dims.get(m + 1, 0)
            if mult < 0:
                raise ChevalleyError(f"negative exponent multiplicity at m={m}, a={a}")
            exps += [m] * mult
        out[a] = exps
    return out


# -- defining representation of type A and invariant trace powers -----------------


def _matmul(X, Y):
    n = len(X)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Xi = X[i]
        for k in range(n):
            a = Xi[k]
            if a:
                Yk = Y[k]
                row = out[i]
                for j in range(n):
                    if Yk[j]:
                        row[j] += a * Yk[j]
    return out


def defining_representation(alg: ChevalleyAlgebra) -> list[list[list[int]]]:
    """Matrices of the basis of sl_{n+1} in its defining representation."""
    t = alg.cartan_type
    if t is None or t.series != "A":
        raise UnsupportedFeature("defining representation implemented for type A only")
    n = alg.l + 1
    l = alg.l

    def E(i, j):
        M = [[0] * n for _ in range(n)]
        M[i][j] = 1
        return M

    mats: dict[int, list] = {}
    for i in range(l):
        M = [[0] * n for _ in range(n)]
        M[i][i], M[i + 1][i + 1] = 1, -1
        mats[i] = M
        unit = tuple(int(j == i) for j in range(l))
        mats[alg.root_index[unit]] = E(i, i + 1)
        mats[alg.root_index[neg(unit)]] = E(i + 1, i)
    for j, r in enumerate(alg.rs.positive_roots):
        if sum(r) == 1:
            continue
        for root in (r, neg(r)):
            a, b = alg.extraspecial[r]
            if root != r:
                a, b = neg(a), neg(b)
            X, Y = mats[alg.root_index[a]], mats[alg.root_index[b]]
            XY, YX = _matmul(X, Y), _matmul(Y, X)
            c = alg.N(a, b)
            mats[alg.root_index[root]] = [
                [Fraction(XY[p][q] - YX[p][q], c) for q in range(n)] for p in range(n)
            ]
    out = [mats[i] for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            XY, YX = _matmul(out[i], out[j]), _matmul(out[j], out[i])
            br = alg.bracket_basis(i, j)
            Z = [[0] * n for _ in range(n)]
            for m, c in br.items():
                for p in range(n):
                    for q in range(n):
                        Z[p][q] += c * out[m][p][q]
            if any(XY[p][q] - YX[p][q] != Z[p][q] for p in range(n) for q in range(n)):
                raise ChevalleyError("defining representation is not a homomorphism")
    return out


class InvariantForm:
    """Symmetric d-linear form ``(x_1..x_d) -> mean over orderings of trace``.

    ``poly`` holds the polynomial ``x -> trace(x^d)`` on L in the dual basis:
    sorted index tuple -> coefficient.
    """

    def __init__(self, alg: ChevalleyAlgebra, degree: int, rep=None):
        self.alg = alg
        self.degree = degree
        self.rep = rep if rep is not None else defining_representation(alg)
        self.poly = self._polynomial(self.rep)

    def _mat(self, vec: dict):
        n = len(self.rep[0])
        M = [[0] * n for _ in range(n)]
        for i, c in vec.items():
            R = self.rep[i]
            for p in range(n):
                for q in range(n):
                    if R[p][q]:
                        M[p][q] += c * R[p][q]
        return M

    def _polynomial(self, rep) -> dict:
        d = self.degree
        n = self.alg.dim
        out: dict = {}

        def rec(seq, M):
            if len(seq) == d:
                tr = sum(M[i][i] for i in range(len(M)))
                if tr:
                    key = tuple(sorted(seq))
                    out[key] = out.get(key, 0) + tr
                    if not out[key]:
                        del out[key]
                return
            for i in range(n):
                P = _matmul(M, rep[i])
                if any(any(r) for r in P):
                    rec(seq + (i,), P)

        for i in range(n):
            rec((i,), rep[i])
        return {k: Fraction(v) for k, v in out.items()}

    def multilinear(self, vectors) -> Fraction:
        d = self.degree
        if len(vectors) != d:
            raise ValueError("wrong number of arguments")
        mats = [self._mat(v) for v in vectors]
        total = 0
        for perm in permutations(range(d)):
            M = mats[perm[0]]
            for p in perm[1:]:
                M = _matmul(M, mats[p])
            total += sum(M[i][i] for i in range(len(M)))
        return Fraction(total) / factorial(d)

    def check_invariance(self) -> bool:
        alg = self.alg
        d = self.degree
        n = alg.dim
        basis = [{i: 1} for i in range(n)]
        from itertools import combinations_with_replacement

        for idx in combinations_with_replacement(range(n), d):
            args = [basis[i] for i in idx]
            for y in range(n):
                s = Fraction(0)
                for r in range(d):
                    br = alg.bracket({y: 1}, args[r])
                    if br:
                        s += self.multilinear(args[:r] + [br] + args[r + 1:])
                if s:
                    raise ChevalleyError(f"form not ad-invariant at {idx}, y={y}")
        return True

    def sigma_eigenvalue(self):
        """lambda with ``P(sigma^{-1} x) = lambda P(x)``, or None."""
        alg = self.alg
        if alg.sigma is None:
            return Fraction(1)
        sig = alg.sigma
        inv = [None] * alg.dim
        for i, col in enumerate(sig):
            (t, c), = col.items()
            inv[t] = {i: c}
        # rep of sigma^{-1}(b_i)
        rep2 = [self._mat(inv[i]) for i in range(alg.dim)]
        p2 = self._polynomial(rep2)
        lam = None
        for key in set(p2) | set(self.poly):
            a, b = self.poly.get(key, 0), p2.get(key, 0)
            if not a:
                if b:
                    return None
                continue
            r = Fraction(b) / a
            if lam is None:
                lam = r
            elif lam != r:
                return None
        return lam


def invariant_trace_power(alg: ChevalleyAlgebra, degree: int, check: bool = True) -> InvariantForm:
    t = alg.cartan_type
    if t is None or t.series != "A":
        raise UnsupportedFeature(f"invariant_trace_power supports type A only, got {t}")
    if not 2 <= degree <= t.rank + 1:
        raise ValueError(f"degree must lie in 2..{t.rank + 1}")
    form = InvariantForm(alg, degree)
    if check:
        form.check_invariance()
    return form


def killing_rank(dim: int, bracket) -> int:
    """Rank of the Killing form of an algebra given by ``bracket(i, j) -> dict``."""
    from .linalg import rank as _rank

    ad = []
    for i in range(dim):
        ad.append([bracket(i, j) for j in range(dim)])
    rows = []
    for i in range(dim):
        row = {}
        for j in range(dim):
            # tr(ad_i ad_j) = sum_k [i,[j,k]]_k
            s = 0
            for k in range(dim):
                for m, c in ad[j][k].items():
                    x = ad[i][m].get(k)
                    if x:
                        s += c * x
            if s:
                row[j] = s
        rows.append(row)
    return _rank(rows)
