"""Constant terms of affine root products and the Euler-characteristic
identity linking them to truncated cohomology.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .chevalley import EigenData
from .qseries import LaurentQ, QRational, cyclo_product, q_binomial, shifted_q_binomial
from .rootdata import RootSystem, exponents

DEFAULT_PRODUCT_CAP = 2_000_000


class ConstantTermError(RuntimeError):
    pass


class ProductCapError(ConstantTermError):
    pass


class WeightQPoly:
    """Group-algebra element: (weight, q-exponent) -> integer coefficient."""

    __slots__ = ("c", "rank")

    def __init__(self, rank: int, coeffs: Mapping | None = None):
        self.rank = rank
        self.c: dict[tuple, int] = {}
        for (w, e), v in (coeffs or {}).items():
            if v:
                if len(w) != rank:
                    raise ConstantTermError("weight of wrong length")
                self.c[(tuple(w), e)] = v

    @classmethod
    def one(cls, rank: int) -> "WeightQPoly":
        return cls(rank, {((0,) * rank, 0): 1})

    def times_binomial(self, weight, qexp: int) -> "WeightQPoly":
        """Multiply by ``1 - q^qexp e^weight``."""
        out = dict(self.c)
        for (w, e), v in self.c.items():
            key = (tuple(a + b for a, b in zip(w, weight)), e + qexp)
            x = out.get(key, 0) - v
            if x:
                out[key] = x
            else:
                out.pop(key, None)
        r = WeightQPoly(self.rank)
        r.c = out
        return r

    def constant_term(self) -> LaurentQ:
        zero = (0,) * self.rank
        return LaurentQ({e: v for (w, e), v in self.c.items() if w == zero})

    def __len__(self):
        return len(self.c)


def expand_constant_term(factors: Sequence[tuple[tuple[int, ...], int]], rank: int, prune: bool = True,
                         cap: int = DEFAULT_PRODUCT_CAP) -> LaurentQ:
    """``[e^0] prod (1 - q^n e^w)`` over ``factors = [(w, n), ...]``.

    Pruning drops monomials whose weight cannot return to zero using the
    factors still to come; each factor contributes 0 or its weight.
    """
    factors = list(factors)
    lo = [[0] * rank for _ in range(len(factors) + 1)]
    hi = [[0] * rank for _ in range(len(factors) + 1)]
    for t in range(len(factors) - 1, -1, -1):
        w = factors[t][0]
        for i in range(rank):
            lo[t][i] = lo[t + 1][i] + min(0, w[i])
            hi[t][i] = hi[t + 1][i] + max(0, w[i])
    poly = WeightQPoly.one(rank)
    for t, (w, n) in enumerate(factors):
        poly = poly.times_binomial(w, n)
        if prune:
            L, H = lo[t + 1], hi[t + 1]
            poly.c = {
                key: v for key, v in poly.c.items()
                if all(L[i] <= -key[0][i] <= H[i] for i in range(rank))
            }
        if len(poly) > cap:
            raise ProductCapError(f"product has {len(poly)} terms after {t + 1} factors, cap {cap}")
    return poly.constant_term()


# -- affine root sets -------------------------------------------------------------------


@dataclass(frozen=True)
class AffineRoot:
    weight: tuple[int, ...]  # simple-root coordinates of L_0
    fundamental: tuple[int, ...]  # fundamental-weight coordinates of L_0
    n: int
    pairing: int  # alpha-hat(rho_N) = n - N * alpha(rho)

    @property
    def sign(self) -> int:
        return 1 if self.pairing > 0 else -1


@dataclass
class AffineRootSetN:
    roots: list[AffineRoot]
    N: int
    k: int
    rank: int

    def __len__(self):
        return len(self.roots)


def _fundamental(A0, mu) -> tuple[int, ...]:
    l0 = len(A0)
    return tuple(sum(A0[I][J] * mu[J] for J in range(l0)) for I in range(l0))


def build_SN(ed: EigenData, N: int) -> AffineRootSetN:
    k = ed.k
    if N <= 0 or N % k:
        raise ConstantTermError(f"N={N} must be a positive multiple of k={k}")
    A0 = ed.folded.folded_cartan
    roots = []
    for n in range(N + 1):
        for m in ed.indices(n % k):
            mu = ed.weights[m]
            if not any(mu):
                continue
            if n == 0 and not ed.is_positive(mu):
                continue
            if n == N and not ed.is_negative(mu):
                continue
            p = n - N * sum(mu)
            if p == 0:
                raise ConstantTermError(f"zero rho_N pairing at {mu} + {n} delta")
            roots.append(AffineRoot(mu, _fundamental(A0, mu), n, p))
    return AffineRootSetN(roots, N, k, ed.l0)


def lhs_constant_term(s: AffineRootSetN, prune: bool = True, cap: int = DEFAULT_PRODUCT_CAP) -> LaurentQ:
    # 1 - e^{-(mu + n delta)} = 1 - q^n e^{-mu}
    factors = [(tuple(-x for x in r.fundamental), r.n) for r in s.roots]
    return expand_constant_term(factors, s.rank, prune, cap)


def rhs_theorem_form(s: AffineRootSetN):
    ex: Counter = Counter()
    for r in s.roots:
        if r.pairing == 0:
            raise ConstantTermError("zero rho_N pairing")
        ex[abs(r.pairing)] += r.sign
    res = cyclo_product(ex)
    return res.num if res.is_polynomial else res


def rhs_binomial_form(twisted_exps: Mapping[int, Sequence[int]], N: int, k: int):
    if N <= 0 or N % k:
        raise ConstantTermError(f"N={N} must be a positive multiple of k={k}")
    out = LaurentQ.one()
    den = LaurentQ.one()
    for a in range(k):
        for m in twisted_exps.get(a, []):
            b = shifted_q_binomial(N * (m + 1), N, k, a)
            if isinstance(b, QRational):
                out, den = out * b.num, den * b.den
            else:
                out = out * b
    if den != LaurentQ.one():
        q, r = out.divmod(den)
        return q if not r else QRational(out, den)
    return out


def finite_macdonald_lhs(rs: RootSystem, N: int, prune: bool = True, cap: int = DEFAULT_PRODUCT_CAP) -> LaurentQ:
    if N < 1:
        raise ConstantTermError("N must be >= 1")
    factors = []
    for beta in rs.positive_roots:
        w = rs.to_fundamental(beta)
        neg = tuple(-x for x in w)
        for i in range(1, N + 1):
            factors.append((neg, i - 1))
            factors.append((w, i))
    return expand_constant_term(factors, rs.rank, prune, cap)


def finite_macdonald_rhs(rs: RootSystem, N: int) -> LaurentQ:
    out = LaurentQ.one()
    for m in exponents(rs):
        out = out * q_binomial(N * (m + 1), N)
    return out


# -- Euler characteristic identity ------------------------------------------------------


@dataclass
class EulerReport:
    from_table: LaurentQ
    from_constant_term: LaurentQ | QRational
    from_theorem: LaurentQ | QRational
    equal: bool

    def to_json(self) -> str:
        return json.dumps({
            "table": str(self.from_table),
            "constant_term_side": str(self.from_constant_term),
            "theorem_side": str(self.from_theorem),
            "equal": self.equal,
        }, sort_keys=True)

    def __str__(self):
        verdict = "EQUAL" if self.equal else "MISMATCH"
        return (f"{verdict}: chi(table) = {self.from_table}; chi(constant term) = {self.from_constant_term}; "
                f"chi(theorem) = {self.from_theorem}")


def _times_cyclo(p: LaurentQ, ex: Mapping[int, int]):
    f = cyclo_product(ex)
    num = p * f.num
    q, r = num.divmod(f.den)
    return q if not r else QRational(num, f.den)


def euler_cross_check(table, twisted_exps: Mapping[int, Sequence[int]], g0_exps: Sequence[int], N: int, k: int,
                      constant_term: LaurentQ, nilpotent: bool = False) -> EulerReport:
    """Compare the weighted Euler characteristic of a relative table with
    the constant-term expression and with the closed product form.

    ``nilpotent`` selects the pair ``(b / z^N n, h_0)``, which has no
    ``g_0`` prefactor.
    """
    chi_table = table.euler() if hasattr(table, "euler") else table
    pre: Counter = Counter()
    thm: Counter = Counter()
    if not nilpotent:
        for r in g0_exps:
            pre[N * (r + 1)] -= 1
            thm[N * (r + 1)] -= 1
    for n in range(1, N + 1):
        ln = len(twisted_exps.get(n % k, []))
        if ln:
            pre[n] += ln
        for m in twisted_exps.get(n % k, []):
            thm[N * m + n] += 1
    ct_side = _times_cyclo(constant_term, pre)
    th_side = _times_cyclo(LaurentQ.one(), thm)
    equal = ct_side == chi_table and th_side == chi_table
    return EulerReport(chi_table, ct_side, th_side, equal)
