"""Exact q- and (t, q, s)-series: Gaussian and shifted q-binomials,
coinvariant Poincare series, free super-commutative series and the
predicted cohomology series of truncated parahoric algebras.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class SeriesError(ArithmeticError):
    pass


# -- Laurent polynomials in q ----------------------------------------------------------


class LaurentQ:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.c = {int(e): int(v) for e, v in (coeffs or {}).items() if v}

    @classmethod
    def one(cls) -> "LaurentQ":
        return cls({0: 1})

    @classmethod
    def monomial(cls, e: int, coeff: int = 1) -> "LaurentQ":
        return cls({e: coeff})

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "LaurentQ":
        return cls({i: v for i, v in enumerate(coeffs)})

    @classmethod
    def one_minus(cls, e: int) -> "LaurentQ":
        """``1 - q^e``."""
        if e == 0:
            return cls()
        return cls({0: 1, e: -1})

    def __add__(self, o):
        o = _lq(o)
        out = dict(self.c)
        for e, v in o.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentQ(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ({e: -v for e, v in self.c.items()})

    def __sub__(self, o):
        return self + (-_lq(o))

    def __rsub__(self, o):
        return _lq(o) - self

    def __mul__(self, o):
        o = _lq(o)
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative power of a polynomial")
        out = LaurentQ.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        try:
            o = _lq(o)
        except TypeError:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __bool__(self):
        return bool(self.c)

    @property
    def degree(self) -> int:
        return max(self.c) if self.c else -1

    @property
    def low(self) -> int:
        return min(self.c) if self.c else 0

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.c)

    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.c.values())

    def at(self, x) -> int:
        return sum(v * x**e for e, v in self.c.items())

    def subs_power(self, m: int) -> "LaurentQ":
        """``q -> q^m``."""
        return LaurentQ({e * m: v for e, v in self.c.items()})

    def divmod(self, d: "LaurentQ"):
        """Long division after factoring out the lowest powers of q.

        Returns ``(quot, rem)`` with ``self = quot * d + rem``; ``rem`` is zero
        exactly when ``d`` divides ``self`` in Z[q, q^-1].
        """
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentQ(), LaurentQ()
        sl, dl = self.low, d.low
        num = {e - sl: v for e, v in self.c.items()}
        den = {e - dl: v for e, v in d.c.items()}
        dd = max(den)
        lead = den[dd]
        quot: dict[int, int] = {}
        while num and max(num) >= dd:
            top = max(num)
            v = num[top]
            if v % lead:
                break
            f = v // lead
            quot[top - dd] = f
            for e, w in den.items():
                x = num.get(e + top - dd, 0) - f * w
                if x:
                    num[e + top - dd] = x
                else:
                    num.pop(e + top - dd, None)
        return (LaurentQ({e + sl - dl: v for e, v in quot.items()}),
                LaurentQ({e + sl: v for e, v in num.items()}))

    def exact_div(self, d: "LaurentQ") -> "LaurentQ":
        q, r = self.divmod(d)
        if r:
            raise SeriesError(f"inexact division of {self} by {d}")
        return q

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            mon = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mon:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mon
            else:
                body = f"{abs(v)}*{mon}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentQ({self})"

    def to_json(self):
        return [[e, self.c[e]] for e in sorted(self.c)]


def _lq(x) -> LaurentQ:
    if isinstance(x, LaurentQ):
        return x
    if isinstance(x, int):
        return LaurentQ({0: x})
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentQ")


Q = LaurentQ.monomial(1)


# -- products of (1 - q^i)^(+-1) -------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> LaurentQ:
    """``Phi_d(q)`` for d > 1, and ``1 - q`` for d = 1 (sign-normalized)."""
    if d == 1:
        return LaurentQ.one_minus(1)
    p = LaurentQ({d: 1, 0: -1})
    for e in range(1, d):
        if d % e == 0:
            f = cyclotomic(e) if e > 1 else LaurentQ({1: 1, 0: -1})
            p = p.exact_div(f)
    return p


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass
class QRational:
    """Reduced quotient of products of cyclotomic factors times ``q^shift``."""

    num: LaurentQ
    den: LaurentQ

    @property
    def is_polynomial(self) -> bool:
        return self.den == LaurentQ.one()

    def to_poly(self) -> LaurentQ:
        if not self.is_polynomial:
            raise SeriesError(f"({self.num})/({self.den}) is not a polynomial")
        return self.num

    def __eq__(self, o):
        if isinstance(o, QRational):
            return self.num * o.den == o.num * self.den
        if isinstance(o, (LaurentQ, int)):
            return self.num == _lq(o) * self.den
        return NotImplemented

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"


def cyclo_product(exponents: Mapping[int, int]) -> QRational:
    """``prod_i (1 - q^i)^{exponents[i]}`` reduced to lowest terms."""
    mult: Counter = Counter()
    for i, e in exponents.items():
        if i <= 0:
            raise SeriesError(f"factor 1 - q^{i} not allowed")
        for d in _divisors(i):
            mult[d] += e
    num, den = LaurentQ.one(), LaurentQ.one()
    for d in sorted(mult):
        e = mult[d]
        if e > 0:
            num = num * cyclotomic(d) ** e
        elif e < 0:
            den = den * cyclotomic(d) ** (-e)
    return QRational(num, den)


def exact_cyclo_product(exponents: Mapping[int, int]) -> LaurentQ:
    return cyclo_product(exponents).to_poly()


def q_binomial(a: int, b: int) -> LaurentQ:
    if not 0 <= b <= a:
        raise SeriesError(f"q_binomial({a}, {b}) needs 0 <= b <= a")
    return _qbin(a, b)


@lru_cache(maxsize=None)
def _qbin(a: int, b: int) -> LaurentQ:
    if b == 0 or b == a:
        return LaurentQ.one()
    return _qbin(a - 1, b - 1) + LaurentQ.monomial(b) * _qbin(a - 1, b)


def shifted_q_binomial(N: int, M: int, k: int, a: int):
    """Congruence-filtered q-binomial; a LaurentQ when exact, else QRational."""
    if k < 1 or N % k or M % k or not 0 <= a < k:
        raise SeriesError(f"shifted_q_binomial({N}, {M}, {k}, {a}): need N, M multiples of k and 0 <= a < k")
    ex: Counter = Counter()
    for i in range(N - M + 1, N + 1):
        if i > 0 and i % k == a:
            ex[i] += 1
    for i in range(1, M + 1):
        if i % k == a:
            ex[i] -= 1
    r = cyclo_product(ex)
    return r.num if r.is_polynomial else r


def coinvariant_series(L0_exponents: Sequence[int], g0_exponents: Sequence[int]) -> LaurentQ:
    if len(L0_exponents) != len(g0_exponents):
        raise SeriesError("exponent lists must have equal length")
    ex: Counter = Counter()
    for m in L0_exponents:
        ex[m + 1] += 1
    for r in g0_exponents:
        ex[r + 1] -= 1
    r = cyclo_product(ex)
    if not r.is_polynomial:
        raise SeriesError(
            f"Coinv series for {list(L0_exponents)} over {list(g0_exponents)} is not a polynomial"
        )
    return r.num


# -- (t, q, s) series ----------------------------------------------------------------


class BiPoly:
    """Polynomial in t, q, s with integer coefficients, keyed by (t, q, s).

    ``q_order`` / ``s_order`` record truncation: coefficients beyond them
    are unknown and ignored by comparisons.
    """

    def __init__(self, coeffs: Mapping | None = None, q_order: int | None = None, s_order: int | None = None):
        self.q_order = q_order
        self.s_order = s_order
        out = {}
        for key, v in (coeffs or {}).items():
            if len(key) == 2:
                key = (key[0], key[1], 0)
            key = tuple(int(x) for x in key)
            if v and self._inside(key):
                out[key] = out.get(key, 0) + int(v)
        self.c = {k: v for k, v in out.items() if v}

    def _inside(self, key) -> bool:
        return (self.q_order is None or key[1] <= self.q_order) and (
            self.s_order is None or key[2] <= self.s_order
        )

    @classmethod
    def one(cls) -> "BiPoly":
        return cls({(0, 0, 0): 1})

    @classmethod
    def monomial(cls, t: int = 0, q: int = 0, s: int = 0, coeff: int = 1) -> "BiPoly":
        return cls({(t, q, s): coeff})

    @staticmethod
    def _order(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, o: "BiPoly"):
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out, self._order(self.q_order, o.q_order), self._order(self.s_order, o.s_order))

    def __mul__(self, o):
        if isinstance(o, int):
            return BiPoly({k: v * o for k, v in self.c.items()}, self.q_order, self.s_order)
        qo, so = self._order(self.q_order, o.q_order), self._order(self.s_order, o.s_order)
        out: dict = {}
        for (t1, q1, s1), v1 in self.c.items():
            for (t2, q2, s2), v2 in o.c.items():
                key = (t1 + t2, q1 + q2, s1 + s2)
                if (qo is not None and key[1] > qo) or (so is not None and key[2] > so):
                    continue
                out[key] = out.get(key, 0) + v1 * v2
        return BiPoly(out, qo, so)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, BiPoly):
            return NotImplemented
        return self.compare(o)[0]

    def compare(self, o: "BiPoly") -> tuple[bool, bool]:
        """(equal on the common range, whether a truncation clamp applied)."""
        qo, so = self._order(self.q_order, o.q_order), self._order(self.s_order, o.s_order)
        clamped = (qo is not None or so is not None) and (
            (self.q_order, self.s_order) != (o.q_order, o.s_order)
        )
        keys = set(self.c) | set(o.c)
        for key in keys:
            if (qo is not None and key[1] > qo) or (so is not None and key[2] > so):
                continue
            if self.c.get(key, 0) != o.c.get(key, 0):
                return False, clamped
        return True, clamped

    def truncate(self, q_order=None, s_order=None, t_order=None) -> "BiPoly":
        out = {k: v for k, v in self.c.items() if t_order is None or k[0] <= t_order}
        return BiPoly(out, self._order(self.q_order, q_order), self._order(self.s_order, s_order))

    def at_t(self, t: int) -> "BiPoly":
        out: dict = {}
        for (a, b, c), v in self.c.items():
            out[(0, b, c)] = out.get((0, b, c), 0) + v * t**a
        return BiPoly(out, self.q_order, self.s_order)

    def euler(self) -> LaurentQ:
        """Specialize t -> -1 and s -> 1."""
        out: dict = {}
        for (a, b, _), v in self.c.items():
            out[b] = out.get(b, 0) + v * (-1) ** a
        return LaurentQ(out)

    def forget_q(self) -> dict[int, int]:
        out: dict = {}
        for (a, _, _), v in self.c.items():
            out[a] = out.get(a, 0) + v
        return {k: v for k, v in sorted(out.items()) if v}

    def total(self) -> int:
        return sum(self.c.values())

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for key in sorted(self.c, key=lambda k: (k[1], k[0], k[2])):
            v = self.c[key]
            t, q, s = key
            mons = []
            if q:
                mons.append("q" if q == 1 else f"q^{q}")
            if t:
                mons.append("t" if t == 1 else f"t^{t}")
            if s:
                mons.append("s" if s == 1 else f"s^{s}")
            mon = "*".join(mons)
            if not mon:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mon
            else:
                body = f"{abs(v)}*{mon}"
            parts.append(("-" if v < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        trunc = []
        if self.q_order is not None:
            trunc.append(f"q^{self.q_order + 1}")
        if self.s_order is not None:
            trunc.append(f"s^{self.s_order + 1}")
        if trunc:
            out += " + O(" + ", ".join(trunc) + ")"
        return out

    def __repr__(self):
        return f"BiPoly({self})"

    def to_records(self) -> list[dict]:
        out = []
        for (t, q, s), v in sorted(self.c.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
            rec = {"coh": t, "z": q, "dim": v}
            if s:
                rec["s"] = s
            out.append(rec)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_records(), sort_keys=True)


# -- generators and free series --------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    coh: int
    z: int
    s: int = 0

    @property
    def odd(self) -> bool:
        # parity of the total tensor degree
        return (self.coh + self.s) % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"


class GeneratorSpec(list):
    """List of :class:`Generator` records."""

    def __init__(self, gens: Iterable = ()):
        super().__init__(g if isinstance(g, Generator) else Generator(*g) for g in gens)

    def window(self, z_max: int | None = None, s_max: int | None = None) -> "GeneratorSpec":
        return GeneratorSpec(
            g for g in self if (z_max is None or g.z <= z_max) and (s_max is None or g.s <= s_max)
        )


def free_super_series(gens: Iterable, q_order: int | None = None, s_order: int | None = None) -> BiPoly:
    out = BiPoly.one()
    if q_order is not None or s_order is not None:
        out = BiPoly(out.c, q_order, s_order)
    for g in GeneratorSpec(gens):
        mono = BiPoly.monomial(g.coh, g.z, g.s)
        if g.odd:
            out = out * (BiPoly.one() + mono)
            continue
        bounded = (g.z > 0 and q_order is not None) or (g.s > 0 and s_order is not None)
        if not bounded:
            raise SeriesError(f"even generator {g} needs a finite q or s order")
        geo = {}
        j = 0
        while (q_order is None or j * g.z <= q_order) and (s_order is None or j * g.s <= s_order):
            geo[(j * g.coh, j * g.z, j * g.s)] = 1
            j += 1
            if (g.z == 0 or q_order is None) and (g.s == 0 or s_order is None):
                break
        out = out * BiPoly(geo, q_order, s_order)
    return out


def _as_list(x) -> list[int]:
    return list(x) if x is not None else []


def truncated_generators(twisted_exps: Mapping[int, Sequence[int]], g0_exps: Sequence[int], N: int, k: int,
                         relative: bool = False) -> GeneratorSpec:
    """Odd generators of the free factor in the cohomology of ``p / z^N p``."""
    gens = []
    if not relative:
        gens += [(2 * r + 1, 0) for r in g0_exps]
    for a in range(k):
        for m in twisted_exps.get(a, []):
            n = 0
            while n * k + a < N:
                j = n * k + a
                if j > 0:
                    gens.append((2 * m + 1, N * m + j))
                n += 1
    return GeneratorSpec(sorted(gens))


def predict_truncated(twisted_exps: Mapping[int, Sequence[int]], g0_exps: Sequence[int], N: int, k: int = 1,
                      relative: bool = False) -> BiPoly:
    """Poincare series of ``H*(p/z^N p)`` (or of the pair relative to g_0)."""
    if N <= 0 or N % k:
        raise SeriesError(f"N={N} must be a positive multiple of k={k}")
    coinv = coinvariant_series(twisted_exps.get(0, []), g0_exps)
    emb = BiPoly({(2 * j, N * j, 0): v for j, v in coinv.c.items()})
    return emb * free_super_series(truncated_generators(twisted_exps, g0_exps, N, k, relative))


def nilpotent_generators(twisted_exps: Mapping[int, Sequence[int]], N: int, k: int = 1,
                         relative: bool = False) -> GeneratorSpec:
    gens = []
    if not relative:
        gens += [(1, 0)] * len(twisted_exps.get(0, []))
    for a in range(k):
        for m in twisted_exps.get(a, []):
            n = 0
            while n * k + a <= N:
                j = n * k + a
                if j > 0:
                    gens.append((2 * m + 1, N * m + j))
                n += 1
    return GeneratorSpec(sorted(gens))


def predict_nilpotent(twisted_exps: Mapping[int, Sequence[int]], N: int, k: int = 1, relative: bool = False) -> BiPoly:
    if N <= 0 or N % k:
        raise SeriesError(f"N={N} must be a positive multiple of k={k}")
    return free_super_series(nilpotent_generators(twisted_exps, N, k, relative))


def predict_superpoly(twisted_exps: Mapping[int, Sequence[int]], g0_exps: Sequence[int], k: int = 1,
                      z_max: int = 0, relative: bool = False) -> GeneratorSpec:
    """Generators of ``H*(p-hat[s])`` up to z-degree ``z_max``.

    ``coh`` is the total degree; the Koszul degree of a generator is
    ``coh - s``.  Label ``-a`` uses the exponents of ``L_{-a}``.
    """
    gens = []
    if not relative:
        gens += [(2 * r + 1, 0, 0) for r in g0_exps]
    gens += [(r + 1, 0, r + 1) for r in g0_exps]
    for a in range(k):
        for m in twisted_exps.get((-a) % k, []):
            n = 1
            while k * n - a <= z_max:
                z = k * n - a
                gens.append((m + 1, z, m + 1))
                gens.append((m + 1, z, m))
                n += 1
    return GeneratorSpec(sorted(gens, key=lambda g: (g[1], g[2], g[0])))


def superpoly_window(gens: Iterable, s_max: int, z_max: int) -> dict[tuple[int, int, int], int]:
    """Dimensions of the free algebra on ``gens`` keyed (koszul degree, z, s)."""
    series = free_super_series(GeneratorSpec(gens).window(z_max, s_max), q_order=z_max, s_order=s_max)
    out: dict = {}
    for (t, q, s), v in series.c.items():
        out[(t - s, q, s)] = out.get((t - s, q, s), 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def euler_of_generators(gens: Iterable) -> LaurentQ:
    """``prod (1 - q^z)`` over odd generators, ``1/(1 - q^z)`` forbidden."""
    out = LaurentQ.one()
    for g in GeneratorSpec(gens):
        if not g.odd:
            raise SeriesError("Euler product needs odd generators only")
        out = out * (LaurentQ.one() + LaurentQ.monomial(g.z, (-1) ** g.coh))
    return out
