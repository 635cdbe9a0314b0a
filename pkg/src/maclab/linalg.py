"""Sparse exact linear algebra.

Vectors and matrix rows are dicts ``{column: value}`` with no stored zeros.
Values are ints, Fractions, or :class:`~maclab.fields.QZeta`.  Rank over Q
uses fraction-free integer elimination; other operations run over whichever
field the entries belong to.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .fields import QZeta

SparseVec = dict


def add_into(target: dict, vec: dict, scale=1):
    for c, v in vec.items():
        x = target.get(c, 0) + scale * v
        if x:
            target[c] = x
        else:
            target.pop(c, None)
    return target


def scaled(vec: dict, scale) -> dict:
    if not scale:
        return {}
    return {c: scale * v for c, v in vec.items()}


def _is_rational(rows) -> bool:
    for r in rows:
        for v in r.values():
            if isinstance(v, QZeta):
                return False
    return True


def _integral_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def rank(rows: Iterable[dict]) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if _is_rational(rows):
        return _rank_int([_integral_row(r) for r in rows])
    return len(_echelon_field(rows))


def _rank_int(rows: list[dict]) -> int:
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            a, b = r[c], p[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            # r <- ma*r - mb*p  kills column c
            new = {}
            for k, v in r.items():
                x = ma * v
                if x:
                    new[k] = x
            for k, v in p.items():
                x = new.get(k, 0) - mb * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g2 = 0
            for v in new.values():
                g2 = gcd(g2, v)
                if g2 == 1:
                    break
            if g2 > 1:
                new = {k: v // g2 for k, v in new.items()}
            r = new
    return len(pivots)


def _echelon_field(rows: list[dict]) -> dict[int, dict]:
    """Semi-reduced echelon form: pivot column -> row normalized to 1 there."""
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                inv = 1 / r[c] if not isinstance(r[c], int) else Fraction(1, r[c])
                pivots[c] = {k: v * inv for k, v in r.items()}
                break
            add_into(r, p, -r[c])
    return pivots


def rref(rows: Iterable[dict]) -> dict[int, dict]:
    """Fully reduced row echelon form, keyed by pivot column."""
    rows = [{k: (Fraction(v) if isinstance(v, int) else v) for k, v in r.items()} for r in rows if r]
    piv = _echelon_field(rows)
    cols = sorted(piv, reverse=True)
    for i, c in enumerate(cols):
        row = piv[c]
        for c2 in cols[i + 1:]:
            r2 = piv[c2]
            x = r2.get(c)
            if x:
                add_into(r2, row, -x)
    return piv


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of ``{v : M v = 0}`` where M has the given sparse rows."""
    piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    one = Fraction(1)
    for f in free:
        v = {f: one}
        for c, row in piv.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def transpose(rows: list[dict], ncols: int | None = None) -> list[dict]:
    if ncols is None:
        ncols = 1 + max((max(r) for r in rows if r), default=-1)
    cols = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for c, v in r.items():
            cols[c][i] = v
    return cols


def apply(columns: list[dict], vec: dict) -> dict:
    """Multiply a matrix stored by columns with a sparse vector."""
    out: dict = {}
    for c, v in vec.items():
        add_into(out, columns[c], v)
    return out


def solve(columns: list[dict], target: dict):
    """Find x with ``sum_c x_c * columns[c] == target`` or return None."""
    # augmented system: rows indexed by coordinate, extra column for target
    n = len(columns)
    rows: dict = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v
    for r, v in target.items():
        rows.setdefault(r, {})[n] = v
    piv = rref(list(rows.values()))
    if n in piv:
        return None
    x = {}
    for c, row in piv.items():
        val = row.get(n)
        if val:
            x[c] = val
    return x


def matrix_rank_dense(M) -> int:
    return rank([{j: v for j, v in enumerate(row) if v} for row in M])
