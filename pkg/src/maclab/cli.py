"""Batch command line: ``maclab <command> TYPE [AUTO] [options]``.

Exit status is 0 when every requested comparison matches, 1 on a mismatch,
2 on invalid input and 3 when a configured cap is exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cohomology as coh
from . import constterm as ct
from . import qseries as qs
from .chevalley import (
    ChevalleyError,
    EigenData,
    UnsupportedFeature,
    build_chevalley,
    invariant_trace_power,
    twisted_exponents,
)
from .folding import FoldingError, format_cycles
from .graded import (
    GradedLieError,
    build_deformed,
    build_iwahori_nilpotent_quotient,
    build_truncated,
)
from .rootdata import (
    DEFAULT_WEYL_CAP,
    CartanType,
    RootDataError,
    WeylOrderCapError,
    build_root_system,
    exponents,
    subsystem_exponents,
    weyl_order,
)


class UsageError(ValueError):
    pass


def _fmt_list(xs) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


def _eigen(type_str: str, auto: str) -> EigenData:
    t = CartanType.parse(type_str)
    alg = build_chevalley(t).lift_automorphism(auto or "id")
    return EigenData(alg)


def _parabolic(args, ed: EigenData):
    if getattr(args, "iwahori", False) or getattr(args, "iwahori_nil", False):
        return frozenset()
    if args.parabolic is not None:
        text = args.parabolic.strip().strip("{}")
        if not text:
            return frozenset()
        try:
            S = frozenset(int(x) - 1 for x in text.replace(" ", ",").split(",") if x)
        except ValueError:
            raise UsageError(f"cannot parse parabolic subset {args.parabolic!r}") from None
        if any(not 0 <= J < ed.l0 for J in S):
            raise UsageError(f"parabolic subset {args.parabolic!r} outside 1..{ed.l0}")
        return S
    return frozenset(range(ed.l0))


def _g0_exponents(ed: EigenData, S) -> list[int]:
    return subsystem_exponents(ed.folded.folded_cartan, sorted(S))


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- commands ----------------------------------------------------------------------


def cmd_fold(args) -> int:
    ed = _eigen(args.type, args.auto)
    ex = twisted_exponents(ed)
    fd = ed.folded
    dims = [s.dim for s in ed.eigenspaces()]
    exps = ", ".join(f"a{a}={_fmt_list(ex[a])}" for a in range(ed.k))
    orbits = [[i + 1 for i in o] for o in fd.orbits]
    head = f"exps {_fmt_list(ex[0])}" if ed.k == 1 else f"exps: {exps}"
    lines = [
        f"L_0: {fd.folded_type}; {head}",
        f"orbits: {' '.join('{' + ','.join(map(str, o)) + '}' for o in orbits)}",
        f"eigenspace dims: {_fmt_list(dims)}",
    ]
    _emit(args, "\n".join(lines), {
        "type": str(ed.alg.cartan_type),
        "automorphism": format_cycles(ed.alg.automorphism.perm),
        "folded_type": str(fd.folded_type),
        "orbits": orbits,
        "eigenspace_dims": dims,
        "twisted_exponents": {str(a): ex[a] for a in range(ed.k)},
    })
    return 0


def cmd_exponents(args) -> int:
    rs = build_root_system(args.type)
    ex = exponents(rs)
    prod = 1
    for m in ex:
        prod *= m + 1
    try:
        order = weyl_order(rs, cap=args.cap_weyl, method="enumerate" if args.enumerate else "orbit")
        note = ""
    except WeylOrderCapError as e:
        order, note = None, str(e)
    ok = order is None or order == prod
    text = f"{rs.cartan_type}: exponents {_fmt_list(ex)}; positive roots {len(rs.positive_roots)}; "
    text += f"|W| = {order}" if order is not None else f"|W| not enumerated ({note})"
    text += f"; prod(m_i+1) = {prod}"
    _emit(args, text, {"type": str(rs.cartan_type), "exponents": ex, "weyl_order": order,
                       "product": prod, "consistent": ok})
    return 0 if ok else 1


def _build_algebra(args, ed: EigenData):
    S = _parabolic(args, ed)
    if args.iwahori_nil:
        return build_iwahori_nilpotent_quotient(ed, args.N), S
    if args.t is not None:
        return build_deformed(ed, S, args.N, _parse_scalar(args.t)), S
    return build_truncated(ed, S, args.N), S


def _parse_scalar(text: str):
    from fractions import Fraction

    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"cannot parse scalar {text!r}") from None


def _prediction(args, ed: EigenData, S, relative: bool):
    ex = twisted_exponents(ed)
    if args.iwahori_nil:
        if args.t not in (None, "0"):
            return None
        return qs.predict_nilpotent(ex, args.N, ed.k, relative)
    g0 = _g0_exponents(ed, S)
    if args.t is None or _parse_scalar(args.t) == 0:
        return qs.predict_truncated(ex, g0, args.N, ed.k, relative)
    return None


def _deformed_prediction(ed: EigenData, N: int) -> dict[int, int]:
    # nonzero t: the quotient is a sum of N/k copies of L
    ex = twisted_exponents(ed)
    allexp = sorted(m for a in ex for m in ex[a])
    one = qs.free_super_series([(2 * m + 1, 0) for m in allexp])
    out = qs.BiPoly.one()
    for _ in range(N // ed.k):
        out = out * one
    return out.forget_q()


def cmd_cohomology(args) -> int:
    ed = _eigen(args.type, args.auto)
    g, S = _build_algebra(args, ed)
    cx = coh.build_complex(g, relative=args.relative, slice_cap=args.cap_slice)
    table = coh.cohomology_dims(cx)
    payload = {"algebra": g.descriptor, "dim": g.dim, "relative": args.relative, "table": table.to_records()}
    lines = [f"{g.descriptor} (dim {g.dim}){' relative to g_0' if args.relative else ''}", f"H* = {table}"]
    status = 0
    if args.compare:
        deformed = args.t is not None and _parse_scalar(args.t) != 0
        if deformed and not args.iwahori_nil and not args.relative and S == frozenset(range(ed.l0)):
            want = _deformed_prediction(ed, args.N)
            got = table.forget_z()
            match = want == got
            lines.append(f"{'MATCH' if match else 'MISMATCH'} against H*(L)^(N/k) ignoring z: {want}")
            payload["prediction"] = {str(k): v for k, v in want.items()}
        else:
            pred = _prediction(args, ed, S, args.relative)
            if pred is None:
                raise UsageError("no prediction available for this configuration")
            match = pred == table.to_bipoly()
            lines.append(f"{'MATCH' if match else 'MISMATCH'} against {pred}")
            payload["prediction"] = pred.to_records()
        payload["match"] = match
        status = 0 if match else 1
    _emit(args, "\n".join(lines), payload)
    return status


def cmd_superpoly(args) -> int:
    ed = _eigen(args.type, args.auto)
    S = _parabolic(args, ed)
    D = args.z_max
    N = args.N if args.N is not None else (D // ed.k + 1) * ed.k
    g = build_truncated(ed, S, N)
    table = coh.superpoly_slice_dims(g, args.sym_deg, D, relative=not args.absolute)
    payload = {"algebra": g.descriptor, "sym_degree": args.sym_deg, "z_max": D, "table": table.to_records()}
    lines = [f"{g.descriptor}: H^c(p, g_0; S^{args.sym_deg}) for z <= {D}"]
    lines += [f"  coh={c} z={z} s={s}: {v}" for (c, z, s), v in sorted(table.entries.items())]
    status = 0
    if args.compare:
        ex = twisted_exponents(ed)
        gens = qs.predict_superpoly(ex, _g0_exponents(ed, S), ed.k, z_max=D, relative=not args.absolute)
        window = qs.superpoly_window(gens, args.sym_deg, D)
        want = {key: v for key, v in window.items() if key[2] == args.sym_deg}
        match = want == table.nonzero()
        lines.append(f"{'MATCH' if match else 'MISMATCH'} against generator window {want}")
        payload["match"] = match
        status = 0 if match else 1
    _emit(args, "\n".join(lines), payload)
    return status


def cmd_constant_term(args) -> int:
    if args.finite:
        rs = build_root_system(args.type)
        lhs = ct.finite_macdonald_lhs(rs, args.N, cap=args.cap_product)
        rhs = ct.finite_macdonald_rhs(rs, args.N)
        equal = lhs == rhs
        text = f"{rs.cartan_type} finite, N={args.N}: lhs = {lhs}; rhs = {rhs}; {'equal' if equal else 'NOT equal'}"
        _emit(args, text, {"lhs": str(lhs), "rhs_binomial": str(rhs), "equal": equal})
        return 0 if equal else 1
    ed = _eigen(args.type, args.auto)
    s = ct.build_SN(ed, args.N)
    lhs = ct.lhs_constant_term(s, cap=args.cap_product)
    rt = ct.rhs_theorem_form(s)
    rb = ct.rhs_binomial_form(twisted_exponents(ed), args.N, ed.k)
    equal = lhs == rt and lhs == rb
    text = (f"{ed.alg.cartan_type} / {format_cycles(ed.alg.automorphism.perm)} / N={args.N}: "
            f"lhs = {lhs}; rhs_theorem = {rt}; rhs_binomial = {rb}; {'equal' if equal else 'NOT equal'}")
    _emit(args, text, {"lhs": str(lhs), "rhs_theorem": str(rt), "rhs_binomial": str(rb), "equal": equal})
    return 0 if equal else 1


def cmd_predict(args) -> int:
    ed = _eigen(args.type, args.auto)
    S = _parabolic(args, ed)
    ex = twisted_exponents(ed)
    if args.iwahori_nil:
        series = qs.predict_nilpotent(ex, args.N, ed.k, args.relative)
        gens = qs.nilpotent_generators(ex, args.N, ed.k, args.relative)
    else:
        g0 = _g0_exponents(ed, S)
        series = qs.predict_truncated(ex, g0, args.N, ed.k, args.relative)
        gens = qs.truncated_generators(ex, g0, args.N, ed.k, args.relative)
    gen_text = ", ".join(f"({g.coh},{g.z})" for g in gens)
    _emit(args, f"P(t,q) = {series}\ngenerators (coh, z): {gen_text}",
          {"series": series.to_records(), "generators": [[g.coh, g.z] for g in gens]})
    return 0


def cmd_cocycle(args) -> int:
    ed = _eigen(args.type, args.auto)
    S = _parabolic(args, ed)
    g = build_truncated(ed, S, args.N)
    form = invariant_trace_power(ed.alg, args.sym_deg)
    phi = coh.coefficient_cochain(g, form, args.z_exp)
    closed0 = coh.is_cocycle(coh.build_complex(g, args.sym_deg), phi)
    omega = coh.j_twisted_cocycle(g, phi, args.J)
    closed1 = coh.is_cocycle(coh.build_complex(g, args.sym_deg - 1), omega)
    ok = closed0 and closed1
    text = (f"{g.descriptor}: [z^{args.z_exp}] trace^{args.sym_deg} has {len(phi.coeffs)} terms, "
            f"closed={closed0}; J={args.J} 1-cochain has {len(omega.coeffs)} terms, closed={closed1}")
    _emit(args, text, {"algebra": g.descriptor, "phi_terms": len(phi.coeffs), "phi_closed": closed0,
                       "omega_terms": len(omega.coeffs), "omega_closed": closed1})
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, auto: bool = True):
    p.add_argument("type_pos", nargs="?", metavar="TYPE", help="Cartan type, e.g. A2, D4, E6")
    if auto:
        p.add_argument("auto_pos", nargs="?", metavar="AUTO", help="automorphism in cycle notation or 'id'")
        p.add_argument("--auto", dest="auto_opt", help="automorphism (alternative to AUTO)")
    p.add_argument("--type", dest="type_opt", help="Cartan type (alternative to TYPE)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _algebra_opts(p: argparse.ArgumentParser):
    p.add_argument("--N", type=int, required=True, help="truncation level (multiple of k)")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--full", action="store_true", help="parabolic p_0 = L_0 (default)")
    grp.add_argument("--iwahori", action="store_true", help="parabolic p_0 = Borel")
    grp.add_argument("--iwahori-nil", action="store_true", help="use b / z^N n")
    grp.add_argument("--parabolic", help="1-based orbit indices of the parabolic subset, e.g. '1,2' or ''")
    p.add_argument("--relative", action="store_true", help="cohomology relative to g_0")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maclab", description="Truncated loop-algebra cohomology and constant terms.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", help="folded type, eigenspaces and twisted exponents")
    _common(p)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("exponents", help="exponents and Weyl group order")
    _common(p, auto=False)
    p.add_argument("--enumerate", action="store_true", help="list W element by element instead of the orbit chain")
    p.add_argument("--cap-weyl", type=int, default=DEFAULT_WEYL_CAP, help="cap for --enumerate")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("cohomology", help="brute-force cohomology of a truncated algebra")
    _common(p)
    _algebra_opts(p)
    p.add_argument("--t", help="deformation parameter: use p/(z^N - t)p")
    p.add_argument("--compare", action="store_true", help="compare with the predicted series")
    p.add_argument("--cap-slice", type=int, default=coh.DEFAULT_SLICE_CAP)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("superpoly-slice", help="relative cohomology with S^p coefficients")
    _common(p)
    p.add_argument("--sym-deg", type=int, required=True)
    p.add_argument("--z-max", type=int, required=True)
    p.add_argument("--N", type=int, help="truncation level (> z-max); default smallest valid")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--full", action="store_true")
    grp.add_argument("--iwahori", action="store_true")
    grp.add_argument("--parabolic")
    p.add_argument("--absolute", action="store_true", help="do not pass to g_0-relative cochains")
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=cmd_superpoly, iwahori_nil=False)

    for name in ("constant-term", "ct"):
        p = sub.add_parser(name, help="affine (or finite) constant-term identity")
        _common(p)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--finite", action="store_true", help="finite Macdonald identity for TYPE")
        p.add_argument("--cap-product", type=int, default=ct.DEFAULT_PRODUCT_CAP)
        p.set_defaults(func=cmd_constant_term)

    p = sub.add_parser("predict", help="predicted Poincare series")
    _common(p)
    _algebra_opts(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("cocycle-check", help="closedness of explicit cocycles (type A)")
    _common(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--sym-deg", type=int, default=2, help="degree of the trace power")
    p.add_argument("--z-exp", type=int, default=1, help="z-exponent of the coefficient")
    p.add_argument("--J", default="type_d", choices=["type_d", "z", "zero"])
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--full", action="store_true")
    grp.add_argument("--iwahori", action="store_true")
    grp.add_argument("--parabolic")
    p.set_defaults(func=cmd_cocycle, iwahori_nil=False)
    return ap


def _resolve(args):
    t = args.type_opt or args.type_pos
    if not t:
        raise UsageError("a Cartan type is required")
    args.type = t
    if hasattr(args, "auto_pos"):
        args.auto = args.auto_opt or args.auto_pos or "id"
    if not hasattr(args, "parabolic"):
        args.parabolic = None
    for flag in ("iwahori", "iwahori_nil", "relative", "absolute"):
        if not hasattr(args, flag):
            setattr(args, flag, False)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _resolve(args)
        return args.func(args)
    except (WeylOrderCapError, coh.SliceCapError, ct.ProductCapError) as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except (UsageError, RootDataError, FoldingError, GradedLieError, qs.SeriesError, coh.ComplexError,
            ct.ConstantTermError, ChevalleyError, UnsupportedFeature) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
