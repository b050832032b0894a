"""Command line interface: ``hmf <subcommand> [flags]``.

Every subcommand produces a RunReport.  ``--format structured`` prints it as
one JSON object; ``--format text`` prints the same content line by line.
Exit codes: 0 success, 1 domain error, 2 parse error or unknown command.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from . import characters, dictionary, local_reps, lseries
from .errors import HMFError, ParseError, UnknownCommand
from .field import build_field, quadratic_field
from .hmf1 import load_hmf1
from .ideals import FractionalIdeal
from .narrow import brute_force_h_plus, narrow_class_data

COMMANDS = ("field-info", "narrow-class", "gauss-sum", "classify", "critical-points", "attach",
            "galois-check", "lvalue", "euler-check", "zeta-check", "coh-constants")


@dataclass
class RunReport:
    command: list
    results: dict = dc_field(default_factory=dict)
    warnings: list = dc_field(default_factory=list)
    status: int = 0
    error: dict = None

    def record(self):
        out = {"command": self.command, "status": self.status, "results": self.results,
               "warnings": self.warnings}
        if self.error:
            out["error"] = self.error
        return out


# -- number formatting -------------------------------------------------------------


def _digits(prec):
    return max(5, int(prec * 0.30103) - 2)


def fmt_num(x, radius=None, prec=128):
    """Canonical decimal with an explicit error radius."""
    d = _digits(prec)
    x = mpmath.mpmathify(x)
    if isinstance(x, mpmath.mpc):
        re, im = mpmath.nstr(x.real, d), mpmath.nstr(abs(x.imag), d)
        val = f"{re} {'-' if x.imag < 0 else '+'} {im}*i"
    else:
        val = mpmath.nstr(x, d)
    out = {"value": val}
    out["radius"] = mpmath.nstr(mpmath.mpf(radius), 3) if radius is not None else "0"
    return out


def fmt_exact(x):
    if hasattr(x, "to_str"):
        return x.to_str()
    return str(x)


def _vec(s):
    return [Fraction(t) for t in s.split(",")]


def _ivec(s):
    v = _vec(s)
    if any(x.denominator != 1 for x in v):
        raise ParseError(f"expected integers in {s!r}")
    return [int(x) for x in v]


def _field_from_args(args):
    if getattr(args, "in_path", None):
        return load_hmf1(args.in_path).field
    if args.poly:
        return build_field(_ivec(args.poly))
    if args.d:
        return quadratic_field(args.d)
    raise ParseError("give --in, --poly or --d")


# -- subcommands --------------------------------------------------------------------


def cmd_field_info(args, rep):
    F = _field_from_args(args)
    emb = F.embeddings(args.prec)
    rep.results = {
        "degree": F.degree,
        "polynomial": ",".join(str(c) for c in F.poly),
        "discriminant": F.discriminant,
        "integral_basis": [",".join(str(c) for c in row) for row in F._basis],
        "embeddings": [fmt_num(e, mpmath.mpf(2) ** -args.prec, args.prec) for e in emb],
        "different_norm": int(F.different.norm()),
    }


def cmd_narrow_class(args, rep):
    F = _field_from_args(args)
    nc = narrow_class_data(F)
    res = {"h_plus": nc.h_plus, "h": nc.h, "invariants": list(nc.group.invariants),
           "representatives": [" ".join(",".join(map(str, r)) for r in I.hnf)
                               for I in nc.representatives]}
    if F.degree == 2:
        res["fundamental_unit"] = ",".join(str(c) for c in nc.fundamental_unit.coords)
        res["unit_norm_minus_one"] = bool(nc.unit_norm_minus_one)
        res["h_plus_exact_sequence"] = nc.exact_sequence_h_plus()
        res["h_plus_brute_force"] = brute_force_h_plus(F, args.bound or 100)
    rep.results = res


def _character_from_args(args):
    if args.in_path:
        return load_hmf1(args.in_path).character
    F = _field_from_args(args) if (args.poly or args.d) else build_field([0, 1])
    if not args.modulus:
        raise ParseError("give --in or --modulus")
    rows = [_ivec(t) for t in args.modulus.split()]
    I = FractionalIdeal.from_int_rows(F, rows)
    gens = [F.element(_vec(g)) for g in (args.gen or [])]
    angles = [Fraction(a) for a in (args.angle or [])]
    if len(gens) != len(angles):
        raise ParseError("--gen and --angle must be given in pairs")
    omega = characters.ResidueCharacter.from_generator_values(I, gens, angles) if gens \
        else characters.ResidueCharacter.trivial(I)
    return characters.adelize(omega, args.index)


def cmd_gauss_sum(args, rep):
    chi = _character_from_args(args)
    G = characters.gauss_sum(chi, args.prec)
    c = characters.conductor(chi.residue)
    with mpmath.workprec(args.prec + 16):
        mod2 = abs(G.value) ** 2
    rep.results = {
        "gauss_sum": fmt_num(G.value, G.radius, args.prec),
        "abs_squared": fmt_num(mod2, 3 * G.radius * (abs(G.value) + 1), args.prec),
        "conductor_norm": int(c.norm()),
        "signature": list(characters.signature(chi)),
        "primitive": c == chi.modulus,
    }


def _weights_or_form(args):
    if args.in_path:
        return load_hmf1(args.in_path).form
    if args.weight:
        return tuple(_ivec(args.weight))
    raise ParseError("give --in or --weight")


def cmd_classify(args, rep):
    f = _weights_or_form(args)
    r = dictionary.classify(f)
    rep.results = {"classification": r["algebraic_class"], "algebraic": r["algebraic"],
                   "half_twist_algebraic": r["half_twist_algebraic"], "regular": r["regular"],
                   "infinity_type": r["infinity_type"]}


def cmd_critical_points(args, rep):
    f = _weights_or_form(args)
    cs = lseries.critical_points(f)
    rep.results = {"classical": cs.classical, "cohomological": [str(m) for m in cs.cohomological],
                   "shift": str(cs.shift)}
    if not cs.classical:
        rep.warnings.append("empty critical set: some weight equals 1")


def cmd_attach(args, rep):
    doc = load_hmf1(args.in_path)
    f = doc.form
    pi = dictionary.attach_representation(f)
    local = {}
    for pk, L in pi.local.items():
        label = f.label_of(((pk, 1),))
        if isinstance(L, local_reps.UnramifiedPS):
            local[label] = {"type": "unramified", "trace": fmt_exact(L.trace), "det": fmt_exact(L.det)}
        else:
            local[label] = {"type": "ramified (conductor exponent only)",
                            "conductor_exponent": L.conductor_exponent}
    rep.results = {"k0": f.k0, "archimedean": [f"D_{a.l}" for a in pi.arch],
                   "conductor_norm": int(f.level.norm()), "local": local}
    if any(not isinstance(L, local_reps.UnramifiedPS) for L in pi.local.values()):
        rep.warnings.append("local types at primes dividing the level are placeholders")


def cmd_galois_check(args, rep):
    doc = load_hmf1(args.in_path)
    f = doc.form
    K = f.coeff_field
    sigma = K.automorphism(_vec(args.sigma)) if args.sigma else K.identity()
    r = dictionary.equivariance_check(f, sigma, args.bound or f.bound)
    rf = dictionary.rationality_field(f, args.bound or f.bound)
    rep.results = {"ok": r.ok, "checked": r.checked, "failures": r.failures,
                   "rationality_field_degree": rf["degree"]}
    if rf["caveat"]:
        rep.warnings.append("coefficients up to the bound generate a proper subfield")
    if not r.ok:
        rep.status = 1


def cmd_lvalue(args, rep):
    doc = load_hmf1(args.in_path)
    f = doc.form
    B = args.bound or f.bound
    if args.critical is not None:
        period = mpmath.mpmathify(args.period) if args.period else 1
        cv = lseries.normalized_critical_value(f, doc.character if args.twist else
                                               characters.adelize(characters.ResidueCharacter.trivial(
                                                   FractionalIdeal.unit(f.field))),
                                               Fraction(args.critical), period, B, args.prec)
        res = {"m_prime": str(cv.m_prime), "s": str(cv.s_classical), "out_of_reach": cv.out_of_reach,
               "d_inf": cv.d_inf, "exponent": cv.exponent, "signature": list(cv.signature)}
        if not cv.out_of_reach:
            res["L"] = fmt_num(cv.value, cv.tail + cv.radius, args.prec)
            res["ratio"] = fmt_num(cv.ratio, cv.ratio_radius, args.prec)
        rep.results = res
        rep.warnings.extend(cv.warnings)
        return
    series = lseries.coefficients_from_euler(f, B, args.normalization)
    s = mpmath.mpmathify(args.s) if args.s else mpmath.mpf(f.k0)
    L = lseries.evaluate_finite_L(series, s, prec=args.prec)
    rep.results = {"s": str(args.s or f.k0), "normalization": series.normalization, "bound": B,
                   "L": fmt_num(L.value, L.error, args.prec),
                   "tail": mpmath.nstr(L.tail, 5), "rounding": mpmath.nstr(L.radius, 3)}


def cmd_euler_check(args, rep):
    doc = load_hmf1(args.in_path)
    f = doc.form
    B = args.bound or f.bound
    series = lseries.coefficients_from_euler(f, B)
    mismatches = []
    compared = 0
    for key, v in f.coeffs.items():
        if key in series.coeffs:
            compared += 1
            if series.coeffs[key] != v:
                mismatches.append(f.label_of(key))
    rep.results = {"bound": B, "compared": compared, "generated": len(series.coeffs),
                   "mismatches": mismatches}
    if mismatches:
        rep.status = 1


def _rep_from_args(args):
    t = args.type
    if t == "unramified":
        return local_reps.UnramifiedPS(args.q, alpha=Fraction(args.alpha), beta=Fraction(args.beta))
    if t == "ramified-ps":
        return local_reps.RamifiedPSOneUnramified(args.q, Fraction(args.chi), args.conductor or 1)
    if t == "steinberg":
        return local_reps.SteinbergUnramifiedTwist(args.q, Fraction(args.chi))
    if t == "other":
        return local_reps.DepthlessOther(args.q, args.conductor or 2)
    raise ParseError(f"unknown representation type {t!r}")


def cmd_zeta_check(args, rep):
    r = _rep_from_args(args)
    M = args.order
    ok = local_reps.zeta_identity_holds(r, M)
    rep.results = {"type": args.type, "q": args.q, "order": M, "holds": ok,
                   "L_polynomial": local_reps.TruncatedSeries(
                       list(local_reps.local_L_polynomial(r).poly), 2).to_str().rsplit(" + O", 1)[0],
                   "message": f"identity holds to order {M}" if ok else f"identity fails below order {M}"}
    if not ok:
        rep.status = 1


def cmd_coh_constants(args, rep):
    k = tuple(_ivec(args.weight))
    mu = dictionary.cohomological_weight(k, twisted=args.twisted)
    c = dictionary.archimedean_constants(mu)
    rep.results = {"mu": [list(p) for p in mu.pairs], "w": mu.w, "d_inf": c["d_inf"], "c": c["c"]}


HANDLERS = {
    "field-info": cmd_field_info, "narrow-class": cmd_narrow_class, "gauss-sum": cmd_gauss_sum,
    "classify": cmd_classify, "critical-points": cmd_critical_points, "attach": cmd_attach,
    "galois-check": cmd_galois_check, "lvalue": cmd_lvalue, "euler-check": cmd_euler_check,
    "zeta-check": cmd_zeta_check, "coh-constants": cmd_coh_constants,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    default_prec = int(os.environ.get("HMF_PREC", 128))
    p = _Parser(prog="hmf", description="Arithmetic of Hilbert modular forms and their L-functions.")
    p.add_argument("command")
    p.add_argument("--in", dest="in_path")
    p.add_argument("--prec", type=int, default=default_prec)
    p.add_argument("--bound", type=int)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--poly")
    p.add_argument("--d", type=int)
    p.add_argument("--modulus")
    p.add_argument("--gen", action="append")
    p.add_argument("--angle", action="append")
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--weight")
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--sigma")
    p.add_argument("--s")
    p.add_argument("--normalization", choices=("classical", "unitary"))
    p.add_argument("--critical")
    p.add_argument("--period")
    p.add_argument("--twist", action="store_true")
    p.add_argument("--type")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--chi", default="1")
    p.add_argument("--q", type=int)
    p.add_argument("--conductor", type=int)
    p.add_argument("--order", type=int, default=30)
    return p


def run_command(argv):
    rep = RunReport(command=list(argv))
    try:
        args = build_parser().parse_args(argv)
        if args.command not in HANDLERS:
            raise UnknownCommand(f"unknown command {args.command!r}")
        if args.prec < 16:
            raise ParseError("--prec must be at least 16 bits")
        rep.prec = args.prec
        HANDLERS[args.command](args, rep)
    except HMFError as e:
        rep.status = e.exit_code
        rep.error = {"type": type(e).__name__, "message": str(e)}
    except (ValueError, ZeroDivisionError) as e:
        rep.status = 2
        rep.error = {"type": "ParseError", "message": str(e)}
    return rep


def _is_scalar(v):
    if isinstance(v, dict):
        return set(v) == {"value", "radius"} or not v
    if isinstance(v, list):
        return all(_is_scalar(x) and not isinstance(x, dict) or _is_num(x) for x in v)
    return True


def _is_num(v):
    return isinstance(v, dict) and set(v) == {"value", "radius"}


def _text_lines(obj, indent=""):
    out = []
    items = obj.items() if isinstance(obj, dict) else (("-", v) for v in obj)
    for k, v in items:
        head = f"{indent}{k}" if k == "-" else f"{indent}{k}:"
        if _is_scalar(v):
            out.append(f"{head} {_text_scalar(v)}")
        else:
            out.append(head)
            out += _text_lines(v, indent + "  ")
    return out


def _text_scalar(v):
    if isinstance(v, dict) and set(v) == {"value", "radius"}:
        return f"{v['value']} +/- {v['radius']}"
    if isinstance(v, list):
        return "[" + ", ".join(_text_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit_report(report, fmt="text", stream=None):
    stream = stream or sys.stdout
    rec = report.record()
    if fmt == "structured":
        stream.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return
    lines = [f"command: {' '.join(report.command)}", f"status: {report.status}"]
    if report.error:
        lines.append(f"error: {report.error['type']}: {report.error['message']}")
    lines += _text_lines(report.results)
    for w in report.warnings:
        lines.append(f"warning: {w}")
    stream.write("\n".join(lines) + "\n")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    fmt = "text"
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv) and argv[i + 1] in ("text", "structured"):
            fmt = argv[i + 1]
    rep = run_command(argv)
    emit_report(rep, fmt)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
