"""Command-line front end.

Every subcommand takes its descriptor as inline JSON or a path to a JSON
file and prints a text, JSON or (for ``satake``) DOT report.  Exit status is
0 when the computation ran (false verdicts included), 1 for bad input and 2
when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import cohdeg, dirsys, oracle, parabolic, roots, satake
from .errors import DepthTooSmall, InputError, InternalError, NotClassifiable, OracleMismatch


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _q(x) -> str:
    return str(Fraction(x))


def _vec(v) -> list:
    return [_q(a) for a in v]


def _load(arg: str):
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        if not os.path.exists(arg):
            raise InputError(f"{arg!r} is neither inline JSON nor an existing file")
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _form(data) -> roots.RealFormDescriptor:
    if not isinstance(data, dict) or "family" not in data:
        raise InputError("real form descriptor needs a 'family'")
    return roots.RealFormDescriptor(data["family"], data.get("field"),
                                    tuple(data.get("params") or ()))


def _system(arg, depth):
    data = _load(arg)
    if not isinstance(data, dict):
        raise InputError("system config must be a JSON object")
    return dirsys.DiagonalSystemDescriptor.from_dict(data, depth)


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _system_json(sys_: roots.WeightedRootSystem) -> dict:
    return {"type": sys_.type_label, "ambient_dim": sys_.ambient_dim, "rank": sys_.rank,
            "simples": [_vec(s) for s in sys_.simples],
            "positive_roots": [{"root": _vec(g), "mult": sys_.mult[g]}
                               for g in sys_.positive_roots]}


def _system_text(sys_: roots.WeightedRootSystem) -> list:
    lines = [f"type {sys_.type_label}, ambient dimension {sys_.ambient_dim}, rank {sys_.rank}",
             "positive roots (multiplicity):"]
    for g in sys_.positive_roots:
        lines.append(f"  {roots.format_vector(g)}  {sys_.mult[g]}")
    return lines


# ---------------------------------------------------------------------------
# Subcommands: each returns (json_report, text_lines)


def cmd_roots(args):
    desc = _form(_load(args.descriptor))
    s = roots.build_restricted_system(desc)
    r = roots.rho(s)
    table = roots.rho_prod_check(s)
    report = {"form": desc.label(), "system": _system_json(s), "rho": _vec(r),
              "rho_prod_check": [{"simple": _vec(t.simple), "lhs": _q(t.lhs), "rhs": _q(t.rhs),
                                  "equal": t.equal} for t in table]}
    lines = [desc.label()] + _system_text(s) + [f"rho = {roots.format_vector(r)}",
                                                "simple root | 2<rho,a>/<a,a> | mult(a)+2mult(2a) | equal"]
    for t in table:
        lines.append(f"  {roots.format_vector(t.simple)} | {t.lhs} | {t.rhs} | {t.equal}")
    return report, lines


def cmd_oracle(args):
    desc = _form(_load(args.descriptor))
    model = oracle.realize(desc, args.bound)
    got, want, diffs = oracle.compare_with_catalog(desc, args.bound)
    report = {"form": desc.label(), "real_dim": model.real_dim, "a_rank": model.rank,
              "m_dimension": model.m_dimension(), "a_maximal": model.a_is_maximal(),
              "oracle": _system_json(got), "catalog": _system_json(want), "differences": diffs}
    lines = [desc.label(), f"real dimension {model.real_dim}, split rank {model.rank}, "
             f"dim m = {report['m_dimension']}"] + _system_text(got)
    lines.append("catalog agrees" if not diffs else "differences:")
    lines += [f"  {d}" for d in diffs]
    if diffs:
        args._failure = OracleMismatch("; ".join(diffs))
    return report, lines


def cmd_satake(args):
    desc = _form(_load(args.descriptor))
    diag = satake.satake_of(desc)
    if args.delete:
        diag = satake.delete(diag, _ints(args.delete))
    classes = satake.restriction_classes(diag)
    comps = satake.parabolic_components(diag)
    report = {"form": desc.label(), "diagram": diag.to_dict(),
              "restriction_classes": [list(c) for c in classes],
              "parabolic_components": len(comps)}
    lines = [desc.label(), satake.format_text(diag),
             "restriction classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in classes),
             f"parabolic components up to isomorphism: {len(comps)}"]
    args._dot = satake.to_dot(diag)
    return report, lines


def cmd_parabolic(args):
    desc = _form(_load(args.descriptor))
    s = roots.build_restricted_system(desc)
    phi = _ints(args.phi) if args.phi else []
    sp = parabolic.split(s, phi)
    e = parabolic.embedding_from_split(s, phi)
    diag = satake.satake_of(desc)
    crit = parabolic.evaluate(e, parabolic.levi_diagram(diag, s.rank, sp.phi), diag)
    report = {"form": desc.label(), "phi": list(sp.phi), "levi_rank": sp.levi_rank,
              "m_phi_roots": [{"root": _vec(g), "mult": m} for g, m in sorted(sp.m_phi_roots.items())],
              "n_phi_roots": [{"root": _vec(g), "mult": m} for g, m in sorted(sp.n_phi_roots.items())],
              "rho_restriction": crit.rho_restriction, "centralizer": crit.centralizer,
              "parabolic_component": crit.parabolic_component, "hypothesis": crit.hypothesis}
    lines = [f"{desc.label()}, phi = {list(sp.phi)}",
             f"levi roots: {len(sp.m_phi_roots)}, nilradical roots: {len(sp.n_phi_roots)}",
             f"rho restriction: {crit.rho_restriction}", f"centralizer: {crit.centralizer}",
             f"parabolic component: {crit.parabolic_component}"]
    return report, lines


def cmd_dirsys(args):
    desc = _system(args.config, args.depth)
    levels = dirsys.Levels(desc)
    aligned = dirsys.iwasawa_aligned(desc)
    try:
        cofinal = list(dirsys.extract_cofinal_aligned(desc))
    except DepthTooSmall:
        cofinal = None
    cl = dirsys.is_classical_type(desc)
    wp = dirsys.is_weakly_parabolic(desc, levels, with_diagrams=args.diagrams)
    try:
        canon = dirsys.canonicalize(desc, levels)
    except NotClassifiable as exc:
        canon, why = None, str(exc)
    fibers = []
    for n in range(desc.depth if wp.holds else 0):
        f = dirsys.restriction_fiber_count(desc, n, levels)
        fibers.append("inf" if f == math.inf else f)
    report = {
        "dims": [list(d) for d in desc.dims], "mu": [desc.mu(n) for n in range(desc.depth + 1)],
        "aligned": aligned, "cofinal_aligned": cofinal,
        "classical_type": cl.holds, "classical_threshold": cl.threshold,
        "weakly_parabolic": wp.holds, "first_failure": wp.first_failure,
        "certificates": [{"step": c.step, "vacuous": c.vacuous, "hypothesis": c.hypothesis,
                          "rho_restriction": c.rho_restriction, "centralizer": c.centralizer,
                          "parabolic_component": c.parabolic_component} for c in wp.certificates],
        "fiber_counts": fibers,
        "canonical": _canon_json(canon),
    }
    lines = [f"dims: {' '.join(str(list(d)) for d in desc.dims)}",
             f"aligned: {aligned}", f"cofinal aligned indices: {cofinal}",
             f"classical type: {cl.holds} (threshold {cl.threshold})",
             f"weakly parabolic: {wp.holds}"]
    if wp.first_failure is not None:
        lines.append(f"  first failing step: {wp.first_failure}")
    lines.append(f"canonical form: {canon.label() if canon else 'none (' + why + ')'}")
    return report, lines


def _canon_json(c):
    if c is None:
        return None
    return {"case": c.family_case, "delta_variant": c.delta_variant,
            "base_params": list(c.base_params), "family": c.family, "field": c.field,
            "notes": list(c.notes), "descriptor": c.to_descriptor().to_dict()}


def cmd_classify(args):
    desc = _system(args.config, args.depth)
    c = dirsys.canonicalize(desc)
    return _canon_json(c), [c.label()] + [f"note: {n}" for n in c.notes]


def cmd_cohdeg(args):
    desc = _system(args.config, args.depth)
    w = _load(args.weight)
    if not isinstance(w, dict):
        raise InputError("weight must be a JSON object with 'coords'")
    nu = cohdeg.WeightSpec.from_dict(w)
    rep = cohdeg.finiteness_verdict(nu, desc)
    report = {"verdict": rep.verdict, "q": rep.q, "threshold": rep.threshold,
              "notes": rep.notes,
              "levels": [{"level": r.level, "singular": r.singular,
                          "annihilating_root": _vec(r.annihilating_root) if r.singular else None,
                          "q": r.q, "length": r.length, "word": list(r.word),
                          "nu": _vec(r.nu), "nu_tilde": _vec(r.nu_tilde)} for r in rep.levels]}
    lines = [f"verdict: {rep.verdict} (q = {rep.q}, threshold {rep.threshold})"]
    for r in rep.levels:
        flag = " singular" if r.singular else ""
        lines.append(f"  level {r.level}: q = {r.q}{flag}, nu~ = {roots.format_vector(r.nu_tilde)}")
    return report, lines


def cmd_lp(args):
    desc = _system(args.config, args.depth)
    p = math.inf if args.p.lower() in ("inf", "infinity") else Fraction(args.p)
    sigma = _load(args.sigma) if args.sigma.lstrip().startswith("[") else args.sigma.split(",")
    try:
        sigma = [Fraction(str(x)) for x in sigma]
    except ValueError as exc:
        raise InputError(f"bad sigma: {exc}") from exc
    v = dirsys.lp_parameter_check(desc, p, sigma, args.level)
    report = {"accepted": v.accepted, "sigma_matches": v.sigma_matches,
              "rho_restricts": v.rho_restricts, "rho_levels": [_vec(r) for r in v.rho_levels]}
    lines = [f"accepted: {v.accepted}", f"sigma = (2/p) rho: {v.sigma_matches}",
             f"rho restricts at every level: {v.rho_restricts}"]
    return report, lines


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="limroot", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json", "dot"), default="text")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, helptext, system=False):
        p = sub.add_parser(name, help=helptext)
        if system:
            p.add_argument("config")
            p.add_argument("--depth", type=int, default=None)
        else:
            p.add_argument("descriptor")
        p.set_defaults(func=fn)
        return p

    add("roots", cmd_roots, "restricted root system, rho and the rho-product table")
    p = add("oracle", cmd_oracle, "compare the catalog with the matrix model")
    p.add_argument("--bound", type=int, default=None)
    p = add("satake", cmd_satake, "Satake diagram, optionally after deletions")
    p.add_argument("--delete", default="")
    p.add_argument("--dot", action="store_true")
    p = add("parabolic", cmd_parabolic, "parabolic split and the three criteria")
    p.add_argument("--phi", default="")
    p = add("dirsys", cmd_dirsys, "verdicts for a direct system", system=True)
    p.add_argument("--diagrams", action="store_true", help="also run the diagram criterion")
    add("classify", cmd_classify, "canonical form of a direct system", system=True)
    p = add("cohdeg", cmd_cohdeg, "degree sequence of a weight", system=True)
    p.add_argument("--weight", required=True)
    p = add("lp", cmd_lp, "L_p parameter check", system=True)
    p.add_argument("--p", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--level", type=int, default=0)
    return ap


def _default(o):
    if isinstance(o, Fraction):
        return _q(o)
    raise TypeError(type(o).__name__)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        fmt = "dot" if getattr(args, "dot", False) else args.format
        if fmt == "dot" and args.command != "satake":
            raise InputError("dot output is only available for satake")
        args._failure = None
        report, lines = args.func(args)
        if fmt == "json":
            out.write(json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n")
        elif fmt == "dot":
            out.write(args._dot)
        else:
            out.write("\n".join(lines) + "\n")
        if args._failure is not None:
            raise args._failure
        return 0
    except InputError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except InternalError as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 2


def main():
    sys.exit(run())
