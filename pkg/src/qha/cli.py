"""``qha`` command-line interface.

Every subcommand prints a human-readable report followed by ``RESULT:``
lines with ``key=value`` pairs. Exit codes: 0 success, 1 failed check,
2 usage or input error, 3 a check that contradicts a printed claim.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .auslander import CORPUS_CAP
from .exactlin import Field
from .formats import FormatError, parse_field, parse_module, print_algebra, print_module, resolve_algebra
from .homolog import gl_dim, min_proj_resolution, tau, transpose
from .qalg import AlgebraError


class UsageError(Exception):
    pass


def _result(**kv) -> str:
    from .replay import _fmt
    return "RESULT: " + " ".join(f"{k}={_fmt(v)}" for k, v in kv.items())


def _field(args) -> Field | None:
    return parse_field(args.field) if getattr(args, "field", None) else None


def _algebra(args):
    return resolve_algebra(args.file, None, _field(args))


def _module(args):
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as e:
        raise UsageError(str(e)) from None
    return parse_module(text, path.parent, _field(args))


def cmd_algebra_info(args, out):
    from .auslander import is_auslander_algebra
    a = _algebra(args)
    g = gl_dim(a)
    aus = is_auslander_algebra(a)
    out(print_algebra(a).rstrip())
    out(_result(name=a.name, vertices=a.n_vertices, arrows=a.n_arrows, dim=a.dim, field=a.field, gl_dim=g,
                auslander=aus))
    return 0


def cmd_module_report(args, out):
    from .taurigid import CriterionDisagreement, module_report
    m = _module(args)
    try:
        rep = module_report(m)
    except CriterionDisagreement as e:
        out(f"criteria disagree: {e}")
        return 3
    out(f"module {m.name} dims {m.dims}")
    out(_result(pd=rep.pd, id=rep.id, grade=rep.grade, rigid=rep.is_rigid, tau_rigid=rep.is_tau_rigid,
                criteria=sorted(rep.criteria_used), agreement=rep.agreement))
    return 0


def cmd_resolve(args, out):
    m = _module(args)
    res = min_proj_resolution(m, args.max)
    names = m.algebra.quiver.vertices
    for k, t in enumerate(res.terms):
        out(f"P_{k}: " + (" + ".join(f"P({names[v]})" for v in sorted(t.tops)) or "0"))
    out(_result(length=res.length, complete=res.complete, exact=res.is_exact(), minimal=res.is_minimal()))
    return 0


def _emit_module(m, args, out):
    text = print_module(m, algebra_ref=f"builtin:{m.algebra.name}")
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        out(text.rstrip())
    out(_result(dims=list(m.dims), dim=m.dim, algebra=m.algebra.name))


def cmd_tau(args, out):
    _emit_module(tau(_module(args)), args, out)
    return 0


def cmd_transpose(args, out):
    _emit_module(transpose(_module(args)), args, out)
    return 0


def cmd_knit(args, out):
    from .auslander import KnitCapExceeded, knit
    a = _algebra(args)
    try:
        ar = knit(a, args.cap)
        complete = True
    except KnitCapExceeded as e:
        ar, complete = e.partial, False
    for i, m in enumerate(ar.modules):
        flags = ("P" if ar.projective[i] else "") + ("I" if ar.injective[i] else "")
        out(f"M{i}: dims {list(m.dims)} {flags}".rstrip())
    if args.dot:
        Path(args.dot).write_text(ar.to_dot())
    out(_result(count=len(ar), complete=complete, mesh_ok=ar.mesh_ok() if complete else "n/a"))
    return 0 if complete else 1


def cmd_auslander(args, out):
    from .auslander import auslander_algebra, is_auslander_algebra
    pres = auslander_algebra(_algebra(args), args.cap)
    out(print_algebra(pres.result).rstrip())
    for x, v in pres.dictionary.items():
        out(f"# vertex {v} <- indecomposable with dims {list(pres.ar_quiver.modules[x].dims)}")
    out(_result(vertices=pres.result.n_vertices, dim=pres.result.dim, auslander=is_auslander_algebra(pres.result)))
    return 0


def cmd_enumerate(args, out):
    from .replay import _tau_rigid_corpus
    from .taurigid import PairRegistry, enumerate_stt_mutation, enumerate_stt_repfinite, enumerate_tilting
    a = _algebra(args)
    if args.what == "tilting":
        if args.op:
            a = a.opposite()
        mods, source = _tau_rigid_corpus(a, args.cap)
        ts = enumerate_tilting(a, mods)
        for t in ts:
            out(f"T dims {list(t.dims)}")
        out(_result(count=len(ts), algebra=a.name, corpus=source))
        return 0
    if args.method == "clique":
        mods, source = _tau_rigid_corpus(a, args.cap or CORPUS_CAP)
        pairs = enumerate_stt_repfinite(a, mods, registry=PairRegistry(a))
        for p in pairs:
            out(p.label())
        out(_result(count=len(pairs), method="clique", corpus=source))
        return 0
    res = enumerate_stt_mutation(a, args.cap or 10000)
    for p in res.pairs:
        out(p.label())
    if args.dot:
        Path(args.dot).write_text(res.to_dot())
    out(_result(count=len(res.pairs), method="mutation", complete=res.complete))
    return 0


def cmd_probe(args, out):
    from .taurigid import TheoremViolation, theorem_2_11_probe
    a = _algebra(args)
    try:
        v = theorem_2_11_probe(a, args.cap, args.mutation_cap)
    except TheoremViolation as e:
        out(str(e))
        out(_result(status="contradiction"))
        return 3
    out(_result(status=v.status.replace(" ", "_"), tilting=v.tilting_counts[0], tilting_op=v.tilting_counts[1],
                hypothesis_i=v.hypothesis_i, hypothesis_ii=v.hypothesis_ii, witnesses=len(v.witnesses),
                stt=v.stt_count))
    return 0


def cmd_classify(args, out):
    from .auslander import NotAuslander, unique_pd2_classifier
    a = _algebra(args)
    try:
        v = unique_pd2_classifier(a)
    except NotAuslander as e:
        out(str(e))
        out(_result(auslander=False))
        return 1
    out(str(v))
    out(_result(auslander=True, pd2_simples=v.pd2_simples, applicable=v.applicable,
                source=v.source or "none"))
    return 0


def cmd_verify(args, out):
    from . import replay
    fld = _field(args)
    cases = [args.case] if args.case else ["3.9", "3.10", "props"]
    reports = []
    for c in cases:
        if c == "3.9":
            reports.append(replay.case_gamma(args.n, fld))
        elif c == "3.10":
            reports.append(replay.case_aus_a3(fld))
        else:
            reports.append(replay.case_props(args.seed, fld))
    for r in reports:
        for line in r.lines():
            out(line)
    if any(r.contradicted for r in reports):
        return 3
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qha", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file", help="algebra/module file, or builtin:NAME for algebras")
        sp.add_argument("--field", help="prime characteristic or Q (overrides the file)")
        return sp

    alg = sub.add_parser("algebra").add_subparsers(dest="sub", required=True)
    with_file(alg.add_parser("info")).set_defaults(func=cmd_algebra_info)
    mod = sub.add_parser("module").add_subparsers(dest="sub", required=True)
    with_file(mod.add_parser("report")).set_defaults(func=cmd_module_report)
    sp = with_file(sub.add_parser("resolve"))
    sp.add_argument("--max", type=int, default=10)
    sp.set_defaults(func=cmd_resolve)
    for name, fn in (("tau", cmd_tau), ("transpose", cmd_transpose)):
        sp = with_file(sub.add_parser(name))
        sp.add_argument("-o", "--output")
        sp.set_defaults(func=fn)
    sp = with_file(sub.add_parser("knit"))
    sp.add_argument("--cap", type=int, default=500)
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_knit)
    sp = with_file(sub.add_parser("auslander"))
    sp.add_argument("--cap", type=int, default=500)
    sp.set_defaults(func=cmd_auslander)
    en = sub.add_parser("enumerate").add_subparsers(dest="what", required=True)
    sp = with_file(en.add_parser("stt"))
    sp.add_argument("--method", choices=["clique", "mutation"], default="clique")
    sp.add_argument("--cap", type=int, help=f"knitting cap (clique, default {CORPUS_CAP}) or pair cap (mutation, default 10000)")
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_enumerate)
    sp = with_file(en.add_parser("tilting"))
    sp.add_argument("--op", action="store_true")
    sp.add_argument("--cap", type=int, default=CORPUS_CAP)
    sp.set_defaults(func=cmd_enumerate)
    sp = with_file(sub.add_parser("probe-2-11"))
    sp.add_argument("--cap", type=int, default=CORPUS_CAP)
    sp.add_argument("--mutation-cap", type=int, default=10000)
    sp.set_defaults(func=cmd_probe)
    with_file(sub.add_parser("classify-2-7")).set_defaults(func=cmd_classify)
    ver = sub.add_parser("verify").add_subparsers(dest="what", required=True)
    sp = ver.add_parser("paper")
    sp.add_argument("--case", choices=["3.9", "3.10", "props"])
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--field")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None, out=print) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if getattr(args, "n", None) is not None and args.func is cmd_verify and not 1 <= args.n <= 4:
        out("--n must be between 1 and 4")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, FormatError, AlgebraError, KeyError, FileNotFoundError) as e:
        out(f"error: {e}")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
