"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
parse and reference errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .extcoh import ext_dim, transfer_ext
from .norm import algebra_invariants, mumford_norm, relative_norm
from .report import Report
from .suites import SUITES, SuiteConfig, run_suite
from .transfer import double_coset_invariants, higman_certificate, lambda_scalar, transfer_map
from .workspace import WorkspaceError, parse_workspace


class UsageError(Exception):
    pass


def _emit(rep: Report, json_path: Optional[str], out) -> int:
    for c in rep.checks:
        print(c.line(), file=out)
    failed = len(rep.failures())
    print(f"{rep.title}: {len(rep.checks)} checks, {failed} failed", file=out)
    if json_path:
        lines = "".join(c.as_json() + "\n" for c in rep.checks)
        if json_path == "-":
            out.write(lines)
        else:
            with open(json_path, "w") as fh:
                fh.write(lines)
    return 0 if rep.ok else 1


def _by_object(rep: Report) -> dict:
    groups: dict = {}
    for c in rep.checks:
        obj = c.name.partition(": ")[0]
        groups.setdefault(obj, []).append(c)
    return groups


# --------------------------------------------------------------- commands
def cmd_validate(args, out) -> int:
    ws = parse_workspace(args.file)
    return _emit(ws.validate(), args.json, out)


def cmd_run(args, out) -> int:
    if args.suite not in SUITES + ["all"]:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ['all'])}")
    ws = parse_workspace(args.file)
    seed = ws.seed if args.seed is None else args.seed
    st = ws.suites
    cfg = SuiteConfig(seed=seed, samples=st.samples, ext_degree=st.ext_degree,
                      base_change=st.base_change, jobs=max(1, args.jobs))
    rep = Report(f"suite {args.suite} (seed {seed})")
    for obj, checks in _by_object(ws.validate()).items():
        bad = [c.name for c in checks if not c.passed]
        rep.add(f"workspace: {obj} validates", not bad, True, not bad, witness=bad or None)
    rep.extend(run_suite(args.suite, cfg))
    return _emit(rep, args.json, out)


def cmd_norm(args, out) -> int:
    ws = parse_workspace(args.file)
    S = ws.algebra(args.algebra)
    s = ws.parse_element(S, args.element)
    e = ws.embedding(args.subgroup) if args.subgroup else None
    if e is not None and e.amb is not S.scheme:
        raise UsageError(f"embedding {args.subgroup} is not a subgroup of the scheme acting on {args.algebra}")
    nr = relative_norm(S, e, s)
    sub = args.subgroup or "1"
    rep = Report(f"norm of {args.element} in {args.algebra}")
    print(f"Nm_{sub}^G({args.element}) = {nr.value}", file=out)
    print(f"exponent = {nr.exponent}, cosets = {nr.coset_count}, computed over {nr.ext}", file=out)
    rep.extend(nr.report)
    if e is None:
        mn = mumford_norm(S, s)
        print(f"Mumford norm = {mn}", file=out)
        rep.add("Mumford norm = relative norm over the trivial subgroup", mn == nr.value, str(mn), str(nr.value))
    return _emit(rep, args.json, out)


def cmd_mumford(args, out) -> int:
    ws = parse_workspace(args.file)
    S = ws.algebra(args.algebra)
    s = ws.parse_element(S, args.element)
    mn = mumford_norm(S, s)
    print(f"N({args.element}) = {mn}", file=out)
    rep = Report(f"Mumford norm in {args.algebra}")
    rep.add("value is G-invariant", S.is_invariant(mn))
    return _emit(rep, args.json, out)


def cmd_invariants(args, out) -> int:
    ws = parse_workspace(args.file)
    S = ws.algebra(args.algebra)
    basis = algebra_invariants(S, None if S.finite else args.degree)
    print(f"invariants of {args.algebra}" + ("" if S.finite else f" up to degree {args.degree}") + ":", file=out)
    for b in basis:
        print(f"  {b}", file=out)
    rep = Report(f"invariants of {args.algebra}")
    rep.add("basis elements are invariant", all(S.is_invariant(b) for b in basis), len(basis), len(basis))
    return _emit(rep, args.json, out)


def _pair(ws, text: str):
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 2:
        raise UsageError("--pair expects two module names separated by a comma")
    return [ws.module(nm) for nm in parts]


def cmd_ext(args, out) -> int:
    ws = parse_workspace(args.file)
    mp, m = _pair(ws, args.pair)
    if mp.scheme is not m.scheme:
        raise UsageError("the two modules live over different schemes")
    g = m.scheme
    rep = Report(f"Ext^n({mp.name}, {m.name})")
    dims = [ext_dim(g, mp, m, n).dim for n in range(args.degree + 1)]
    for n, d in enumerate(dims):
        print(f"dim Ext^{n}_{g.name}({mp.name}, {m.name}) = {d}", file=out)
    if args.subgroup:
        e = ws.embedding(args.subgroup)
        if e.amb is not g:
            raise UsageError(f"embedding {args.subgroup} is not a subgroup of {g.name}")
        tr = transfer_ext(e, mp, m, args.degree)
        print(f"dim Ext^{args.degree}_{e.sub.name}(omega^-1 (x) {mp.name}, {m.name}) = {tr.source.dim}", file=out)
        print(f"transfer matrix ({tr.target.dim} x {tr.source.dim}): {tr.matrix.tolist()}", file=out)
        for j, ok in enumerate(tr.commutes):
            rep.add(f"levelwise transfer commutes with the differential in degree {j}", ok)
        if tr.restriction is not None:
            print(f"restriction matrix: {tr.restriction.tolist()}", file=out)
            comp = g.field.matmul(tr.matrix, tr.restriction) if tr.matrix.size and tr.restriction.size else None
            if comp is not None:
                print(f"Tr o res: {comp.tolist()}", file=out)
    rep.add("dimensions computed", True, None, dims)
    return _emit(rep, args.json, out)


def cmd_transfer(args, out) -> int:
    ws = parse_workspace(args.file)
    e = ws.embedding(args.subgroup)
    m, n = _pair(ws, args.pair)
    if m.scheme is not e.amb or n.scheme is not e.amb:
        raise UsageError("modules must live over the ambient scheme of the embedding")
    tm = transfer_map(e, m, n)
    print(f"Tr_{e.sub.name}^{e.amb.name}: Hom_H -> Hom_G({m.name}, {n.name}), rank {tm.rank}", file=out)
    rep = Report(f"transfer {args.subgroup}")
    if args.expect_surjective:
        rep.add("surjective", tm.surjective, True, tm.surjective)
    rep.add("rank computed", True, None, tm.rank)
    return _emit(rep, args.json, out)


def cmd_lambda(args, out) -> int:
    ws = parse_workspace(args.file)
    names = args.subgroup or sorted(ws.embeddings)
    rep = Report("lambda")
    for nm in names:
        e = ws.embedding(nm)
        lam = lambda_scalar(e)
        print(f"lambda_{{{nm}, {e.amb.name}}} = {lam} ({lam.reason})", file=out)
        rep.add(f"lambda {nm}", True, None, str(lam))
    return _emit(rep, args.json, out)


def cmd_higman(args, out) -> int:
    ws = parse_workspace(args.file)
    m = ws.module(args.module)
    coll = [ws.embedding(nm) for nm in args.subgroups.split(",")]
    if any(e.amb is not m.scheme for e in coll):
        raise UsageError("every subgroup must embed in the scheme of the module")
    cert = higman_certificate(m, coll)
    verdict = "projective" if cert.projective else "not projective"
    print(f"{args.module} relative to {{{args.subgroups}}}: {verdict}", file=out)
    rep = Report(f"Higman {args.module}")
    if cert.projective:
        rep.add("certificate sums to the identity", cert.verified)
    rep.add("verdict", True, None, verdict)
    return _emit(rep, args.json, out)


def cmd_doublecoset(args, out) -> int:
    ws = parse_workspace(args.file)
    h = ws.embedding(args.right) if args.right else None
    k = ws.embedding(args.left) if args.left else None
    if h is None and k is None:
        raise UsageError("give --left, --right or both")
    if h is not None and k is not None and h.amb is not k.amb:
        raise UsageError("both subgroups must live in the same scheme")
    dc = double_coset_invariants(k, h)
    print(f"dim ^{args.right or '1'}k[G]^{args.left or '1'} = {dc.dim}", file=out)
    rep = Report("double coset invariants")
    rep.add("dimension", True, None, dc.dim)
    return _emit(rep, args.json, out)


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grpscheme", description="Transfer and norm maps for finite group schemes over F_q.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="workspace TOML file")
        p.add_argument("--json", metavar="FILE", help="write one JSON object per check ('-' for stdout)")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check every object in a workspace")
    p = add("run", cmd_run, "run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p = add("norm", cmd_norm, "relative norm of an element (Mumford norm too when no subgroup is given)")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--subgroup")
    p = add("mumford", cmd_mumford, "Mumford norm of an element")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    p = add("invariants", cmd_invariants, "basis of the invariant ring up to a degree")
    p.add_argument("--algebra", required=True)
    p.add_argument("--degree", type=int, default=3)
    p = add("ext", cmd_ext, "Ext dimensions and the Ext transfer")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--pair", required=True, metavar="M',M")
    p.add_argument("--subgroup")
    p = add("transfer", cmd_transfer, "rank of the transfer on Hom spaces")
    p.add_argument("--subgroup", required=True)
    p.add_argument("--pair", required=True, metavar="M,N")
    p.add_argument("--expect-surjective", action="store_true")
    p = add("lambda", cmd_lambda, "zero/nonzero status of lambda")
    p.add_argument("--subgroup", action="append")
    p = add("higman", cmd_higman, "relative projectivity certificate")
    p.add_argument("--module", required=True)
    p.add_argument("--subgroups", required=True, help="comma-separated embedding names")
    p = add("doublecoset", cmd_doublecoset, "dimension of ^H k[G]^K")
    p.add_argument("--right", help="H, acting on the right")
    p.add_argument("--left", help="K, acting on the left")
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:   # --help exits 0, bad usage exits 2
        return 0 if not exc.code else 2
    try:
        return args.func(args, out)
    except (WorkspaceError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        # invalid input that survived parsing, e.g. a non-invariant element
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
