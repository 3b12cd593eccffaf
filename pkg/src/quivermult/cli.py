"""Command-line front end.

Subcommands: quiver analyze, weyl act, reflect, normalize, phi, mc,
catalog painleve, selfcheck.  Exit codes: 0 ok, 1 property failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cartan import (MomentLevel, cartan_matrix, reflect_level,
                     residue_pairing)
from .catalog import format_catalog, painleve_catalog
from .checks import run_selfcheck
from .dynkin import dynkin_type
from .errors import BundleFormatError, QuivermultError
from .normalization import normalize_point
from .reflection import apply_weyl_word, reflect_vertex
from .serialize import (Bundle, bundle_to_json, parse_bundle, parse_scalar,
                        scalar_to_json, serialize_bundle)
from .systems import middle_convolution, point_to_system


def _emit(payload, out_path, as_json=True):
    text = json.dumps(payload, indent=2) + "\n" if as_json else payload
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(bundle, attr, flag):
    value = getattr(bundle, attr)
    if value is None:
        raise BundleFormatError(f"{flag}: bundle lacks a '{attr}' section")
    return value


def _load(path, flag):
    if path is None:
        raise BundleFormatError(f"missing required input {flag}")
    return parse_bundle(path)


def _word(text):
    return [w for w in text.replace(",", " ").split() if w]


def cmd_quiver_analyze(args) -> int:
    b = _load(args.quiver, "--quiver")
    q = _need(b, "quiver", "--quiver")
    cd = cartan_matrix(q)
    report = {
        "vertices": list(q.vertices),
        "multiplicities": {v: q.d(v) for v in q.vertices},
        "cartan_matrix": cd.c,
        "symmetrized_form": cd.b,
        "type": dynkin_type(cd),
    }
    dims = b.dims if b.dims is not None else (_load(args.dims, "--dims").dims
                                              if args.dims else None)
    if dims is not None:
        report["dims"] = dims
        report["root_type"] = cd.root_type(dims)
        report["expected_dimension"] = cd.variety_dimension(dims)
    level = b.level
    if args.lam:
        lb = _load(args.lam, "--lambda")
        level = MomentLevel(q, {v: list(lb.level[v]) for v in q.vertices}) \
            if lb.level is not None else None
    if level is not None:
        report["residues"] = {v: scalar_to_json(level.residue(v))
                              for v in q.vertices}
        if dims is not None:
            report["residue_pairing"] = scalar_to_json(residue_pairing(dims, level))
    if args.format == "text":
        lines = [f"type: {report['type']}"]
        lines.append("cartan matrix:")
        for row in cd.c:
            lines.append("  " + " ".join(f"{x:>3}" for x in row))
        if "root_type" in report:
            lines.append(f"dims: {dims}  root class: {report['root_type']}  "
                         f"expected dim: {report['expected_dimension']}")
        if "residues" in report:
            lines.append(f"residues: {report['residues']}")
        _emit("\n".join(lines) + "\n", args.out, as_json=False)
    else:
        _emit(report, args.out)
    return 0


def cmd_weyl_act(args) -> int:
    b = _load(args.quiver, "--quiver")
    q = _need(b, "quiver", "--quiver")
    cd = cartan_matrix(q)
    word = _word(args.word)
    dims, level = b.dims, b.level
    if args.dims:
        dims = _load(args.dims, "--dims").dims
    if args.lam:
        level = _load(args.lam, "--lambda").level
    for letter in word:
        if letter not in q.vertices:
            raise BundleFormatError(f"word letter {letter} is not a vertex")
        if dims is not None:
            dims = cd.reflect_dims(letter, dims)
        if level is not None:
            level = reflect_level(cd, letter, level)
    _emit(bundle_to_json(Bundle(quiver=q, dims=dims, level=level)), args.out)
    return 0


def cmd_reflect(args) -> int:
    rb = _load(args.rep, "--rep")
    point = _need(rb, "rep", "--rep")
    lb = _load(args.lam, "--lambda")
    if lb.level is None:
        raise BundleFormatError("--lambda: bundle lacks a 'lambda' section")
    level = MomentLevel(point.quiver,
                        {v: list(lb.level[v]) for v in point.quiver.vertices})
    if args.word:
        new_point, new_level, dims = apply_weyl_word(point, level, _word(args.word))
    else:
        if args.vertex is None:
            raise BundleFormatError("reflect needs --vertex or --word")
        res = reflect_vertex(point, args.vertex, level)
        new_point, new_level, dims = res.point, res.level, res.dims
    out = Bundle(quiver=new_point.quiver, dims=dims, level=new_level,
                 rep=new_point)
    _emit(bundle_to_json(out), args.out)
    return 0


def cmd_normalize(args) -> int:
    rb = _load(args.rep, "--rep")
    point = _need(rb, "rep", "--rep")
    lb = _load(args.lam, "--lambda")
    if lb.level is None:
        raise BundleFormatError("--lambda: bundle lacks a 'lambda' section")
    level = MomentLevel(point.quiver,
                        {v: list(lb.level[v]) for v in point.quiver.vertices})
    if args.vertex is None:
        raise BundleFormatError("normalize needs --vertex")
    nb = normalize_point(point, level, args.vertex)
    out = Bundle(quiver=nb.quiver, dims=nb.dims, level=nb.level, rep=nb.point,
                 meta=nb.meta)
    _emit(bundle_to_json(out), args.out)
    return 0


def cmd_phi(args) -> int:
    rb = _load(args.rep, "--rep")
    point = _need(rb, "rep", "--rep")
    pb = _load(args.poles, "--poles")
    poles = _need(pb, "poles", "--poles")
    system = point_to_system(point, poles)
    _emit(bundle_to_json(Bundle(system=system, poles=poles)), args.out)
    return 0


def cmd_mc(args) -> int:
    sb = _load(args.system, "--system")
    system = _need(sb, "system", "--system")
    zeta = parse_scalar(args.zeta)
    out = middle_convolution(system, zeta)
    _emit(bundle_to_json(Bundle(system=out)), args.out)
    return 0


def cmd_catalog(args) -> int:
    if args.what != "painleve":
        raise BundleFormatError(f"unknown catalog {args.what!r}")
    _emit(format_catalog(painleve_catalog(), args.format), args.out,
          as_json=False)
    return 0


def cmd_selfcheck(args) -> int:
    scale = Fraction(args.cases, 100) if args.cases is not None else 1
    ok, results = run_selfcheck(seed=args.seed, scale=scale)
    if args.format == "json":
        payload = {"ok": ok,
                   "checks": [{"name": r.name, "ok": r.ok, "cases": r.cases,
                               "detail": r.detail} for r in results]}
        _emit(payload, args.out)
    else:
        lines = [r.line() for r in results]
        lines.append(f"selfcheck: {'all checks passed' if ok else 'FAILURES'}")
        _emit("\n".join(lines) + "\n", args.out, as_json=False)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quivermult",
                                 description="exact computations with quiver "
                                             "varieties with multiplicities")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["text", "json"], default="text")

    pq = sub.add_parser("quiver", help="quiver-level reports")
    qsub = pq.add_subparsers(dest="subcommand", required=True)
    pqa = qsub.add_parser("analyze")
    pqa.add_argument("--quiver", required=True)
    pqa.add_argument("--dims")
    pqa.add_argument("--lambda", dest="lam")
    add_common(pqa)
    pqa.set_defaults(func=cmd_quiver_analyze)

    pw = sub.add_parser("weyl", help="Weyl-group actions on parameters")
    wsub = pw.add_subparsers(dest="subcommand", required=True)
    pwa = wsub.add_parser("act")
    pwa.add_argument("--quiver", required=True)
    pwa.add_argument("--word", required=True)
    pwa.add_argument("--dims")
    pwa.add_argument("--lambda", dest="lam")
    add_common(pwa)
    pwa.set_defaults(func=cmd_weyl_act)

    pr = sub.add_parser("reflect", help="apply reflection functors")
    pr.add_argument("--rep", required=True)
    pr.add_argument("--lambda", dest="lam", required=True)
    pr.add_argument("--vertex")
    pr.add_argument("--word")
    add_common(pr)
    pr.set_defaults(func=cmd_reflect)

    pn = sub.add_parser("normalize", help="normalize at an irregular pole")
    pn.add_argument("--rep", required=True)
    pn.add_argument("--lambda", dest="lam", required=True)
    pn.add_argument("--vertex", required=True)
    add_common(pn)
    pn.set_defaults(func=cmd_normalize)

    pp = sub.add_parser("phi", help="star point to meromorphic system")
    pp.add_argument("--rep", required=True)
    pp.add_argument("--poles", required=True)
    add_common(pp)
    pp.set_defaults(func=cmd_phi)

    pm = sub.add_parser("mc", help="middle convolution of a system")
    pm.add_argument("--system", required=True)
    pm.add_argument("--zeta", required=True)
    add_common(pm)
    pm.set_defaults(func=cmd_mc)

    pc = sub.add_parser("catalog", help="built-in classification tables")
    pc.add_argument("what", choices=["painleve"])
    add_common(pc)
    pc.set_defaults(func=cmd_catalog)

    ps = sub.add_parser("selfcheck", help="run the contract suites")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--cases", type=int, default=None,
                    help="percentage of the default case counts")
    add_common(ps)
    ps.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BundleFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except QuivermultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
