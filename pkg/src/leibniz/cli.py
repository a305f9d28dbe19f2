"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical violation, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import families as F
from . import io
from .core import check_leibniz, operator_law_defects
from .derivations import derivation_space, inner_derivations
from .errors import LeibnizError
from .quotients import verify_nilradical_certificate
from .rational import fmt_q
from .series import Subspace, center, derived_series, is_nilpotent, is_solvable, lower_central_series, nil_index
from .suite import SuiteConfig, run_suite
from .transforms import iso_witness_check

log = logging.getLogger("leibniz")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _setup_logging():
    level = os.environ.get("LEIBNIZ_LOG", "").lower()
    logging.basicConfig(
        level={"debug": logging.DEBUG, "info": logging.INFO}.get(level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _emit(args, payload, text=None):
    out = io.dumps(payload)
    if getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as exc:
            raise LeibnizError(f"cannot write {args.output}: {exc.strerror}") from None
        if text:
            print(text)
    elif text and not getattr(args, "json", False):
        print(text)
    else:
        sys.stdout.write(out)


def _parse_params(items):
    params = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise LeibnizError(f"--param expects name=value, got {item!r}")
        params[name.strip()] = value.strip()
    return params


def _descriptor(args):
    if args.descriptor:
        return F.AlgebraDescriptor.from_json(io.load_file(args.descriptor))
    if not args.family or args.n is None:
        raise LeibnizError("give --family and --n, or --descriptor FILE")
    if args.seed is not None and not args.param:
        return F.sample_params(args.family, args.n, args.seed)
    try:
        return F.AlgebraDescriptor(args.family, args.n, _parse_params(args.param))
    except (TypeError, ValueError) as exc:
        raise F.DescriptorError(f"bad parameter value: {exc}") from None


def cmd_build(args):
    desc = _descriptor(args)
    T = F.build(desc, strict=args.strict_transcription)
    log.info("built %s n=%d (dim %d, %d constants)", desc.family, desc.n, T.dim, T.nnz)
    _emit(args, io.algebra_to_json(T))
    return EXIT_OK


def cmd_describe(args):
    desc = _descriptor(args)
    F.validate(desc)
    payload = {
        "descriptor": desc.to_json(),
        "label": F.get_family(desc.family).label,
        "derived": {c.name: fmt_q(c.value) for c in F.derived_coefficients(desc)},
        "expected": F.expected_invariants(desc),
    }
    _emit(args, payload)
    return EXIT_OK


def _load_algebra(path):
    return io.algebra_from_json(io.load_file(path))


def cmd_check(args):
    T = _load_algebra(args.algebra)
    kind = args.kind
    if kind == "leibniz":
        v = check_leibniz(T, args.side)
        ops = operator_law_defects(T, args.side)
        payload = {
            "side": args.side,
            "holds": not v,
            "operator_law_holds": not ops,
            "violations": [
                {"triple": list(x.triple), "lhs": [fmt_q(c) for c in x.lhs], "rhs": [fmt_q(c) for c in x.rhs]}
                for x in v
            ],
        }
        text = f"{args.side} Leibniz identity: {'holds' if not v else f'{len(v)} violation(s)'}"
        if v:
            text += "\n" + "\n".join(f"  triple {x.triple}: lhs {list(map(fmt_q, x.lhs))} rhs {list(map(fmt_q, x.rhs))}" for x in v[:20])
        ok = not v
    elif kind == "series":
        ds, ls = derived_series(T), lower_central_series(T)
        payload = {
            "ds_dims": list(ds.dims), "ds_stabilized": ds.stabilized,
            "ls_dims": list(ls.dims), "ls_stabilized": ls.stabilized,
            "nilpotent": is_nilpotent(T), "solvable": is_solvable(T), "nil_index": nil_index(T),
        }
        text = f"DS {list(ds.dims)}{' (stabilized)' if ds.stabilized else ''}\nLS {list(ls.dims)}{' (stabilized)' if ls.stabilized else ''}"
        ok = True
    elif kind == "center":
        C = center(T)
        payload = io.subspace_to_json(C)
        text = f"center: dim {C.dim}"
        ok = True
    elif kind == "derivations":
        D = derivation_space(T)
        payload = {"dim": D.dim}
        if args.dump:
            payload["basis"] = [io.linear_map_to_json(M) for M in D.basis]
        for side in ("right", "left"):
            if not check_leibniz(T, side):
                payload[f"inner_{side}_dim"] = inner_derivations(T, side).dim
        text = "derivations: dim " + str(D.dim)
        ok = True
    elif kind == "nilradical":
        if args.subspace:
            N = io.subspace_from_json(io.load_file(args.subspace))
        elif args.n is not None:
            N = Subspace.coordinate(T.dim, range(1, args.n + 1))
        else:
            raise LeibnizError("nilradical check needs --n K or --subspace FILE")
        cert = verify_nilradical_certificate(T, N)
        payload = cert.to_json()
        text = f"nilradical certificate: {'pass' if cert.passed else 'fail'} (dim bound {'holds' if cert.dim_bound else 'fails'})"
        ok = cert.passed
    elif kind == "iso":
        if not args.other or not args.map:
            raise LeibnizError("iso check needs --other FILE and --map FILE")
        B = _load_algebra(args.other)
        P = io.linear_map_from_json(io.load_file(args.map))
        ok = iso_witness_check(T, B, P)
        payload = {"isomorphic_via_map": ok}
        text = f"witness {'maps' if ok else 'does not map'} the first algebra onto the second"
    else:  # pragma: no cover - argparse restricts choices
        raise LeibnizError(f"unknown check {kind!r}")
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_suite(args):
    cfg = SuiteConfig(args.n_min, args.n_max, args.samples, args.seed, args.strict_transcription, args.parallel)
    results = run_suite(cfg)
    lines = [r.line() for r in results]
    for r in results:
        lines.extend(f"    {k}: {v}" for k, v in sorted(r.counts.items()))
        lines.extend(f"    note: {note}" for note in r.notes)
        lines.extend(f"    FAILED {f}" for f in r.failures[:20])
    if args.strict_transcription:
        used = [f"{fam}: {p.position} {p.original} -> {p.corrected}" for fam, ps in sorted(F.PATCHES.items()) for p in ps]
        lines.append("strict transcription: patches bypassed: " + (", ".join(used) if used else "none"))
    passed = all(r.passed for r in results)
    lines.append(f"suite {'PASS' if passed else 'FAIL'}: {sum(r.passed for r in results)}/{len(results)} criteria")
    payload = {"config": vars(args) | {"func": None}, "passed": passed, "criteria": [r.to_json() for r in results]}
    payload["config"].pop("func")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if passed else EXIT_VIOLATION


def build_parser():
    p = _Parser(prog="leibniz", description="Exact verification of Leibniz algebras with nilradical L2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def desc_flags(sp):
        sp.add_argument("--family", help="family tag, e.g. L2, G1, Lc2, RThm1Case1")
        sp.add_argument("--n", type=int, help="nilradical dimension")
        sp.add_argument("--param", action="append", metavar="NAME=VALUE", help="parameter, repeatable")
        sp.add_argument("--seed", type=int, help="sample parameters with this seed when none are given")
        sp.add_argument("--descriptor", metavar="FILE", help="descriptor JSON")
        sp.add_argument("--strict-transcription", action="store_true", help="ignore the PATCHES ledger")
        sp.add_argument("-o", "--output", metavar="FILE")

    b = sub.add_parser("build", help="write the algebra JSON of a catalog member")
    desc_flags(b)
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("describe", help="descriptor, derived coefficients and expected invariants")
    desc_flags(d)
    d.set_defaults(func=cmd_describe)

    c = sub.add_parser("check", help="run one check on an algebra JSON file")
    c.add_argument("kind", choices=["leibniz", "series", "center", "derivations", "nilradical", "iso"])
    c.add_argument("algebra", metavar="ALGEBRA.json")
    c.add_argument("--side", choices=["left", "right"], default="right")
    c.add_argument("--n", type=int, help="nilradical candidate span{e_1..e_n}")
    c.add_argument("--subspace", metavar="FILE", help="nilradical candidate as subspace JSON")
    c.add_argument("--other", metavar="FILE", help="second algebra for iso")
    c.add_argument("--map", metavar="FILE", help="witness map JSON for iso")
    c.add_argument("--dump", action="store_true", help="include derivation basis matrices")
    c.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    c.add_argument("-o", "--output", metavar="FILE")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("suite", help="run the acceptance criteria")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strict-transcription", action="store_true")
    s.add_argument("--parallel", action="store_true")
    s.add_argument("--json", action="store_true")
    s.add_argument("-o", "--output", metavar="FILE")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LeibnizError as exc:
        print(f"leibniz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"leibniz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
