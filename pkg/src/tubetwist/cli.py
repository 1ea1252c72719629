"""Command-line front end: JSON specs in, JSON reports out.

Exit status is 0 on success, 1 when a verification fails (the report carries
a witness) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohomology import is_cocycle
from .fusion import check_pentagon, check_rigidity, pointed_category, twist
from .groupoid import action_groupoid, induce_psi, normalize_psi
from .spectrum import DEFAULT_SEED, SpectrumError, compare_spectra, wedderburn
from .specs import (
    SpecError,
    cochain_to_json,
    group_to_json,
    groupoid_cochain_to_json,
    load_json,
    parse_category,
    parse_cocycle,
    parse_group,
    parse_groupoid_cochain,
    tube_to_json,
)
from .tube import build_tube, compare_tables, twist_fell_bundle

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Fail(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="primary JSON spec (group or cocycle, by command)")
    common.add_argument("--group", help="group spec JSON")
    common.add_argument("--cocycle", help="3-cocycle spec JSON")
    common.add_argument("--category", help="category spec JSON")
    common.add_argument("--psi", help="groupoid 2-cochain JSON overriding the induced one")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--format", choices=("json", "summary"), default="json")

    p = argparse.ArgumentParser(prog="tubetwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="describe a finite group")
    c = sub.add_parser("cocycle", parents=[common], help="check or print a cocycle")
    c.add_argument("action", choices=("check", "show"))
    sub.add_parser("induce", parents=[common], help="groupoid 2-cocycle induced by a 3-cocycle")
    t = sub.add_parser("tube", parents=[common], help="tube algebra tables")
    t.add_argument("action", choices=("build", "twist", "verify"))
    sub.add_parser("spectrum", parents=[common], help="center and Wedderburn blocks")
    sub.add_parser("compare", parents=[common], help="spectra of T(C) and T(C^omega)")
    sub.add_parser("verify", parents=[common], help="twist theorem for a category and cocycle")
    return p


def _group(args):
    path = args.group or args.spec
    if not path:
        raise SpecError("--group: required")
    return parse_group(load_json(path), path)


def _cocycle(args, group=None, required=True):
    path = args.cocycle or (args.spec if args.command in ("cocycle", "induce") else None)
    if not path:
        if required:
            raise SpecError("--cocycle: required")
        return None
    if group is None and args.group:
        group = _group(args)
    return parse_cocycle(load_json(path), group, path)


def _category(args):
    if args.category:
        return parse_category(load_json(args.category), args.category)
    if args.group:
        G = _group(args)
        return pointed_category(parse_cocycle({"type": "neutral"}, G))
    raise SpecError("--category (or --group for a pointed category): required")


def _psi(args, omega, groupoid):
    if args.psi:
        return parse_groupoid_cochain(load_json(args.psi), groupoid, args.psi)
    return induce_psi(omega, groupoid)


def _cmd_group(args):
    G = _group(args)
    rep = group_to_json(G)
    return rep, f"group of order {G.order}, {len(rep['conjugacy_classes'])} classes"


def _cmd_cocycle(args):
    w = _cocycle(args)
    if args.action == "show":
        return cochain_to_json(w), f"{w.degree}-cochain on a group of order {w.group.order}"
    chk = is_cocycle(w)
    rep = {"is_cocycle": chk.ok, "witness": list(chk.witness) if chk.witness else None,
           "normalized": w.is_normalized(), "degree": w.degree}
    if not chk.ok:
        raise _Fail(rep)
    return rep, "cocycle: yes"


def _cmd_induce(args):
    w = _cocycle(args)
    Gd = action_groupoid(w.group)
    psi = induce_psi(w, Gd)
    chk = is_cocycle(psi)
    psi_n, _ = normalize_psi(psi)
    symmetric = all(psi.values[(g, Gd.inverse(g))] == psi.values[(Gd.inverse(g), g)] for g in Gd.arrows)
    rep = {
        "is_cocycle": chk.ok,
        "witness": list(chk.witness) if chk.witness else None,
        "inverse_symmetric": symmetric,
        "psi": groupoid_cochain_to_json(psi),
        "normalized_psi": groupoid_cochain_to_json(psi_n),
    }
    if not chk.ok:
        raise _Fail(rep)
    return rep, f"induced 2-cochain on {len(Gd.arrows)} arrows, cocycle: {chk.ok}"


def _twist_report(args, C):
    w = _cocycle(args, C.grading_group)
    if w.group is not C.grading_group:
        raise SpecError("--cocycle: must live on the category's grading group")
    direct = build_tube(twist(C, w))
    base = build_tube(C)
    psi = _psi(args, w, base.groupoid)
    chk = is_cocycle(psi)
    if not chk.ok:
        rep = {"pass": False, "discrepancy": None, "witness": ["psi not a cocycle", *chk.witness]}
        raise _Fail(rep)
    twisted = twist_fell_bundle(base, psi, verify=False)
    res = compare_tables(direct, twisted)
    ok = res.passed if direct.exact and twisted.exact else res.max_discrepancy < args.tolerance
    rep = {"pass": ok, "discrepancy": res.max_discrepancy,
           "witness": list(res.witness) if res.witness and not ok else None, "dim": direct.dim}
    if not ok:
        raise _Fail(rep)
    return rep, f"twist theorem holds, max discrepancy {res.max_discrepancy:.3g}"


def _cmd_tube(args):
    C = _category(args)
    if args.action == "build":
        T = build_tube(C)
        return tube_to_json(T), f"tube algebra of dimension {T.dim}"
    if args.action == "twist":
        T = build_tube(C)
        if args.psi:
            psi = parse_groupoid_cochain(load_json(args.psi), T.groupoid, args.psi)
        else:
            w = _cocycle(args, C.grading_group)
            psi = induce_psi(w, T.groupoid)
        try:
            T2 = twist_fell_bundle(T, psi)
        except ValueError as exc:
            raise _Fail({"pass": False, "witness": str(exc)}) from None
        return tube_to_json(T2), f"twisted tube algebra of dimension {T2.dim}"
    return _twist_report(args, C)


def _maybe_twisted(args, C):
    w = _cocycle(args, C.grading_group, required=False)
    return C if w is None else twist(C, w)


def _cmd_spectrum(args):
    C = _maybe_twisted(args, _category(args))
    rep = wedderburn(build_tube(C), seed=args.seed)
    return rep.to_dict(), f"center dimension {rep.center_dim}, blocks {rep.block_dims}"


def _cmd_compare(args):
    C = _category(args)
    w = _cocycle(args, C.grading_group)
    rep = compare_spectra(build_tube(C), build_tube(twist(C, w)), seed=args.seed)
    return rep, f"center dimensions {rep['center_dims'][0]} -> {rep['center_dims'][1]}"


def _cmd_verify(args):
    C = _category(args)
    rep, summary = _twist_report(args, C)
    rep["pentagon"] = check_pentagon(C).ok
    rep["rigidity"] = check_rigidity(C).status
    return rep, summary


COMMANDS = {
    "group": _cmd_group, "cocycle": _cmd_cocycle, "induce": _cmd_induce, "tube": _cmd_tube,
    "spectrum": _cmd_spectrum, "compare": _cmd_compare, "verify": _cmd_verify,
}


def _emit(args, report, summary, stream=None):
    text = json.dumps(report, sort_keys=True, indent=1) if args.format == "json" else summary
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stream or sys.stdout)
    if args.format == "json" or args.out:
        print(summary, file=sys.stderr)


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        report, summary = COMMANDS[args.command](args)
    except _Fail as fail:
        _emit(args, fail.report, f"verification failed: {fail.report.get('witness')}")
        return EXIT_FAIL
    except (SpecError, SpectrumError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, report, summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
