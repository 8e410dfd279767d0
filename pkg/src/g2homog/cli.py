"""Command-line entry point: every verification as a reproducible report.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
Set G2HOMOG_PRETTY=1 to indent JSON output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .catalog import (aloff_wallach_check, all_cases, case_names, enumerate_candidates, get_case,
                      qklm_check, verify_record)
from .exterior import Metric, hodge, to_text
from .homspace import nearly_kaehler_product_check
from .liealg import g2_subgroup_table
from .octonion import (build_omega, build_star_omega, check_against_star, check_normed_division, corrupt,
                       multiplication_from_omega)

PRETTY_ENV = "G2HOMOG_PRETTY"


class UsageError(Exception):
    pass


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj) -> str:
    indent = 2 if os.environ.get(PRETTY_ENV, "") not in ("", "0") else None
    seps = None if indent else (",", ":")
    return json.dumps(obj, sort_keys=True, indent=indent, separators=seps, default=_default, ensure_ascii=False)


def envelope(command: str, inputs: dict, status: str, body) -> dict:
    return {"command": command, "inputs": inputs, "status": status, "body": body, "engine_version": __version__}


# -- commands ------------------------------------------------------------------


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected i,j got {text!r}")
    if not (0 <= i < 8 and 0 <= j < 8):
        raise UsageError("indices must lie in 0..7")
    return i, j


def cmd_octonion(args):
    table = multiplication_from_omega(build_omega())
    inputs = {}
    if args.corrupt:
        i, j = _parse_pair(args.corrupt)
        table = corrupt(table, i, j)
        inputs["corrupt"] = [i, j]
    report = check_normed_division(table)
    body = report.to_json_obj()
    body["x1x2"] = [str(x) for x in table.product(1, 2)]
    body["x2x4"] = [str(x) for x in table.product(2, 4)]
    lines = [f"normed division: {report.status}",
             f"checked {report.details['basis_pairs']} basis pairs and {report.details['vector_pairs']} vector pairs"]
    if report.witness:
        lines.append(f"witness: {report.witness}")
    return "verify octonion", inputs, report.status, body, lines


def cmd_hodge(args):
    orientation = args.orientation
    omega = build_omega()
    computed = hodge(omega, Metric.euclidean(7), orientation)
    expected = build_star_omega()
    metric_report = check_against_star(omega)
    ok = computed == expected and metric_report.passed
    body = {"omega": to_text(omega, "dx"), "computed": to_text(computed, "dx"), "expected": to_text(expected, "dx"),
            "orientation": orientation, "metric_identity": metric_report.passed}
    lines = [f"omega    = {body['omega']}", f"*omega   = {body['computed']}", f"expected = {body['expected']}",
             f"hodge: {'pass' if ok else 'fail (mismatch)'}"]
    return "verify hodge", {"orientation": orientation}, "pass" if ok else "fail", body, lines


def _case_lines(rep) -> list[str]:
    lines = [f"case {rep['case']}: {rep['status']}",
             f"  label: {rep['matched_label']}" + (f" params {rep['params']}" if rep["params"] else ""),
             f"  weights: {rep['weights']}"]
    if rep.get("star_form"):
        lines += [f"  omega: {rep['g2_form']}", f"  *omega: {rep['star_form']}",
                  f"  d*omega: {rep['d_star_form']}  (cosymplectic: {rep['cosymplectic']})"]
    for n in rep.get("notes", []):
        lines.append(f"  note: {n}")
    return lines


def cmd_case(args):
    try:
        rec = get_case(args.name)
    except KeyError:
        raise UsageError(f"unknown case {args.name!r}; valid names: {', '.join(case_names())}")
    rep = verify_record(rec).to_json_obj()
    return "verify case", {"name": args.name}, rep["status"], rep, _case_lines(rep)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational {text!r}")


def cmd_nk(args):
    lam = _parse_rational(args.lam)
    if lam == 0:
        raise UsageError("lambda must be nonzero")
    body = nearly_kaehler_product_check(lam)
    lines = [f"lambda = {body['lambda']}", f"*omega = {body['star_omega']}",
             f"d*omega (formal) = {body['d_star_omega_formal']}", f"d*omega = {body['d_star_omega']}"]
    return "verify nk-product", {"lambda": str(lam)}, body["status"], body, lines


def run_all(workers: int = 4) -> list[dict]:
    records = sorted(all_cases(), key=lambda r: r.name)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(verify_record, records))
    return [r.to_json_obj() for r in reports]


def cmd_all(args):
    reports = run_all(args.workers)
    ok = all(r["status"] == "pass" for r in reports)
    body = {"cases": reports, "passed": sum(r["status"] == "pass" for r in reports), "total": len(reports)}
    lines = [f"{r['case']:20s} {r['status']:5s} {r['matched_label']}"
             + ("" if r["cosymplectic"] is None else f"  cosymplectic={r['cosymplectic']}") for r in reports]
    lines.append(f"{body['passed']}/{body['total']} cases pass")
    return "verify all", {}, "pass" if ok else "fail", body, lines


def cmd_aloff(args):
    if (args.k, args.l) == (0, 0):
        raise UsageError("(k, l) must be nonzero")
    body = aloff_wallach_check(args.k, args.l)
    lines = [f"N^({args.k},{args.l}): plane rates {body['plane_rates']}, splitting {body['splitting']}",
             f"matched {body['matched_label']} with (a, b) = {tuple(body['params'])}"]
    return "weights aloff-wallach", {"k": args.k, "l": args.l}, body["status"], body, lines


def cmd_qklm(args):
    k, l, m = args.k, args.l, args.m
    if (k, l, m) == (0, 0, 0) or min(k, l, m) < 0 or not (k >= l >= m):
        raise UsageError("expected k >= l >= m >= 0, not all zero")
    result = qklm_check(k, l, m)
    body = {"k": k, "l": l, "m": m, "admits_invariant_g2": result}
    return "check qklm", {"k": k, "l": l, "m": m}, "info", body, [str(result).lower()]


def cmd_table(args):
    rows = [e.to_json_obj() for e in g2_subgroup_table()]
    lines = [f"{r['label']:18s} {r['group']:8s} {r['splitting']}" for r in rows]
    return "table g2-subgroups", {}, "info", {"rows": rows}, lines


def cmd_enumerate(args):
    try:
        pruned = enumerate_candidates(args.dim_h)
        unpruned = enumerate_candidates(args.dim_h, prune_effectivity=False)
    except ValueError as exc:
        raise UsageError(str(exc))
    body = {"dim_h": args.dim_h,
            "survivors": [r.g_name for r in pruned if r.failed is None],
            "survivors_without_effectivity": [r.g_name for r in unpruned if r.failed is None],
            "candidates": [r.to_json_obj() for r in pruned]}
    lines = [f"{r.g_name:22s} {r.status}" + (f" (failed {r.failed})" if r.failed else "")
             for r in pruned]
    return "enumerate", {"dim_h": args.dim_h}, "info", body, lines


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON envelope")

    p = argparse.ArgumentParser(prog="g2homog", description="Exact checks for homogeneous G2-structures.",
                                parents=[common])
    sub = p.add_subparsers(dest="group", required=True)

    verify = sub.add_parser("verify", help="run a verification", parents=[common])
    vsub = verify.add_subparsers(dest="what", required=True)
    o = vsub.add_parser("octonion", parents=[common], help="octonions from the three-form")
    o.add_argument("--corrupt", help=argparse.SUPPRESS)
    o.set_defaults(func=cmd_octonion)
    h = vsub.add_parser("hodge", parents=[common], help="Hodge dual of the standard three-form")
    h.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    h.set_defaults(func=cmd_hodge)
    c = vsub.add_parser("case", parents=[common], help="verify one catalog case")
    c.add_argument("name")
    c.set_defaults(func=cmd_case)
    n = vsub.add_parser("nk-product", parents=[common], help="nearly Kaehler product construction")
    n.add_argument("--lambda", dest="lam", required=True, help="nonzero rational p/q")
    n.set_defaults(func=cmd_nk)
    a = vsub.add_parser("all", parents=[common], help="verify every catalog case")
    a.add_argument("--workers", type=int, default=4)
    a.set_defaults(func=cmd_all)

    w = sub.add_parser("weights", parents=[common], help="isotropy weights")
    wsub = w.add_subparsers(dest="what", required=True)
    aw = wsub.add_parser("aloff-wallach", parents=[common])
    aw.add_argument("k", type=int)
    aw.add_argument("l", type=int)
    aw.set_defaults(func=cmd_aloff)

    ch = sub.add_parser("check", parents=[common], help="family checks")
    chsub = ch.add_subparsers(dest="what", required=True)
    q = chsub.add_parser("qklm", parents=[common])
    for name in ("k", "l", "m"):
        q.add_argument(name, type=int)
    q.set_defaults(func=cmd_qklm)

    t = sub.add_parser("table", parents=[common], help="print tables")
    tsub = t.add_subparsers(dest="what", required=True)
    tg = tsub.add_parser("g2-subgroups", parents=[common])
    tg.set_defaults(func=cmd_table)

    e = sub.add_parser("enumerate", parents=[common], help="candidate groups for a given dim h")
    e.add_argument("--dim-h", type=int, required=True)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = getattr(args, "json", False)
    try:
        command, inputs, status, body, lines = args.func(args)
    except UsageError as exc:
        if as_json:
            print(render_json(envelope(" ".join(filter(None, [args.group, getattr(args, "what", None)])),
                                       {}, "fail", {"error": str(exc)})))
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if as_json:
        print(render_json(envelope(command, inputs, status, body)))
    else:
        print("\n".join(lines))
    return 1 if status == "fail" else 0


if __name__ == "__main__":
    sys.exit(main())
