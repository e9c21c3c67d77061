"""Command-line surface: characters, fixed points, discrepancies, geometry.

Exit codes: 0 success / verified, 1 verification failure, 2 usage error.
JSON and CSV schemas are documented in docs/formats.md.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bundles, charring, fixedpoints, geometry, polytope
from .rootsys import TypeA, TypeC

ENUM_LIMIT = 4
ABL_LIMIT = 3


class UsageError(Exception):
    pass


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}: expected comma-separated integers")
    return vals


def _check_lambda(lam: tuple[int, ...], r: int) -> tuple[int, ...]:
    if len(lam) != r or any(m < 0 for m in lam):
        raise UsageError(
            f"lambda must be {r} nonnegative integers m_1,...,m_{r}, got {lam}"
        )
    return lam


def _check_d(d: tuple[int, ...], n: int) -> tuple[int, ...]:
    if list(d) != sorted(set(d)) or not d or d[0] < 1 or d[-1] > n:
        raise UsageError(f"d must be strictly increasing within 1..{n}, got {d}")
    return d


def _soft_limit(n: int, limit: int, force: bool, what: str) -> None:
    if n > limit and not force:
        raise UsageError(
            f"n = {n} exceeds the soft limit {limit} for {what}; "
            f"rerun with --force to proceed anyway"
        )


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _system(args):
    if getattr(args, "system", "C") == "A":
        return TypeA(args.n), args.n - 1
    return TypeC(args.n), args.n


# ---------------------------------------------------------------------------
# commands


def cmd_dim(args) -> int:
    system, r = _system(args)
    _soft_limit(args.n, ENUM_LIMIT, args.force, "lattice enumeration")
    lam = _check_lambda(_parse_ints(args.lam, "lambda"), r)
    _emit(str(polytope.dimension(lam, system)), args.output)
    return 0


def cmd_qchar(args) -> int:
    system, r = _system(args)
    _soft_limit(args.n, ENUM_LIMIT, args.force, "lattice enumeration")
    lam = _check_lambda(_parse_ints(args.lam, "lambda"), r)
    gc = polytope.graded_character(lam, system)
    doc = {
        "command": "qchar",
        "n": args.n,
        "lambda": list(lam),
        "weight_basis": args.weight_basis,
        "terms": charring.to_json_terms(gc, args.weight_basis),
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def cmd_weyl(args) -> int:
    _soft_limit(args.n, ENUM_LIMIT, args.force, "the Weyl group sum")
    lam = _check_lambda(_parse_ints(args.lam, "lambda"), args.n)
    ch = charring.weyl_character(lam, args.n)
    doc = {
        "command": "weyl",
        "n": args.n,
        "lambda": list(lam),
        "dimension": charring.weyl_dimension(lam, args.n),
        "weight_basis": args.weight_basis,
        "terms": charring.to_json_terms(ch, args.weight_basis),
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def cmd_polytope(args) -> int:
    system, r = _system(args)
    _soft_limit(args.n, ENUM_LIMIT, args.force, "lattice enumeration")
    lam = _check_lambda(_parse_ints(args.lam, "lambda"), r)
    spec = polytope.polytope_spec(lam, system)
    points = polytope.lattice_points(spec)
    doc = {
        "command": "polytope",
        "n": args.n,
        "lambda": list(lam),
        "roots": [[root.i, root.j] for root in spec.roots],
        "inequalities": [
            {"support": sorted(idx), "bound": bound}
            for idx, bound in spec.inequalities
        ],
        "points": [list(p) for p in points],
        "count": len(points),
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def _complete_prefix(job):
    n, prefix = job
    return fixedpoints.enumerate_fixed_points(n, prefix)


def _enumerate_parallel(n: int, threads: int):
    if threads <= 1:
        return fixedpoints.enumerate_fixed_points(n)
    depth = max(1, min(n * n, (threads - 1).bit_length()))
    prefixes = fixedpoints.prefix_split(n, depth)
    out = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for chunk in pool.map(_complete_prefix, [(n, p) for p in prefixes]):
            out.extend(chunk)
    return out


def cmd_fixed_points(args) -> int:
    _soft_limit(args.n, ENUM_LIMIT, args.force, "fixed-point enumeration")
    colls = _enumerate_parallel(args.n, args.threads)
    if args.count:
        _emit(str(len(colls)), args.output)
        return 0
    doc = {
        "command": "fixed-points",
        "n": args.n,
        "count": len(colls),
        "collections": [
            {f"{i},{j}": sorted(s) for (i, j), s in sorted(coll.items())}
            for coll in colls
        ],
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


def _eval_chunk(job):
    m_vec, n, terms_chunk, points, inverted = job
    return [
        fixedpoints.abl_evaluate(m_vec, pt, n, terms=terms_chunk, inverted=inverted)
        for pt in points
    ]


def cmd_abl_verify(args) -> int:
    _soft_limit(args.n, ABL_LIMIT, args.force, "localization verification")
    lam = _check_lambda(_parse_ints(args.lam, "lambda"), args.n)
    seed = args.seed if args.seed is not None else int(os.environ.get("SPFLAG_SEED", "0"))
    if args.threads <= 1:
        report = fixedpoints.abl_verify(lam, args.n, args.trials, seed)
    else:
        report = _abl_verify_parallel(lam, args.n, args.trials, seed, args.threads)
    _emit(json.dumps(report, indent=2), args.output)
    return 0 if report["matched"] else 1


def _abl_verify_parallel(lam, n, trials, seed, threads) -> dict:
    """Same contract as fixedpoints.abl_verify, summing term chunks in workers."""
    import random

    rng = random.Random(seed)
    terms = fixedpoints.abl_terms(n)
    gc = polytope.graded_character(tuple(lam), TypeC(n))
    points = []
    attempts = 0
    while len(points) < trials:
        attempts += 1
        if attempts > 50 * trials + 50:
            raise fixedpoints.DenominatorZeroError(
                "could not sample points avoiding denominator zeros"
            )
        pt = fixedpoints.sample_point(n, rng)
        try:
            fixedpoints.abl_evaluate((0,) * n, pt, n, terms=terms)
        except fixedpoints.DenominatorZeroError:
            continue
        points.append(pt)
    size = (len(terms) + threads - 1) // threads
    chunks = [terms[k : k + size] for k in range(0, len(terms), size)]

    def run(inverted: bool) -> list[dict]:
        jobs = [(tuple(lam), n, chunk, points, inverted) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(_eval_chunk, jobs))
        rows = []
        for idx, pt in enumerate(points):
            lhs = sum((p[idx] for p in partials), Fraction(0))
            rhs = gc.evaluate(pt)
            rows.append(
                {
                    "z": [str(z) for z in pt.zs],
                    "q": str(pt.q),
                    "abl": str(lhs),
                    "character": str(rhs),
                    "equal": lhs == rhs,
                }
            )
        return rows

    rows = run(False)
    convention = "direct"
    if not all(r["equal"] for r in rows):
        inv = run(True)
        if all(r["equal"] for r in inv):
            rows, convention = inv, "inverted"
    return {
        "n": n,
        "lambda": list(lam),
        "trials": trials,
        "seed": seed,
        "points": rows,
        "matched": all(r["equal"] for r in rows),
        "convention": convention,
    }


def cmd_discrepancy(args) -> int:
    _soft_limit(args.n, ENUM_LIMIT, args.force, "discrepancy tables")
    d = _check_d(_parse_ints(args.d, "d"), args.n)
    rows = bundles.discrepancy_table(d, args.n)
    identity_ok, _ = bundles.verify_canonical_identity(d, args.n)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["i", "j", "b", "exceptional"])
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        doc = {
            "command": "discrepancy",
            "n": args.n,
            "d": list(d),
            "rows": rows,
            "canonical_identity": identity_ok,
        }
        _emit(json.dumps(doc, indent=2), args.output)
    return 0 if identity_ok else 1


def _matrix_from_json(rows, two_n: int) -> geometry.Subspace:
    vecs = [[Fraction(x) for x in row] for row in rows]
    for v in vecs:
        if len(v) != two_n:
            raise UsageError(f"matrix rows must have length {two_n}")
    return geometry.Subspace.span(vecs, two_n)


def _matrix_to_json(u: geometry.Subspace) -> list[list[str]]:
    return [[str(x) for x in row] for row in u.rows]


def _load_flag(path: str) -> tuple[geometry.FlagPoint, int]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        n = int(doc["n"])
        d = tuple(int(x) for x in doc["d"])
        spaces = tuple(_matrix_from_json(m, 2 * n) for m in doc["spaces"])
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read flag point from {path}: {exc}")
    _check_d(d, n)
    if len(spaces) != len(d):
        raise UsageError("number of spaces does not match d")
    return geometry.FlagPoint(d, spaces), n


def cmd_check_geometry(args) -> int:
    flag, n = _load_flag(args.input)
    if args.n is not None and args.n != n:
        raise UsageError(f"--n {args.n} disagrees with input file n = {n}")
    if args.d is not None and tuple(_parse_ints(args.d, "d")) != flag.d:
        raise UsageError(f"--d {args.d} disagrees with input file d = {list(flag.d)}")
    try:
        member = geometry.in_sp_flag_a(flag, n)
    except ValueError as exc:
        raise UsageError(str(exc))
    doc = {
        "command": "check-geometry",
        "n": n,
        "d": list(flag.d),
        "member": member,
        "dims": [v.dim for v in flag.spaces],
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0 if member else 1


def cmd_lift(args) -> int:
    flag, n = _load_flag(args.input)
    try:
        point = geometry.lift(flag, n)
    except geometry.LiftError as exc:
        _emit(json.dumps({"command": "lift", "error": str(exc)}, indent=2), args.output)
        return 1
    doc = {
        "command": "lift",
        "n": n,
        "d": list(flag.d),
        "spaces": {
            f"{i},{j}": _matrix_to_json(v) for (i, j), v in sorted(point.spaces.items())
        },
    }
    _emit(json.dumps(doc, indent=2), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spflag",
        description="Exact characters and geometry checks for degenerate symplectic flags",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, lam=False, d=False, system=False):
        p.add_argument("--n", type=int, required=True, help="rank n (sp_2n)")
        if lam:
            p.add_argument(
                "--lambda", dest="lam", required=True, help="m_1,...,m_n fundamental coefficients"
            )
        if d:
            p.add_argument("--d", required=True, help="strictly increasing indices d_1,...,d_k")
        if system:
            p.add_argument(
                "--system", choices=["C", "A"], default="C",
                help="root system: C (sp_2n, default) or A (sl_n; lambda has n-1 entries)",
            )
        p.add_argument("--force", action="store_true", help="override soft size limits")
        p.add_argument("--output", help="write output to a file instead of stdout")

    p = sub.add_parser("dim", help="dimension by lattice-point count")
    common(p, lam=True, system=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("qchar", help="PBW-graded character as JSON")
    common(p, lam=True, system=True)
    p.add_argument("--weight-basis", choices=["eps", "omega"], default="eps")
    p.set_defaults(func=cmd_qchar)

    p = sub.add_parser("weyl", help="Weyl character oracle as JSON")
    common(p, lam=True)
    p.add_argument("--weight-basis", choices=["eps", "omega"], default="eps")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("polytope", help="dump inequalities and lattice points")
    common(p, lam=True, system=True)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("fixed-points", help="enumerate admissible collections")
    common(p)
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument("--threads", type=int, default=1, help="worker count")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("abl-verify", help="verify the localization character identity")
    common(p, lam=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None, help="defaults to $SPFLAG_SEED or 0")
    p.add_argument("--threads", type=int, default=1, help="worker count")
    p.set_defaults(func=cmd_abl_verify)

    p = sub.add_parser("discrepancy", help="discrepancy coefficients table")
    common(p, d=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("check-geometry", help="flag membership test from a JSON file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", default=None)
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_check_geometry)

    p = sub.add_parser("lift", help="lift a flag point to the resolution")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_lift)

    return top


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
