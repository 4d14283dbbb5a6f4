import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from config import MLDKIT_LOG_LEVEL, MLDKIT_SEED
from errors import MldkitError, ParseError
from models import CandidateSetSpec, IntersectionData
from services import germs, newton, reid, thresholds, toric, verify
from utils import formatting
from utils.parsing import parse_inputs, parse_rational, parse_weight

logger = logging.getLogger("mldkit")


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, MLDKIT_LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


# Commands. Each returns the payload to print and an exit code.

def run_toric_mld(args):
    pair, _, _ = parse_inputs(args.file, "cone")
    return formatting.mld_payload(toric.toric_mld(pair)), 0


def run_toric_lct(args):
    pair, divisor, _ = parse_inputs(args.file, "cone")
    if divisor is None:
        raise ParseError("missing key 'divisor'", "divisor")
    a = parse_rational(args.a, "--a")
    return formatting.alct_payload(toric.toric_alct(pair, divisor, a), a), 0


def _germ_weight(args):
    germ, boundary = parse_inputs(args.file, "germ")
    weight = germs.admissible_weight(germ, parse_weight(args.weight))
    return germ, boundary, weight


def run_germ_discrepancy(args):
    germ, boundary, weight = _germ_weight(args)
    discrepancy = germs.germ_weight_discrepancy(germ, weight)
    boundary_weight = germs.boundary_weight(germ, boundary, weight)
    return {
        "weight": list(weight.numerators),
        "denominator": weight.denominator,
        "witness_b": weight.witness_b,
        "discrepancy": formatting.format_rational(discrepancy),
        "boundary_weight": formatting.format_rational(boundary_weight),
        "log_discrepancy": formatting.format_rational(1 + discrepancy - boundary_weight),
    }, 0


def run_germ_weights(args):
    germ, _ = parse_inputs(args.file, "germ")
    found = germs.enumerate_admissible_weights(germ, args.budget)
    return {
        "budget": args.budget,
        "count": len(found),
        "weights": [
            {
                "weight": list(w.numerators),
                "witness_b": w.witness_b,
                "discrepancy": formatting.format_rational(germs.germ_weight_discrepancy(germ, w)),
            }
            for w in found
        ],
    }, 0


def run_germ_check(args):
    germ, _, weight = _germ_weight(args)
    report = germs.check_kawakita_pattern(germ, weight)
    certificate = germs.irreducibility_certificate(germ, weight)
    return {
        "weight": list(weight.numerators),
        "denominator": weight.denominator,
        "pattern": formatting.pattern_payload(report),
        "certificate": formatting.certificate_payload(certificate),
    }, 0


def run_ct_bound(args):
    germ, boundary = parse_inputs(args.file, "germ")
    if not boundary:
        raise ParseError("the germ file has no boundary divisor to bound", "boundary")
    return formatting.ct_bound_payload(germs.ct_upper_bound(germ, boundary[0], args.budget)), 0


def run_newton(args):
    if args.action == "reduce":
        dim, points = parse_inputs(args.file, "newton")
        polytope = newton.from_generators(dim, points)
        return {"dim": dim, "vertices": [list(v) for v in polytope.vertices]}, 0
    dim, generators = parse_inputs(args.file, "newton-sequence")
    sequence = [newton.from_generators(dim, points) for points in generators]
    chain = newton.longest_descending_chain(sequence)
    return {
        "dim": dim,
        "chain": chain,
        "length": len(chain),
        "strict_descent": newton.has_strict_descent(sequence),
    }, 0


def _branches(text: str) -> tuple[str, str]:
    signs = tuple(s.strip() for s in text.split(","))
    if len(signs) != 2 or any(s not in ("+", "-") for s in signs):
        raise ParseError(f"expected two signs such as '+,-', got {text!r}", "--branches")
    return signs


def run_reid(args):
    if args.action == "c":
        return {
            "r": args.r,
            "b": args.b,
            "i": args.i,
            "c": formatting.format_rational(reid.c_point(args.r, args.b, args.i)),
        }, 0
    if args.action == "index":
        return {"index": reid.index_from_basket(args.r1, args.d1, args.r2, args.d2)}, 0
    if args.action == "family":
        report = reid.remark_family(args.rparam)
        config = report.config
        payload = {
            "rparam": report.rparam,
            "n": config.n,
            "a": config.a,
            "b": config.b_amb,
            "points": [
                {"r": p.r, "b": p.b, "d": p.d_class, "v": p.v} for p in config.points
            ],
            "index": reid.index_from_basket(config.r1, config.points[0].d_class, config.r2, config.points[1].d_class),
            "passed": report.passed,
            "checks": formatting.checks_payload(report.checks),
        }
        return payload, 0 if report.passed else 1

    config, intersection = parse_inputs(args.file, "basket")
    if args.action == "chi":
        branches = _branches(args.branches) if args.branches else None
        data = intersection if intersection is not None else IntersectionData()
        result = reid.chi_difference(config, data, args.i, args.m, branches)
        return {
            "i": args.i,
            "m": result.m,
            "chi_difference": formatting.format_rational(result.value),
            "delta1": formatting.format_rational(result.delta1),
            "delta2": formatting.format_rational(result.delta2),
            "f": list(result.f_values),
            "branches": list(result.branches),
        }, 0

    report = reid.verify_delta_identity(config, args.r, args.imax)
    return {
        "r": report.r,
        "imax": report.imax,
        "passed": report.passed,
        "violations": list(report.violations),
    }, 0 if report.passed else 1


def run_ct_scan(args):
    kind = "SmoothCT" if args.kind == "smooth" else "CAcT"
    scan = CandidateSetSpec(kind=kind, k=args.k, cap=args.cap)
    records = thresholds.ct_candidates(scan)
    values = [r.value for r in records]
    target = Fraction(1, args.k + 1)
    report = thresholds.accumulation_scan(values, [target])
    if args.emit_csv:
        Path(args.emit_csv).write_text(formatting.candidates_csv(records))
        logger.info(f"Wrote {len(records)} candidates to {args.emit_csv}")
    return {
        "kind": args.kind,
        "k": args.k,
        "cap": args.cap,
        "count": len(values),
        "values": formatting.format_rationals(values),
        "minimum": formatting.format_rational(report.minimum),
        "gap": formatting.format_rational(report.gap),
        "tail_counts": [
            {"target": formatting.format_rational(c.target), "eps": formatting.format_rational(c.eps), "count": c.count}
            for c in report.counts
        ],
    }, 0


def run_verify(args):
    results = verify.run_suites(args.suite, args.seed)
    code = 0 if all(r.passed for r in results) else 1
    if args.format == "json":
        return formatting.verify_payload(results), code
    return formatting.render_verify_table(results), code


COMMANDS = {
    "toric-mld": run_toric_mld,
    "toric-lct": run_toric_lct,
    "germ-discrepancy": run_germ_discrepancy,
    "germ-weights": run_germ_weights,
    "germ-check": run_germ_check,
    "ct-bound": run_ct_bound,
    "newton": run_newton,
    "reid": run_reid,
    "ct-scan": run_ct_scan,
    "verify": run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mldkit", description="Exact minimal log discrepancy computations.")
    parser.add_argument("--format", choices=("json", "human"), default=None, help="output format (default json; verify prints a table)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("toric-mld", help="mld of a toric pair at the fixed point")
    p.add_argument("file")

    p = sub.add_parser("toric-lct", help="a-lc threshold of a toric divisor")
    p.add_argument("file")
    p.add_argument("--a", required=True, help="target mld as p/q")

    for name, text in (
        ("germ-discrepancy", "discrepancy of a weighted blow-up"),
        ("germ-check", "weight table pattern and irreducibility certificate"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--weight", required=True, help="weight numerators, e.g. 5,16,3,7")

    for name, text in (
        ("germ-weights", "admissible weights up to a budget"),
        ("ct-bound", "canonical threshold upper bound for the first boundary divisor"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--budget", type=int, required=True, help="bound on the sum of weight numerators")

    p = sub.add_parser("newton", help="Newton polytope utilities")
    p.add_argument("action", choices=("reduce", "chain"))
    p.add_argument("file")

    p = sub.add_parser("reid", help="Reid basket arithmetic")
    reid_sub = p.add_subparsers(dest="action", required=True)
    q = reid_sub.add_parser("c", help="c_Q for 1/r(1,-1,b) and D ~ iK")
    q.add_argument("r", type=int)
    q.add_argument("b", type=int)
    q.add_argument("i", type=int)
    q = reid_sub.add_parser("delta-check", help="check the delta identity on a basket file")
    q.add_argument("file")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--imax", type=int, required=True)
    q = reid_sub.add_parser("chi", help="chi(D) - chi(D - E) from the file's intersection numbers")
    q.add_argument("file")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--branches", default=None, help="sign branch per point, e.g. '+,-'")
    q = reid_sub.add_parser("index", help="index from basket data")
    for name in ("r1", "d1", "r2", "d2"):
        q.add_argument(name, type=int)
    q = reid_sub.add_parser("family", help="two-point family member")
    q.add_argument("rparam", type=int)

    p = sub.add_parser("ct-scan", help="canonical threshold candidate sets")
    p.add_argument("--kind", choices=("smooth", "cA"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--emit-csv", dest="emit_csv", default=None, metavar="PATH")

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", action="append", choices=sorted(verify.SUITES), help="suite to run (repeatable)")
    p.add_argument("--seed", type=int, default=MLDKIT_SEED)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose)

    try:
        payload, code = COMMANDS[args.command](args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"error: {e.errors()[0].get('msg', e)}", file=sys.stderr)
        return 2
    except MldkitError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if isinstance(payload, str):
        sys.stdout.write(payload)
    elif args.format == "human":
        sys.stdout.write(formatting.render_human(payload))
    else:
        sys.stdout.write(formatting.render_json(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
