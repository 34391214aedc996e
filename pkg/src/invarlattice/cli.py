"""Command-line front end.

Exit codes: 0 ok, 1 computation error, 2 usage error, 3 theory violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds as bd
from .enumeration import DEFAULT_BUDGET, Geometry
from .errors import ComputationError, InputError, InvarLatticeError, TheoryViolation
from .group_chars import make_group, reduce_support
from .witness import generator_witness, monomial_string

EXIT_OK, EXIT_COMPUTATION, EXIT_USAGE, EXIT_THEORY = 0, 1, 2, 3


class UsageError(InputError):
    code = "usage"


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> range:
    """``3:12`` is inclusive on both ends; a bare ``7`` means just 7."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected LO:HI") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_chars(text: str, num_factors: int) -> list:
    chars = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            if ":" in tok:
                chars.append(tuple(int(x) for x in tok.split(":")))
            elif num_factors == 1:
                chars.append(int(tok))
            else:
                raise UsageError(
                    f"character {tok!r}: product groups need colon-separated residues")
        except ValueError:
            raise UsageError(f"bad character {tok!r}") from None
    return chars


def support_from_args(args):
    if (args.modulus is None) == (args.factors is None):
        raise UsageError("give exactly one of --modulus or --factors")
    if args.chars is None:
        raise UsageError("--chars is required")
    orders = [args.modulus] if args.modulus is not None else parse_int_list(args.factors)
    group = make_group(orders)
    support = reduce_support(group, parse_chars(args.chars, group.num_factors))
    if support.m == 0:
        raise UsageError("the support is empty once trivial and repeated characters are removed")
    return support


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2)


def _table(rows, header) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join(
        "  ".join(c.ljust(w) if i == 0 and not c.lstrip("-").isdigit() else c.rjust(w)
                  for i, (c, w) in enumerate(zip(r, widths))).rstrip()
        for r in cells
    )


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _fmt_index(x):
    return "infinite" if x == bd.INFINITE else x


def cmd_bounds(args) -> str:
    support = support_from_args(args)
    report = bd.verify_all(support, mode=args.mode, budget=args.budget)
    if args.format == "json":
        return _dump_json(report.to_dict())
    theo = report.theoretical
    rows = [
        ("group", support.group.describe()),
        ("support", support.describe()),
        ("m", report.m),
        ("effective_order", report.effective_order),
        ("gamma_r", report.gamma_r),
        ("beta_r", report.beta_r),
        ("gamma_poly", report.gamma_poly),
        ("beta_poly", report.beta_poly),
        ("successive_minima", " ".join(map(str, report.successive_minima or []))),
        ("extension_indices", " ".join(
            f"{d}:{_fmt_index(i)}" for d, i in report.extension_indices.items())),
        ("root_lower_bound", theo.root_lower_bound),
        ("hard_floor", theo.hard_floor),
        ("involution_only", theo.involution_only),
        ("noether_cap", theo.noether_cap),
        ("extremal", theo.extremal),
        ("extremal_structure", theo.extremal_structure),
        ("family_value", theo.family_value),
        ("minkowski_rhs", theo.minkowski_rhs),
        ("prime_upper_bound", theo.prime_upper_bound),
        ("real_field_note", report.real_field_note),
        ("checks_passed", f"{sum(report.checks.values())}/{len(report.checks)}"),
    ]
    rows = [(k, "-" if v is None else v) for k, v in rows]
    if args.format == "csv":
        return _csv([[v for _, v in rows]], [k for k, _ in rows])
    return _table(rows, ["quantity", "value"])


def _family_cell(cell):
    n, m, budget = cell
    support = bd.family_support(n, m)
    prof = bd.DegreeProfile(bd.invariant_lattice(support), "cross", budget,
                            cap=bd.effective_order(support))
    g, b = prof.gamma(), prof.beta()
    pred = bd.family_value(n, m)
    return (n, m, pred, b, g, b == g == pred)


FAMILY_HEADER = ["n", "m", "predicted", "computed_beta_r", "computed_gamma_r", "match"]


def run_family(ns, ms, budget=DEFAULT_BUDGET, workers=1) -> list[tuple]:
    """One row per valid (n, m) cell, in (n, m) order regardless of worker count."""
    cells = [(n, m, budget) for n in ns for m in ms if n >= 3 and 1 <= m < n]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_family_cell, cells, chunksize=4))
    return [_family_cell(c) for c in cells]


def cmd_family(args):
    rows = run_family(parse_range(args.n), parse_range(args.m), args.budget, args.workers)
    if not rows:
        raise UsageError("no valid (n, m) cells in the requested ranges")
    if args.format == "json":
        out = _dump_json({"schema": bd.SCHEMA,
                          "rows": [dict(zip(FAMILY_HEADER, r)) for r in rows]})
    elif args.format == "csv":
        out = _csv(rows, FAMILY_HEADER)
    else:
        out = _table(rows, FAMILY_HEADER)
    mismatches = [r for r in rows if not r[-1]]
    return out, (EXIT_THEORY if mismatches else EXIT_OK)


def cmd_minima(args) -> str:
    support = support_from_args(args)
    lam = bd.successive_minima(support, args.budget)
    if args.format == "json":
        return _dump_json({"schema": bd.SCHEMA, "successive_minima": lam})
    if args.format == "csv":
        return _csv([lam], [f"lambda_{i}" for i in range(1, len(lam) + 1)])
    return " ".join(map(str, lam))


def _need_degree(args):
    if args.degree is None:
        raise UsageError("--degree is required")
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    return args.degree


def cmd_witness(args) -> str:
    support = support_from_args(args)
    cert = generator_witness(support, _need_degree(args), args.geometry, args.budget)
    names = support.var_names()
    if args.format == "json":
        return _dump_json({"schema": bd.SCHEMA, **cert.to_dict(names)})
    rows = [(" ".join(map(str, p)), deg, monomial_string(p, names))
            for p, deg in zip(cert.generators, cert.generators.degrees)]
    if args.format == "csv":
        return _csv(rows, ["exponents", "degree", "monomial"])
    lines = [_table(rows, ["exponents", "degree", "monomial"]), "", "coefficients:"]
    lines += ["  " + " ".join(map(str, r)) for r in cert.coefficients]
    lines += ["target basis:"] + ["  " + " ".join(map(str, r)) for r in cert.target_basis]
    return "\n".join(lines)


def cmd_index(args) -> str:
    support = support_from_args(args)
    idx = _fmt_index(bd.extension_index(support, _need_degree(args), args.geometry, args.budget))
    if args.format == "json":
        return _dump_json({"schema": bd.SCHEMA, "degree": args.degree,
                           "geometry": args.geometry.value, "index": idx})
    if args.format == "csv":
        return _csv([[args.degree, args.geometry.value, idx]], ["degree", "geometry", "index"])
    return str(idx)


def _random_supports(count, max_order, max_m, seed):
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        n = rng.randint(2, max_order)
        group = make_group([n])
        raw = [rng.randrange(n) for _ in range(rng.randint(1, max_m))]
        support = reduce_support(group, raw)
        if support.m:
            produced += 1
            yield support


def cmd_verify(args):
    if args.random:
        supports = list(_random_supports(args.random, args.max_order, args.max_m, args.seed))
    else:
        supports = [support_from_args(args)]
    lines = []
    for s in supports:
        r = bd.verify_all(s, mode=args.mode, budget=args.budget, witnesses=False)
        lines.append(f"PASS {s.group.describe()} {s.describe()} "
                     f"gamma_r={r.gamma_r} beta_r={r.beta_r} "
                     f"gamma_poly={r.gamma_poly} beta_poly={r.beta_poly} "
                     f"checks={len(r.checks)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invar-lattice",
        description="Degree bounds for rational invariants of diagonal abelian group actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, instance=True, degree=False):
        if instance:
            p.add_argument("--modulus", type=int, help="cyclic group Z/N")
            p.add_argument("--factors", help="product group, e.g. 3,3 for Z/3 x Z/3")
            p.add_argument("--chars", help="characters: 1,2,4 (cyclic) or 1:0,0:1 (product)")
        if degree:
            p.add_argument("--degree", type=int)
            p.add_argument("--geometry", type=Geometry.parse, default=Geometry.CROSS_POLYTOPE,
                           help="cross or simplex")
        p.add_argument("--format", choices=["table", "json", "csv"], default="table")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="maximum number of enumerated points")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bounds", help="all bounds and theory checks for one instance")
    common(p)
    p.add_argument("--mode", choices=["rational", "polynomial", "both"], default="both")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("family", help="sweep the +-1,...,+-m/2 family over (n, m)")
    common(p, instance=False)
    p.add_argument("--n", required=True, help="inclusive range LO:HI")
    p.add_argument("--m", required=True, help="inclusive range LO:HI")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("minima", help="successive minima of the L1 ball")
    common(p)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser("witness", help="generators of degree <= D with coefficients")
    common(p, degree=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("index", help="field extension index at degree D")
    common(p, degree=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", help="run every theory check on one or many instances")
    common(p)
    p.add_argument("--mode", choices=["rational", "polynomial", "both"], default="both")
    p.add_argument("--random", type=int, default=0, help="check N random cyclic instances")
    p.add_argument("--max-order", type=int, default=60)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_negative_values(argv):
    # let "--chars -1,1" through: argparse would read "-1,1" as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--chars", "--factors", "--n", "--m"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def _error(exc: InvarLatticeError, code: int) -> int:
    print(f"error[{exc.code}]: {exc}", file=sys.stderr)
    if isinstance(exc, TheoryViolation) and exc.instance:
        print(json.dumps({"instance": exc.instance}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.budget < 1 or args.workers < 1:
            raise UsageError("--budget and --workers must be positive")
        result = args.func(args)
    except TheoryViolation as e:
        return _error(e, EXIT_THEORY)
    except ComputationError as e:
        return _error(e, EXIT_COMPUTATION)
    except InputError as e:
        return _error(e, EXIT_USAGE)
    except InvarLatticeError as e:
        return _error(e, EXIT_COMPUTATION)
    out, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
