"""Command-line front end.

Exit status: 0 on success or a passing verification, 1 when a requested
verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import sympy

from . import __version__
from .arith import FieldMismatchError
from .constructions import (
    Sign,
    TFamilySpec,
    classify_t_family,
    example_regular_plus_two,
    perturb,
    regular_simplex,
    simplex_with_center,
    t_family,
)
from .geometry import distance_set, embedding_dimension
from .ideals import place, primes_above
from .jsonio import (
    SchemaError,
    dumps,
    place_to_json,
    pointset_to_json,
    qelem_to_json,
    read_pointset,
    write_report,
)
from .modular import (
    check_cardinality_bound,
    mod_profile_sweep,
    obstruction_determinant,
    verify_tight_one_distance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP_HEADER = ("p", "splitting", "c", "normalizable", "sMod", "zeroResidue", "tight")


class UsageError(Exception):
    pass


def _tsv_cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _tsv(header, rows) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(_tsv_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _sweep_json(rows) -> list[dict]:
    return [dict(zip(SWEEP_HEADER, r.as_tuple())) for r in rows]


def _verdict_json(v) -> dict:
    return {
        "place": place_to_json(v.place),
        "isTight": v.is_tight,
        "n": v.n,
        "d": v.d,
        "sMod": v.s_mod,
        "normalizable": v.normalizable,
        "zeroResidue": v.zero_residue,
        "reasons": list(v.reasons),
        "scaler": qelem_to_json(v.scaler),
        "distances": [qelem_to_json(a) for a in v.distances],
        "boundHolds": check_cardinality_bound(v.n, max(v.d, 1), v.s_mod),
    }


def _obstruction_json(rep) -> dict:
    return {
        "n": rep.n,
        "d": rep.d,
        "det": qelem_to_json(rep.det),
        "detIsZero": rep.det_is_zero,
        "patternHolds": rep.pattern_holds,
        "detCongruentToN": rep.det_congruent_to_n,
        "nModP": rep.n_mod_p,
        "nMod4": rep.n_mod_4,
        "applies": rep.applies,
        "consistent": rep.consistent,
    }


def _places(field, p: int, root):
    if root is not None:
        return [place(field, p, root)]
    return primes_above(field, p)


# -- verbs -------------------------------------------------------------------


def _construct(args):
    fam = args.family
    if fam == "simplex":
        X = regular_simplex(args.d)
    elif fam == "simplex-center":
        X = simplex_with_center(args.d)
    elif fam == "eq31":
        X = example_regular_plus_two(args.d)
    elif fam == "tfamily":
        if args.k is None:
            raise UsageError("tfamily needs --k")
        X = t_family(TFamilySpec(args.d, args.k, Sign(args.sign)))
    elif fam == "perturb":
        return _perturb(args)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    write_report(dumps(pointset_to_json(X)), args.output, sys.stdout)
    return EXIT_OK


def _read_seeds(path, n, width):
    try:
        seeds = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if (
        not isinstance(seeds, list)
        or len(seeds) != n
        or any(not isinstance(r, list) or len(r) != width for r in seeds)
        or any(isinstance(v, bool) or not isinstance(v, int) for r in seeds for v in r)
    ):
        raise SchemaError(f"{path}: seeds must be a {n} x {width} array of integers")
    return seeds


def _perturb(args):
    if args.input is None or args.place is None:
        raise UsageError("perturb needs --input and --place")
    X = read_pointset(args.input)
    P = _places(X.field, args.place, args.root)[0]
    if args.seed_file:
        seeds = _read_seeds(args.seed_file, X.n, X.coord_count)
    else:
        rng = random.Random(args.seed)
        seeds = [[rng.randint(-args.amplitude, args.amplitude) for _ in range(X.coord_count)] for _ in range(X.n)]
    Y = perturb(X, P, seeds)
    write_report(dumps(pointset_to_json(Y)), args.output, sys.stdout)
    return EXIT_OK


def _verify(args):
    X = read_pointset(args.input)
    verdicts = [verify_tight_one_distance(X, P) for P in _places(X.field, args.place, args.root)]
    out = {"n": X.n, "d": verdicts[0].d, "verdicts": []}
    for v in verdicts:
        entry = _verdict_json(v)
        if v.is_tight:
            entry["obstruction"] = _obstruction_json(obstruction_determinant(X, v.place))
        out["verdicts"].append(entry)
    out["isTight"] = any(v.is_tight for v in verdicts)
    write_report(dumps(out), args.output, sys.stdout)
    return EXIT_OK if out["isTight"] else EXIT_FAIL


def _analyze(args):
    X = read_pointset(args.input)
    rows = mod_profile_sweep(X, args.pmax, jobs=args.jobs)
    if args.format == "json":
        report = dumps(
            {
                "n": X.n,
                "d": embedding_dimension(X),
                "distances": [qelem_to_json(a) for a in distance_set(X)],
                "places": _sweep_json(rows),
            }
        )
    else:
        report = _tsv(SWEEP_HEADER, [r.as_tuple() for r in rows])
    write_report(report, args.output, sys.stdout)
    return EXIT_OK


def _classify_cell(dk):
    d, k = dk
    spec = TFamilySpec(d, k)
    if spec.field_r == 1:
        return None
    v = classify_t_family(d, k)
    return (d, k, spec.field_r, v.closed_form, v.computed, v.agree,
            v.place.p if v.place else None, v.place.c if v.place else None)


def _classify(args):
    cells = [(d, k) for d in range(2, args.dmax + 1) for k in range(2, d + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_classify_cell, cells, chunksize=8))
    else:
        results = [_classify_cell(c) for c in cells]
    rows = [r for r in results if r is not None]
    header = ("d", "k", "r", "closedForm", "computed", "agree", "p", "c")
    if args.format == "json":
        report = dumps([dict(zip(header, r)) for r in rows])
    else:
        report = _tsv(header, rows)
    write_report(report, args.output, sys.stdout)
    return EXIT_OK if all(r[5] for r in rows) else EXIT_FAIL


_FAMILIES = {"eq31": example_regular_plus_two, "simplex-center": simplex_with_center, "simplex": regular_simplex}


def _sweep_cell(job):
    family, d, p_max = job
    X = _FAMILIES[family](d)
    return [(d,) + r.as_tuple() for r in mod_profile_sweep(X, p_max)]


def _sweep(args):
    d_min = 1
    jobs = [(args.family, d, args.pmax) for d in range(d_min, args.dmax + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_sweep_cell, jobs))
    else:
        chunks = [_sweep_cell(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    if args.tight_only:
        rows = [r for r in rows if r[-1]]
    header = ("d",) + SWEEP_HEADER
    if args.format == "json":
        report = dumps([dict(zip(header, r)) for r in rows])
    else:
        report = _tsv(header, rows)
    write_report(report, args.output, sys.stdout)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive_int(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _prime(s):
    v = _positive_int(s)
    if not sympy.isprime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _io_flags(p, needs_input=False):
    p.add_argument("-i", "--input", required=needs_input, help="point set JSON file")
    p.add_argument("-o", "--output", help="write the report here instead of standard output")


def _perturb_flags(p):
    p.add_argument("--place", type=_prime, help="rational prime below the place")
    p.add_argument("--root", type=int, help="root c selecting a split place")
    p.add_argument("--seed-file", help="JSON n x m integer seed array")
    p.add_argument("--seed", type=int, default=0, help="random seed when no seed file is given (default 0)")
    p.add_argument("--amplitude", type=int, default=2, help="random seeds are drawn from [-A, A] (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moddist", description="Tight distance sets modulo prime ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", help="emit a point set from one of the explicit families")
    c.add_argument("family", choices=["simplex", "simplex-center", "eq31", "tfamily", "perturb"])
    c.add_argument("--d", type=_positive_int, help="dimension")
    c.add_argument("--k", type=_positive_int, help="number of coordinates equal to c (tfamily)")
    c.add_argument("--sign", choices=["+", "-"], default="+", help="root branch for beta (tfamily)")
    _io_flags(c)
    _perturb_flags(c)
    c.set_defaults(func=_construct)

    pt = sub.add_parser("perturb", help="perturb a point set keeping its residues at a place")
    _io_flags(pt, needs_input=True)
    _perturb_flags(pt)
    pt.set_defaults(func=_perturb)

    v = sub.add_parser("verify", help="tightness verdict at the places above a prime")
    _io_flags(v, needs_input=True)
    v.add_argument("--place", type=_prime, required=True)
    v.add_argument("--root", type=int)
    v.set_defaults(func=_verify)

    a = sub.add_parser("analyze", help="residue profile at every place above primes <= pmax")
    _io_flags(a, needs_input=True)
    a.add_argument("--pmax", type=_positive_int, default=13)
    a.add_argument("--jobs", type=_positive_int, default=1)
    a.add_argument("--format", choices=["tsv", "json"], default="tsv")
    a.set_defaults(func=_analyze)

    k = sub.add_parser("classify", help="T-family grid: closed form against computed integrality")
    k.add_argument("--dmax", type=_positive_int, default=30)
    k.add_argument("--jobs", type=_positive_int, default=1)
    k.add_argument("--format", choices=["tsv", "json"], default="tsv")
    _io_flags(k)
    k.set_defaults(func=_classify)

    s = sub.add_parser("sweep", help="residue profiles of a family over d <= dmax and p <= pmax")
    s.add_argument("--family", choices=sorted(_FAMILIES), default="eq31")
    s.add_argument("--dmax", type=_positive_int, default=20)
    s.add_argument("--pmax", type=_positive_int, default=13)
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--tight-only", action="store_true", help="only rows where the set is tight")
    s.add_argument("--format", choices=["tsv", "json"], default="tsv")
    _io_flags(s)
    s.set_defaults(func=_sweep)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.verb == "construct" and args.family != "perturb" and args.d is None:
        print(f"moddist: error: construct {args.family} needs --d", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, SchemaError, FieldMismatchError, ValueError, OSError) as exc:
        print(f"moddist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
