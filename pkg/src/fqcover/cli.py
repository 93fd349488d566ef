"""Command-line front end.

Subcommands: verify (brute-force coverage oracle), certify (non-covering
certificate), friable (exact smooth counts), mertens (prime reciprocal
sums), bound (min-degree threshold evaluator), search (distinct covering
systems under an lcm bound).

Exit codes: verify 0 = covers, 1 = does not cover; certify 0 = certified
non-covering, 1 = inconclusive; search 0 = found, 1 = none; any error 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import FieldSpec, format_poly, parse_poly
from .covering import (
    covers,
    density_sum,
    format_system,
    is_distinct,
    load_system,
    multiplicity,
    search_distinct,
    system_to_json_dict,
)
from .distortion import (
    certify,
    explicit_schedule,
    min_degree_threshold,
    uniform_schedule,
)
from .errors import FqcoverError
from .friable import friable_count, friable_table, mertens_sum


def _field_from_args(args) -> FieldSpec:
    q = args.q
    p, e = q, 1
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            e = 0
            n = q
            while n % cand == 0:
                n //= cand
                e += 1
            if n != 1:
                raise FqcoverError(f"q = {q} is not a prime power")
            break
    modulus = None
    if getattr(args, "ext_modulus", None):
        modulus = parse_poly(args.ext_modulus, FieldSpec(p), var="t").coeffs
    return FieldSpec(p, e, modulus)


def _emit_json(payload: dict, stream) -> None:
    stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _config_echo(args, keys) -> dict:
    cfg = {k: getattr(args, k, None) for k in keys}
    cfg["seed"] = getattr(args, "seed", None)
    return cfg


def _cmd_verify(args, out) -> int:
    system = load_system(args.system)
    report = covers(system, limit_bits=args.limit)
    if args.json:
        _emit_json(
            {
                "command": "verify",
                "config": _config_echo(args, ["system", "limit"]),
                "result": report.to_json_dict(),
            },
            out,
        )
    else:
        out.write(
            f"progressions: {len(system)}  lcm degree: {report.lcm_degree}  "
            f"residues checked: {report.residues_checked}\n"
        )
        if report.covers:
            out.write("covers: yes\n")
        else:
            out.write(f"covers: no\nwitness: {format_poly(report.witness)}\n")
    return 0 if report.covers else 1


def _resolve_schedule(args):
    if args.delta is not None and args.schedule is not None:
        raise FqcoverError("--delta and --schedule are mutually exclusive")
    if args.delta is not None:
        return ("uniform", Fraction(args.delta))
    spec = args.schedule if args.schedule is not None else "auto:0"
    kind, _, rest = spec.partition(":")
    if kind == "auto":
        return ("auto", Fraction(rest if rest else "0"))
    if kind == "file":
        values = []
        with open(rest, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    values.append(Fraction(line))
        return ("explicit", values)
    raise FqcoverError(f"bad schedule spec {spec!r}; use auto:<C> or file:<path>")


def _cmd_certify(args, out) -> int:
    system = load_system(args.system)
    kind, value = _resolve_schedule(args)
    if kind == "auto":
        cert = certify(
            system, schedule=None, mode=args.mode, limit_bits=args.limit, auto_cutoff=value
        )
    else:
        from .distortion import build_tower

        levels = build_tower(system).levels
        schedule = (
            uniform_schedule(levels, value) if kind == "uniform" else explicit_schedule(value)
        )
        cert = certify(system, schedule=schedule, mode=args.mode, limit_bits=args.limit)
    payload = cert.to_json_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit_json(payload, fh)
    if args.json or not args.out:
        if args.json:
            _emit_json(payload, out)
        else:
            eta = cert.covered_mass_bound
            out.write(f"mode: {cert.mode}\nschedule: {cert.schedule.provenance}\n")
            for rep in cert.levels:
                out.write(
                    f"  level {rep.level}: prime {format_poly(cert.tower.primes[rep.level - 1])}"
                    f"  delta {rep.delta}  term {rep.term}\n"
                )
            out.write(f"covered-mass bound: {eta}\nverdict: {cert.verdict}\n")
            if cert.oracle and cert.oracle.get("checked"):
                out.write(
                    f"oracle: covers={cert.oracle['covers']} agrees={cert.oracle['agrees']}\n"
                )
    return 0 if cert.certified else 1


def _cmd_friable(args, out) -> int:
    field = _field_from_args(args)
    if args.csv:
        table = friable_table(field, args.n, args.m)
        out.write(table.to_csv())
        return 0
    value = friable_count(field, args.n, args.m)
    if args.json:
        _emit_json(
            {
                "command": "friable",
                "config": _config_echo(args, ["q", "n", "m"]),
                "result": {"count": str(value)},
            },
            out,
        )
    else:
        out.write(f"{value}\n")
    return 0


def _cmd_mertens(args, out) -> int:
    field = _field_from_args(args)
    value = mertens_sum(field, args.max_degree)
    if args.json:
        _emit_json(
            {
                "command": "mertens",
                "config": _config_echo(args, ["q", "max_degree"]),
                "result": {"sum": f"{value.numerator}/{value.denominator}"},
            },
            out,
        )
    else:
        out.write(f"{value}\n")
    return 0


def _cmd_bound(args, out) -> int:
    value = min_degree_threshold(args.q, args.s, args.c)
    if args.json:
        _emit_json(
            {
                "command": "bound",
                "config": _config_echo(args, ["q", "s", "c"]),
                "result": {"threshold": value, "log_convention": "natural"},
            },
            out,
        )
    else:
        out.write(f"{value!r}\n")
    return 0


def _cmd_search(args, out) -> int:
    field = _field_from_args(args)
    bound = parse_poly(args.lcm_bound, field)
    system = search_distinct(field, args.min_degree, bound, limit_bits=args.limit)
    if args.json:
        result = None
        if system is not None:
            result = {
                "system": system_to_json_dict(system),
                "distinct": is_distinct(system),
                "multiplicity": multiplicity(system),
                "density_sum": str(density_sum(system)),
            }
        _emit_json(
            {
                "command": "search",
                "config": _config_echo(args, ["q", "min_degree", "lcm_bound", "limit"]),
                "result": result,
            },
            out,
        )
    elif system is None:
        out.write("none\n")
    else:
        out.write(format_system(system))
    return 0 if system is not None else 1


def _add_field_args(sub, modulus=True):
    sub.add_argument("--q", type=int, required=True, help="field size (prime power)")
    if modulus:
        sub.add_argument(
            "--ext-modulus",
            default=None,
            help="extension-field modulus over F_p in t, e.g. 't^2+t+1'",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqcover",
        description="Covering systems of F_q[x]: verification, friable counts, "
        "and non-covering certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="decide coverage by exhaustive enumeration")
    p_verify.add_argument("system", help="system file path")

    p_certify = sub.add_parser("certify", help="produce a non-covering certificate")
    p_certify.add_argument("system", help="system file path")
    p_certify.add_argument("--mode", choices=("exact", "bounded"), default="exact")
    p_certify.add_argument(
        "--schedule",
        default=None,
        help="auto:<C> (two-phase cutoff constant) or file:<path> (one rational per line)",
    )
    p_certify.add_argument(
        "--delta", default=None, help="uniform distortion parameter, e.g. 1/2"
    )
    p_certify.add_argument("--out", default=None, help="write the JSON certificate here")

    p_friable = sub.add_parser("friable", help="exact friable polynomial counts")
    _add_field_args(p_friable)
    p_friable.add_argument("--n", type=int, required=True, help="degree")
    p_friable.add_argument("--m", type=int, required=True, help="smoothness bound")
    p_friable.add_argument("--csv", action="store_true", help="emit the full table as CSV")

    p_mertens = sub.add_parser("mertens", help="exact sum of 1/|p| over irreducibles")
    _add_field_args(p_mertens)
    p_mertens.add_argument("--max-degree", type=int, required=True)

    p_bound = sub.add_parser("bound", help="evaluate the min-degree threshold")
    p_bound.add_argument("--q", type=int, required=True)
    p_bound.add_argument("--s", type=int, required=True, help="multiplicity")
    p_bound.add_argument("--c", type=float, required=True, help="threshold constant")

    p_search = sub.add_parser("search", help="search for a distinct covering system")
    _add_field_args(p_search)
    p_search.add_argument("--min-degree", type=int, required=True)
    p_search.add_argument("--lcm-bound", required=True, help="monic polynomial, e.g. 'x^2+x'")

    for p_sub in (p_verify, p_certify, p_friable, p_mertens, p_bound, p_search):
        p_sub.add_argument("--limit", type=int, default=24, help="budget: 2^limit residues")
        p_sub.add_argument("--json", action="store_true", help="machine-readable output")
        p_sub.add_argument("--seed", type=int, default=None, help="echoed into JSON output")
    return parser


_DISPATCH = {
    "verify": _cmd_verify,
    "certify": _cmd_certify,
    "friable": _cmd_friable,
    "mertens": _cmd_mertens,
    "bound": _cmd_bound,
    "search": _cmd_search,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args, out)
    except (FqcoverError, ZeroDivisionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
