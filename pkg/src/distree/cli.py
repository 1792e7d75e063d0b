"""Command-line entry point (``distree``).

Exit codes: 0 success, 1 counterexample or internal inconsistency,
2 usage error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .campaign import CampaignConfig, run_campaign
from .errors import DistreeError, GraphParseError, InvalidParameterError
from .extremal import ExtremalFamily, ExtremalSpec, build_extremal, exact_rho_extremal_detail
from .graph import encode_graph, read_graph_file
from .packing import (
    nu_f_exact,
    packing_certificate_json,
    p_result_json,
    partition_json,
    rational_json,
    tau_packing,
    verify_P,
)
from .spectral import DEFAULT_TOL, apsp, rayleigh_lower_bound, rho_d

EXIT_OK, EXIT_FLAGGED, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _estimate_json(est) -> dict:
    return {"lo": est.lo, "hi": est.hi, "value": est.value, "iterations": est.iterations, "residual": est.residual}


def cmd_rho_d(args) -> int:
    g = read_graph_file(args.graphfile)
    dm = apsp(g)
    est = rho_d(dm, args.tol)
    _emit({"n": g.n, "m": g.m, "rho_d": _estimate_json(est), "rayleigh_lower_bound": rational_json(rayleigh_lower_bound(dm))})
    return EXIT_OK


def cmd_nu_f(args) -> int:
    g = read_graph_file(args.graphfile)
    nu, part = nu_f_exact(g, args.max_n)
    _emit({"n": g.n, "m": g.m, "nu_f": rational_json(nu), "argmin": partition_json(part)})
    return EXIT_OK


def cmd_tau(args) -> int:
    g = read_graph_file(args.graphfile)
    cert = tau_packing(g, args.k)
    _emit({"n": g.n, "m": g.m, "k": args.k, "certificate": packing_certificate_json(cert)})
    return EXIT_OK


def cmd_verify_p(args) -> int:
    g = read_graph_file(args.graphfile)
    res = verify_P(g, args.k, args.d)
    _emit({"n": g.n, "m": g.m, "k": args.k, "d": args.d, "result": p_result_json(res)})
    return EXIT_OK


def cmd_extremal(args) -> int:
    spec = ExtremalSpec(ExtremalFamily.parse(args.family), args.k, args.n)
    if args.emit == "graph":
        sys.stdout.write(encode_graph(build_extremal(spec), args.graph_format).decode("ascii"))
        return EXIT_OK
    res = exact_rho_extremal_detail(spec, args.tol)
    doc = {
        "family": spec.family.value, "k": spec.k, "n": spec.n,
        "rho_d": _estimate_json(res.exact), "power_iteration": _estimate_json(res.power),
        "bound": rational_json(spec.bound), "in_hypothesis": spec.in_hypothesis,
        "quotient": {"sizes": list(res.quotient.sizes), "matrix": [list(r) for r in res.quotient.b]},
    }
    if args.emit == "both":
        doc["graph"] = encode_graph(build_extremal(spec), "edge_list").decode("ascii")
    _emit(doc)
    return EXIT_OK


def cmd_campaign(args) -> int:
    with open(args.config) as fh:
        data = json.load(fh)
    for key, val in (("seed", args.seed), ("sample_count", args.samples), ("out", args.out), ("format", args.format)):
        if val is not None:
            data[key] = val
    cfg = CampaignConfig.from_dict(data)
    report = run_campaign(cfg)
    text = report.write(cfg.out, cfg.format)
    if not cfg.out:
        sys.stdout.write(text)
    summary = {k: v for k, v in report.summary.items() if k != "per_config"}
    sys.stderr.write(f"{report.campaign}: {json.dumps(summary, sort_keys=True)}\n")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="distree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rho-d", help="certified distance spectral radius")
    s.add_argument("graphfile")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_rho_d)

    s = sub.add_parser("nu-f", help="exact fractional packing number")
    s.add_argument("graphfile")
    s.add_argument("--max-n", type=int, default=12)
    s.set_defaults(func=cmd_nu_f)

    s = sub.add_parser("tau", help="k edge-disjoint spanning trees or a violating partition")
    s.add_argument("graphfile")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("verify-p", help="decide property P(k, d)")
    s.add_argument("graphfile")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_verify_p)

    s = sub.add_parser("extremal", help="extremal family graph and radius")
    s.add_argument("--family", required=True, choices=["g1", "g2"])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit", choices=["graph", "rho", "both"], default="both")
    s.add_argument("--graph-format", choices=["edge_list", "graph6"], default="edge_list")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("campaign", help="run a verification campaign from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"])
    s.set_defaults(func=cmd_campaign)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameterError, GraphParseError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"distree: error: {exc}\n")
        return EXIT_USAGE
    except DistreeError as exc:
        sys.stderr.write(f"distree: {type(exc).__name__}: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
