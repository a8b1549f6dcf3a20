"""Command-line front end.

Every subcommand posts to the service layer (in-process unless --server
points at a running instance) and prints the JSON response, or CSV for
histograms and range tables.  Outputs are reproducible: fixed default
seed, no timestamps, and timing columns only on request, so identical
argv yield byte-identical files regardless of worker count.

Exit codes: 0 success; 1 when the mathematics pushed back (a bound
check failed, a decomposition was found, or a search was inconclusive);
2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .client import ServiceClient, ServiceError

DEFAULT_SEED = 1729


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("QRSUMS_WORKERS", "1")))
    except ValueError:
        return 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_common(sub: argparse.ArgumentParser, fmt: bool = True) -> None:
    sub.add_argument("--output", help="write to this path instead of stdout")
    sub.add_argument("--server", help="base URL of a running service; default runs in-process")
    if fmt:
        sub.add_argument("--format", choices=["json", "csv"], default="json",
                         help="output format (csv only for histograms and range tables)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrsums",
        description="Character sums over F_p, sumset bounds, and exhaustive "
        "searches for two-set decompositions of the quadratic residues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("charsum", help="one complete character sum of a shifted product "
                       "polynomial, with Weil/Wan bound flags")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--tuple", type=_int_list, required=True, dest="coords")
    _add_common(s)

    s = sub.add_parser("ck", help="largest character sum over pairwise-distinct k-tuples, "
                       "normalized by sqrt(p)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    s.add_argument("--n", type=int, help="sample count for sampled mode")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--workers", type=int, default=_default_workers())
    _add_common(s)

    s = sub.add_parser("hist", help="histogram of the shifted normalized sums "
                       "(S_k+1)/sqrt(p) across tuples at one prime")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--bins", type=int, default=40)
    s.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    s.add_argument("--n", type=int, help="sample count for sampled mode")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--workers", type=int, default=_default_workers())
    _add_common(s)

    s = sub.add_parser("sweep", help="one fixed integer 4-tuple swept over a prime range; "
                       "histogram of the shifted normalized sums")
    s.add_argument("--tuple", type=_int_list, required=True, dest="coords")
    s.add_argument("--from", type=int, required=True, dest="p_min")
    s.add_argument("--to", type=int, required=True, dest="p_max")
    s.add_argument("--bins", type=int, default=20)
    _add_common(s)

    s = sub.add_parser("sumset", help="representation profile of A+B mod p with the "
                       "moment, energy, and doubling inequalities checked")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", type=_int_list, required=True)
    s.add_argument("--b", type=_int_list, required=True)
    _add_common(s)

    s = sub.add_parser("bounds", help="size windows and lower bounds any decomposition "
                       "A+B = R_p would have to satisfy")
    s.add_argument("--p", type=int, required=True)
    _add_common(s)

    s = sub.add_parser("search", help="exhaustive pruned search for A+B = R_p within "
                       "size windows")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--min-a", type=int, default=2, dest="min_a")
    s.add_argument("--min-b", type=int, default=2, dest="min_b")
    s.add_argument("--max-a", type=int, dest="max_a")
    s.add_argument("--max-b", type=int, dest="max_b")
    s.add_argument("--symmetric", action="store_true", help="restrict to B = A")
    s.add_argument("--no-size-window-pruning", action="store_true")
    s.add_argument("--no-min-five-pruning", action="store_true")
    s.add_argument("--node-limit", type=int, default=10**9)
    s.add_argument("--workers", type=int, default=_default_workers())
    _add_common(s)

    s = sub.add_parser("verify-range", help="run the decomposition search over every odd "
                       "prime in a range; table of verdicts")
    s.add_argument("--from", type=int, default=3, dest="p_min")
    s.add_argument("--to", type=int, default=61, dest="p_max")
    s.add_argument("--min-a", type=int, default=2, dest="min_a")
    s.add_argument("--min-b", type=int, default=2, dest="min_b")
    s.add_argument("--node-limit", type=int, default=10**9)
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--timing", action="store_true",
                   help="include measured seconds (off by default so outputs are "
                   "byte-identical across runs)")
    _add_common(s)

    s = sub.add_parser("verify-lemmas", help="random-pair and residue-instance panels "
                       "for the proved inequalities; expect zero failures")
    s.add_argument("--primes", type=_int_list, default=[11, 31, 101])
    s.add_argument("--pairs", type=int, default=200)
    s.add_argument("--conditional-primes", type=_int_list, default=[31, 101],
                   dest="conditional_primes")
    s.add_argument("--instances", type=int, default=100)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_common(s)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)

    return parser


# ---------------------------------------------------------------------------
# output shaping


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _hist_csv(body: dict) -> str:
    edges = body["bin_edges"]
    density = body.get("reference_density") or []
    rows = [
        [
            repr(float(edges[i])),
            repr(float(edges[i + 1])),
            body["counts"][i],
            repr(float(density[i])) if i < len(density) else "",
        ]
        for i in range(len(body["counts"]))
    ]
    return _csv_text(["bin_left", "bin_right", "count", "reference_density"], rows)


def _range_csv(body: dict, timing: bool) -> str:
    rows = []
    for row in body["rows"]:
        seconds = repr(float(row["seconds"])) if timing else ""
        rows.append([row["p"], row["verdict"], row["nodes"], seconds])
    return _csv_text(["p", "verdict", "nodes", "seconds"], rows)


def _strip_timing(body: dict) -> dict:
    rows = [{k: v for k, v in row.items() if k != "seconds"} for row in body["rows"]]
    return {**body, "rows": rows}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# command handlers: each returns (text, exit_code)


def _run_charsum(args, client: ServiceClient):
    body = client.post("/charsum", {"p": args.p, "tuple": args.coords})
    code = 1 if body["weil_ok"] is False or body["wan_ok"] is False else 0
    return _json_text(body), code


def _run_ck(args, client: ServiceClient):
    body = client.post("/ck", {
        "k": args.k, "p": args.p, "mode": args.mode, "n": args.n,
        "seed": args.seed, "workers": args.workers,
    })
    return _json_text(body), 0


def _run_hist(args, client: ServiceClient):
    body = client.post("/histogram", {
        "k": args.k, "p": args.p, "bins": args.bins, "mode": args.mode,
        "n": args.n, "seed": args.seed, "workers": args.workers,
    })
    if args.format == "csv":
        return _hist_csv(body), 0
    return _json_text(body), 0


def _run_sweep(args, client: ServiceClient):
    body = client.post("/sweep", {
        "tuple": args.coords, "p_min": args.p_min, "p_max": args.p_max,
        "bins": args.bins,
    })
    if args.format == "csv":
        return _hist_csv(body), 0
    return _json_text(body), 0


def _run_sumset(args, client: ServiceClient):
    body = client.post("/sumset", {"p": args.p, "a": args.a, "b": args.b})
    code = 0 if all(body["checks"].values()) else 1
    return _json_text(body), code


def _run_bounds(args, client: ServiceClient):
    body = client.post("/bounds", {"p": args.p})
    return _json_text(body), 0


def _run_search(args, client: ServiceClient):
    body = client.post("/search", {
        "p": args.p,
        "min_size_a": args.min_a,
        "min_size_b": args.min_b,
        "use_size_window_pruning": not args.no_size_window_pruning,
        "use_min_five_pruning": not args.no_min_five_pruning,
        "symmetric_only": args.symmetric,
        "node_limit": args.node_limit,
        "workers": args.workers,
        "max_size_a": args.max_a,
        "max_size_b": args.max_b,
    })
    code = 0 if body["verdict"] == "no-decomposition" else 1
    return _json_text(body), code


def _run_verify_range(args, client: ServiceClient):
    body = client.post("/verify-range", {
        "p_min": args.p_min, "p_max": args.p_max,
        "min_size_a": args.min_a, "min_size_b": args.min_b,
        "node_limit": args.node_limit, "workers": args.workers,
    })
    code = 0 if body["all_clear"] else 1
    if args.format == "csv":
        return _range_csv(body, args.timing), code
    shown = body if args.timing else _strip_timing(body)
    return _json_text(shown), code


def _run_verify_lemmas(args, client: ServiceClient):
    body = client.post("/verify-lemmas", {
        "primes": args.primes,
        "pairs_per_prime": args.pairs,
        "conditional_primes": args.conditional_primes,
        "instances_per_prime": args.instances,
        "seed": args.seed,
    })
    return _json_text(body), 0 if body["passed"] else 1


_HANDLERS = {
    "charsum": _run_charsum,
    "ck": _run_ck,
    "hist": _run_hist,
    "sweep": _run_sweep,
    "sumset": _run_sumset,
    "bounds": _run_bounds,
    "search": _run_search,
    "verify-range": _run_verify_range,
    "verify-lemmas": _run_verify_lemmas,
}

_CSV_COMMANDS = {"hist", "sweep", "verify-range"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    if getattr(args, "format", "json") == "csv" and args.command not in _CSV_COMMANDS:
        print(f"csv output is not defined for {args.command!r}", file=sys.stderr)
        return 2

    client = ServiceClient(server=getattr(args, "server", None))
    try:
        text, code = _HANDLERS[args.command](args, client)
    except ServiceError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
