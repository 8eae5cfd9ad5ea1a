"""Command line interface.

Every subcommand is a thin client over the HTTP service.  By default the
service runs in-process; pass --server to target a remote instance.

Exit codes: 0 success, 1 check mismatch, 2 budget exhausted, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from typing import Optional

from . import __version__

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64

GEN_COUNTS = {1: 1, 2: 6, 3: 15}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 64."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class ServiceClient:
    """POST requests either in-process or to a remote server."""

    def __init__(self, server: Optional[str] = None, cache_dir: Optional[str] = None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

                from .service import create_app

                self._client = TestClient(create_app(cache_dir))

    def post(self, path: str, payload: dict):
        return self._client.post(path, json=payload)


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def envelope(subcommand: str, config: dict, status: str, checks: list,
             elapsed: float, seed: Optional[int] = None, extra: Optional[dict] = None) -> dict:
    doc = {
        "tool_version": __version__,
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "status": status,
        "checks": checks,
        "elapsed_seconds": elapsed,
        "timestamp": _timestamp(),
    }
    if extra:
        doc.update(extra)
    return doc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _http_fail(resp) -> int:
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    print(f"error: {detail}", file=sys.stderr)
    return EXIT_USAGE if resp.status_code == 422 else EXIT_MISMATCH


def _parse_curve(text: str, parser: _Parser) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        parser.error(f"curve must be 'a,b', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        parser.error(f"curve coefficients must be integers, got {text!r}")


def cmd_ideal_gen(args, client: ServiceClient) -> int:
    resp = client.post("/ideal/gen", {"g": args.g})
    if resp.status_code != 200:
        return _http_fail(resp)
    data = resp.json()
    body = "\n".join(data["generators"]) + "\n"
    _write_text(args.emit, body)
    if args.emit and args.emit != "-":
        print(f"{data['group']}: wrote {data['count']} generators to {args.emit}")
    ok = data["count"] == GEN_COUNTS[args.g]
    if args.json:
        doc = envelope(
            "ideal-gen",
            {"g": args.g, "emit": args.emit},
            "ok" if ok else "mismatch",
            [{"name": f"generator-count-{data['group']}", "anchor": "ideal:count",
              "pass": ok, "value": data["count"]}],
            0.0,
        )
        sys.stdout.write(_dump(doc))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_groebner(args, client: ServiceClient) -> int:
    payload = {
        "group": args.group,
        "use_cache": not args.no_cache,
        "no_compute": args.no_compute,
        "budget_seconds": args.budget_seconds,
        "include_elements": bool(args.emit),
        "seed": args.seed,
    }
    if args.spair_sample is not None:
        payload["spair_sample"] = args.spair_sample
    resp = client.post("/groebner", payload)
    if resp.status_code != 200:
        return _http_fail(resp)
    data = resp.json()
    if data["status"] == "missing-cache":
        print(f"error: {data['detail']}", file=sys.stderr)
        return EXIT_USAGE
    if data["status"] == "budget-exceeded":
        print(f"{args.group}: budget-exceeded after {data['elapsed_seconds']:.1f}s",
              file=sys.stderr)
        return EXIT_BUDGET
    if args.emit:
        from .groebner import CACHE_MAGIC, CACHE_VERSION, generators_hash
        from .symplectic import GROUP_G, sp_generators

        gh = generators_hash(sp_generators(GROUP_G[args.group]))
        header = f"{CACHE_MAGIC} {CACHE_VERSION} {data['order']} {gh}\n"
        _write_text(args.emit, header + "\n".join(data["elements"]) + "\n")
    line = (f"{args.group}: {data['size']} elements ({data['order']}), "
            f"cache hit: {'yes' if data['from_cache'] else 'no'}, "
            f"{data['elapsed_seconds']:.2f}s")
    if data.get("spair_checked") is not None:
        line += (f", s-pairs checked: {data['spair_checked']}, "
                 f"failures: {data['spair_failures']}")
    print(line)
    checks = [{"name": f"{args.group}-basis-computed", "anchor": f"groebner:{args.group}",
               "pass": True, "value": data["size"]}]
    ok = True
    if data.get("spair_checked") is not None:
        sp_ok = data["spair_failures"] == 0
        ok = ok and sp_ok
        checks.append({"name": f"{args.group}-spair-sample", "anchor": "groebner:spair",
                       "pass": sp_ok, "value": data["spair_checked"]})
    if args.json:
        doc = envelope("groebner", payload, "ok" if ok else "mismatch", checks,
                       data["elapsed_seconds"], seed=args.seed)
        sys.stdout.write(_dump(doc))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_reduce(args, client: ServiceClient, parser: _Parser) -> int:
    if args.poly is not None:
        poly_text = args.poly
    else:
        try:
            with open(args.poly_file, "r", encoding="utf-8") as fh:
                poly_text = fh.read().strip()
        except OSError as exc:
            parser.error(f"cannot read {args.poly_file}: {exc}")
    payload = {
        "polynomial": poly_text,
        "group": args.group,
        "use_cache": not args.no_cache,
        "budget_seconds": args.budget_seconds,
    }
    resp = client.post("/reduce", payload)
    if resp.status_code != 200:
        return _http_fail(resp)
    data = resp.json()
    if data["status"] == "budget-exceeded":
        print(f"{args.group}: budget-exceeded", file=sys.stderr)
        return EXIT_BUDGET
    print(f"remainder: {data['remainder']}")
    print(f"member: {'yes' if data['is_member'] else 'no'}")
    ok = True
    if args.expect_member and not data["is_member"]:
        ok = False
    if args.expect_nonmember and data["is_member"]:
        ok = False
    if args.json:
        doc = envelope(
            "reduce",
            {"group": args.group, "polynomial": poly_text},
            "ok" if ok else "mismatch",
            [{"name": "membership", "anchor": f"reduce:{args.group}",
              "pass": ok, "value": data["is_member"]}],
            0.0,
        )
        sys.stdout.write(_dump(doc))
    return EXIT_OK if ok else EXIT_MISMATCH


def _verify_checks(data: dict) -> list:
    checks = []
    if data["mode"] == "identity":
        for c in data["checks"]:
            checks.append({
                "name": c["label"],
                "anchor": c["label"],
                "pass": c["passed"],
                "value": {
                    "monomial": c["monomial"],
                    "expected": c["expected"],
                    "actual": c["actual"],
                    "scalar": c["scalar"],
                    "strict": c["strict"],
                    "constraints": c["constraints"],
                },
            })
        for name, passed in data["structure"].items():
            checks.append({"name": f"structure:{name}", "anchor": f"structure:{name}",
                           "pass": passed, "value": passed})
        for name, terms in data["remainder_terms"].items():
            checks.append({"name": f"remainder-terms:{name}",
                           "anchor": f"remainder:{name}", "pass": True, "value": terms})
    else:
        ev = data["evidence"]
        for rel, count in sorted(ev["nonzero_counts"].items()):
            checks.append({"name": f"evidence:{rel}-nonzero",
                           "anchor": f"evidence:{rel}",
                           "pass": count == ev["trials"],
                           "value": f"{count}/{ev['trials']}"})
        checks.append({"name": "evidence:control-members-reduce-to-zero",
                       "anchor": "evidence:control",
                       "pass": ev["control_clean"],
                       "value": f"{ev['control_nonzero']}/{ev['control_samples']}"})
    return checks


def cmd_verify_props(args, client: ServiceClient) -> int:
    payload = {
        "prop": args.prop,
        "use_cache": not args.no_cache,
        "cache_file": args.gb_cache,
        "budget_seconds": args.budget_seconds,
        "evidence_trials": args.trials,
        "seed": args.seed,
    }
    resp = client.post("/verify-props", payload)
    if resp.status_code != 200:
        return _http_fail(resp)
    data = resp.json()
    if data["status"] == "missing-cache":
        print(f"error: {data['detail']}", file=sys.stderr)
        return EXIT_USAGE
    checks = _verify_checks(data)
    passed = sum(1 for c in checks if c["pass"])
    doc = envelope("verify-props", payload, data["status"], checks,
                   data["elapsed_seconds"], seed=args.seed)
    _write_text(args.report, _dump(doc))
    mode_note = "identity checks" if data["mode"] == "identity" else "evaluation evidence"
    print(f"verify-props ({args.prop}): {passed}/{len(checks)} checks passed "
          f"[{mode_note}], status: {data['status']}")
    for c in checks:
        if not c["pass"]:
            print(f"  FAIL {c['name']}: {c['value']}")
    if data["status"] == "budget-exceeded":
        return EXIT_BUDGET
    return EXIT_OK if data["status"] == "ok" and passed == len(checks) else EXIT_MISMATCH


def cmd_lt_census(args, client: ServiceClient, parser: _Parser) -> int:
    curve1 = _parse_curve(args.curve1, parser)
    curve2 = _parse_curve(args.curve2, parser)
    payload = {
        "curve1": curve1,
        "curve2": curve2,
        "x_max": args.xmax,
        "checkpoints": args.checkpoints,
    }
    resp = client.post("/lt-census", payload)
    if resp.status_code != 200:
        return _http_fail(resp)
    data = resp.json()
    _write_text(args.out, data["csv"])
    if args.out and args.out != "-":
        print(f"wrote {len(data['checkpoints'])} checkpoint rows to {args.out}")
    print(f"curves y^2=x^3+{curve1[0]}x+{curve1[1]} and "
          f"y^2=x^3+{curve2[0]}x+{curve2[1]}, x up to {data['x_max']}: "
          f"{data['single_counts'][0][-1]}/{data['single_counts'][1][-1]} single, "
          f"{data['pair_count_total']} shared")
    print(f"note: {data['exclusions']}")
    if args.json:
        doc = envelope(
            "lt-census", payload, "ok",
            [{"name": "pair-count", "anchor": "census:pair",
              "pass": True, "value": data["pair_count_total"]}],
            data["elapsed_seconds"],
            extra={"checkpoints": data["checkpoints"],
                   "single_counts": data["single_counts"],
                   "pair_counts": data["pair_counts"],
                   "loglog_ratio": data["loglog_ratio"],
                   "pair_primes_head": data["pair_primes_head"]},
        )
        sys.stdout.write(_dump(doc))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(args.cache_dir), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="sp6kit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sp6kit {__version__}")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    parser.add_argument("--cache-dir", default=None,
                        help="basis cache directory (in-process mode only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ideal = sub.add_parser("ideal", help="ideal generator tools")
    ideal_sub = p_ideal.add_subparsers(dest="ideal_command", required=True)
    p_gen = ideal_sub.add_parser("gen", help="emit the defining quadrics")
    p_gen.add_argument("--g", type=int, default=3, choices=(1, 2, 3))
    p_gen.add_argument("--emit", default=None, help="output file (default stdout)")
    p_gen.add_argument("--json", action="store_true", help="print a JSON report")

    p_gb = sub.add_parser("groebner", help="compute or load a reduced basis")
    p_gb.add_argument("--group", default="sp6", choices=("sp2", "sp4", "sp6"))
    p_gb.add_argument("--no-cache", action="store_true",
                      help="ignore and do not write the disk cache")
    p_gb.add_argument("--no-compute", action="store_true",
                      help="fail unless a cache file is present")
    p_gb.add_argument("--emit", default=None, help="write the basis to this file")
    p_gb.add_argument("--budget-seconds", type=float, default=None)
    p_gb.add_argument("--spair-sample", type=int, default=None,
                      help="verify this many sampled s-polynomials reduce to zero")
    p_gb.add_argument("--seed", type=int, default=0)
    p_gb.add_argument("--json", action="store_true")

    p_red = sub.add_parser("reduce", help="normal form of a polynomial")
    p_red.add_argument("--group", default="sp6", choices=("sp2", "sp4", "sp6"))
    src = p_red.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", default=None, help="polynomial text")
    src.add_argument("--poly-file", default=None, help="file containing the polynomial")
    p_red.add_argument("--no-cache", action="store_true")
    p_red.add_argument("--budget-seconds", type=float, default=None)
    p_red.add_argument("--expect-member", action="store_true",
                       help="exit 1 unless the remainder is zero")
    p_red.add_argument("--expect-nonmember", action="store_true",
                       help="exit 1 if the remainder is zero")
    p_red.add_argument("--json", action="store_true")

    p_ver = sub.add_parser("verify-props", help="check relation coefficient identities")
    p_ver.add_argument("--prop", default="all", choices=("arch", "ssing", "ord", "all"))
    p_ver.add_argument("--gb-cache", default=None,
                       help="explicit basis cache file to load")
    p_ver.add_argument("--report", default=None, help="JSON report file (default stdout)")
    p_ver.add_argument("--no-cache", action="store_true")
    p_ver.add_argument("--budget-seconds", type=float, default=None)
    p_ver.add_argument("--trials", type=int, default=50,
                       help="evaluation trials when the budget is exhausted")
    p_ver.add_argument("--seed", type=int, default=0)

    p_cen = sub.add_parser("lt-census", help="paired supersingular prime census")
    p_cen.add_argument("--curve1", required=True, metavar="a,b")
    p_cen.add_argument("--curve2", required=True, metavar="a,b")
    p_cen.add_argument("--xmax", type=int, default=10000)
    p_cen.add_argument("--checkpoints", type=int, default=20)
    p_cen.add_argument("--out", default=None, help="CSV output file (default stdout)")
    p_cen.add_argument("--json", action="store_true")

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    client = ServiceClient(server=args.server, cache_dir=args.cache_dir)
    if args.command == "ideal":
        return cmd_ideal_gen(args, client)
    if args.command == "groebner":
        return cmd_groebner(args, client)
    if args.command == "reduce":
        return cmd_reduce(args, client, parser)
    if args.command == "verify-props":
        return cmd_verify_props(args, client)
    if args.command == "lt-census":
        return cmd_lt_census(args, client, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main(argv=sys.argv[1:]))


if __name__ == "__main__":
    entry()
