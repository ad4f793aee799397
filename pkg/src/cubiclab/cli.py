"""Command-line client for the congruence laboratory service.

Every subcommand talks to the HTTP API: against a remote server when --server
is given, otherwise against an in-process instance of the app, so no daemon is
needed for one-shot use.  Exit codes: 0 the checked statement holds (or the
run was informational), 1 a counterexample was found, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import httpx

DEFAULT_EXPAND_ORDER = 32


def _order_exact_default() -> int:
    return int(os.environ.get("CUBICLAB_ORDER_EXACT", "2000"))


def _order_mod_default() -> int:
    return int(os.environ.get("CUBICLAB_ORDER_MOD", "100000"))

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


class ServiceClient:
    """Minimal POST/GET wrapper over either transport."""

    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=300.0)
        else:
            # The in-process transport has to drive the ASGI app from sync
            # code; starlette's test client does exactly that.  It warns that
            # it prefers the httpx2 package, which this environment lacks.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        response = self._client.post(path, json=payload)
        return response.status_code, response.json()


def _ring_spec(args) -> dict:
    if getattr(args, "mod", None) is not None:
        return {"kind": "mod", "modulus": args.mod}
    return {"kind": "exact"}


def _fail(body: dict) -> int:
    detail = body.get("detail", body)
    if isinstance(detail, dict):
        message = detail.get("message", json.dumps(detail, sort_keys=True))
        if "position" in detail and detail["position"] is not None:
            message = f"{message}"
    else:
        message = str(detail)
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _report_exit(report: dict) -> int:
    if report["verdict"] == "Counterexample":
        return EXIT_COUNTEREXAMPLE
    if report["verdict"] == "Vacuous":
        print(f"warning: {report['id']} checked nothing at this order", file=sys.stderr)
    return EXIT_OK


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        _print_json(report)
        return
    line = f"{report['verdict']}: {report['claim']} [order={report['order']}, checked={report['checked']}]"
    witness = report.get("witness")
    if witness:
        parts = [f"index={witness['index']}", f"residue={witness['residue']}"]
        if witness.get("n") is not None:
            parts.insert(0, f"n={witness['n']}")
        if witness.get("lhs") is not None:
            parts.append(f"lhs={witness['lhs']}")
        if witness.get("rhs") is not None:
            parts.append(f"rhs={witness['rhs']}")
        line += f" witness: {', '.join(parts)}"
    print(line)


# -- subcommands ---------------------------------------------------------------


def cmd_expand(args, client: ServiceClient) -> int:
    payload = {"expr": args.expr, "order": args.order, "ring": _ring_spec(args)}
    status, body = client.post("/expand", payload)
    if status != 200:
        return _fail(body)
    if args.json:
        _print_json(body)
    else:
        print(" ".join(str(c) for c in body["coefficients"]))
    return EXIT_OK


def cmd_dissect(args, client: ServiceClient) -> int:
    # --order is the length of each extracted component; the service takes the
    # order of the base series, which must be k times as long.
    payload = {
        "expr": args.expr, "k": args.k, "r": args.r,
        "order": args.order * args.k, "ring": _ring_spec(args),
    }
    status, body = client.post("/dissect", payload)
    if status != 200:
        return _fail(body)
    if args.json:
        _print_json(body)
        return EXIT_OK
    for component in body["components"]:
        coeffs = " ".join(str(c) for c in component["coefficients"])
        print(f"r={component['r']}: {coeffs}")
    return EXIT_OK


def cmd_oracle(args, client: ServiceClient) -> int:
    if args.upto is not None:
        status, body = client.post("/oracle/table", {"upto": args.upto})
        if status != 200:
            return _fail(body)
        rows = body["rows"]
    else:
        status, body = client.post("/oracle", {"n": args.n})
        if status != 200:
            return _fail(body)
        rows = [body]
    agree = True
    for row in rows:
        agree = agree and row["agrees_with_series"]
        if args.json:
            _print_json(row)
        else:
            print(
                f"n={row['n']} even={row['even_parts_count']} odd={row['odd_parts_count']} "
                f"A={row['a_value']} agree={'yes' if row['agrees_with_series'] else 'NO'}"
            )
    return EXIT_OK if agree else EXIT_COUNTEREXAMPLE


def cmd_check_claim(args, client: ServiceClient) -> int:
    payload = {"a": args.a, "b": args.b, "modulus": args.m, "order": args.order}
    status, body = client.post("/check/claim", payload)
    if status != 200:
        return _fail(body)
    _print_report(body, args.json)
    return _report_exit(body)


def cmd_check_internal(args, client: ServiceClient) -> int:
    status, body = client.post("/check/internal", {"order": args.order})
    if status != 200:
        return _fail(body)
    _print_report(body, args.json)
    return _report_exit(body)


def cmd_check_family(args, client: ServiceClient) -> int:
    family = {"1": 1, "2": 2, "family1": 1, "family2": 2}.get(args.family)
    if family is None:
        print(f"error: unknown family {args.family!r} (use 1, 2, family1, family2)", file=sys.stderr)
        return EXIT_USAGE
    payload = {"family": family, "j": args.j, "order": args.order}
    status, body = client.post("/check/family", payload)
    if status != 200:
        return _fail(body)
    _print_report(body, args.json)
    return _report_exit(body)


def cmd_check_identity(args, client: ServiceClient) -> int:
    payload = {"lhs": args.lhs, "rhs": args.rhs, "modulus": args.mod, "order": args.order}
    status, body = client.post("/check/identity", payload)
    if status != 200:
        return _fail(body)
    _print_report(body, args.json)
    return _report_exit(body)


def cmd_check_suite(args, client: ServiceClient) -> int:
    payload = {"order_exact": args.order_exact, "order_mod": args.order_mod}
    status, body = client.post("/check/suite", payload)
    if status != 200:
        return _fail(body)
    worst = EXIT_OK
    counts = {"Holds": 0, "Counterexample": 0, "Vacuous": 0}
    for report in body["reports"]:
        counts[report["verdict"]] += 1
        _print_report(report, args.json)
        if report["verdict"] == "Counterexample":
            worst = EXIT_COUNTEREXAMPLE
    if not args.json:
        print(
            f"suite: {len(body['reports'])} checks, {counts['Holds']} hold, "
            f"{counts['Counterexample']} counterexamples, {counts['Vacuous']} vacuous"
        )
    return worst


def cmd_serve(args, client: ServiceClient) -> int:
    import uvicorn

    uvicorn.run("cubiclab.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # --server/--json are accepted both before and after the subcommand.  The
    # subparser copies default to SUPPRESS: argparse parses the subcommand into
    # a fresh namespace and copies it back, so a real default here would
    # clobber a value given before the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", metavar="URL", default=argparse.SUPPRESS,
                        help="talk to a running service instead of in-process")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output, one JSON object per line")

    parser = argparse.ArgumentParser(
        prog="cubiclab",
        description="q-series expansions and congruence checks for the signed cubic-partition series",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="talk to a running service instead of in-process")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output, one JSON object per line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print series coefficients for an expression", parents=[common])
    p.add_argument("expr", help="eta expression, or one of: A, phi, phi-, psi, psi-, A(kn+r)")
    p.add_argument("--order", type=int, default=DEFAULT_EXPAND_ORDER)
    p.add_argument("--mod", type=int, default=None, help="work mod m instead of exactly")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("dissect", help="extract arithmetic-progression components", parents=[common])
    p.add_argument("expr")
    p.add_argument("k", type=int, help="dissection modulus")
    p.add_argument("r", type=int, nargs="?", default=None, help="residue; omit for all components")
    p.add_argument("--order", type=int, default=DEFAULT_EXPAND_ORDER,
                   help="length of each extracted component")
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(handler=cmd_dissect)

    p = sub.add_parser("oracle", help="combinatorial ground truth for the signed count", parents=[common])
    p.add_argument("n", type=int, nargs="?", default=None, help="single n, explicit enumeration")
    p.add_argument("--upto", type=int, default=None, help="table for all n up to this value")
    p.set_defaults(handler=cmd_oracle)

    check = sub.add_parser("check", help="verify claims and identities", parents=[common])
    check_sub = check.add_subparsers(dest="check_command", required=True)

    p = check_sub.add_parser("claim", help="A(a*n+b) == 0 (mod m) below the order", parents=[common])
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--order", type=int, default=_order_mod_default())
    p.set_defaults(handler=cmd_check_claim)

    p = check_sub.add_parser("internal", help="A(27n+8) == A(3n+1) (mod 3) below the order", parents=[common])
    p.add_argument("--order", type=int, default=_order_mod_default())
    p.set_defaults(handler=cmd_check_internal)

    p = check_sub.add_parser("family", help="one member of an infinite congruence family", parents=[common])
    p.add_argument("family", help="1, 2, family1, or family2")
    p.add_argument("j", type=int)
    p.add_argument("--order", type=int, default=_order_mod_default())
    p.set_defaults(handler=cmd_check_family)

    p = check_sub.add_parser("identity", help="compare two series expressions termwise", parents=[common])
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--mod", type=int, default=None, help="compare mod m instead of exactly")
    p.add_argument("--order", type=int, default=_order_exact_default())
    p.set_defaults(handler=cmd_check_identity)

    p = check_sub.add_parser("suite", help="run the full standard suite", parents=[common])
    p.add_argument("--order-exact", type=int, default=_order_exact_default())
    p.add_argument("--order-mod", type=int, default=_order_mod_default())
    p.set_defaults(handler=cmd_check_suite)

    p = sub.add_parser("serve", help="run the HTTP service", parents=[common])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass that through
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "oracle" and args.n is None and args.upto is None:
        print("error: oracle needs a value n or --upto", file=sys.stderr)
        return EXIT_USAGE
    client = ServiceClient(args.server)
    try:
        return args.handler(args, client)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()
