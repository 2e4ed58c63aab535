"""
Command line front end: ``analyze``, ``from-mu``, ``enumerate`` and ``selftest``.

Results go to stdout as compact JSON; errors go to stderr as
``{"error": kind, "message": ...}`` with the exception's exit code.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, TextIO

from core.weights import KTypeWeight, Signature, parse_rational
from cli.diagram import render_diagram
from cli.selftest import run_selftest
from data_models.models import (
    FromMuResponse,
    dump_json,
    enumerate_line,
    parse_request,
    report_to_model,
    request_to_theta_datum,
    theta_datum_to_model,
)
from datum.blocks import enumerate_data
from exception.exceptions import CustomException, ParseError
from logger.custom_logger import logger
from screening.screen import screen
from theta.theta_datum import ThetaDatum, theta_datum_from_mu
from utils.config_loader import load_config


def _emit_error(err: CustomException, stream: TextIO) -> int:
    logger.error(str(err))
    stream.write(json.dumps(err.to_dict(), separators=(",", ":")) + "\n")
    return err.exit_code


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r") as file:
            return file.read()
    except OSError as e:
        raise ParseError(e, sys)


def analyze_text(text: str) -> tuple[ThetaDatum, str]:
    """Parses one request and returns the datum with its report JSON."""
    td = request_to_theta_datum(parse_request(text))
    return td, dump_json(report_to_model(screen(td)))


def _analyze_line(line: str) -> str:
    try:
        return analyze_text(line)[1]
    except CustomException as e:
        return json.dumps(e.to_dict(), separators=(",", ":"))


def cmd_analyze(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    if args.batch:
        lines = [line for line in text.splitlines() if line.strip()]
        workers = int(load_config().get("cli", {}).get("batch_workers", 4))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(_analyze_line, lines):
                print(out)
        return 0
    td, report_json = analyze_text(text)
    print(report_json)
    if args.diagram:
        print()
        print(render_diagram(td))
    return 0


def _parse_nu_flags(flags: Sequence[str] | None) -> list[list] | None:
    if flags is None:
        return None
    return [[parse_rational(x) for x in flag.split(",") if x.strip()] for flag in flags]


def cmd_from_mu(args: argparse.Namespace) -> int:
    sig = Signature(args.p, args.q)
    td = theta_datum_from_mu(KTypeWeight.from_string(args.mu), sig, _parse_nu_flags(args.nu))
    response = FromMuResponse(datum=theta_datum_to_model(td), report=report_to_model(screen(td)))
    print(dump_json(response))
    if args.diagram:
        print()
        print(render_diagram(td))
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    sig = Signature(args.p, args.q)
    for datum in enumerate_data(sig, parse_rational(args.bound), force=args.force):
        td = ThetaDatum(datum, tuple((0,) * b.k for b in datum.blocks))
        print(dump_json(enumerate_line(td, screen(td))))
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    passed = run_selftest(args.filter, args.golden)
    print(json.dumps({"passed": passed}, separators=(",", ":")))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="upq-screen", description="Theta-stable screening for U(p,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="screen a request read from a file or stdin")
    analyze.add_argument("input", nargs="?", default="-", help="request JSON file, '-' for stdin")
    analyze.add_argument("--diagram", action="store_true", help="append an ASCII block picture")
    analyze.add_argument("--batch", action="store_true", help="one request per line, one report per line")
    analyze.set_defaults(handler=cmd_analyze)

    from_mu = sub.add_parser("from-mu", help="derive the datum of a lowest K-type and screen it")
    from_mu.add_argument("p", type=int)
    from_mu.add_argument("q", type=int)
    from_mu.add_argument("mu", help="weight as 'a,b,...|c,d,...'")
    from_mu.add_argument("--nu", action="append", help="nu of one block, comma separated; repeat per block")
    from_mu.add_argument("--diagram", action="store_true")
    from_mu.set_defaults(handler=cmd_from_mu)

    enum = sub.add_parser("enumerate", help="all data with contents in [-bound, bound]")
    enum.add_argument("p", type=int)
    enum.add_argument("q", type=int)
    enum.add_argument("bound", help="content bound, e.g. 3/2")
    enum.add_argument("--force", action="store_true", help="ignore the rank guard")
    enum.set_defaults(handler=cmd_enumerate)

    selftest = sub.add_parser("selftest", help="run golden examples and oracle sweeps")
    selftest.add_argument("--filter", help="run only this group")
    selftest.add_argument("--golden", help="golden file to use instead of the configured one")
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CustomException as e:
        return _emit_error(e, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
