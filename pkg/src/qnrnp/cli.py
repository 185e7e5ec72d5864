"""Command-line front end.

Usage::

    qnrnp classify --p 13
    qnrnp count --p 13 --q 3
    qnrnp certify --p 13 --q 1 --epsilon 1/11
    qnrnp thresholds --epsilon 1/11
    qnrnp scan --pmin 5 --pmax 100000 --q 1 --epsilon 1/11 --jobs 4 --format csv
    qnrnp verify --suite chain
    qnrnp fixed-point --p 13

Data goes to stdout (or ``--out FILE``, written atomically); progress and
errors go to stderr.  Exit codes: 0 success, 1 usage error, 2 domain
error, 3 a verification suite failed, 4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
import tempfile
from typing import Iterable, Optional

from .arith import factorize, is_prime
from .errors import DomainError, NoWitness, ResourceError
from .fixedpoint import construct_fixed_point
from . import config
from .residues import build_index_table, classify_unit, multiplicative_order
from .suites import SUITES, run_suite
from .theorem import (ScanSummary, SearchParams, certify, count_qnrnp_coprime_formula,
                      format_rational, parse_rational, scan, threshold)

SCHEMA_VERSION = "1"
CSV_COLUMNS = ("p", "q", "epsilon", "cond_congruence", "cond_size", "cond_ratio", "n_p", "witness")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def write_envelope(out, command: str, params: dict, results: Iterable[dict], summary) -> None:
    """Stream an output envelope; ``summary`` may be a callable evaluated
    after all results have been written."""
    out.write('{"schema_version": %s, "command": %s, "params": %s, "results": ['
              % (_dump(SCHEMA_VERSION), _dump(command), _dump(params)))
    first = True
    for item in results:
        out.write("\n" if first else ",\n")
        out.write(_dump(item))
        first = False
    out.write('\n], "summary": %s}\n' % _dump(summary() if callable(summary) else summary))


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None:
        yield sys.stdout
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qnrnp-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _prime(text: str) -> int:
    p = int(text)
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    return p


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args, out) -> int:
    p = _prime(args.p)
    limit = config.index_table_limit()
    if p > limit:
        raise ResourceError(f"p = {p} exceeds the limit {limit}")
    table = build_index_table(p)
    f = factorize(p - 1)
    rows = []
    counts = {"QuadraticResidue": 0, "PrimitiveRoot": 0, "Qnrnp": 0}
    qnrnps = []
    for v in range(1, p):
        cls = classify_unit(v, p, f).value
        counts[cls] += 1
        if cls == "Qnrnp":
            qnrnps.append(v)
        rows.append({"value": v, "class": cls, "order": multiplicative_order(v, p, f),
                     "index": table.ind(v)})
    write_envelope(out, "classify", {"p": p}, rows,
                   {"root": table.root, "counts": counts, "qnrnp_set": qnrnps})
    return EXIT_OK


def cmd_count(args, out) -> int:
    p = _prime(args.p)
    report = count_qnrnp_coprime_formula(p, args.q)
    summary = {"formula_matches_brute": report.n_formula == report.n_brute,
               "within_bound": abs(report.n_formula - report.main_term) <= report.e_p_bound}
    write_envelope(out, "count", {"p": p, "q": args.q}, [report.to_dict()], summary)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    p = _prime(args.p)
    params = SearchParams(args.q, parse_rational(args.epsilon))
    cert = certify(p, params)
    write_envelope(out, "certify", {"p": p, "q": args.q, "epsilon": format_rational(params.epsilon)},
                   [cert.to_dict()], {"hypotheses_hold": cert.hypotheses_hold})
    return EXIT_OK


def cmd_thresholds(args, out) -> int:
    info = threshold(parse_rational(args.epsilon))
    write_envelope(out, "thresholds", {"epsilon": format_rational(info.epsilon)},
                   [info.to_dict()], {})
    return EXIT_OK


def cmd_scan(args, out) -> int:
    params = SearchParams(args.q, parse_rational(args.epsilon))
    summary = ScanSummary()
    stream = scan(args.pmin, args.pmax, params, jobs=args.jobs)

    def certificates():
        for cert in stream:
            summary.add(cert)
            yield cert

    echo = {"pmin": args.pmin, "pmax": args.pmax, "q": args.q,
            "epsilon": format_rational(params.epsilon), "format": args.format}
    if args.format == "json":
        write_envelope(out, "scan", echo, (c.to_dict() for c in certificates()), summary.to_dict)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for cert in certificates():
            row = cert.to_dict()
            writer.writerow(["" if row[k] is None else
                             (str(row[k]).lower() if isinstance(row[k], bool) else row[k])
                             for k in CSV_COLUMNS])
        print(_dump(summary.to_dict()), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_suite(args.suite, args.pmax)
    for item in report.items:
        tag = "FINDING" if item.finding else ("PASS" if item.passed else "FAIL")
        print(f"[{tag}] {report.suite} {item.name} {item.detail}".rstrip(), file=sys.stderr)
    write_envelope(out, "verify", {"suite": args.suite, "pmax": args.pmax, **report.params},
                   [i.to_dict() for i in report.items], report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_fixed_point(args, out) -> int:
    p = _prime(args.p)
    result = construct_fixed_point(p, args.q)
    write_envelope(out, "fixed-point", {"p": p, "q": args.q}, [result.to_dict()],
                   {"verified": result.verified})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnrnp", description="QNRNP counting and verification tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", default=None, help="write output atomically to FILE")
        return sp

    sp = command("classify", cmd_classify, "classify every unit modulo p")
    sp.add_argument("--p", required=True)

    sp = command("count", cmd_count, "count QNRNPs coprime to (p-1)/q two ways")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", type=int, default=1)

    sp = command("certify", cmd_certify, "hypotheses, count and witness for one prime")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--epsilon", default="1/11")

    sp = command("thresholds", cmd_thresholds, "size threshold for epsilon")
    sp.add_argument("--epsilon", default="1/11")

    sp = command("scan", cmd_scan, "certificates for a range of primes")
    sp.add_argument("--pmin", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--epsilon", default="1/11")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = command("verify", cmd_verify, "run a verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--pmax", type=int, default=None)

    sp = command("fixed-point", cmd_fixed_point, "QNRNP g and x with g^x = x (mod p)")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", type=int, default=1)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        with _output(args.out) as out:
            return args.func(args, out)
    except (DomainError, NoWitness, ValueError) as exc:
        print(f"qnrnp: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(f"qnrnp: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run())
