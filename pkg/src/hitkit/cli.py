"""Command-line front end: ``hitkit quot``, ``hitkit verify <statement>``, ``hitkit suite``.

Exit status: 0 when every check passes, 1 on a failed check, 2 on bad
arguments, 3 when a size cap would be exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import Sequence

from . import verify
from .config import LIMITS
from .errors import DomainError, ResourceError, UsageError
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

THEOREMS = ("main1", "cuspidal", "decomposition", "lemma-vn", "ideal-rel", "dickson", "matroid", "hvector", "chi-trick", "spike")


class _Parser(argparse.ArgumentParser):
    # leaf parsers carry --max-dim, so --m must not be read as an abbreviation
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = p.add_argument_group("output and limits")
    g.add_argument("--json", action="store_true", default=d(False), help="emit the report as JSON")
    g.add_argument("--format", choices=("text", "json", "csv"), default=d(None), help="csv flattens the tables only")
    g.add_argument("--threads", type=int, default=d(1), metavar="N", help="worker processes for the suite")
    g.add_argument("--max-dim", type=int, default=d(LIMITS.max_dim), help="largest matrix side allowed")
    g.add_argument("--max-group-order", type=int, default=d(LIMITS.max_group_order), help="largest group enumerated")
    g.add_argument("--no-timing", action="store_true", default=d(False), help="omit timings (byte-stable output)")
    g.add_argument("-v", "--verbose", action="store_true", default=d(False))


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hitkit", description="Exact checks of Steinberg summands, hit problems and their combinatorics.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name: str, help_: str) -> argparse.ArgumentParser:
        p = parent.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    p = leaf(sub, "quot", "dim Quot^m of the polynomial algebra over a degree range")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--deg-from", type=int, required=True)
    p.add_argument("--deg-to", type=int, required=True)

    pv = leaf(sub, "verify", "check one statement")
    th = pv.add_subparsers(dest="theorem", required=True, parser_class=_Parser, metavar="{" + ",".join(THEOREMS) + "}")

    p = leaf(th, "main1", "top degree, Quot agreement and indecomposability of R(V*,k)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)

    p = leaf(th, "cuspidal", "dimension of the cuspidal summand via the affine quotient")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = leaf(th, "decomposition", "three dimension paths for R_{n,2} st_n")
    p.add_argument("--n", type=_positive, required=True)

    p = leaf(th, "lemma-vn", "product of V^(q^s) against the antipode sum")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--sign", choices=("derived", "literal"), default="derived")

    p = leaf(th, "ideal-rel", "I + (y^k) = I(W, qk) + (y^k) and the embedding kernels")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--y", type=_vector, action="append", help="a line as comma-separated coordinates (repeatable; default all)")

    p = leaf(th, "dickson", "Dickson invariants as antipode sums")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = leaf(th, "matroid", "exchange property and duality for Delta(V*,k) or K")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--complex", choices=("delta", "affine"), default="delta")

    p = leaf(th, "hvector", "f- and h-vectors of Delta(V*,k) against the Hilbert series of R")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--no-ring", action="store_true", help="skip the Hilbert series of R")

    p = leaf(th, "chi-trick", "randomized chi-trick congruences")
    p.add_argument("--cases", type=_positive, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = leaf(th, "spike", "x^(q^m r - 1) is not hit")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=_positive, default=1)

    p = leaf(sub, "suite", "run the acceptance battery")
    p.add_argument("--profile", choices=verify.PROFILES, default="fast")
    p.add_argument("--only", action="append", metavar="CRITERION", help="restrict to criteria such as c06 (repeatable)")
    return parser


def _dispatch(a: argparse.Namespace) -> VerificationReport:
    if a.command == "quot":
        return verify.quot(a.q, a.n, a.deg_from, a.deg_to)
    if a.command == "suite":
        return verify.suite(a.profile, threads=a.threads, only=a.only, timing=not a.no_timing)
    t = a.theorem
    if t == "main1":
        return verify.main1(a.q, a.n, a.k)
    if t == "cuspidal":
        return verify.cuspidal(a.q, a.n)
    if t == "decomposition":
        return verify.decomposition(a.n)
    if t == "lemma-vn":
        return verify.lemma_vn(a.q, a.s, a.r, a.n, a.sign)
    if t == "ideal-rel":
        return verify.ideal_rel(a.q, a.n, a.k, a.y)
    if t == "dickson":
        return verify.dickson(a.q, a.m)
    if t == "matroid":
        return verify.matroid(a.q, a.n, a.k, a.complex)
    if t == "hvector":
        return verify.hvector(a.q, a.n, a.k, ring=not a.no_ring)
    if t == "chi-trick":
        return verify.chi_trick(a.cases, a.seed)
    if t == "spike":
        return verify.spike(a.q, a.m, a.r)
    raise UsageError(f"unknown statement {t!r}")  # unreachable: argparse restricts choices


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return report.to_text()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if a.json and a.format not in (None, "json"):
        parser.error("--json conflicts with --format " + a.format)
    fmt = "json" if a.json else (a.format or "text")
    if a.threads < 1:
        parser.error("--threads must be at least 1")
    LIMITS.max_dim = a.max_dim
    LIMITS.max_group_order = a.max_group_order

    t0 = time.perf_counter()
    try:
        report = _dispatch(a)
    except (UsageError, DomainError) as exc:
        print(f"hitkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"hitkit: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    report.elapsed_ms = 0 if a.no_timing else int((time.perf_counter() - t0) * 1000)
    sys.stdout.write(render(report, fmt))
    sys.stdout.flush()
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
