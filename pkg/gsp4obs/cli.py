"""Command line front end.

Usage:
    gsp4obs sieve --desc groupIV_ell3 --pmax 100
    gsp4obs oracle --desc groupII_ell7 --p 13
    gsp4obs verify --suite all --pmax 60
    gsp4obs euler --parity odd2
    gsp4obs fl --a 5 --b 2 --w 6 --pmax 50
    gsp4obs ordinary --a 5 --b 2 --pmax 50

Tables go to stdout and are byte-identical across runs; progress (--verbose)
and errors go to stderr. Exit codes: 0 success, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import TYPE_CHECKING

import pandas as pd
import sympy

from . import __version__
from .config import JobConfig, OutputFormat, Suite
from .errors import Gsp4ObsError
from .grid import render, sieve_frame
from .localtype import load_descriptor
from .obstruction import embedding_variants, obstruction_invariants
from .sieve import WeightData, exceptional_primes, fl_check, ordinary_check
from .suites import run_suites
from .symplectic import Parity, euler_defect

if TYPE_CHECKING:
    from collections.abc import Sequence

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsp4obs", description="Local obstruction invariants for GSp4")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            dest="output",
            type=OutputFormat,
            default=OutputFormat.Pretty,
            choices=list(OutputFormat),
            help="Output format (default: pretty-table)",
        )
        p.add_argument(
            "--workers", type=int, default=None, help="Worker processes (default: GSP4OBS_THREADS or CPU count)"
        )
        p.add_argument("--verbose", action="store_true", help="Print progress to stderr")

    p = sub.add_parser("sieve", help="Exceptional primes of a descriptor")
    p.add_argument("--desc", dest="descriptor", required=True, help="Descriptor file or packaged descriptor name")
    p.add_argument("--pmax", type=int, required=True)
    common(p)

    p = sub.add_parser("oracle", help="Brute-force H0 of ad rho(1) at one prime")
    p.add_argument("--desc", dest="descriptor", required=True)
    p.add_argument("--p", type=int, required=True)
    common(p)

    p = sub.add_parser("verify", help="Run verification suites")
    p.add_argument("--suite", type=Suite, default=Suite.All, choices=list(Suite))
    p.add_argument("--pmax", type=int, default=60)
    common(p)

    p = sub.add_parser("euler", help="Euler characteristic defect d1 - d2")
    p.add_argument("--parity", type=Parity, required=True, choices=list(Parity))

    p = sub.add_parser("fl", help="Fontaine-Laffaille check at ell = p")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    common(p)

    p = sub.add_parser("ordinary", help="Ordinary congruence check at ell = p")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    common(p)
    return parser


def _config(args: argparse.Namespace) -> JobConfig:
    fields = {k: v for k, v in vars(args).items() if k in JobConfig.__dataclass_fields__ and v is not None}
    return JobConfig(**fields)


def _sieve(config: JobConfig) -> tuple[pd.DataFrame, int]:
    assert config.descriptor is not None and config.pmax is not None
    desc = load_descriptor(config.descriptor)
    return sieve_frame(exceptional_primes(desc, config.pmax)), EXIT_OK


def _oracle(config: JobConfig) -> tuple[pd.DataFrame, int]:
    assert config.descriptor is not None and config.p is not None
    desc = load_descriptor(config.descriptor)
    rows = []
    for k, variant, s in embedding_variants(desc, config.p):
        report = obstruction_invariants(variant, config.p, sqrt_choice=s)
        rows.append(
            {
                "descriptor": desc.label(),
                "p": config.p,
                "embedding": k,
                "sqrt_choice": s,
                "dimension": report.dimension,
                "method": report.method,
                "basis_size": len(report.basis),
            }
        )
    return pd.DataFrame(rows), EXIT_OK


def _verify(config: JobConfig, verbose: bool) -> tuple[pd.DataFrame, int]:
    df = run_suites(config.suite, config.pmax or 60, config.workers, verbose=verbose)
    return df, EXIT_OK if bool(df.passed.all()) else EXIT_FAILED


def _primes(pmax: int) -> list[int]:
    return [int(p) for p in sympy.primerange(2, pmax + 1)]


def _fl(config: JobConfig) -> tuple[pd.DataFrame, int]:
    assert config.a is not None and config.b is not None and config.w is not None and config.pmax is not None
    wd = WeightData(config.a, config.b, config.w)
    rows = []
    for p in _primes(config.pmax):
        result = fl_check(wd, p)
        rows.append(
            {
                "p": p,
                "unobstructed": result.unobstructed,
                "reason": result.reason,
                "weights": " ".join(str(x) for x in result.weights),
                "disjoint": result.disjoint,
            }
        )
    return pd.DataFrame(rows), EXIT_OK


def _ordinary(config: JobConfig) -> tuple[pd.DataFrame, int]:
    assert config.a is not None and config.b is not None and config.pmax is not None
    # The congruences do not involve w; any w of the right parity will do.
    wd = WeightData(config.a, config.b, config.a + config.b - 1)
    rows = []
    for p in _primes(config.pmax):
        fired = ordinary_check(wd, p)
        rows.append({"p": p, "unobstructed": not fired, "congruences": "; ".join(fired)})
    return pd.DataFrame(rows), EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run one subcommand and write its table to stdout; returns the exit code."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    verbose = bool(getattr(args, "verbose", False))
    try:
        config = _config(args)
        if config.subcommand == "euler":
            assert config.parity is not None
            sys.stdout.write(f"{euler_defect(config.parity)}\n")
            return EXIT_OK
        # Progress lines carry timings; keep them off stdout.
        with contextlib.redirect_stdout(sys.stderr):
            match config.subcommand:
                case "sieve":
                    df, code = _sieve(config)
                case "oracle":
                    df, code = _oracle(config)
                case "verify":
                    df, code = _verify(config, verbose)
                case "fl":
                    df, code = _fl(config)
                case _:
                    df, code = _ordinary(config)
    except Gsp4ObsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(df, config.output))
    return code


def main() -> int:
    """Console script entry point."""
    return run()


if __name__ == "__main__":
    sys.exit(main())
