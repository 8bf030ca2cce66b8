"""Parallel (descriptor, p) grid: oracle against sieve, one row per pair.

Each case runs in a worker process and returns a DataFrame; the runner
concatenates them and sorts, so the merged table does not depend on the
number of workers.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import time

import pandas as pd
import sympy

from .config import OutputFormat, default_workers
from .errors import Gsp4ObsError
from .localtype import LocalTypeDescriptor, check_prime
from .obstruction import embedding_variants, obstruction_invariants
from .sieve import SIEVE_FLOOR, SieveReport, criterion, exceptional_primes

GRID_COLUMNS = ["descriptor", "group", "p", "oracle_dim", "oracle", "sieve", "exact", "agree", "error", "time_ms"]


@dataclasses.dataclass(frozen=True)
class GridCase:
    """One descriptor at one coefficient prime."""

    desc: LocalTypeDescriptor
    p: int

    def oracle_dimension(self) -> int:
        """Largest invariant dimension over all embeddings and square root choices."""
        variants = embedding_variants(self.desc, self.p)
        return max(obstruction_invariants(d, self.p, sqrt_choice=s).dimension for _, d, s in variants)

    def sieve_flag(self) -> bool:
        return bool(exceptional_primes(self.desc, max(self.p, SIEVE_FLOOR), floor=self.p))

    def run(self) -> pd.DataFrame:
        t0 = time.monotonic()
        dim, sieve, error = -1, False, None
        try:
            check_prime(self.desc, self.p)
            dim = self.oracle_dimension()
            sieve = self.sieve_flag()
        except Gsp4ObsError as e:
            error = f"{type(e).__name__}: {e}"
        elapsed = time.monotonic() - t0
        exact = criterion(self.desc).exact
        oracle = dim > 0
        # Inexact criteria only promise a superset.
        agree = error is None and (oracle == sieve if exact else sieve or not oracle)
        row = {
            "descriptor": self.desc.label(),
            "group": str(self.desc.group),
            "p": self.p,
            "oracle_dim": dim,
            "oracle": oracle,
            "sieve": sieve,
            "exact": exact,
            "agree": agree,
            "error": error,
            "time_ms": 1000 * elapsed,
        }
        return pd.DataFrame([row], columns=GRID_COLUMNS)


def _run_case(case: GridCase) -> pd.DataFrame:
    return case.run()


def admissible_primes(desc: LocalTypeDescriptor, pmax: int, floor: int = SIEVE_FLOOR) -> list[int]:
    return [int(p) for p in sympy.primerange(max(floor, SIEVE_FLOOR), pmax + 1) if p != desc.ell]


def run_grid(
    descs: list[LocalTypeDescriptor],
    pmax: int,
    workers: int | None = None,
    verbose: bool = True,
) -> pd.DataFrame:
    """Compare the oracle with the sieve at every admissible p <= pmax for every descriptor.

    Args:
        descs: Descriptors to check.
        pmax: Largest coefficient prime.
        workers: Number of processes (default: GSP4OBS_THREADS or the CPU count).
        verbose: Whether to print progress.

    Returns:
        DataFrame with one row per (descriptor, p), sorted by descriptor and p.
    """
    if workers is None:
        workers = default_workers()
    cases = [GridCase(desc, p) for desc in descs for p in admissible_primes(desc, pmax)]

    if verbose:
        print(f"Running grid: descriptors={len(descs)}, pmax={pmax}, workers={workers}, jobs={len(cases)}")

    t0 = time.monotonic()
    if workers == 1 or len(cases) <= 1:
        dfs = [case.run() for case in cases]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=min(workers, len(cases))) as pool:
            dfs = list(pool.map(_run_case, cases))
    elapsed = time.monotonic() - t0

    df = pd.concat(dfs, ignore_index=True) if dfs else pd.DataFrame(columns=GRID_COLUMNS)
    df = df.sort_values(["descriptor", "p"], kind="stable").reset_index(drop=True)

    if verbose:
        n_flagged = int(df.oracle.sum())
        n_bad = int((~df.agree.astype(bool)).sum())
        print(f"Completed {len(cases)} jobs in {elapsed:.2f}s ({n_flagged} flagged, {n_bad} disagreements)")

    return df


def sieve_frame(reports: list[SieveReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [dataclasses.asdict(r) for r in reports],
        columns=["p", "condition", "group", "multiplicity"],
    )


def render(df: pd.DataFrame, fmt: OutputFormat) -> str:
    """Deterministic text for a result table; timing columns are dropped."""
    df = df.drop(columns=[c for c in ("time_ms",) if c in df.columns])
    match fmt:
        case OutputFormat.Csv:
            return df.to_csv(index=False, lineterminator="\n")
        case OutputFormat.JsonLines:
            if df.empty:
                return ""
            return df.to_json(orient="records", lines=True, force_ascii=False).rstrip("\n") + "\n"
        case OutputFormat.Pretty:
            if df.empty:
                return "(no rows)\n"
            return df.to_string(index=False) + "\n"
