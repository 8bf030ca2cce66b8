"""Verification suites behind ``gsp4obs verify``.

Every suite returns a DataFrame with columns suite, case, passed, detail;
``detail`` holds the first counterexample of a failing case.
"""

from __future__ import annotations

from fractions import Fraction
import itertools
import time

import pandas as pd
import sympy

from . import tamerep
from .config import Suite
from .ff import field_make
from .grid import admissible_primes, run_grid
from .localtype import load_descriptor, packaged_descriptors
from .obstruction import steinberg_h0_identity, verify_decomposition
from .symplectic import Parity, euler_defect, similitude
from .tamerep import SteinbergKind, SymChar

SUITE_COLUMNS = ["suite", "case", "passed", "detail"]

STEINBERG_PRIMES = (5, 7, 11, 13)
STEINBERG_ELLS = (2, 3, 5)
EULER_FIELDS = (7, 11, 13)
EXPECTED_DEFECT = {Parity.Even: 1, Parity.OddI: 5, Parity.OddII: 7}
DECOMPOSITION_PRIMES_PER_DESCRIPTOR = 3


def _row(suite: Suite, case: str, passed: bool, detail: str = "") -> dict[str, object]:
    return {"suite": str(suite), "case": case, "passed": passed, "detail": detail}


def identity_characters(ell: int) -> list[SymChar]:
    """A fixed spread of tame characters: unramified roots of order <= 3, half-integral nu powers, quadratic inertia."""
    frobs = [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
    cyclos = [Fraction(k, 2) for k in range(-3, 4)]
    inertias = [Fraction(0)] if ell == 2 else [Fraction(0), Fraction(1, 2)]
    return [SymChar(ell, f, c, i) for f, c, i in itertools.product(frobs, cyclos, inertias)]


def steinberg_suite(pmax: int = 50) -> pd.DataFrame:
    """Compatibility sigma N sigma^-1 = ell N, the similitude test, and the four H^0 identities."""
    rows = []
    for kind, p, ell in itertools.product(SteinbergKind, STEINBERG_PRIMES, STEINBERG_ELLS):
        if p == ell:
            continue
        field = tamerep.field_for(p, [SymChar.nu(ell, Fraction(1, 2))])
        case = f"{kind} p={p} ell={ell}"
        ok = all(tamerep.steinberg_compatible(kind, field, ell, s) for s in (0, 1))
        detail = "" if ok else "sigma N sigma^-1 != ell N"
        if ok and kind.is_symplectic:
            rep = tamerep.steinberg_rep(kind, 1, field, ell)
            ok = similitude(rep.frob) is not None and similitude(rep.inertia) is not None
            detail = "" if ok else "image leaves GSp4"
        rows.append(_row(Suite.Steinberg, f"compatible {case}", ok, detail))

    primes = [int(p) for p in sympy.primerange(5, min(pmax, 50) + 1)]
    for kind in SteinbergKind:
        failure = ""
        checked = 0
        for ell, p in itertools.product(STEINBERG_ELLS, primes):
            if p == ell:
                continue
            for chi in identity_characters(ell):
                lhs, rhs = steinberg_h0_identity(kind, chi, p, ell)
                checked += 1
                if lhs != rhs and not failure:
                    failure = f"chi={chi} p={p} ell={ell}: {lhs} != {rhs}"
        rows.append(_row(Suite.Steinberg, f"identity {kind} ({checked} characters)", not failure, failure))
    return pd.DataFrame(rows, columns=SUITE_COLUMNS)


def decomposition_suite(pmax: int = 60, names: list[str] | None = None) -> pd.DataFrame:
    """verify_decomposition on the packaged descriptors at their first few admissible primes."""
    rows = []
    for name in packaged_descriptors() if names is None else names:
        desc = load_descriptor(name)
        for p in admissible_primes(desc, pmax)[:DECOMPOSITION_PRIMES_PER_DESCRIPTOR]:
            report = verify_decomposition(desc, p)
            rows.append(_row(Suite.Decomposition, f"{report.label} p={p}", report.passed, report.detail))
    return pd.DataFrame(rows, columns=SUITE_COLUMNS)


def euler_suite() -> pd.DataFrame:
    rows = []
    for cls, p in itertools.product(Parity, EULER_FIELDS):
        got = euler_defect(cls, field_make(p, 1))
        expected = EXPECTED_DEFECT[cls]
        detail = "" if got == expected else f"{got} != {expected}"
        rows.append(_row(Suite.Euler, f"{cls} F_{p}", got == expected, detail))
    return pd.DataFrame(rows, columns=SUITE_COLUMNS)


def equivalence_suite(pmax: int = 60, workers: int | None = None, verbose: bool = False) -> pd.DataFrame:
    """Oracle against sieve on the packaged descriptors; exact groups must agree, the others give supersets."""
    descs = [load_descriptor(name) for name in packaged_descriptors()]
    df = run_grid(descs, pmax, workers=workers, verbose=verbose)
    rows = []
    for label, part in df.groupby("descriptor", sort=True):
        bad = part[~part.agree.astype(bool)]
        if bad.empty:
            rows.append(_row(Suite.Equivalence, str(label), True, f"{int(part.oracle.sum())} flagged primes"))
        else:
            first = bad.iloc[0]
            detail = first.error if first.error else f"p={first.p}: oracle={first.oracle} sieve={first.sieve}"
            rows.append(_row(Suite.Equivalence, str(label), False, detail))
    return pd.DataFrame(rows, columns=SUITE_COLUMNS)


def run_suites(suite: Suite, pmax: int = 60, workers: int | None = None, verbose: bool = True) -> pd.DataFrame:
    frames = []
    for part in suite.expand():
        t0 = time.monotonic()
        match part:
            case Suite.Steinberg:
                df = steinberg_suite(pmax)
            case Suite.Decomposition:
                df = decomposition_suite(pmax)
            case Suite.Euler:
                df = euler_suite()
            case _:
                df = equivalence_suite(pmax, workers)
        if verbose:
            print(f"Suite {part}: {int(df.passed.sum())}/{len(df)} passed in {time.monotonic() - t0:.2f}s")
        frames.append(df)
    return pd.concat(frames, ignore_index=True)
