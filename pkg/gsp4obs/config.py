"""Job configuration for the command line and the grid runner."""

from __future__ import annotations

import dataclasses
import enum
import os

from .errors import Gsp4ObsError
from .sieve import SIEVE_FLOOR
from .symplectic import Parity

THREADS_ENV = "GSP4OBS_THREADS"
FULL_SUITE_ENV = "GSP4OBS_FULL_SUITE"


class OutputFormat(enum.Enum):
    Csv = "csv"
    JsonLines = "json-lines"
    Pretty = "pretty-table"

    def __str__(self) -> str:
        return self.value


class Suite(enum.Enum):
    Steinberg = "steinberg"
    Decomposition = "decomp"
    Euler = "euler"
    Equivalence = "equivalence"
    All = "all"

    def __str__(self) -> str:
        return self.value

    def expand(self) -> tuple[Suite, ...]:
        if self is Suite.All:
            return (Suite.Steinberg, Suite.Decomposition, Suite.Euler, Suite.Equivalence)
        return (self,)


def default_workers() -> int:
    """Worker count from GSP4OBS_THREADS, else the CPU count."""
    raw = os.getenv(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        workers = int(raw)
    except ValueError:
        raise Gsp4ObsError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise Gsp4ObsError(f"{THREADS_ENV} must be positive, got {workers}")
    return workers


def full_suite_enabled() -> bool:
    return os.getenv(FULL_SUITE_ENV) == "1"


@dataclasses.dataclass(frozen=True)
class JobConfig:
    """One command: which subcommand, its inputs, and how to print and parallelise it."""

    subcommand: str
    descriptor: str | None = None
    pmax: int | None = None
    p: int | None = None
    output: OutputFormat = OutputFormat.Pretty
    workers: int = dataclasses.field(default_factory=default_workers)
    suite: Suite = Suite.All
    parity: Parity | None = None
    a: int | None = None
    b: int | None = None
    w: int | None = None

    def __post_init__(self) -> None:
        if self.pmax is not None and self.pmax < SIEVE_FLOOR:
            raise Gsp4ObsError(f"--pmax must be at least {SIEVE_FLOOR}, got {self.pmax}")
        if self.workers < 1:
            raise Gsp4ObsError(f"worker count must be positive, got {self.workers}")
        required = {
            "sieve": ("descriptor", "pmax"),
            "oracle": ("descriptor", "p"),
            "euler": ("parity",),
            "fl": ("a", "b", "w", "pmax"),
            "ordinary": ("a", "b", "pmax"),
        }.get(self.subcommand, ())
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise Gsp4ObsError(f"{self.subcommand} needs {', '.join(missing)}")
