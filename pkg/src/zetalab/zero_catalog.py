"""Zero ordinates of zeta on the critical line: compute, import, verify, persist.

Zeros are located as sign changes of the Hardy Z function on a fixed scan
grid and refined by bisection.  Completeness is certified against the
Riemann-von Mangoldt count; a failed census triggers one rescan with a
finer step before giving up.  All zeros are treated as simple.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .accumulate import parallel_map
from .errors import (CoverageError, DomainError, IoError, MissedZeroError,
                     OrderError, ParseError, RangeError)
from .zeta_engine import TWO_PI, ZetaEngine

SCAN_START = 2.0
SCAN_STEP = 0.05
RESCAN_STEP = 0.01
BISECT_TOL = 1e-9
DEFAULT_PRECISION = 1e-9

CACHE_ENV = "ZETALAB_CACHE"
DEFAULT_CACHE = "./zetalab-cache"


@dataclass(frozen=True)
class ZeroTable:
    """Strictly increasing zero ordinates covering (0, t_max]."""

    ordinates: np.ndarray
    t_max: float
    source: str = "computed"
    precision: float = DEFAULT_PRECISION
    _pair_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=float)
        object.__setattr__(self, "ordinates", arr)
        if self.source not in ("computed", "imported"):
            raise DomainError(f"unknown source {self.source!r}")
        if arr.size:
            if np.any(arr <= 0):
                raise RangeError("ordinates must be positive")
            if np.any(np.diff(arr) <= 0):
                raise OrderError("ordinates must be strictly increasing")
            if arr[-1] > self.t_max:
                raise RangeError(
                    f"ordinate {arr[-1]} exceeds t_max={self.t_max}")

    def __len__(self) -> int:
        return int(self.ordinates.size)

    def up_to(self, t: float) -> "ZeroTable":
        """Sub-table covering (0, t]; requires t <= t_max."""
        if t > self.t_max:
            raise CoverageError(f"table covers only t <= {self.t_max}, need {t}")
        cut = int(np.searchsorted(self.ordinates, t, side="right"))
        return ZeroTable(self.ordinates[:cut].copy(), t, self.source, self.precision)

    def require_coverage(self, t: float) -> None:
        if self.t_max < t:
            raise CoverageError(f"zero table covers t <= {self.t_max}, need {t}")


@dataclass(frozen=True)
class CountReport:
    expected: float
    actual: int
    passed: bool


def rvm_expected_count(t: float) -> float:
    """Riemann-von Mangoldt estimate (t/2pi) log(t/(2 pi e)) + 7/8."""
    return t / TWO_PI * math.log(t / (TWO_PI * math.e)) + 0.875


def verify_counts(table: ZeroTable) -> CountReport:
    """Compare the table's census against the Riemann-von Mangoldt count."""
    if len(table) == 0:
        raise DomainError("verify_counts requires a nonempty table")
    expected = rvm_expected_count(table.t_max)
    actual = len(table)
    tol = max(2.0, 0.25 * math.log(table.t_max))
    return CountReport(expected, actual, abs(actual - expected) <= tol)


# --------------------------------------------------------------------------
# Zero finding
# --------------------------------------------------------------------------

def _scan_sign_changes(engine: ZetaEngine, t_max: float, step: float,
                       threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Hardy Z on the scan grid; returns bracket (lo, z_lo) arrays."""
    count = int(math.ceil((t_max - SCAN_START) / step)) + 1
    grid = SCAN_START + step * np.arange(count + 1)

    chunk = 8192
    starts = list(range(0, grid.size, chunk))

    def eval_chunk(i0: int) -> np.ndarray:
        n = min(chunk, grid.size - i0)
        return engine.hardy_z_uniform(grid[i0], step, n)

    z = np.concatenate(parallel_map(eval_chunk, starts, threads))
    flips = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
    return grid[flips], z[flips]


def _bisect_brackets(engine: ZetaEngine, lo: np.ndarray, z_lo: np.ndarray,
                     step: float) -> np.ndarray:
    """Shrink every bracket [lo, lo+step] below BISECT_TOL simultaneously."""
    lo = lo.copy()
    hi = lo + step
    f_lo = z_lo.copy()
    iters = int(math.ceil(math.log2(step / BISECT_TOL)))
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f_mid = engine.hardy_z_points(mid)
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(same, mid, lo)
        f_lo = np.where(same, f_mid, f_lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def find_zeros(t_max: float, engine: ZetaEngine | None = None,
               threads: int = 1) -> ZeroTable:
    """All zero ordinates in (0, t_max], certified by the RvM census.

    Scans Z from t=2 (the first zero is near 14.13; nothing lies below) with
    step 0.05, bisects each sign change to a bracket of width <= 1e-9, and
    re-scans once with step 0.01 if the census fails.
    """
    if not (20.0 <= t_max <= 6000.0):
        raise DomainError(f"t_max={t_max} outside [20, 6000]")
    engine = engine or ZetaEngine()
    ords = _find_pass(engine, t_max, SCAN_STEP, threads)
    table = ZeroTable(ords, t_max, "computed", DEFAULT_PRECISION)
    if verify_counts(table).passed:
        return table
    ords = _find_pass(engine, t_max, RESCAN_STEP, threads)
    table = ZeroTable(ords, t_max, "computed", DEFAULT_PRECISION)
    report = verify_counts(table)
    if not report.passed:
        raise MissedZeroError(
            f"census failed at t_max={t_max}: found {report.actual}, "
            f"expected {report.expected:.2f} (fine rescan included)")
    return table


def _find_pass(engine: ZetaEngine, t_max: float, step: float, threads: int) -> np.ndarray:
    lo, z_lo = _scan_sign_changes(engine, t_max, step, threads)
    if lo.size == 0:
        return np.empty(0)
    ords = _bisect_brackets(engine, lo, z_lo, step)
    return np.sort(ords[ords <= t_max])


# --------------------------------------------------------------------------
# Zeros file format
# --------------------------------------------------------------------------

def import_zeros(path: str | os.PathLike) -> ZeroTable:
    """Read a zeros file: '#' metadata lines, then one ordinate per line."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    precision = DEFAULT_PRECISION
    t_max_header: float | None = None
    ordinates: list[float] = []
    prev = 0.0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta = line[1:].strip()
            if "=" in meta:
                key, _, val = meta.partition("=")
                key = key.strip()
                try:
                    if key == "precision":
                        precision = float(val)
                    elif key == "t_max":
                        t_max_header = float(val)
                except ValueError as exc:
                    raise ParseError(f"bad metadata value {val!r}", line_no) from exc
            continue
        try:
            g = float(line)
        except ValueError as exc:
            raise ParseError(f"not a decimal literal: {line!r}", line_no) from exc
        if not math.isfinite(g):
            raise ParseError(f"non-finite ordinate {line!r}", line_no)
        if g <= 0:
            raise RangeError(f"line {line_no}: nonpositive ordinate {g}")
        if g <= prev:
            raise OrderError(f"ordinate {g} not above previous {prev}", line_no)
        ordinates.append(g)
        prev = g
    t_max = t_max_header if t_max_header is not None else (ordinates[-1] if ordinates else 0.0)
    return ZeroTable(np.array(ordinates), t_max, "imported", precision)


def export_zeros(table: ZeroTable, path: str | os.PathLike) -> None:
    """Write a zeros file that round-trips bit-identically through import.

    Ordinates are printed with 12 fractional digits, which re-parses to the
    same decimal text.
    """
    path = Path(path)
    lines = [
        "# zetalab zeros table",
        f"# t_max={table.t_max:.12f}",
        f"# source={table.source}",
        f"# precision={table.precision:g}",
    ]
    lines.extend(f"{g:.12f}" for g in table.ordinates)
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# --------------------------------------------------------------------------
# Cache
# --------------------------------------------------------------------------

def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _cache_file(t_max: float, directory: Path) -> Path:
    return directory / f"zeros-tmax-{t_max:.6f}.txt"


def load_or_find(t_max: float, cache: str | os.PathLike | None = None,
                 engine: ZetaEngine | None = None, threads: int = 1) -> ZeroTable:
    """Return the cached table for t_max, computing and persisting on miss.

    The cache file is canonical: a freshly computed table is re-read from
    disk before use, so runs that compute and runs that hit the cache see
    bit-identical ordinates (the file format rounds to 12 fractional
    digits).
    """
    directory = cache_dir(cache)
    path = _cache_file(t_max, directory)
    if not path.exists():
        table = find_zeros(t_max, engine=engine, threads=threads)
        directory.mkdir(parents=True, exist_ok=True)
        export_zeros(table, path)
    table = import_zeros(path)
    if table.t_max != t_max or not len(table):
        raise ParseError(f"cache file {path} does not cover t_max={t_max}")
    return ZeroTable(table.ordinates, table.t_max, "computed", table.precision)
