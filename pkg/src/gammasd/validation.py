"""Round-trip validation sweep over a log-spaced (mu, sigma) grid.

Each cell maps (mu, sigma) to prior parameters, maps back through the
closed-form SD moments, and is classified pass/fail against a relative
error threshold. Per-cell numerical failures are recorded as failed
cells; the sweep itself never aborts. Cells are independent, so the grid
may be evaluated concurrently; results are always assembled in row-major
(mu index, sigma index) order, making the output identical regardless of
the degree of concurrency.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .distributions import GammaParams, NumericalDegeneracyError, sd_moments
from .elicitation import fit_prior
from .optimize import OptimOptions

__all__ = [
    "GridSpec",
    "CellResult",
    "GridSummary",
    "CSV_HEADER",
    "run_grid",
    "summarize",
    "write_csv",
]

CSV_HEADER = "mu,sigma,a0,b0,mu_rt,sigma_rt,rel_err_mu,rel_err_sigma,converged,passed"

# Robust operating region suggested by the full sweep: the inverse
# transform is reliable for 2e-3 < mu < 1e4 and 3e-3 < sigma/mu < 50.
CUTOFF_MU = (2e-3, 1e4)
CUTOFF_RATIO = (3e-3, 50.0)


@dataclass(frozen=True)
class GridSpec:
    """Configuration of the validation sweep.

    Defaults reproduce the full published sweep: 1000 x 1000 cells, mu
    log-spaced over [1e-4, 1e4] and, for each mu, sigma log-spaced over
    [1e-4 * mu, 1e2 * mu], with a 1 % pass threshold. Reduced resolutions
    are first-class for CI-scale runs.
    """

    mu_points: int = 1000
    sigma_points: int = 1000
    mu_lo: float = 1e-4
    mu_hi: float = 1e4
    sigma_ratio_lo: float = 1e-4
    sigma_ratio_hi: float = 1e2
    pass_threshold: float = 1e-2
    optim: OptimOptions = field(default_factory=OptimOptions)

    def __post_init__(self) -> None:
        if self.mu_points < 1 or self.sigma_points < 1:
            raise ValueError("mu_points and sigma_points must be >= 1")
        if not 0.0 < self.mu_lo < self.mu_hi:
            raise ValueError("need 0 < mu_lo < mu_hi")
        if not 0.0 < self.sigma_ratio_lo < self.sigma_ratio_hi:
            raise ValueError("need 0 < sigma_ratio_lo < sigma_ratio_hi")
        if not self.pass_threshold > 0.0:
            raise ValueError("pass_threshold must be > 0")

    def mu_values(self) -> list[float]:
        return _log_spaced(self.mu_lo, self.mu_hi, self.mu_points)

    def sigma_values(self, mu: float) -> list[float]:
        return _log_spaced(
            self.sigma_ratio_lo * mu, self.sigma_ratio_hi * mu, self.sigma_points
        )


@dataclass(frozen=True)
class CellResult:
    """Outcome of the round trip at one (mu, sigma) grid point."""

    mu: float
    sigma: float
    a0: float
    b0: float
    mu_rt: float
    sigma_rt: float
    rel_err_mu: float
    rel_err_sigma: float
    passed: bool
    converged: bool


@dataclass(frozen=True)
class GridSummary:
    """Aggregate view of a sweep, including the largest fully-passing
    axis-aligned rectangle in (mu, sigma/mu) log space (None if the input
    is not a complete rectangular grid or nothing passed)."""

    n_cells: int
    n_passed: int
    pass_fraction: float
    pass_rectangle: tuple[float, float, float, float] | None


def _log_spaced(lo: float, hi: float, n: int) -> list[float]:
    """n points log-spaced over [lo, hi], both endpoints included."""
    if n == 1:
        return [lo]
    log_lo, log_hi = math.log(lo), math.log(hi)
    step = (log_hi - log_lo) / (n - 1)
    values = [math.exp(log_lo + i * step) for i in range(n)]
    values[0], values[-1] = lo, hi
    return values


def _run_cell(mu: float, sigma: float, optim: OptimOptions, threshold: float) -> CellResult:
    try:
        fit = fit_prior(mu, sigma, optim)
    except (ValueError, NumericalDegeneracyError, OverflowError):
        nan = float("nan")
        return CellResult(mu, sigma, nan, nan, nan, nan,
                          float("inf"), float("inf"), False, False)
    rel_mu, rel_sigma = fit.round_trip_rel_err
    passed = fit.converged and rel_mu < threshold and rel_sigma < threshold
    return CellResult(
        mu=mu,
        sigma=sigma,
        a0=fit.params.a,
        b0=fit.params.b,
        mu_rt=fit.round_trip.mu,
        sigma_rt=fit.round_trip.sigma,
        rel_err_mu=rel_mu,
        rel_err_sigma=rel_sigma,
        passed=passed,
        converged=fit.converged,
    )


def _run_row(args: tuple[float, GridSpec]) -> list[CellResult]:
    mu, spec = args
    return [
        _run_cell(mu, sigma, spec.optim, spec.pass_threshold)
        for sigma in spec.sigma_values(mu)
    ]


def run_grid(spec: GridSpec, workers: int | None = 1) -> list[CellResult]:
    """Evaluate the sweep; returns mu_points * sigma_points cells in
    row-major order. workers > 1 (or None for the CPU count) spreads the
    mu rows over processes; the result is identical either way."""
    rows = [(mu, spec) for mu in spec.mu_values()]
    if workers == 1:
        row_results = map(_run_row, rows)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            row_results = list(pool.map(_run_row, rows, chunksize=8))
    return [cell for row in row_results for cell in row]


def _largest_pass_rectangle(
    rows: list[list[CellResult]],
) -> tuple[float, float, float, float] | None:
    """Maximal-area all-pass rectangle, area measured in grid indices
    (uniform in log space). Classic histogram-stack scan over rows."""
    n_cols = len(rows[0])
    best_area = 0
    best = None  # (row_lo, row_hi, col_lo, col_hi)
    heights = [0] * n_cols
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            heights[j] = heights[j] + 1 if cell.passed else 0
        stack: list[int] = []
        j = 0
        while j <= n_cols:
            h = heights[j] if j < n_cols else 0
            if not stack or heights[stack[-1]] <= h:
                stack.append(j)
                j += 1
                continue
            top = stack.pop()
            width = j - (stack[-1] + 1 if stack else 0)
            area = heights[top] * width
            if area > best_area:
                col_lo = stack[-1] + 1 if stack else 0
                best_area = area
                best = (i - heights[top] + 1, i, col_lo, j - 1)
    if best is None:
        return None
    r0, r1, c0, c1 = best
    ratios = [cell.sigma / cell.mu for cell in rows[0]]
    return (rows[r0][0].mu, rows[r1][0].mu, ratios[c0], ratios[c1])


def summarize(results: Sequence[CellResult]) -> GridSummary:
    """Pass counts plus the largest fully-passing log-rectangle."""
    if not results:
        raise ValueError("summarize requires a non-empty result collection")
    n_passed = sum(1 for c in results if c.passed)

    rows: list[list[CellResult]] = []
    for cell in results:
        if rows and rows[-1][0].mu == cell.mu:
            rows[-1].append(cell)
        else:
            rows.append([cell])
    rectangular = len({len(r) for r in rows}) == 1
    rect = _largest_pass_rectangle(rows) if rectangular else None

    return GridSummary(
        n_cells=len(results),
        n_passed=n_passed,
        pass_fraction=n_passed / len(results),
        pass_rectangle=rect,
    )


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(results: Iterable[CellResult], destination: str | IO[str]) -> None:
    """Write one row per cell after a fixed header, reals at 17
    significant digits, booleans as true/false, input order preserved."""
    if hasattr(destination, "write"):
        _write_csv_stream(results, destination)
    else:
        with open(destination, "w", newline="") as fh:
            _write_csv_stream(results, fh)


def _write_csv_stream(results: Iterable[CellResult], fh: IO[str]) -> None:
    fh.write(CSV_HEADER + "\n")
    for c in results:
        fh.write(
            ",".join(
                (
                    _fmt(c.mu), _fmt(c.sigma), _fmt(c.a0), _fmt(c.b0),
                    _fmt(c.mu_rt), _fmt(c.sigma_rt),
                    _fmt(c.rel_err_mu), _fmt(c.rel_err_sigma),
                    "true" if c.converged else "false",
                    "true" if c.passed else "false",
                )
            )
            + "\n"
        )
