"""Cross-validation harness binding the three computation routes.

Every quantity here is computed at least twice: eigenphases by the
closed forms and by the grid solver, limit distributions by the spectral
formula and by direct long-horizon averaging, trapping verdicts by the
family classification and by the origin-rank test.  Checks reduce each
comparison to a single scalar metric with a pinned threshold; a check
passes exactly when its metric is finite and at most the threshold.

``run_all`` executes the full battery over the figure catalogue and
returns reports in canonical order (check name, then label), so repeated
runs produce identical output byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .walk import CoinField, WalkState, time_averaged
from .spectral import (
    build_eigenvector,
    eigen_residual,
    find_eigenphases,
    is_strongly_trapped,
    limit_distribution,
    trapped_mass,
    DEFAULT_GRID,
    NotInAdmissibleSetError,
)
from .figures import PRESETS

RESIDUAL_THRESHOLD = 1e-9
PHASE_MATCH_THRESHOLD = 1e-8
LIMIT_VS_SIM_THRESHOLD = 0.01
MASS_IDENTITY_THRESHOLD = 1e-10
DEFAULT_HORIZON = 2000
DEFAULT_WINDOW = 20


@dataclass(frozen=True)
class CheckReport:
    """One named comparison; passes iff the metric stays under the threshold."""

    name: str
    label: str
    metric: float
    threshold: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.metric) and self.metric <= self.threshold

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "label": self.label,
                "metric": self.metric,
                "threshold": self.threshold,
                "pass": self.passed,
            }
        )


def write_reports(reports: Iterable[CheckReport], stream: IO[str]) -> None:
    """One JSON object per line, in the order given."""
    for rep in reports:
        stream.write(rep.to_json() + "\n")


def check_eigen_residuals(
    field: CoinField, phases: Sequence[float], label: str = ""
) -> tuple[CheckReport, ...]:
    """Residual of the matching generator at each phase; eigenphases give 0."""
    out = []
    for k, lam in enumerate(phases):
        try:
            metric = eigen_residual(field, lam)
        except NotInAdmissibleSetError:
            metric = math.inf
        out.append(
            CheckReport("eigen_residual", f"{label}[{k}]", metric, RESIDUAL_THRESHOLD)
        )
    return tuple(out)


def check_limit_vs_simulation(
    field: CoinField,
    psi: tuple[complex, complex],
    horizon: int = DEFAULT_HORIZON,
    window: int = DEFAULT_WINDOW,
    threshold: float = LIMIT_VS_SIM_THRESHOLD,
    label: str = "",
    grid_points: int = DEFAULT_GRID,
) -> CheckReport:
    """Finite-horizon time average against the spectral limit distribution.

    The metric is the largest pointwise gap on ``|x| <= window``.  The
    spectral side sums over all eigenphases found by the grid solver; an
    empty point spectrum makes it identically zero, so the check also
    covers the escaping (zero trapped mass) cases.
    """
    initial = WalkState.point(*psi)
    phases = find_eigenphases(field, grid_points=grid_points)
    pairs = [build_eigenvector(field, lam) for lam in phases]
    exact = limit_distribution(pairs, initial, window=(-window, window))
    empirical = time_averaged(initial, field, horizon)
    metric = max(
        abs(empirical.mass_at(x) - exact.mass_at(x)) for x in range(-window, window + 1)
    )
    return CheckReport("limit_vs_simulation", label, metric, threshold)


def check_trapping_table(grid_points: int = DEFAULT_GRID) -> tuple[CheckReport, ...]:
    """Origin-rank trapping verdicts against the expected classification."""
    out = []
    for preset in PRESETS:
        field = preset.field()
        pairs = [
            build_eigenvector(field, lam)
            for lam in find_eigenphases(field, grid_points=grid_points)
        ]
        got = is_strongly_trapped(pairs)
        metric = 0.0 if got == preset.strongly_trapped else 1.0
        out.append(CheckReport("trapping_table", f"fig{preset.fig_id}", metric, 0.0))
    return tuple(out)


def run_all(
    horizon: int = DEFAULT_HORIZON,
    window: int = DEFAULT_WINDOW,
    grid_points: int = DEFAULT_GRID,
) -> tuple[CheckReport, ...]:
    """Full battery over the figure catalogue, canonically ordered."""
    reports: list[CheckReport] = []
    for preset in PRESETS:
        label = f"fig{preset.fig_id}"
        field = preset.field()
        rep = preset.report()
        reports.extend(check_eigen_residuals(field, rep.eigenphases, label))

        found = find_eigenphases(field, grid_points=grid_points)
        if len(found) == len(rep.eigenphases):
            gap = max(
                (abs(a - b) for a, b in zip(found, sorted(rep.eigenphases))),
                default=0.0,
            )
        else:
            gap = math.inf
        reports.append(CheckReport("phase_match", label, gap, PHASE_MATCH_THRESHOLD))

        pairs = [build_eigenvector(field, lam) for lam in found]
        initial = WalkState.point(*preset.psi)
        exact = limit_distribution(pairs, initial, window=(-window, window))
        tail = sum(
            abs(pair.vector().overlap(initial)) ** 2
            * pair.vector().mass_outside(-window, window)
            for pair in pairs
        )
        mass_gap = abs(exact.total() + tail - trapped_mass(pairs, initial))
        reports.append(
            CheckReport("mass_identity", label, mass_gap, MASS_IDENTITY_THRESHOLD)
        )

        reports.append(
            check_limit_vs_simulation(
                field,
                preset.psi,
                horizon=horizon,
                window=window,
                label=label,
                grid_points=grid_points,
            )
        )
    reports.extend(check_trapping_table(grid_points=grid_points))
    return tuple(sorted(reports, key=lambda r: (r.name, r.label)))
