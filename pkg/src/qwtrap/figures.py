"""Reference parameter sets fig1..fig7 shared by tests and the CLI.

Each preset bundles one concrete coin field from the five closed-form
families, the initial state used alongside it, and the expected outcomes
(strong trapping, whether the chosen state receives zero limiting mass).
The presets are the single source of these values; everything downstream
(verification checks, acceptance tests, the ``figure`` command) reads
them from here.

``FigurePreset.sweep`` traces the eigenvalue arcs: it varies the one
angle that governs existence for the preset's family, with all moduli
fixed, and records the closed-form eigenphases wherever the spectrum is
nonempty.  Sweep values where the family formulas degenerate (isolated
branch collisions) are skipped.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .algebra import Coin, TWO_PI, make_coin
from .walk import CoinField, defect_field
from .models import (
    ConstraintError,
    DegeneracyError,
    ModelReport,
    model1,
    model2,
    model3,
    model4,
    model5,
)

_R = 1.0 / math.sqrt(2.0)
# components of the reflection-free states used with figs 4 and 5
_COS8 = math.sqrt(2.0 + math.sqrt(2.0)) / 2.0
_SIN8 = math.sqrt(2.0 - math.sqrt(2.0)) / 2.0


@dataclass(frozen=True)
class FigurePreset:
    """One reference parameter set with its expected qualitative behavior."""

    fig_id: int
    model_id: int
    title: str
    minus: Coin
    origin: Coin
    plus: Coin
    psi: tuple[complex, complex]
    strongly_trapped: bool
    zero_mass: bool
    sweep_param: str

    def field(self) -> CoinField:
        return defect_field(self.minus, self.origin, self.plus)

    def report(self, psi: tuple[complex, complex] | None = None) -> ModelReport:
        """Closed-form family report, for the preset state unless overridden."""
        return self._build(self.minus, self.origin, self.plus, psi if psi is not None else self.psi)

    def _build(self, minus: Coin, origin: Coin, plus: Coin, psi) -> ModelReport:
        if self.model_id == 1:
            return model1(minus, origin, psi)
        if self.model_id == 2:
            return model2(minus, origin, psi)
        if self.model_id == 3:
            return model3(minus, plus, psi)
        if self.model_id == 4:
            return model4(minus, plus, psi)
        return model5(minus, origin, plus, psi)

    def _swept(self, val: float) -> tuple[Coin, Coin, Coin]:
        """Replace the swept angle by ``val``, keeping every modulus fixed."""
        if self.model_id == 1:  # rotate the origin beta
            o = self.origin
            return self.minus, make_coin(o.alpha, abs(o.beta) * cmath.exp(1j * val), o.delta), self.plus
        if self.model_id == 2:  # rotate the common coin phase
            c = make_coin(self.minus.alpha, self.minus.beta, val)
            return c, self.origin, c
        if self.model_id == 3:  # rotate the plus-side coin phase
            p = make_coin(self.plus.alpha, self.plus.beta, val)
            return self.minus, p, p
        if self.model_id == 4:  # rotate the plus-side beta
            p = make_coin(self.plus.alpha, abs(self.plus.beta) * cmath.exp(1j * val), self.plus.delta)
            return self.minus, p, p
        # model 5: rotate the shared phase of both sides
        return (
            make_coin(self.minus.alpha, self.minus.beta, val),
            self.origin,
            make_coin(self.plus.alpha, self.plus.beta, val),
        )

    def sweep(self, points: int = 720) -> tuple[tuple[float, str, float], ...]:
        """Rows ``(sweep_value, branch, eigenphase)`` over a full angle turn."""
        rows: list[tuple[float, str, float]] = []
        for k in range(points):
            val = k * TWO_PI / points
            try:
                rep = self._build(*self._swept(val), self.psi)
            except (ConstraintError, DegeneracyError):
                continue
            for lam, label in zip(rep.eigenphases, rep.branch_of):
                rows.append((val, label, lam))
        return tuple(rows)


PRESETS: tuple[FigurePreset, ...] = (
    FigurePreset(
        fig_id=1,
        model_id=1,
        title="single defect, origin beta rotated a quarter turn",
        minus=make_coin(_R, _R, 0.0),
        origin=make_coin(_R, 1j * _R, 0.0),
        plus=make_coin(_R, _R, 0.0),
        psi=(_R, _R),
        strongly_trapped=True,
        zero_mass=False,
        sweep_param="arg_beta_o",
    ),
    FigurePreset(
        fig_id=2,
        model_id=2,
        title="single defect, quarter-turn coin phase, one live branch",
        minus=make_coin(_R, _R, math.pi / 2),
        origin=make_coin(_R, _R, 0.0),
        plus=make_coin(_R, _R, math.pi / 2),
        psi=(_R, -1j * _R),
        strongly_trapped=False,
        zero_mass=True,
        sweep_param="delta",
    ),
    FigurePreset(
        fig_id=3,
        model_id=2,
        title="single defect, half-turn coin phase, both branches live",
        minus=make_coin(_R, _R, math.pi),
        origin=make_coin(_R, _R, 0.0),
        plus=make_coin(_R, _R, math.pi),
        psi=(_R, -1j * _R),
        strongly_trapped=True,
        zero_mass=False,
        sweep_param="delta",
    ),
    FigurePreset(
        fig_id=4,
        model_id=3,
        title="two phases, opposite coin phases, matched beta arguments",
        minus=make_coin(_R, _R, 0.0),
        origin=make_coin(_R, _R, math.pi),
        plus=make_coin(_R, _R, math.pi),
        psi=(_COS8, -_SIN8),
        strongly_trapped=False,
        zero_mass=True,
        sweep_param="delta_p",
    ),
    FigurePreset(
        fig_id=5,
        model_id=4,
        title="two phases, opposite beta signs, matched coin phases",
        minus=make_coin(_R, _R, 0.0),
        origin=make_coin(_R, -_R, 0.0),
        plus=make_coin(_R, -_R, 0.0),
        psi=(_COS8, _SIN8),
        strongly_trapped=False,
        zero_mass=True,
        sweep_param="arg_beta_p",
    ),
    FigurePreset(
        fig_id=6,
        model_id=5,
        title="reflectionless origin between twisted phases, one live branch",
        minus=make_coin(_R, _R, 0.0),
        origin=make_coin(1.0, 0.0, 0.0),
        plus=make_coin(_R, 1j * _R, 0.0),
        psi=(_R, _R * cmath.exp(1j * math.pi / 4)),
        strongly_trapped=False,
        zero_mass=True,
        sweep_param="delta",
    ),
    FigurePreset(
        fig_id=7,
        model_id=5,
        title="reflectionless origin between twisted phases, both branches live",
        minus=make_coin(_R, _R, math.pi / 4),
        origin=make_coin(1.0, 0.0, 0.0),
        plus=make_coin(_R, 1j * _R, math.pi / 4),
        psi=(_R, _R),
        strongly_trapped=True,
        zero_mass=False,
        sweep_param="delta",
    ),
)


def preset(fig_id: int) -> FigurePreset:
    if not 1 <= fig_id <= len(PRESETS):
        raise ValueError(f"figure id must be 1..{len(PRESETS)}, got {fig_id}")
    return PRESETS[fig_id - 1]
