"""Closed-form point spectra for five exactly solvable coin-field families.

Every family below is a two-phase field with at most one defect, so its
point spectrum, eigenvectors, and time-averaged limit distribution admit
closed forms in the coin parameters.  Each ``modelK`` function checks the
family's standing assumptions, decides existence, and returns a
:class:`ModelReport` carrying eigenphases, unit eigenvectors with
geometric tails, the family's derived scalars, and a closed-form
evaluator for the limit distribution of an origin-supported state.

``defect_closed_form`` is the general construction: given any admissible
eigenphase of a field with cuts at x = -1, +1 it produces the eigenvector,
its squared-norm profile, and the overlap weight without reference to a
particular family.

Families (``minus`` coin on x < 0, ``plus`` coin on x > 0):

1. plus = minus, origin shares the rotation phase delta
2. plus = minus, origin shares beta but rotates freely
3. origin = plus, beta arguments matched across the phases
4. origin = plus, rotation phases matched across the phases
5. reflectionless origin (beta_o = 0), equal beta moduli, matched deltas

Eigenvector normalizers come from the closed-form geometric tail sums.
After construction every eigenvector is renormalized numerically and the
correction factor is kept on the report; a correction away from 1 flags a
transcription error in the normalizer rather than silently biasing the
distribution.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping

import numpy as np

from .algebra import Coin, TWO_PI
from .walk import CoinField, Distribution, defect_field
from .spectral import (
    DEDUPE_TOL,
    RESIDUAL_ACCEPT,
    GeometricVector,
    NoEigenvalueError,
    contracting_zeta,
    eigen_residual,
    expanding_zeta,
)

# Ties at an existence-condition boundary snap to the boundary value, and
# the open or closed endpoint then decides membership.
BOUNDARY_TOL = 1e-12

UNIT_PSI_TOL = 1e-10


class ConstraintError(ValueError):
    """Coin parameters violate a family's standing assumptions."""


class DegeneracyError(ArithmeticError):
    """A closed-form denominator vanishes; the family formulas are singular."""


class TrappingClass(enum.Enum):
    STRONGLY_TRAPPED = "strongly_trapped"
    NOT_STRONGLY_TRAPPED = "not_strongly_trapped"
    CONDITIONAL = "conditional"


#: Family-level classification: families 2 and 5 trap strongly only for the
#: parameter ranges where both branches exist.
FAMILY_TRAPPING: Mapping[int, TrappingClass] = {
    1: TrappingClass.STRONGLY_TRAPPED,
    2: TrappingClass.CONDITIONAL,
    3: TrappingClass.NOT_STRONGLY_TRAPPED,
    4: TrappingClass.NOT_STRONGLY_TRAPPED,
    5: TrappingClass.CONDITIONAL,
}


@dataclass(frozen=True)
class ModelReport:
    """Closed-form spectral data for one family at concrete parameters.

    ``eigenphases``, ``branch_of``, ``normalizers``, ``norm_corrections``
    and ``vectors`` are index-aligned.  ``vectors`` hold unit eigenvectors
    (numerically renormalized); ``norm_corrections`` are the norms the
    closed-form normalizers produced before renormalization, expected to
    be 1 within 1e-8.  ``nu_bar(psi1, psi2, x)`` evaluates the closed-form
    time-averaged limit distribution for a unit state at the origin.
    ``branch_plus``/``branch_minus`` are the per-branch existence
    indicators for the families that split into two branches, ``None``
    where the family has a single existence condition.
    """

    model_id: int
    field: CoinField
    psi: tuple[complex, complex]
    exists: bool
    branch_plus: bool | None
    branch_minus: bool | None
    eigenphases: tuple[float, ...]
    branch_of: tuple[str, ...]
    scalars: Mapping[str, float]
    coefficients: Mapping[str, float]
    normalizers: tuple[complex, ...]
    norm_corrections: tuple[float, ...]
    vectors: tuple[GeometricVector, ...]
    nu_bar: Callable[[complex, complex, int], float] = dc_field(repr=False, compare=False)
    trapping_class: TrappingClass = TrappingClass.NOT_STRONGLY_TRAPPED

    def eigenvector(self, k: int, x: int) -> np.ndarray:
        return self.vectors[k].value(x)

    def limit_window(self, lo: int, hi: int) -> Distribution:
        """Closed-form limit distribution of the stored state on a window."""
        p1, p2 = self.psi
        vals = np.array([self.nu_bar(p1, p2, x) for x in range(lo, hi + 1)])
        return Distribution(lo, np.maximum(vals, 0.0))


def _unit_psi(psi) -> tuple[complex, complex]:
    p1, p2 = complex(psi[0]), complex(psi[1])
    nsq = abs(p1) ** 2 + abs(p2) ** 2
    if not math.isfinite(nsq) or abs(nsq - 1.0) > UNIT_PSI_TOL:
        raise ConstraintError(f"initial state must be unit norm, got ||psi||^2 = {nsq!r}")
    return p1, p2


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConstraintError(message)


def _require_transmitting(*coins: Coin) -> None:
    for c in coins:
        _require(abs(c.alpha) > BOUNDARY_TOL, "coin must transmit: alpha = 0 is outside every family")


def _same_angle(a: float, b: float) -> bool:
    return abs((a - b + math.pi) % TWO_PI - math.pi) <= BOUNDARY_TOL


def _holds_strictly(margin: float) -> bool:
    """Strict inequality ``margin > 0`` with ties snapped to the boundary."""
    return margin > BOUNDARY_TOL


def _empty_report(model_id: int, field: CoinField, psi, scalars, branch_plus=None, branch_minus=None) -> ModelReport:
    return ModelReport(
        model_id=model_id,
        field=field,
        psi=psi,
        exists=False,
        branch_plus=branch_plus,
        branch_minus=branch_minus,
        eigenphases=(),
        branch_of=(),
        scalars=scalars,
        coefficients={},
        normalizers=(),
        norm_corrections=(),
        vectors=(),
        nu_bar=lambda q1, q2, x: 0.0,
        trapping_class=TrappingClass.NOT_STRONGLY_TRAPPED,
    )


def _finish(entries) -> tuple[tuple, tuple, tuple, tuple, tuple]:
    """Renormalize raw closed-form vectors; keep the correction factors."""
    phases, labels, norms, corrections, vectors = [], [], [], [], []
    for lam, label, norm, gv in entries:
        c = math.sqrt(gv.norm_sq_total())
        phases.append(lam)
        labels.append(label)
        norms.append(norm)
        corrections.append(c)
        vectors.append(gv.scaled(1.0 / c))
    return tuple(phases), tuple(labels), tuple(norms), tuple(corrections), tuple(vectors)


def _phase(unit: complex, sign: float) -> float:
    lam = cmath.phase(sign * unit) % TWO_PI
    # same seam convention as the grid solver: phases at 2*pi read as 0
    return 0.0 if lam > TWO_PI - DEDUPE_TOL else lam


def model1(common: Coin, origin: Coin, psi) -> ModelReport:
    """One defect, origin rotation phase matched to the common coin.

    Existence is |beta|^2 > Re(beta conj(beta_o)); the spectrum is then the
    four phases +-e^{i lambda_+-} and the walk traps strongly.
    """
    p1, p2 = _unit_psi(psi)
    _require(_same_angle(origin.delta, common.delta), "family 1 needs delta_o = delta")
    _require_transmitting(common, origin)
    field = defect_field(common, origin, common)
    a, b, dlt = common.alpha, common.beta, common.delta
    ao, bo = origin.alpha, origin.beta
    re = (b * bo.conjugate()).real
    im = (b * bo.conjugate()).imag
    A = 1.0 - re
    B = abs(b) ** 2 - re
    K = abs(b) ** 2 - re ** 2
    scalars = {"A": A, "B": B, "K": K}
    if not _holds_strictly(B):
        return _empty_report(1, field, (p1, p2), scalars)
    if K <= BOUNDARY_TOL:
        raise DegeneracyError("family 1: K = 0 collapses the two branch phases")
    rK = math.sqrt(K)
    sAB = math.sqrt(A + B)
    eid = cmath.exp(1j * dlt)
    entries = []
    for s, label in ((1.0, "plus"), (-1.0, "minus")):
        eig_unit = (A + 1j * s * rK) / sAB * eid
        N = math.sqrt(abs(ao) ** 2 * B / (2 * (A + B) ** 2 * (rK - s * im) * rK))
        top = b * (A + 1j * s * rK) + bo * (B - 1j * s * rK)
        v_plus = np.array([top / ao, 1j * s * (A + B) * (rK - s * im) / (ao * a.conjugate())])
        v0 = np.array([top / ao, -(B - 1j * s * rK)])
        v_minus = np.array([b * (A + B) / a, -(B - 1j * s * rK)])
        for sign in (1.0, -1.0):
            gv = GeometricVector(
                plus_cut=1,
                minus_cut=-1,
                zeta_in=sign * a.conjugate() / sAB,
                zeta_out=sign * sAB / a,
                plus_coef=sign * N * v_plus,
                minus_coef=sign * N * v_minus,
                middle=np.array([sign * N * v0]),
            )
            entries.append((_phase(eig_unit, sign), label, N, gv))
    phases, labels, norms, corrections, vectors = _finish(entries)

    pref = 2.0 * (B / (A + B)) ** 2
    ratio = abs(a) ** 2 / (A + B)
    base = abs(ao) ** 2 * abs(b) ** 2

    def coef(q1: complex, q2: complex, side: int) -> float:
        imx = (ao * b.conjugate() * q1 * q2.conjugate()).imag
        amp = abs(q1) ** 2 if side > 0 else abs(q2) ** 2
        return base + 2.0 * im ** 2 * amp + 2.0 * side * im * imx

    def nu_bar(q1: complex, q2: complex, x: int) -> float:
        if x == 0:
            return pref
        side = 1 if x > 0 else -1
        return pref * A * coef(q1, q2, side) / (abs(a) ** 2 * K) * ratio ** abs(x)

    return ModelReport(
        model_id=1,
        field=field,
        psi=(p1, p2),
        exists=True,
        branch_plus=None,
        branch_minus=None,
        eigenphases=phases,
        branch_of=labels,
        scalars=scalars,
        coefficients={"C_plus": coef(p1, p2, 1), "C_minus": coef(p1, p2, -1)},
        normalizers=norms,
        norm_corrections=corrections,
        vectors=vectors,
        nu_bar=nu_bar,
        trapping_class=TrappingClass.STRONGLY_TRAPPED,
    )


def model2(common: Coin, origin: Coin, psi) -> ModelReport:
    """One defect, origin shares beta with the common coin, delta_o free.

    Branch s in {+, -} exists iff gamma_s < |beta| where
    gamma_s = |beta| cos(delta - delta_o) + s |alpha| sin(delta - delta_o);
    strong trapping iff both branches exist.
    """
    p1, p2 = _unit_psi(psi)
    _require(abs(origin.beta - common.beta) <= BOUNDARY_TOL, "family 2 needs beta_o = beta")
    _require(abs(common.beta) > BOUNDARY_TOL, "family 2 needs beta != 0")
    _require_transmitting(common, origin)
    field = defect_field(common, origin, common)
    a, b, dlt = common.alpha, common.beta, common.delta
    ao, dlo = origin.alpha, origin.delta
    aa, bb = abs(a), abs(b)
    w = cmath.exp(1j * (dlt - dlo))
    gammas = {1.0: bb * w.real + aa * w.imag, -1.0: bb * w.real - aa * w.imag}
    live = {s: _holds_strictly(bb - g) for s, g in gammas.items()}
    amps = {s: 1.0 - 2.0 * bb * g + bb ** 2 for s, g in gammas.items()}
    scalars = {
        "gamma_plus": gammas[1.0],
        "gamma_minus": gammas[-1.0],
        "A_plus": amps[1.0],
        "A_minus": amps[-1.0],
    }
    if not any(live.values()):
        return _empty_report(2, field, (p1, p2), scalars, branch_plus=False, branch_minus=False)

    entries = []
    for s, label in ((1.0, "plus"), (-1.0, "minus")):
        if not live[s]:
            continue
        A = amps[s]
        num = cmath.exp(1j * dlt) - bb * (bb + 1j * s * aa) * cmath.exp(1j * dlo)
        eig_unit = num / abs(num)
        N = math.sqrt(bb - gammas[s]) / (math.sqrt(2.0 * bb) * A)
        g = bb - (bb - 1j * s * aa) * w
        v_plus = (-s * 1j * aa * bb / (ao * a.conjugate() * b.conjugate())) * np.array(
            [a.conjugate() * bb * g, b.conjugate() * A]
        )
        v0 = (-bb * g / (ao * b.conjugate())) * np.array([s * 1j * aa * bb, ao * b.conjugate()])
        v_minus = (1.0 / a) * np.array([b * A, -a * bb * g])
        for sign in (1.0, -1.0):
            gv = GeometricVector(
                plus_cut=1,
                minus_cut=-1,
                zeta_in=sign * a.conjugate() / math.sqrt(A),
                zeta_out=sign * math.sqrt(A) / a,
                plus_coef=sign * N * v_plus,
                minus_coef=sign * N * v_minus,
                middle=np.array([sign * N * v0]),
            )
            entries.append((_phase(eig_unit, sign), label, N, gv))
    phases, labels, norms, corrections, vectors = _finish(entries)

    def coef(q1: complex, q2: complex, s: float) -> float:
        if not live[s]:
            return 0.0
        imx = (ao * b.conjugate() * q1 * q2.conjugate()).imag
        g = gammas[s]
        return bb * (bb - g) ** 2 * (aa * bb + 2.0 * s * imx) / (aa * amps[s] ** 2)

    def nu_bar(q1: complex, q2: complex, x: int) -> float:
        tot = 0.0
        for s in (1.0, -1.0):
            if not live[s]:
                continue
            prof = 1.0 if x == 0 else (1.0 - bb * gammas[s]) / aa ** 2 * (aa ** 2 / amps[s]) ** abs(x)
            tot += coef(q1, q2, s) * prof
        return tot

    both = live[1.0] and live[-1.0]
    return ModelReport(
        model_id=2,
        field=field,
        psi=(p1, p2),
        exists=True,
        branch_plus=live[1.0],
        branch_minus=live[-1.0],
        eigenphases=phases,
        branch_of=labels,
        scalars=scalars,
        coefficients={"C_plus": coef(p1, p2, 1.0), "C_minus": coef(p1, p2, -1.0)},
        normalizers=norms,
        norm_corrections=corrections,
        vectors=vectors,
        nu_bar=nu_bar,
        trapping_class=TrappingClass.STRONGLY_TRAPPED if both else TrappingClass.NOT_STRONGLY_TRAPPED,
    )


def model3(minus: Coin, plus: Coin, psi) -> ModelReport:
    """Two phases, origin coin equal to the plus coin, matched beta arguments.

    Existence is cos(delta_p - delta_m) < |beta_p||beta_m| - |alpha_p||alpha_m|;
    the two phases +-e^{i lambda} share an origin direction, so the walk never
    traps strongly.
    """
    p1, p2 = _unit_psi(psi)
    _require(abs(minus.beta) > BOUNDARY_TOL and abs(plus.beta) > BOUNDARY_TOL, "family 3 needs beta_m, beta_p != 0")
    _require(
        _same_angle(cmath.phase(minus.beta), cmath.phase(plus.beta)),
        "family 3 needs arg beta_p = arg beta_m",
    )
    _require_transmitting(minus, plus)
    field = defect_field(minus, plus, plus)
    ap, bp, dp = plus.alpha, plus.beta, plus.delta
    am, bm, dm = minus.alpha, minus.beta, minus.delta
    bbp, bbm = abs(bp), abs(bm)
    aap, aam = abs(ap), abs(am)
    cd, sd = math.cos(dp - dm), math.sin(dp - dm)
    P = bbp * cd - bbm
    M = bbp - bbm * cd
    K = (cd - bbp * bbm - aap * aam) * (cd - bbp * bbm + aap * aam)
    scalars = {"P": P, "M": M, "K": K}
    if not _holds_strictly(bbp * bbm - aap * aam - cd):
        return _empty_report(3, field, (p1, p2), scalars)
    den = bbp * M - bbm * P
    if den <= BOUNDARY_TOL:
        raise DegeneracyError("family 3: |beta_p| M - |beta_m| P = 0 makes the normalizer singular")
    rK = math.sqrt(K)
    num = bbp * cmath.exp(1j * dm) - bbm * cmath.exp(1j * dp)
    eig_unit = num / abs(num)
    # total norm of the raw tails is (|beta_m|/|beta_p|) den^2 / sqrt(K)
    N = math.sqrt(bbp * rK) / (math.sqrt(bbm) * den)
    v_plus = (1.0 / ap) * np.array([bm * (P + bbp * rK), -ap * bbm * (1j * sd + rK)])
    v_minus = (1.0 / am) * np.array([bm * (M + bbm * rK), -am * bbm * (1j * sd + rK)])
    entries = []
    for sign in (1.0, -1.0):
        gv = GeometricVector(
            plus_cut=0,
            minus_cut=-1,
            zeta_in=sign * (P + bbp * rK) / (ap * math.sqrt(den)),
            zeta_out=sign * (M + bbm * rK) / (am * math.sqrt(den)),
            plus_coef=sign * N * v_plus,
            minus_coef=sign * N * v_minus,
            middle=np.empty((0, 2), dtype=np.complex128),
        )
        entries.append((_phase(eig_unit, sign), "pair", N, gv))
    phases, labels, norms, corrections, vectors = _finish(entries)
    zin2 = abs(vectors[0].zeta_in) ** 2
    zout2 = abs(vectors[0].zeta_out) ** 2

    def coef(q1: complex, q2: complex) -> float:
        ip = ap * bm.conjugate() * q1 * q2.conjugate()
        c_psi = (ip.real - bbm * bbp * abs(q1) ** 2) * rK - sd * ip.imag
        return (
            4.0 * bbm * bbp ** 2 * K
            * (aap ** 2 * bbm * den - 2.0 * (P + bbp * rK) * c_psi)
            / (aap ** 2 * den ** 4)
        )

    def nu_bar(q1: complex, q2: complex, x: int) -> float:
        C = coef(q1, q2)
        if x >= 0:
            return C * P * (P + bbp * rK) / aap ** 2 * zin2 ** x
        return C * M * (M + bbm * rK) / aam ** 2 * zout2 ** x

    return ModelReport(
        model_id=3,
        field=field,
        psi=(p1, p2),
        exists=True,
        branch_plus=None,
        branch_minus=None,
        eigenphases=phases,
        branch_of=labels,
        scalars=scalars,
        coefficients={"C": coef(p1, p2)},
        normalizers=norms,
        norm_corrections=corrections,
        vectors=vectors,
        nu_bar=nu_bar,
        trapping_class=TrappingClass.NOT_STRONGLY_TRAPPED,
    )


def model4(minus: Coin, plus: Coin, psi) -> ModelReport:
    """Two phases, origin coin equal to the plus coin, matched rotation phases.

    With P = |beta_p|^2 - Re(beta_m conj(beta_p)) and M the mirror quantity,
    existence is PM > 0; the spectrum is the pair +-e^{i lambda} and the walk
    never traps strongly.
    """
    p1, p2 = _unit_psi(psi)
    _require(_same_angle(plus.delta, minus.delta), "family 4 needs delta_p = delta_m")
    _require_transmitting(minus, plus)
    field = defect_field(minus, plus, plus)
    ap, bp, dlt = plus.alpha, plus.beta, plus.delta
    am, bm = minus.alpha, minus.beta
    aap, aam = abs(ap), abs(am)
    cross = bm * bp.conjugate()
    re, im = cross.real, cross.imag
    P = abs(bp) ** 2 - re
    M = abs(bm) ** 2 - re
    K = (re + aap * aam - 1.0) * (re - aap * aam - 1.0)
    scalars = {"P": P, "M": M, "K": K}
    if not _holds_strictly(P * M):
        return _empty_report(4, field, (p1, p2), scalars)
    rK = math.sqrt(K)
    PM = P + M  # equals |beta_p - beta_m|^2 and K + im^2
    eig_unit = cmath.exp(1j * dlt) * (rK + 1j * im) / abs(bp - bm)
    N = (bm / abs(bm)) / PM * math.sqrt(P * M / rK)
    v_plus = (1.0 / ap) * np.array([-P + rK, ap * (bp.conjugate() - bm.conjugate())])
    v_minus = (1.0 / am) * np.array([M + rK, am * (bp.conjugate() - bm.conjugate())])
    entries = []
    for sign in (1.0, -1.0):
        gv = GeometricVector(
            plus_cut=0,
            minus_cut=-1,
            zeta_in=sign * (-P + rK) / (ap * math.sqrt(PM)),
            zeta_out=sign * (M + rK) / (am * math.sqrt(PM)),
            plus_coef=sign * N * v_plus,
            minus_coef=sign * N * v_minus,
            middle=np.empty((0, 2), dtype=np.complex128),
        )
        entries.append((_phase(eig_unit, sign), "pair", N, gv))
    phases, labels, norms, corrections, vectors = _finish(entries)
    zin2 = abs(vectors[0].zeta_in) ** 2
    zout2 = abs(vectors[0].zeta_out) ** 2

    def coef(q1: complex, q2: complex) -> float:
        ipd = ap * (bp.conjugate() - bm.conjugate()) * q1 * q2.conjugate()
        return (
            4.0 * P ** 2 * M ** 2
            * (PM * aap ** 2 + 2.0 * (ipd.real - P * abs(q1) ** 2) * (rK - P))
            / (PM ** 4 * aap ** 2 * rK)
        )

    def nu_bar(q1: complex, q2: complex, x: int) -> float:
        C = coef(q1, q2)
        if x >= 0:
            return C * (rK - P) / aap ** 2 * zin2 ** x
        return C * (M + rK) / aam ** 2 * zout2 ** x

    return ModelReport(
        model_id=4,
        field=field,
        psi=(p1, p2),
        exists=True,
        branch_plus=None,
        branch_minus=None,
        eigenphases=phases,
        branch_of=labels,
        scalars=scalars,
        coefficients={"C": coef(p1, p2)},
        normalizers=norms,
        norm_corrections=corrections,
        vectors=vectors,
        nu_bar=nu_bar,
        trapping_class=TrappingClass.NOT_STRONGLY_TRAPPED,
    )


def model5(minus: Coin, origin: Coin, plus: Coin, psi) -> ModelReport:
    """Two phases around a reflectionless origin coin (beta_o = 0).

    The beta moduli agree across the phases and delta_p = delta_m = delta.
    With gamma = delta_o + (arg beta_p - arg beta_m)/2, branch + exists iff
    sin(delta - gamma) > -|beta| and branch - iff sin(delta - gamma) < |beta|
    (endpoints excluded); strong trapping iff both branches exist.
    """
    p1, p2 = _unit_psi(psi)
    _require(abs(origin.beta) <= BOUNDARY_TOL, "family 5 needs beta_o = 0")
    _require(
        abs(abs(plus.beta) - abs(minus.beta)) <= BOUNDARY_TOL,
        "family 5 needs |beta_p| = |beta_m|",
    )
    _require(_same_angle(plus.delta, minus.delta), "family 5 needs delta_p = delta_m")
    _require(abs(plus.beta) > BOUNDARY_TOL, "family 5 needs beta != 0")
    _require_transmitting(minus, plus)
    field = defect_field(minus, origin, plus)
    ap, bp, dlt = plus.alpha, plus.beta, plus.delta
    am, bm = minus.alpha, minus.beta
    ao, dlo = origin.alpha, origin.delta
    bb = abs(bp)
    aa = abs(ap)
    gam = dlo + (cmath.phase(bp) - cmath.phase(bm)) / 2.0
    sg = math.sin(dlt - gam)
    live = {1.0: _holds_strictly(sg + bb), -1.0: _holds_strictly(bb - sg)}
    amps = {s: 1.0 + 2.0 * s * bb * sg + bb ** 2 for s in (1.0, -1.0)}
    scalars = {"gamma": gam, "sin_margin": sg, "A_plus": amps[1.0], "A_minus": amps[-1.0]}
    if not any(live.values()):
        return _empty_report(5, field, (p1, p2), scalars, branch_plus=False, branch_minus=False)

    entries = []
    for s, label in ((1.0, "plus"), (-1.0, "minus")):
        if not live[s]:
            continue
        A = amps[s]
        num = cmath.exp(1j * dlt) + 1j * s * bb * cmath.exp(1j * gam)
        eig_unit = num / abs(num)
        N = math.sqrt((bb + s * sg) / (2.0 * bb * A ** 2))
        g = 1.0 + 1j * s * bb * cmath.exp(-1j * (dlt - gam))
        h = bb - 1j * s * cmath.exp(1j * (dlt - gam))
        v_plus = (1.0 / (ao * ap.conjugate())) * np.array(
            [ap.conjugate() * bm * cmath.exp(1j * (dlt - dlo)) * g,
             1j * s * bb * A * cmath.exp(1j * (dlo - gam))]
        )
        v0 = (1.0 / ao) * np.array([bm * cmath.exp(1j * (dlt - dlo)) * g, -ao * bb * h])
        v_minus = (1.0 / am) * np.array([bm * A, -am * bb * h])
        for sign in (1.0, -1.0):
            gv = GeometricVector(
                plus_cut=1,
                minus_cut=-1,
                zeta_in=sign * ap.conjugate() / math.sqrt(A),
                zeta_out=sign * math.sqrt(A) / am,
                plus_coef=sign * N * v_plus,
                minus_coef=sign * N * v_minus,
                middle=np.array([sign * N * v0]),
            )
            entries.append((_phase(eig_unit, sign), label, N, gv))
    phases, labels, norms, corrections, vectors = _finish(entries)

    def coef(q1: complex, q2: complex, s: float) -> float:
        if not live[s]:
            return 0.0
        imx = (cmath.exp(1j * (dlo - gam)) * ao * bm.conjugate() * q1 * q2.conjugate()).imag
        return (bb + s * sg) ** 2 * (bb ** 2 - 2.0 * s * bb * imx) / amps[s] ** 2

    def nu_bar(q1: complex, q2: complex, x: int) -> float:
        tot = 0.0
        for s in (1.0, -1.0):
            if not live[s]:
                continue
            prof = 1.0 if x == 0 else (1.0 + s * bb * sg) / aa ** 2 * (aa ** 2 / amps[s]) ** abs(x)
            tot += coef(q1, q2, s) * prof
        return tot

    both = live[1.0] and live[-1.0]
    return ModelReport(
        model_id=5,
        field=field,
        psi=(p1, p2),
        exists=True,
        branch_plus=live[1.0],
        branch_minus=live[-1.0],
        eigenphases=phases,
        branch_of=labels,
        scalars=scalars,
        coefficients={"C_plus": coef(p1, p2, 1.0), "C_minus": coef(p1, p2, -1.0)},
        normalizers=norms,
        norm_corrections=corrections,
        vectors=vectors,
        nu_bar=nu_bar,
        trapping_class=TrappingClass.STRONGLY_TRAPPED if both else TrappingClass.NOT_STRONGLY_TRAPPED,
    )


MODEL_FUNCTIONS = {1: model1, 2: model2, 3: model3, 4: model4, 5: model5}


@dataclass(frozen=True)
class DefectEigenForm:
    """Eigenvector and limit-distribution weights at one defect eigenphase.

    Works for any single-defect field, with the asymptotics entering only
    through the contracting and expanding transfer eigenvalues.  ``m_factor``
    is the unit-modulus matching factor between the decaying half-line
    solutions; ``normalizer`` the closed-form squared-norm reciprocal.
    ``norm_sq(x)`` and ``overlap_sq(psi1, psi2)`` evaluate the closed forms
    directly, independent of the stored vector.
    """

    lam: float
    m_factor: complex
    normalizer: float
    zeta_in: complex
    zeta_out: complex
    vector: GeometricVector
    norm_correction: float
    origin_coin: Coin

    def eigenvector(self, x: int) -> np.ndarray:
        return self.vector.value(x)

    def norm_sq(self, x: int) -> float:
        N = self.normalizer
        bo = self.origin_coin.beta
        reB = (bo * self.m_factor).real
        if x == 0:
            return N * (1.0 + reB)
        if x >= 1:
            r = abs(self.zeta_in) ** 2
            return N * ((1.0 + abs(bo) ** 2) / 2.0 + reB) * (1.0 + 1.0 / r) * r ** x
        rho2 = abs(self.zeta_out) ** 2
        return N * (1.0 - abs(bo) ** 2) / 2.0 * (1.0 + rho2) * rho2 ** x

    def overlap_sq(self, psi1: complex, psi2: complex) -> float:
        ao, bo = self.origin_coin.alpha, self.origin_coin.beta
        M = self.m_factor
        reB = (bo * M).real
        val = (
            (1.0 - abs(bo) ** 2)
            + 2.0 * (abs(bo) ** 2 + reB) * abs(psi1) ** 2
            - 2.0 * (ao * (M + bo.conjugate()) * psi1 * complex(psi2).conjugate()).real
        )
        return self.normalizer / 2.0 * val


def defect_closed_form(field: CoinField, lam: float) -> DefectEigenForm:
    """Closed-form eigenvector data at one eigenphase of a single-defect field.

    The phase must already be an eigenphase (residual below the acceptance
    threshold); otherwise :class:`NoEigenvalueError` is raised.
    """
    _require(field.x_minus == -1 and field.x_plus == 1, "field must have its only defect at the origin")
    res = eigen_residual(field, lam)
    if res >= RESIDUAL_ACCEPT:
        raise NoEigenvalueError(f"residual {res:.3e} at phase {lam!r} is too large")
    lam = float(lam) % TWO_PI
    minus, origin = field.left, field.coin(0)
    ao, bo, dlo = origin.alpha, origin.beta, origin.delta
    zeta_in = complex(contracting_zeta(field.right, lam))
    zeta_out = complex(expanding_zeta(minus, lam))
    # unit-modulus matching factor between the half-line solutions
    M = (
        (minus.alpha * zeta_out - cmath.exp(1j * (lam - minus.delta)))
        / minus.beta
        * cmath.exp(-1j * (lam - dlo))
    )
    r = abs(zeta_in) ** 2
    rho2 = abs(zeta_out) ** 2
    reB = (bo * M).real
    invN = (
        ((1.0 - abs(bo) ** 2) * (1.0 - r) + (1.0 + abs(bo) ** 2) * (1.0 - 1.0 / rho2))
        / ((1.0 - r) * (1.0 - 1.0 / rho2))
        + 2.0 * reB / (1.0 - r)
    )
    if invN <= 0.0:
        raise DegeneracyError(f"nonpositive squared norm 1/N = {invN!r} at phase {lam!r}")
    N = 1.0 / invN
    root = math.sqrt(N / 2.0)
    eo = cmath.exp(1j * (lam - dlo))
    v_plus = root * np.array([eo * (1.0 + bo * M), -(bo.conjugate() + M) / zeta_in])
    v0 = root * np.array([eo * (1.0 + bo * M), -eo * ao * M])
    v_minus = root * np.array([ao * zeta_out, -eo * ao * M])
    gv = GeometricVector(
        plus_cut=1,
        minus_cut=-1,
        zeta_in=zeta_in,
        zeta_out=zeta_out,
        plus_coef=v_plus,
        minus_coef=v_minus,
        middle=np.array([v0]),
    )
    c = math.sqrt(gv.norm_sq_total())
    return DefectEigenForm(
        lam=lam,
        m_factor=M,
        normalizer=N,
        zeta_in=zeta_in,
        zeta_out=zeta_out,
        vector=gv.scaled(1.0 / c),
        norm_correction=c,
        origin_coin=origin,
    )
