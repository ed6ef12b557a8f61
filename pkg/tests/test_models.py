"""Closed-form family evaluators cross-checked against the grid solver."""

import cmath
import math

import numpy as np
import pytest

from qwtrap.algebra import TWO_PI, make_coin
from qwtrap.models import (
    FAMILY_TRAPPING,
    MODEL_FUNCTIONS,
    ConstraintError,
    DegeneracyError,
    TrappingClass,
    defect_closed_form,
    model1,
    model2,
    model3,
    model4,
    model5,
)
from qwtrap.spectral import (
    NoEigenvalueError,
    build_eigenvector,
    find_eigenphases,
    is_strongly_trapped,
    limit_distribution,
    transfer_matrix,
)
from qwtrap.walk import CoinField, WalkState, defect_field

R = 1.0 / math.sqrt(2.0)
C8 = math.sqrt(2.0 + math.sqrt(2.0)) / 2.0
S8 = math.sqrt(2.0 - math.sqrt(2.0)) / 2.0

FIG_IDS = (1, 2, 3, 4, 5, 6, 7)


def circ_gap(a: float, b: float) -> float:
    return abs((a - b + math.pi) % TWO_PI - math.pi)


def rand_coin(rng, delta, bb=None, arg_b=None):
    if bb is None:
        bb = float(rng.uniform(0.2, 0.95))
    aa = math.sqrt(1.0 - bb**2)
    pa = float(rng.uniform(0.0, TWO_PI))
    pb = float(rng.uniform(0.0, TWO_PI)) if arg_b is None else arg_b
    return make_coin(aa * cmath.exp(1j * pa), bb * cmath.exp(1j * pb), delta)


def rand_psi(rng):
    p = rng.normal(size=4)
    p /= np.linalg.norm(p)
    return complex(p[0], p[1]), complex(p[2], p[3])


def assert_report_consistent(rep, expect_count=None, expect_trapped=None):
    """Full dual-route check of one closed-form report against the solver."""
    found = find_eigenphases(rep.field, grid_points=20000)
    want = sorted(rep.eigenphases)
    assert len(found) == len(want), (found, want)
    if expect_count is not None:
        assert len(want) == expect_count
    for a, b in zip(found, want):
        assert circ_gap(a, b) <= 1e-8
    for lam in rep.eigenphases:
        assert abs(abs(cmath.exp(1j * lam)) - 1.0) <= 1e-12
    if not want:
        assert not rep.exists
        assert rep.nu_bar(*rep.psi, 0) == 0.0
        return
    for c in rep.norm_corrections:
        assert abs(c - 1.0) <= 1e-8, rep.norm_corrections
    for gv in rep.vectors:
        assert abs(gv.norm_sq_total() - 1.0) <= 1e-10
    pairs = [build_eigenvector(rep.field, lam) for lam in found]
    init = WalkState.point(*rep.psi)
    dist = limit_distribution(pairs, init, window=(-30, 30))
    p1, p2 = rep.psi
    worst = max(abs(dist.mass_at(x) - rep.nu_bar(p1, p2, x)) for x in range(-30, 31))
    assert worst <= 1e-8, worst
    if expect_trapped is not None:
        assert is_strongly_trapped(pairs) == expect_trapped
        want_class = (
            TrappingClass.STRONGLY_TRAPPED
            if expect_trapped
            else TrappingClass.NOT_STRONGLY_TRAPPED
        )
        assert rep.trapping_class is want_class


@pytest.mark.parametrize("fig_id", FIG_IDS)
def test_figure_reports_match_solver(closed_of, fig_id):
    expected_count = {1: 4, 2: 2, 3: 4, 4: 2, 5: 2, 6: 2, 7: 4}[fig_id]
    expected_trapped = {1: True, 2: False, 3: True, 4: False, 5: False, 6: False, 7: True}[fig_id]
    assert_report_consistent(closed_of(fig_id), expected_count, expected_trapped)


@pytest.mark.parametrize("fig_id", FIG_IDS)
def test_figure_eigenvectors_match_solver_up_to_phase(closed_of, spectral_of, fig_id):
    rep = closed_of(fig_id)
    for k, lam in enumerate(rep.eigenphases):
        # match by phase value, then fit the free global phase
        match = min(spectral_of(fig_id).eigenpairs, key=lambda p: circ_gap(p.lam, lam))
        assert circ_gap(match.lam, lam) <= 1e-8
        ref_vec = match.vector()
        got = rep.vectors[k]
        c = np.vdot(got.values(-6, 6).ravel(), ref_vec.values(-6, 6).ravel())
        c /= abs(c)
        for x in range(-30, 31):
            gap = np.max(np.abs(ref_vec.value(x) - c * got.value(x)))
            assert float(gap) <= 1e-8, f"fig{fig_id} lam={lam} x={x}"


@pytest.mark.parametrize("fig_id", FIG_IDS)
def test_figure_eigenvectors_satisfy_recurrence(closed_of, fig_id):
    rep = closed_of(fig_id)
    for k, lam in enumerate(rep.eigenphases):
        vec = rep.vectors[k]
        for x in range(-30, 30):
            jx = np.array([vec.value(x - 1)[0], vec.value(x)[1]])
            jx1 = np.array([vec.value(x)[0], vec.value(x + 1)[1]])
            t = transfer_matrix(rep.field.coin(x), lam)
            assert float(np.linalg.norm(jx1 - t @ jx)) <= 1e-10


def test_model1_fig1_scalars(closed_of):
    rep = closed_of(1)
    assert rep.scalars["A"] == 1.0
    assert rep.scalars["B"] == pytest.approx(0.5, abs=1e-15)
    assert rep.nu_bar(R, R, 0) == pytest.approx(2.0 / 9.0, abs=1e-12)
    assert rep.trapping_class is TrappingClass.STRONGLY_TRAPPED
    assert len(set(rep.branch_of)) == 2  # two branches, two phases each


def test_model2_fig2_single_branch(closed_of):
    rep = closed_of(2)
    assert rep.exists
    assert rep.branch_plus is False and rep.branch_minus is True
    # the caption state is orthogonal to the surviving branch
    assert abs(rep.coefficients["C_minus"]) <= 1e-15


def test_model2_fig3_both_branches(closed_of):
    rep = closed_of(3)
    assert rep.branch_plus is True and rep.branch_minus is True
    assert len(rep.eigenphases) == 4


def test_model3_fig4_zero_coefficient(closed_of):
    rep = closed_of(4)
    assert rep.exists
    assert abs(rep.coefficients["C"]) <= 1e-14
    assert rep.scalars["K"] > 0.0


def test_model4_fig5_scalars(closed_of):
    rep = closed_of(5)
    assert rep.scalars["P"] == pytest.approx(1.0, abs=1e-15)
    assert rep.scalars["K"] == pytest.approx(2.0, abs=1e-15)


def test_model5_fig6_fig7_branches(closed_of):
    assert closed_of(6).branch_plus is False and closed_of(6).branch_minus is True
    assert closed_of(7).branch_plus is True and closed_of(7).branch_minus is True


def test_model_report_accessors(closed_of):
    rep = closed_of(1)
    assert np.allclose(rep.eigenvector(0, 3), rep.vectors[0].value(3))
    dist = rep.limit_window(-5, 5)
    assert dist.lo == -5 and dist.hi == 5
    assert dist.mass_at(0) == pytest.approx(2.0 / 9.0, abs=1e-12)


def test_limit_window_clamps_roundoff_negatives(closed_of):
    # zero-trapped-mass states produce ~ -1e-17 formula noise; masses stay >= 0
    dist = closed_of(2).limit_window(-10, 10)
    assert float(dist.masses.min()) >= 0.0
    assert dist.total() <= 1e-12


def test_model1_nonexistence_agrees_with_solver():
    rep = model1(make_coin(R, R, 0.0), make_coin(R, R, 0.0), (1.0, 0.0))
    assert not rep.exists
    assert rep.eigenphases == ()
    assert rep.trapping_class is TrappingClass.NOT_STRONGLY_TRAPPED
    assert find_eigenphases(rep.field, grid_points=20000) == []


def test_model2_nonexistence():
    rep = model2(make_coin(R, R, 0.3), make_coin(R, R, 0.3), (1.0, 0.0))
    assert not rep.exists
    assert rep.branch_plus is False and rep.branch_minus is False
    assert find_eigenphases(rep.field, grid_points=20000) == []


def test_model3_nonexistence():
    rep = model3(make_coin(R, R, 0.1), make_coin(R, R, 0.1), (1.0, 0.0))
    assert not rep.exists
    assert find_eigenphases(rep.field, grid_points=20000) == []


def test_model4_nonexistence():
    rep = model4(make_coin(R, R, 0.2), make_coin(R, R, 0.2), (1.0, 0.0))
    assert not rep.exists


def test_model2_branch_toggle_across_boundary():
    common = make_coin(R, R, 0.0)
    live_plus = model2(common, make_coin(R, R, 0.1), (1.0, 0.0))
    assert live_plus.branch_plus is True and live_plus.branch_minus is False
    live_minus = model2(common, make_coin(R, R, -0.1), (1.0, 0.0))
    assert live_minus.branch_plus is False and live_minus.branch_minus is True
    for rep in (live_plus, live_minus):
        assert len(rep.eigenphases) == 2
        assert_report_consistent(rep)
        # nu_bar sums over exactly the stored (live) branch vectors
        psi = (0.6, 0.8j)
        init = WalkState.point(*psi)
        for x in (-4, 0, 3):
            direct = sum(
                abs(v.overlap(init)) ** 2 * v.norm_sq_at(x) for v in rep.vectors
            )
            assert rep.nu_bar(psi[0], psi[1], x) == pytest.approx(direct, abs=1e-12)


def test_model5_branch_toggle_across_boundary():
    origin = make_coin(1.0, 0.0, 0.0)

    def build(delta):
        side = make_coin(R, R, delta)
        return model5(side, origin, make_coin(R, R, delta), (R, R))

    dead_plus = build(7.0 * math.pi / 4.0 - 0.05)
    assert dead_plus.branch_plus is False and dead_plus.branch_minus is True
    assert len(dead_plus.eigenphases) == 2
    both = build(7.0 * math.pi / 4.0 + 0.05)
    assert both.branch_plus is True and both.branch_minus is True
    assert len(both.eigenphases) == 4
    assert_report_consistent(dead_plus)
    assert_report_consistent(both)


def test_constraint_delta_mismatch_model1():
    with pytest.raises(ConstraintError):
        model1(make_coin(R, R, 0.0), make_coin(R, 1j * R, 0.1), (1.0, 0.0))


def test_constraint_beta_mismatch_model2():
    with pytest.raises(ConstraintError):
        model2(make_coin(R, R, 0.0), make_coin(R, 1j * R, 0.1), (1.0, 0.0))


def test_constraint_beta_argument_model3():
    with pytest.raises(ConstraintError):
        model3(make_coin(R, R, 0.0), make_coin(R, 1j * R, 0.5), (1.0, 0.0))


def test_constraint_delta_mismatch_model4():
    with pytest.raises(ConstraintError):
        model4(make_coin(R, R, 0.0), make_coin(R, -R, 0.3), (1.0, 0.0))


def test_constraint_model5_guards():
    side = make_coin(R, R, 0.0)
    with pytest.raises(ConstraintError):  # beta_o must vanish
        model5(side, make_coin(R, R, 0.0), side, (1.0, 0.0))
    with pytest.raises(ConstraintError):  # |beta_p| must equal |beta_m|
        model5(side, make_coin(1.0, 0.0, 0.0), make_coin(0.6, 0.8, 0.0), (1.0, 0.0))
    with pytest.raises(ConstraintError):  # delta_p must equal delta_m
        model5(side, make_coin(1.0, 0.0, 0.0), make_coin(R, R, 0.4), (1.0, 0.0))


def test_constraint_non_unit_state():
    with pytest.raises(ConstraintError):
        model1(make_coin(R, R, 0.0), make_coin(R, 1j * R, 0.0), (1.0, 1.0))


def test_constraint_reflecting_coin():
    blocked = make_coin(1e-13, math.sqrt(1.0 - 1e-26), 0.0)
    with pytest.raises(ConstraintError):
        model1(blocked, make_coin(R, 1j * R, 0.0), (1.0, 0.0))


def test_model1_degenerate_branches():
    # an origin reflection antiparallel to beta drives K to 0: the
    # two +- branches coalesce and the shared denominator vanishes
    b_o = -math.sqrt(1.0 - 1e-13)
    a_o = math.sqrt(1e-13)
    with pytest.raises(DegeneracyError):
        model1(make_coin(R, R, 0.0), make_coin(a_o, b_o, 0.0), (1.0, 0.0))


def test_model_function_table():
    assert set(MODEL_FUNCTIONS) == {1, 2, 3, 4, 5}
    assert MODEL_FUNCTIONS[1] is model1 and MODEL_FUNCTIONS[5] is model5
    assert FAMILY_TRAPPING[1] is TrappingClass.STRONGLY_TRAPPED
    assert FAMILY_TRAPPING[2] is TrappingClass.CONDITIONAL
    assert FAMILY_TRAPPING[3] is TrappingClass.NOT_STRONGLY_TRAPPED
    assert FAMILY_TRAPPING[4] is TrappingClass.NOT_STRONGLY_TRAPPED
    assert FAMILY_TRAPPING[5] is TrappingClass.CONDITIONAL
    assert TrappingClass.STRONGLY_TRAPPED.value == "strongly_trapped"


def test_random_parameters_all_families():
    rng = np.random.default_rng(31)
    for _ in range(3):
        dlt = float(rng.uniform(0.0, TWO_PI))
        assert_report_consistent(model1(rand_coin(rng, dlt), rand_coin(rng, dlt), rand_psi(rng)))
    for _ in range(3):
        common = rand_coin(rng, float(rng.uniform(0.0, TWO_PI)))
        origin = make_coin(
            abs(common.alpha) * cmath.exp(1j * rng.uniform(0.0, TWO_PI)),
            common.beta,
            float(rng.uniform(0.0, TWO_PI)),
        )
        assert_report_consistent(model2(common, origin, rand_psi(rng)))
    for k in range(3):
        arg_b = float(rng.uniform(0.0, TWO_PI))
        dp = float(rng.uniform(0.0, TWO_PI))
        dm = (dp + math.pi + float(rng.normal()) * 0.4) % TWO_PI if k % 3 else float(rng.uniform(0.0, TWO_PI))
        assert_report_consistent(
            model3(rand_coin(rng, dm, arg_b=arg_b), rand_coin(rng, dp, arg_b=arg_b), rand_psi(rng))
        )
    for _ in range(3):
        dlt = float(rng.uniform(0.0, TWO_PI))
        assert_report_consistent(model4(rand_coin(rng, dlt), rand_coin(rng, dlt), rand_psi(rng)))
    for _ in range(3):
        dlt = float(rng.uniform(0.0, TWO_PI))
        bb = float(rng.uniform(0.2, 0.95))
        origin = make_coin(cmath.exp(1j * rng.uniform(0.0, TWO_PI)), 0.0, float(rng.uniform(0.0, TWO_PI)))
        assert_report_consistent(
            model5(rand_coin(rng, dlt, bb=bb), origin, rand_coin(rng, dlt, bb=bb), rand_psi(rng))
        )


def test_defect_closed_form_on_figure_field(closed_of, spectral_of):
    field = closed_of(1).field
    psi = closed_of(1).psi
    init = WalkState.point(*psi)
    pairs = spectral_of(1).eigenpairs
    dist = limit_distribution(pairs, init, window=(-20, 20))
    nu = np.zeros(41)
    for pair in pairs:
        form = defect_closed_form(field, pair.lam)
        assert abs(abs(form.m_factor) - 1.0) <= 1e-12
        assert abs(form.norm_correction - 1.0) <= 1e-8
        assert abs(form.vector.norm_sq_total() - 1.0) <= 1e-10
        ref = pair.vector()
        c = np.vdot(form.vector.values(-6, 6).ravel(), ref.values(-6, 6).ravel())
        c /= abs(c)
        for x in range(-30, 31):
            gap = np.max(np.abs(ref.value(x) - c * form.vector.value(x)))
            assert float(gap) <= 1e-8
            assert abs(form.norm_sq(x) - ref.norm_sq_at(x)) <= 1e-8
        ov = form.overlap_sq(*psi)
        manual = abs(np.vdot(form.vector.value(0), np.array(psi))) ** 2
        assert ov == pytest.approx(float(manual), abs=1e-12)
        nu += np.array([ov * form.norm_sq(x) for x in range(-20, 21)])
    worst = max(abs(dist.mass_at(x) - nu[x + 20]) for x in range(-20, 21))
    assert worst <= 1e-10


def test_defect_closed_form_random_fields():
    rng = np.random.default_rng(77)
    checked = 0
    while checked < 3:
        field = defect_field(
            rand_coin(rng, float(rng.uniform(0.0, TWO_PI))),
            rand_coin(rng, float(rng.uniform(0.0, TWO_PI))),
            rand_coin(rng, float(rng.uniform(0.0, TWO_PI))),
        )
        found = find_eigenphases(field, grid_points=20000)
        if not found:
            continue
        checked += 1
        for lam in found:
            form = defect_closed_form(field, lam)
            ref = build_eigenvector(field, lam).vector()
            assert abs(abs(form.m_factor) - 1.0) <= 1e-12
            assert abs(form.norm_correction - 1.0) <= 1e-8
            for x in range(-12, 13):
                assert abs(form.norm_sq(x) - ref.norm_sq_at(x)) <= 1e-8


def test_defect_closed_form_rejects_non_eigenphase(closed_of):
    with pytest.raises((NoEigenvalueError,)):
        defect_closed_form(closed_of(1).field, 0.3)


def test_defect_closed_form_requires_single_defect():
    h = make_coin(R, R)
    wide = CoinField(-2, 2, (h, h, h), h, h)
    with pytest.raises(ConstraintError):
        defect_closed_form(wide, 0.5)
