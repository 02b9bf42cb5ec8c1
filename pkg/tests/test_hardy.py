import math

import pytest

from spinhardy import (
    Angle,
    ConstraintKind,
    HardyInstance,
    InstanceFormatError,
    OutcomeLabel,
    SpinLabel,
    analytic_configuration,
    analytic_family,
    angle_condition_check,
    build_constraints,
    constraint_plan,
    evaluate,
    joint_probability,
    load_instance,
    save_instance,
    save_report_csv,
    success_plan,
)
from tests.oracles import P_MAX, success_curve

HALF = SpinLabel(1)
ONE = SpinLabel(2)


def test_constraint_count():
    for tj in range(1, 7):
        spin = SpinLabel(tj)
        for n in range(2, 7):
            inst = analytic_configuration(spin, n, 2)
            assert len(build_constraints(inst)) == tj * n + 1


def test_constraint_order():
    inst = analytic_configuration(ONE, 2, 2)
    ids = [c.identifier for c in build_constraints(inst)]
    assert ids == [
        "all_unprimed",
        "slot1_dev0",
        "slot1_dev-2",
        "slot2_dev0",
        "slot2_dev-2",
    ]
    kinds = [c.kind for c in build_constraints(inst)]
    assert kinds[0] is ConstraintKind.ALL_UNPRIMED
    assert all(k is ConstraintKind.ONE_UNPRIMED for k in kinds[1:])


def test_analytic_configurations_are_hardy_points():
    for tj in range(1, 11):
        spin = SpinLabel(tj)
        for n in range(2, 7):
            for l in range(2, n + 1):
                report = evaluate(analytic_configuration(spin, n, l))
                assert report.max_residual < 1e-12, (tj, n, l)
                assert report.success_p == pytest.approx(
                    0.25**tj, abs=1e-12
                ), (tj, n, l)
                assert report.is_hardy_point


def test_expected_maxima_table():
    for tj, want in P_MAX.items():
        report = evaluate(analytic_configuration(SpinLabel(tj), 3, 2))
        assert report.success_p == pytest.approx(want, abs=1e-12)


def test_free_angle_keeps_zero_constraints():
    for theta in (0.3, math.pi / 3, 1.8, 2.9):
        for n, l in ((2, 2), (4, 3), (5, 5)):
            inst = analytic_family(ONE, n, l, theta)
            report = evaluate(inst)
            assert report.max_residual < 1e-12
            assert report.success_p == pytest.approx(
                success_curve(ONE, theta), abs=1e-12
            )


def test_family_rejects_bad_l():
    for bad in (1, 0, 4, -2):
        with pytest.raises(ValueError):
            analytic_family(HALF, 3, bad, 1.0)
    with pytest.raises(ValueError):
        analytic_family(HALF, 1, 2, 1.0)
    with pytest.raises(ValueError):
        analytic_family(HALF, 3, 2, math.inf)


def test_angle_conditions_hold_on_family():
    for n, l in ((2, 2), (3, 2), (3, 3), (5, 4)):
        assert angle_condition_check(analytic_family(HALF, n, l, 1.1))


def test_angle_conditions_fail_after_perturbation():
    inst = analytic_configuration(HALF, 3, 2)
    bumped = HardyInstance.of(
        inst.spin,
        [a.radians + (0.1 if i == 2 else 0.0) for i, a in enumerate(inst.unprimed)],
        [a.radians for a in inst.primed],
    )
    assert not angle_condition_check(bumped)
    assert not evaluate(bumped).is_hardy_point


def test_residuals_reconstruct_from_plans():
    inst = analytic_configuration(ONE, 3, 3)
    report = evaluate(inst)
    for constraint, residual in report.residuals:
        plan, outcomes = constraint_plan(inst, constraint)
        assert residual == joint_probability(plan, outcomes)
    plan, outcomes = success_plan(inst)
    assert report.success_p == joint_probability(plan, outcomes)
    assert len(plan.angles) == inst.n


def test_mixed_axis_plan_shape():
    inst = analytic_configuration(HALF, 3, 2)
    constraint = build_constraints(inst)[2]  # slot 2 deviant
    assert constraint.slot == 2
    plan, outcomes = constraint_plan(inst, constraint)
    assert plan.angles[1] == inst.unprimed[1]
    assert plan.angles[0] == inst.primed[0]
    assert plan.angles[2] == inst.primed[2]
    assert outcomes.twice_values == (1, constraint.deviant.twice_m, 1)


def test_instance_validation():
    with pytest.raises(ValueError):
        HardyInstance.of(HALF, [0.1], [0.2])  # n = 1
    with pytest.raises(ValueError):
        HardyInstance(
            spin=HALF,
            n=2,
            unprimed=(Angle(0.1),),
            primed=(Angle(0.2), Angle(0.3)),
        )
    with pytest.raises(ValueError):
        HardyInstance(
            spin=HALF,
            n=2,
            unprimed=(Angle(0.1), Angle(0.2)),
            primed=(Angle(0.3), Angle(0.4)),
            j=OutcomeLabel(-1),
        )
    with pytest.raises(ValueError):
        evaluate(analytic_configuration(HALF, 2, 2), tolerance=0.0)


def test_instance_round_trip(tmp_path):
    inst = analytic_family(SpinLabel(3), 4, 3, 1.2345678901234567)
    path = tmp_path / "inst.txt"
    save_instance(inst, path)
    loaded = load_instance(path)
    assert loaded == inst


def test_load_ignores_comments_and_extra_keys(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text(
        "# produced by a search\n"
        "twice_spin = 1\n"
        "n = 2\n"
        "beta0 = 0.0\n"
        "unprimed = 3.141592653589793 1.5707963267948966\n"
        "primed = 1.5707963267948966 3.141592653589793\n"
        "p = 0.25\n"
        "branch = whatever\n"
    )
    inst = load_instance(path)
    assert inst.spin == HALF
    assert inst.n == 2


def test_load_diagnostics(tmp_path):
    path = tmp_path / "bad.txt"

    path.write_text("twice_spin = 1\nn = 2\n")
    with pytest.raises(InstanceFormatError, match="missing field"):
        load_instance(path)

    path.write_text("twice_spin = 1\nnonsense line\n")
    with pytest.raises(InstanceFormatError, match="expected 'key = value'"):
        load_instance(path)

    path.write_text(
        "twice_spin = x\nn = 2\nbeta0 = 0\nunprimed = 0 0\nprimed = 0 0\n"
    )
    with pytest.raises(InstanceFormatError, match="twice_spin"):
        load_instance(path)

    path.write_text(
        "twice_spin = 1\nn = 3\nbeta0 = 0\nunprimed = 0 0\nprimed = 0 0 0\n"
    )
    with pytest.raises(InstanceFormatError, match="len\\(unprimed\\)"):
        load_instance(path)


def test_report_csv(tmp_path):
    report = evaluate(analytic_configuration(HALF, 2, 2))
    path = tmp_path / "report.csv"
    save_report_csv(report, path, header_lines=("command = hardy-eval",))
    text = path.read_text()
    assert text.startswith("# command = hardy-eval\n")
    assert "id,kind,slot,deviant_twice_m,residual" in text
    assert "all_unprimed" in text
    assert "is_hardy_point = True" in text
