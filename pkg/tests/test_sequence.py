import itertools
import math

import numpy as np
import pytest

from spinhardy import (
    CapExceededError,
    MeasurementPlan,
    OutcomeLabel,
    OutcomeString,
    SpinLabel,
    joint_distribution,
    joint_probability,
    load_distribution_csv,
    load_distribution_text,
    save_distribution_csv,
    save_distribution_text,
    two_step_trace_probability,
)

HALF = SpinLabel(1)
ONE = SpinLabel(2)


def test_single_step_row_for_spin_one():
    plan = MeasurementPlan.of(ONE, [math.pi / 2])
    expected = {2: 0.25, 0: 0.5, -2: 0.25}
    for tm, want in expected.items():
        assert joint_probability(plan, OutcomeString.of(tm)) == pytest.approx(
            want, abs=1e-14
        )


def test_two_step_frozen_value():
    # spin 1/2, both steps a quarter turn apart: 1/2 * 1/2
    plan = MeasurementPlan.of(HALF, [math.pi / 2, math.pi])
    p = joint_probability(plan, OutcomeString.of(1, 1))
    assert p == pytest.approx(0.25, abs=1e-14)
    assert two_step_trace_probability(plan, OutcomeString.of(1, 1)) == pytest.approx(
        0.25, abs=1e-14
    )


def test_matches_trace_oracle():
    rng = np.random.default_rng(23)
    for tj in (1, 2, 3):
        spin = SpinLabel(tj)
        labels = spin.outcomes()
        for _ in range(40):
            beta0, b1, b2 = rng.uniform(0.0, 2 * math.pi, size=3)
            alpha0 = labels[rng.integers(0, len(labels))]
            outcomes = OutcomeString(
                (
                    labels[rng.integers(0, len(labels))],
                    labels[rng.integers(0, len(labels))],
                )
            )
            plan = MeasurementPlan.of(spin, [b1, b2], beta0=beta0, alpha0=alpha0)
            direct = joint_probability(plan, outcomes)
            traced = two_step_trace_probability(plan, outcomes)
            assert direct == pytest.approx(traced, abs=1e-12)


def test_trace_oracle_guards():
    plan3 = MeasurementPlan.of(HALF, [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        two_step_trace_probability(plan3, OutcomeString.of(1, 1, 1))
    big = MeasurementPlan.of(SpinLabel(10), [0.1, 0.2])
    with pytest.raises(ValueError):
        two_step_trace_probability(big, OutcomeString.of(10, 10))


def test_distribution_matches_pointwise():
    plan = MeasurementPlan.of(ONE, [0.4, 1.9, 2.7], beta0=0.2)
    dist = joint_distribution(plan)
    assert len(dist.table) == 27
    for outcomes, p in dist.table.items():
        assert p == pytest.approx(joint_probability(plan, outcomes), abs=1e-14)


def test_distribution_normalization():
    rng = np.random.default_rng(31)
    for tj in (1, 2, 3, 4):
        spin = SpinLabel(tj)
        for n in (1, 2, 3):
            plan = MeasurementPlan.of(spin, rng.uniform(0, 2 * math.pi, size=n))
            total = math.fsum(joint_distribution(plan).table.values())
            assert total == pytest.approx(1.0, abs=1e-10)


def test_marginal_consistency():
    """Summing the last slot out reproduces the truncated plan's table."""
    rng = np.random.default_rng(37)
    for tj in (1, 2, 3):
        spin = SpinLabel(tj)
        angles = rng.uniform(0, 2 * math.pi, size=3)
        full = joint_distribution(MeasurementPlan.of(spin, angles))
        short = joint_distribution(MeasurementPlan.of(spin, angles[:2]))
        for prefix, want in short.table.items():
            got = math.fsum(
                full.table[OutcomeString(prefix.outcomes + (last,))]
                for last in spin.outcomes()
            )
            assert got == pytest.approx(want, abs=1e-12)


def test_translation_invariance():
    """Rotating every axis (input included) by the same shift changes nothing."""
    rng = np.random.default_rng(41)
    angles = rng.uniform(0, 2 * math.pi, size=3)
    outcomes = OutcomeString.of(0, 2, -2)
    base = joint_probability(MeasurementPlan.of(ONE, angles, beta0=0.3), outcomes)
    for shift in (0.7, math.pi, 5.1):
        moved = joint_probability(
            MeasurementPlan.of(ONE, angles + shift, beta0=0.3 + shift), outcomes
        )
        assert moved == pytest.approx(base, abs=1e-12)


def test_default_input_is_maximal_along_z():
    plan = MeasurementPlan.of(SpinLabel(3), [1.0])
    assert plan.alpha0 == OutcomeLabel(3)
    assert plan.beta0.radians == 0.0
    # measuring along the input axis is deterministic
    aligned = MeasurementPlan.of(SpinLabel(3), [0.0])
    assert joint_probability(aligned, OutcomeString.of(3)) == pytest.approx(
        1.0, abs=1e-14
    )


def test_outcome_validation():
    plan = MeasurementPlan.of(HALF, [0.5, 1.5])
    with pytest.raises(ValueError):
        joint_probability(plan, OutcomeString.of(1))  # wrong length
    with pytest.raises(ValueError):
        joint_probability(plan, OutcomeString.of(1, 0))  # parity mismatch
    with pytest.raises(ValueError):
        plan.spin.validate_outcome(OutcomeLabel(3))
    with pytest.raises(ValueError):
        MeasurementPlan.of(HALF, [])
    with pytest.raises(ValueError):
        MeasurementPlan.of(HALF, [0.5], alpha0=OutcomeLabel(2))


def test_cap_enforced():
    plan = MeasurementPlan.of(HALF, [0.1, 0.2])
    with pytest.raises(CapExceededError):
        joint_distribution(plan, cap=3)
    assert len(joint_distribution(plan, cap=4).table) == 4


def test_csv_round_trip(tmp_path):
    plan = MeasurementPlan.of(
        ONE, [0.4, 1.9], beta0=0.25, alpha0=OutcomeLabel(0)
    )
    dist = joint_distribution(plan)
    path = tmp_path / "dist.csv"
    save_distribution_csv(dist, path, header_lines=("command = joint",))
    loaded = load_distribution_csv(path)
    assert loaded.plan == plan
    assert loaded.table == dist.table


def test_text_round_trip(tmp_path):
    plan = MeasurementPlan.of(HALF, [0.9, 2.2, 4.0])
    dist = joint_distribution(plan)
    path = tmp_path / "dist.txt"
    save_distribution_text(dist, path)
    loaded = load_distribution_text(path)
    assert loaded.plan == plan
    assert loaded.table == dist.table


def test_table_enumerates_all_strings():
    plan = MeasurementPlan.of(HALF, [0.3, 0.8])
    dist = joint_distribution(plan)
    keys = list(dist.table)
    expected = [
        OutcomeString(combo)
        for combo in itertools.product(HALF.outcomes(), repeat=2)
    ]
    assert keys == expected
    assert dist.probability(OutcomeString.of(1, -1)) == dist.table[
        OutcomeString.of(1, -1)
    ]
