"""
Joint statistics of successive spin measurements
================================================

A particle starts in the maximal spin state along z.  Each measurement
projects it onto an eigenstate of the spin component along a new axis in
the x-z plane, and the joint probability of a whole outcome record
factorizes into squared rotation-matrix elements of the angle steps.
"""

import math

from spinhardy import (
    MeasurementPlan,
    OutcomeString,
    SpinLabel,
    joint_distribution,
    joint_probability,
    two_step_trace_probability,
)

# one spin-1 measurement at a quarter turn from the input axis
one = SpinLabel(2)
plan = MeasurementPlan.of(one, [math.pi / 2])
print("spin 1, single measurement at pi/2 from the input axis:")
for outcome in one.outcomes():
    p = joint_probability(plan, OutcomeString((outcome,)))
    print(f"  P(m = {outcome.m:+.0f}) = {p:.6f}")

# three successive measurements; the full table sums to one
plan3 = MeasurementPlan.of(one, [0.7, 1.9, 2.4])
dist = joint_distribution(plan3)
print(f"\nthree measurements, {len(dist.table)} outcome strings, "
      f"total = {math.fsum(dist.table.values()):.12f}")

# the five most likely records
top = sorted(dist.table.items(), key=lambda kv: -kv[1])[:5]
for outcomes, p in top:
    label = " ".join(f"{o.m:+.1f}" for o in outcomes.outcomes)
    print(f"  ({label})  p = {p:.6f}")

# an independent check for two measurements: build the projectors
# explicitly and take the trace, no rotation-matrix formula involved
plan2 = MeasurementPlan.of(one, [1.1, 2.6], beta0=0.3)
record = OutcomeString.of(0, 2)
direct = joint_probability(plan2, record)
traced = two_step_trace_probability(plan2, record)
print(f"\nproduct formula: {direct:.15f}")
print(f"projector trace: {traced:.15f}")
print(f"difference:      {abs(direct - traced):.2e}")
