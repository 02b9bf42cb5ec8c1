"""
Why no predetermined outcomes can work
======================================

Suppose each measurement direction secretly carries a predetermined
outcome, the same no matter when the direction is measured.  Over the
finitely many directions of an instance that is a finite set of
assignments, so we can simply enumerate all of them and watch every
single one fail.
"""

from spinhardy import (
    DirectionSet,
    SpinLabel,
    analytic_configuration,
    lhv_max_success,
    witness_partition,
)

inst = analytic_configuration(SpinLabel(1), n=2, l=2)
directions = DirectionSet.from_instance(inst)
print("distinct directions:", [round(d.radians, 6) for d in directions.directions])

# every strategy either reproduces the forbidden all-unprimed record (B)
# or deviates at some unprimed direction (A_l), losing the success record
report = witness_partition(inst)
print(f"\n{len(report.rows)} deterministic strategies:")
print(f"{'outcomes':<12} {'class':<8} {'violates':<14} success")
for row in report.rows:
    outcomes = " ".join(f"{o.m:+.1f}" for o in row.strategy.assignment)
    memberships = " ".join(row.memberships)
    violated = " ".join(row.violated) or "-"
    print(f"{outcomes:<12} {memberships:<8} {violated:<14} {row.success}")

print(f"\ncontradiction certified: {report.contradiction}")
print(f"best model success probability: {lhv_max_success(inst)}")

# the same certificate goes through for higher spin and longer sequences
for tj, n in ((1, 3), (2, 2), (3, 2)):
    value = lhv_max_success(analytic_configuration(SpinLabel(tj), n, 2))
    print(f"spin {tj / 2:.1f}, n = {n}: model maximum = {value}")
