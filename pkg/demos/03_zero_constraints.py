"""
A ladder of events that never happen
====================================

Pick measurement axes so that one distinguished outcome record of the
unprimed axes is impossible, and so are the records where exactly one
measurement runs along its unprimed axis and deviates from the maximal
outcome while all primed measurements give the maximum.  The surviving
all-primed all-maximal record then has positive probability, which is
what no predetermined-outcome model can mimic.
"""

from spinhardy import (
    SpinLabel,
    analytic_configuration,
    build_constraints,
    constraint_plan,
    evaluate,
    joint_probability,
)

spin = SpinLabel(2)
inst = analytic_configuration(spin, n=3, l=2)

print("spin 1, three measurements")
print("unprimed axes:", [round(a.radians, 6) for a in inst.unprimed])
print("primed axes:  ", [round(a.radians, 6) for a in inst.primed])

# the system has 2sn + 1 zero constraints
constraints = build_constraints(inst)
print(f"\n{len(constraints)} zero constraints:")
for c in constraints:
    plan, outcomes = constraint_plan(inst, c)
    p = joint_probability(plan, outcomes)
    record = " ".join(f"{o.m:+.0f}" for o in outcomes.outcomes)
    print(f"  {c.identifier:<14} record ({record})  residual = {p:.3e}")

report = evaluate(inst)
print(f"\nsuccess probability = {report.success_p:.12f}")
print(f"largest residual    = {report.max_residual:.3e}")
print(f"valid instance      = {report.is_hardy_point}")

# the bound (1/2)^(4s) falls fast with the spin but never reaches zero
print("\nspin   success probability")
for tj in (1, 2, 3, 4, 6, 8):
    p = evaluate(analytic_configuration(SpinLabel(tj), 2, 2)).success_p
    print(f"{tj / 2:4.1f}   {p:.10f}")
