"""
How large can the surviving probability get
===========================================

One primed angle stays free after the zero constraints are satisfied.
Sweeping it traces out cos^(4s) sin^(4s) of the half angle, peaking at a
quarter turn with value (1/2)^(4s), for any sequence length.  A
structure-blind random search over all angles confirms nothing beats it.
"""

import math

from spinhardy import SearchConfig, SpinLabel, maximize_success, penalty_search, scan_free_angle

spin = SpinLabel(1)

# sweep the free angle and draw the curve in ASCII
rows = scan_free_angle(spin, n=2, l=2, grid_points=33)
print("spin 1/2: success probability across the free angle")
for theta, p in rows[::2]:
    bar = "#" * int(round(p * 160))
    print(f"theta = {theta:4.2f}  {p:.4f}  {bar}")

# the structured search over all gap positions and pinning cases
print("\nbest over every structured family:")
for tj in (1, 2, 3, 4):
    for n in (2, 4):
        result = maximize_success(SpinLabel(tj), n)
        print(f"  2s = {tj}, n = {n}: p = {result.p:.10f}   [{result.branch}]")

# a search that knows nothing about the families: random starts, penalty
# on the residuals, feasibility restored before reading off p
result = penalty_search(spin, 2, config=SearchConfig(restarts=4, seed=1))
print(f"\npenalty search, 4 random restarts: best p = {result.p:.7f}")
print(f"bound (1/2)^(4s) = {0.25:.7f}, never exceeded")
