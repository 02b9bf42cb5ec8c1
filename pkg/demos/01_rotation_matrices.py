"""
Rotation matrices for arbitrary spin
====================================

The d matrix gives the amplitudes between eigenstates of spin projections
along two axes a rotation angle apart.  This script builds a few of them
and checks the properties everything else rests on.
"""

import math

import numpy as np

from spinhardy import OutcomeLabel, SpinLabel, wigner_d, wigner_d_element

np.set_printoptions(precision=6, suppress=True)

# spin 1/2 at a quarter turn: the classic half-angle matrix
half = SpinLabel(1)
print("spin 1/2, beta = pi/2:")
print(wigner_d(half, math.pi / 2).entries)

# spin 1 shows the -sin(beta)/sqrt(2) off-diagonal structure
one = SpinLabel(2)
print("\nspin 1, beta = pi/2:")
print(wigner_d(one, math.pi / 2).entries)

# rows and columns are ordered by descending m, so entry [0, 0] connects
# the two maximal eigenstates and equals cos(beta/2)^(2s)
for tj in (1, 2, 5, 24, 50):
    spin = SpinLabel(tj)
    beta = 1.3
    corner = wigner_d_element(spin, spin.top(), spin.top(), beta)
    print(f"\n2s = {tj:2d}: d_ss(1.3) = {corner:+.12f}"
          f"   cos^2s(beta/2) = {math.cos(beta / 2) ** tj:+.12f}")

# the matrix is orthogonal for any spin, including far beyond the float64
# factorial range (the evaluation switches to extended precision there)
for tj in (2, 24, 50):
    spin = SpinLabel(tj)
    m = wigner_d(spin, 2.1).entries
    defect = np.max(np.abs(m.T @ m - np.eye(spin.dimension)))
    print(f"2s = {tj:2d}: orthogonality defect = {defect:.2e}")

# rotations compose at the level of raw angles.  Note the full turn is
# minus the identity for half-integer spin; only squared amplitudes are
# 2*pi periodic.
m1 = wigner_d(half, 1.0).entries
m2 = wigner_d(half, 2.5).entries
print("\ncomposition defect:", np.max(np.abs(m1 @ m2 - wigner_d(half, 3.5).entries)))
print("d(2*pi) for spin 1/2:")
print(wigner_d(half, 2 * math.pi).entries)
