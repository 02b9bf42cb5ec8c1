"""Joint outcome statistics for successive spin measurements.

A measurement plan fixes a spin s, an input eigenstate (axis angle
``beta0``, eigenvalue label ``alpha0``, by default the maximal +s state
along z), and n measurement axes in the x-z plane.  Because every axis
lies in that plane, the joint probability of an outcome string
(alpha_1, ..., alpha_n) factorizes into squared small-d elements of the
successive angle differences:

    P(alpha_1 ... alpha_n) = prod_k  d^(s)_{alpha_{k-1} alpha_k}(beta_k - beta_{k-1})^2

``two_step_trace_probability`` recomputes the n = 2 case from explicit
rank-one projectors and a trace, sharing no code with the small-d sum
formula; it exists purely as an independent cross-check.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .wigner import Angle, OutcomeLabel, SpinLabel, _element, wigner_d

DEFAULT_TABLE_CAP = 10**7

# Largest twice-spin accepted by the dense projector oracle.
_TRACE_ORACLE_MAX_TWICE_SPIN = 8


class CapExceededError(Exception):
    """An enumeration or tabulation would exceed its configured cap."""


@dataclass(frozen=True)
class MeasurementPlan:
    """A sequence of spin measurement axes applied to a fixed input state."""

    spin: SpinLabel
    angles: tuple[Angle, ...]
    beta0: Angle = Angle(0.0)
    alpha0: OutcomeLabel | None = None

    def __post_init__(self):
        if len(self.angles) < 1:
            raise ValueError("a plan needs at least one measurement")
        if not all(isinstance(a, Angle) for a in self.angles):
            raise TypeError("angles must be Angle instances")
        if self.alpha0 is None:
            object.__setattr__(self, "alpha0", self.spin.top())
        self.spin.validate_outcome(self.alpha0)

    @classmethod
    def of(
        cls,
        spin: SpinLabel,
        angles,
        beta0: float = 0.0,
        alpha0: OutcomeLabel | None = None,
    ) -> "MeasurementPlan":
        """Build a plan from plain radian values."""
        return cls(
            spin=spin,
            angles=tuple(Angle(float(a)) for a in angles),
            beta0=Angle(float(beta0)),
            alpha0=alpha0,
        )

    @property
    def n(self) -> int:
        return len(self.angles)


@dataclass(frozen=True)
class OutcomeString:
    """An ordered tuple of measurement outcomes, one per slot."""

    outcomes: tuple[OutcomeLabel, ...]

    @classmethod
    def of(cls, *twice_ms: int) -> "OutcomeString":
        return cls(tuple(OutcomeLabel(tm) for tm in twice_ms))

    @property
    def twice_values(self) -> tuple[int, ...]:
        return tuple(o.twice_m for o in self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)


@dataclass(frozen=True)
class JointDistribution:
    """Dense probability table over every outcome string of a plan.

    The table enumerates all (2s+1)^n strings, zeros included, and sums
    to 1 within 1e-10.
    """

    plan: MeasurementPlan
    table: dict[OutcomeString, float] = field(repr=False)

    def probability(self, outcomes: OutcomeString) -> float:
        _validate_outcomes(self.plan, outcomes)
        return self.table[outcomes]


def _validate_outcomes(plan: MeasurementPlan, outcomes: OutcomeString) -> None:
    if len(outcomes) != plan.n:
        raise ValueError(
            f"outcome string length {len(outcomes)} does not match plan length {plan.n}"
        )
    for o in outcomes.outcomes:
        plan.spin.validate_outcome(o)


def joint_probability(plan: MeasurementPlan, outcomes: OutcomeString) -> float:
    """Probability of observing a particular outcome string.

    Evaluates the product of squared small-d elements over successive
    angle differences.  All arithmetic is real.
    """
    _validate_outcomes(plan, outcomes)
    tj = plan.spin.twice_spin
    prev_angle = plan.beta0.radians
    prev_tm = plan.alpha0.twice_m
    p = 1.0
    for angle, outcome in zip(plan.angles, outcomes.outcomes):
        amp = _element(tj, prev_tm, outcome.twice_m, angle.radians - prev_angle)
        p *= amp * amp
        prev_angle = angle.radians
        prev_tm = outcome.twice_m
    return p


def joint_distribution(plan: MeasurementPlan, cap: int | None = None) -> JointDistribution:
    """Tabulate the full joint distribution of a plan.

    Raises
    ------
    CapExceededError
        If (2s+1)^n exceeds ``cap`` (default 10**7).
    """
    cap = DEFAULT_TABLE_CAP if cap is None else int(cap)
    dim = plan.spin.dimension
    size = dim**plan.n
    if size > cap:
        raise CapExceededError(
            f"table of {size} outcome strings exceeds cap {cap}"
        )
    prev = plan.beta0.radians
    squared = []
    for angle in plan.angles:
        m = wigner_d(plan.spin, angle.radians - prev).entries
        squared.append(m * m)
        prev = angle.radians
    tensor = squared[0][plan.spin.index_of(plan.alpha0), :]
    for m2 in squared[1:]:
        tensor = tensor[..., :, None] * m2
    total = float(tensor.sum())
    if abs(total - 1.0) > 1e-10:
        raise ArithmeticError(f"distribution sums to {total!r}, expected 1")
    labels = plan.spin.outcomes()
    table = {
        OutcomeString(combo): float(p)
        for combo, p in zip(itertools.product(labels, repeat=plan.n), tensor.ravel())
    }
    return JointDistribution(plan=plan, table=table)


def spin_operators(spin: SpinLabel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin component matrices (Sx, Sy, Sz) in descending-m basis, hbar = 1.

    Built from ladder operators; used by the projector-trace oracle and by
    matrix-exponential cross-checks, never by the sum-formula evaluation.
    """
    tj = spin.twice_spin
    dim = spin.dimension
    s = tj / 2.0
    ms = [(tj - 2 * i) / 2.0 for i in range(dim)]
    sp = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        m = ms[i]
        sp[i - 1, i] = math.sqrt(s * (s + 1) - m * (m + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / 2.0j
    sz = np.diag(ms).astype(complex)
    return sx, sy, sz


def _projector(spin: SpinLabel, beta: float, outcome: OutcomeLabel) -> np.ndarray:
    """Rank-one projector onto the eigenvector of S along angle beta."""
    sx, _, sz = spin_operators(spin)
    w, v = np.linalg.eigh(math.sin(beta) * sx + math.cos(beta) * sz)
    # eigh returns eigenvalues ascending, -s first
    vec = v[:, (spin.twice_spin + outcome.twice_m) // 2]
    return np.outer(vec, vec.conj())


def two_step_trace_probability(plan: MeasurementPlan, outcomes: OutcomeString) -> float:
    """Two-measurement probability Tr[P2 P1 rho P1 P2] from dense projectors.

    Independent oracle for ``joint_probability`` at n = 2: the state and
    both measurement projectors are built by diagonalizing rotated spin
    operators, with no small-d evaluation anywhere.  Accepts spins up to 4.
    """
    if plan.n != 2:
        raise ValueError("trace oracle is defined for exactly two measurements")
    if plan.spin.twice_spin > _TRACE_ORACLE_MAX_TWICE_SPIN:
        raise ValueError("trace oracle accepts twice_spin <= 8")
    _validate_outcomes(plan, outcomes)
    rho = _projector(plan.spin, plan.beta0.radians, plan.alpha0)
    p1 = _projector(plan.spin, plan.angles[0].radians, outcomes.outcomes[0])
    p2 = _projector(plan.spin, plan.angles[1].radians, outcomes.outcomes[1])
    return float(np.real(np.trace(p2 @ p1 @ rho @ p1 @ p2)))


def _format_floats(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def _plan_header_pairs(plan: MeasurementPlan) -> list[tuple[str, str]]:
    return [
        ("twice_spin", str(plan.spin.twice_spin)),
        ("beta0", repr(plan.beta0.radians)),
        ("twice_alpha0", str(plan.alpha0.twice_m)),
        ("angles", _format_floats(a.radians for a in plan.angles)),
    ]


def _plan_from_pairs(pairs: dict[str, str]) -> MeasurementPlan:
    spin = SpinLabel(int(pairs["twice_spin"]))
    return MeasurementPlan(
        spin=spin,
        angles=tuple(Angle(float(x)) for x in pairs["angles"].split()),
        beta0=Angle(float(pairs["beta0"])),
        alpha0=OutcomeLabel(int(pairs["twice_alpha0"])),
    )


def save_distribution_csv(
    dist: JointDistribution, path, header_lines: tuple[str, ...] = ()
) -> None:
    """Write a distribution as CSV: outcome string (space-separated 2m), probability."""
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        for key, value in _plan_header_pairs(dist.plan):
            fh.write(f"# {key} = {value}\n")
        writer = csv.writer(fh)
        writer.writerow(["outcomes", "probability"])
        for outcomes, p in dist.table.items():
            writer.writerow([" ".join(str(tm) for tm in outcomes.twice_values), repr(p)])


def load_distribution_csv(path) -> JointDistribution:
    pairs: dict[str, str] = {}
    rows = []
    with open(path, newline="") as fh:
        for raw in fh:
            if raw.startswith("#"):
                body = raw[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    pairs[key.strip()] = value.strip()
                continue
            rows.append(raw)
    plan = _plan_from_pairs(pairs)
    table: dict[OutcomeString, float] = {}
    for row in csv.reader(rows):
        if not row or row[0] == "outcomes":
            continue
        key = OutcomeString.of(*(int(tm) for tm in row[0].split()))
        table[key] = float(row[1])
    return JointDistribution(plan=plan, table=table)


def save_distribution_text(dist: JointDistribution, path) -> None:
    """Structured-text twin of the CSV format."""
    with open(path, "w") as fh:
        for key, value in _plan_header_pairs(dist.plan):
            fh.write(f"{key} = {value}\n")
        fh.write("table:\n")
        for outcomes, p in dist.table.items():
            fh.write(" ".join(str(tm) for tm in outcomes.twice_values) + f" {p!r}\n")


def load_distribution_text(path) -> JointDistribution:
    pairs: dict[str, str] = {}
    table: dict[OutcomeString, float] = {}
    in_table = False
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line == "table:":
                in_table = True
                continue
            if in_table:
                parts = line.split()
                key = OutcomeString.of(*(int(tm) for tm in parts[:-1]))
                table[key] = float(parts[-1])
            else:
                key, _, value = line.partition("=")
                pairs[key.strip()] = value.strip()
    return JointDistribution(plan=_plan_from_pairs(pairs), table=table)
