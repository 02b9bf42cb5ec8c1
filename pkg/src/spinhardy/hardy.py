"""Hardy-type constraint systems for measurement sequences.

An instance fixes a spin, a sequence length n, and two angle lists: the
unprimed axes (beta_1 ... beta_n) and the primed axes (beta'_1 ... beta'_n).
The input state is the maximal eigenstate (+s) along ``beta0``.

The constraint system demands that 2sn + 1 specific outcome events have
probability zero:

* ``ALL_UNPRIMED``: measuring every slot along its unprimed axis never
  yields the maximal outcome at every slot.
* ``ONE_UNPRIMED`` (slot l, deviant alpha): measuring slot l along its
  unprimed axis and every other slot along its primed axis never yields
  alpha at slot l together with the maximal outcome everywhere else, for
  each deviant alpha in {s-1, ..., -s}.

The success probability is the all-primed, all-maximal event.  A Hardy
point satisfies every zero constraint while keeping the success
probability strictly positive; no assignment of predetermined outcomes to
the measurement directions can do both (see ``lhv``), yet quantum
sequences reach success probability (1/2)^{4s} (see ``optimize``).

Every residual is computed by ``sequence.joint_probability`` on the
corresponding mixed-axis plan; this module introduces no probability
formula of its own.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

from .sequence import MeasurementPlan, OutcomeString, joint_probability
from .wigner import Angle, OutcomeLabel, SpinLabel, angle_gap

DEFAULT_TOLERANCE = 1e-10

# A Hardy point needs success probability clearly above the noise floor
# used for the zero constraints.
SUCCESS_FACTOR = 10.0


class ConstraintKind(enum.Enum):
    ALL_UNPRIMED = "all_unprimed"
    ONE_UNPRIMED = "one_unprimed"


@dataclass(frozen=True)
class HardyInstance:
    """Angles and spin defining one constraint system.

    The input eigenvalue is fixed to +s; instances requesting any other
    input outcome are rejected.
    """

    spin: SpinLabel
    n: int
    unprimed: tuple[Angle, ...]
    primed: tuple[Angle, ...]
    beta0: Angle = Angle(0.0)
    j: OutcomeLabel | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if len(self.unprimed) != self.n:
            raise ValueError("len(unprimed) must equal n")
        if len(self.primed) != self.n:
            raise ValueError("len(primed) must equal n")
        if not all(isinstance(a, Angle) for a in self.unprimed + self.primed):
            raise TypeError("angles must be Angle instances")
        if self.j is None:
            object.__setattr__(self, "j", self.spin.top())
        elif self.j != self.spin.top():
            raise ValueError("input eigenvalue is fixed to +s")

    @classmethod
    def of(cls, spin: SpinLabel, unprimed, primed, beta0: float = 0.0) -> "HardyInstance":
        """Build an instance from plain radian values."""
        return cls(
            spin=spin,
            n=len(tuple(unprimed)),
            unprimed=tuple(Angle(float(a)) for a in unprimed),
            primed=tuple(Angle(float(a)) for a in primed),
            beta0=Angle(float(beta0)),
        )

    def angle_vector(self) -> tuple[float, ...]:
        """Canonical radians of all 2n angles, unprimed first."""
        return tuple(a.radians for a in self.unprimed + self.primed)


@dataclass(frozen=True)
class ZeroConstraint:
    """One probability-zero demand.

    ``slot`` is 1-based; it is 0 for the ALL_UNPRIMED constraint, which has
    no deviant outcome either.
    """

    kind: ConstraintKind
    slot: int = 0
    deviant: OutcomeLabel | None = None

    @property
    def identifier(self) -> str:
        if self.kind is ConstraintKind.ALL_UNPRIMED:
            return "all_unprimed"
        return f"slot{self.slot}_dev{self.deviant.twice_m}"


@dataclass(frozen=True)
class HardyReport:
    """Residuals of every zero constraint plus the success probability."""

    instance: HardyInstance
    residuals: tuple[tuple[ZeroConstraint, float], ...] = field(repr=False)
    success_p: float = 0.0
    max_residual: float = 0.0
    is_hardy_point: bool = False
    tolerance: float = DEFAULT_TOLERANCE


def build_constraints(instance: HardyInstance) -> tuple[ZeroConstraint, ...]:
    """All 2sn + 1 zero constraints, ALL_UNPRIMED first, slots ascending,
    deviant outcomes descending from s-1 to -s."""
    tj = instance.spin.twice_spin
    out = [ZeroConstraint(kind=ConstraintKind.ALL_UNPRIMED)]
    for slot in range(1, instance.n + 1):
        for tm in range(tj - 2, -tj - 2, -2):
            out.append(
                ZeroConstraint(
                    kind=ConstraintKind.ONE_UNPRIMED,
                    slot=slot,
                    deviant=OutcomeLabel(tm),
                )
            )
    return tuple(out)


def constraint_plan(
    instance: HardyInstance, constraint: ZeroConstraint
) -> tuple[MeasurementPlan, OutcomeString]:
    """The mixed-axis plan and outcome string whose probability the
    constraint demands to vanish."""
    top = instance.spin.top()
    if constraint.kind is ConstraintKind.ALL_UNPRIMED:
        angles = instance.unprimed
        outcomes = (top,) * instance.n
    else:
        slot = constraint.slot
        if not 1 <= slot <= instance.n:
            raise ValueError(f"constraint slot {slot} out of range")
        angles = tuple(
            instance.unprimed[i] if i + 1 == slot else instance.primed[i]
            for i in range(instance.n)
        )
        outcomes = tuple(
            constraint.deviant if i + 1 == slot else top for i in range(instance.n)
        )
    plan = MeasurementPlan(
        spin=instance.spin, angles=angles, beta0=instance.beta0, alpha0=top
    )
    return plan, OutcomeString(outcomes)


def success_plan(instance: HardyInstance) -> tuple[MeasurementPlan, OutcomeString]:
    """The all-primed, all-maximal event whose probability is the figure of merit."""
    top = instance.spin.top()
    plan = MeasurementPlan(
        spin=instance.spin, angles=instance.primed, beta0=instance.beta0, alpha0=top
    )
    return plan, OutcomeString((top,) * instance.n)


def evaluate(instance: HardyInstance, tolerance: float = DEFAULT_TOLERANCE) -> HardyReport:
    """Evaluate every zero-constraint residual and the success probability.

    ``is_hardy_point`` requires the largest residual below ``tolerance``
    and the success probability above ``SUCCESS_FACTOR * tolerance``.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    residuals = []
    for constraint in build_constraints(instance):
        plan, outcomes = constraint_plan(instance, constraint)
        residuals.append((constraint, joint_probability(plan, outcomes)))
    plan, outcomes = success_plan(instance)
    success_p = joint_probability(plan, outcomes)
    max_residual = max(r for _, r in residuals)
    return HardyReport(
        instance=instance,
        residuals=tuple(residuals),
        success_p=success_p,
        max_residual=max_residual,
        is_hardy_point=max_residual < tolerance and success_p > SUCCESS_FACTOR * tolerance,
        tolerance=tolerance,
    )


def analytic_family(spin: SpinLabel, n: int, l: int, free_angle: float) -> HardyInstance:
    """The closed-form family of candidate instances indexed by l.

    For l in [2, n] the construction places the mandatory pi gap between
    chain positions l-2 and l-1 of the unprimed axes (counting the input
    axis as position 0), zeroes the primed axes below the gap, pins them
    to pi above it, and leaves one primed angle free.  Every zero
    constraint vanishes identically for any value of the free angle, and
    the success probability is

        cos^{4s}(theta/2) * sin^{4s}(theta/2),

    which peaks at theta = pi/2 with value (1/2)^{4s}.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not isinstance(l, int) or not 2 <= l <= n:
        raise ValueError(f"l={l} out of range [2, {n}]")
    theta = float(free_angle)
    if not math.isfinite(theta):
        raise ValueError("free angle must be finite")
    t = l - 1  # pi-step position in 1..n-1
    primed = [0.0] * (n + 1)
    for i in range(1, n + 1):
        primed[i] = 0.0 if i < t else (theta if i == t else math.pi)
    unprimed = [0.0] * (n + 1)
    for i in range(1, n + 1):
        if i < t:
            unprimed[i] = 0.0
        elif i == t:
            unprimed[i] = math.pi
        else:
            unprimed[i] = primed[i + 1] if i < n else primed[n - 1]
    return HardyInstance.of(spin, unprimed[1:], primed[1:])


def analytic_configuration(spin: SpinLabel, n: int, l: int) -> HardyInstance:
    """The bound-attaining member of ``analytic_family`` (free angle pi/2)."""
    return analytic_family(spin, n, l, math.pi / 2.0)


def angle_condition_check(instance: HardyInstance, tolerance: float = 1e-9) -> bool:
    """Chain-matching conditions under which all ONE_UNPRIMED residuals vanish.

    Requires, modulo 2*pi within ``tolerance``:

    * slot 1: beta_1 = beta0 or beta'_2 = beta_1,
    * slot i (1 < i < n): beta_i = beta'_{i-1} or beta_i = beta'_{i+1},
    * slot n: beta_n = beta'_{n-1}.

    A true result, combined with one vanishing factor of the ALL_UNPRIMED
    product, implies every zero-constraint residual is below roughly the
    tolerance scale.  The conditions are sufficient, not necessary.
    """
    un, pr = instance.unprimed, instance.primed
    n = instance.n
    if not (
        angle_gap(un[0], instance.beta0) <= tolerance
        or angle_gap(pr[1], un[0]) <= tolerance
    ):
        return False
    for i in range(2, n):
        if not (
            angle_gap(un[i - 1], pr[i - 2]) <= tolerance
            or angle_gap(un[i - 1], pr[i]) <= tolerance
        ):
            return False
    return angle_gap(un[n - 1], pr[n - 2]) <= tolerance


class InstanceFormatError(ValueError):
    """A structured-text instance file failed to parse or validate."""


def save_instance(instance: HardyInstance, path) -> None:
    """Write an instance as structured text with exact decimal angles."""
    with open(path, "w") as fh:
        fh.write(f"twice_spin = {instance.spin.twice_spin}\n")
        fh.write(f"n = {instance.n}\n")
        fh.write(f"beta0 = {instance.beta0.radians!r}\n")
        fh.write("unprimed = " + " ".join(repr(a.radians) for a in instance.unprimed) + "\n")
        fh.write("primed = " + " ".join(repr(a.radians) for a in instance.primed) + "\n")


def load_instance(path) -> HardyInstance:
    """Parse a structured-text instance file, with field-level diagnostics."""
    pairs: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise InstanceFormatError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}"
                )
            pairs[key.strip()] = value.strip()
    for required in ("twice_spin", "n", "beta0", "unprimed", "primed"):
        if required not in pairs:
            raise InstanceFormatError(f"{path}: missing field {required!r}")

    def parse_int(name: str) -> int:
        try:
            return int(pairs[name])
        except ValueError as exc:
            raise InstanceFormatError(f"{path}: field {name!r}: {exc}") from exc

    def parse_angles(name: str) -> tuple[float, ...]:
        try:
            return tuple(float(x) for x in pairs[name].split())
        except ValueError as exc:
            raise InstanceFormatError(f"{path}: field {name!r}: {exc}") from exc

    twice_spin = parse_int("twice_spin")
    n = parse_int("n")
    unprimed = parse_angles("unprimed")
    primed = parse_angles("primed")
    try:
        beta0 = float(pairs["beta0"])
        spin = SpinLabel(twice_spin)
        if len(unprimed) != n:
            raise ValueError(f"len(unprimed) = {len(unprimed)} but n = {n}")
        if len(primed) != n:
            raise ValueError(f"len(primed) = {len(primed)} but n = {n}")
        return HardyInstance.of(spin, unprimed, primed, beta0=beta0)
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"{path}: invalid instance: {exc}") from exc


def save_report_csv(report: HardyReport, path, header_lines: tuple[str, ...] = ()) -> None:
    """Write residuals as CSV rows plus a commented summary line."""
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["id", "kind", "slot", "deviant_twice_m", "residual"])
        for constraint, residual in report.residuals:
            writer.writerow(
                [
                    constraint.identifier,
                    constraint.kind.value,
                    constraint.slot,
                    "" if constraint.deviant is None else constraint.deviant.twice_m,
                    repr(residual),
                ]
            )
        fh.write(
            f"# success_p = {report.success_p!r}, max_residual = {report.max_residual!r}, "
            f"is_hardy_point = {report.is_hardy_point}, tolerance = {report.tolerance!r}\n"
        )
