"""Exhaustive certification that no outcome-predetermining model exists.

A time-local hidden-variable model for a measurement sequence assigns, per
hidden state, an outcome distribution to each measurement *direction*,
independent of when or after what history the direction is measured.  Over
the finite direction set of a Hardy instance such models determinize: if a
hidden state reproduces every zero constraint (each forbidden event has a
zero-probability factor) while giving the success event positive
probability, then picking, for every direction, any positive-probability
outcome (preferring the maximal one) yields a deterministic assignment
that still triggers no forbidden event and still achieves the success
event.  Deterministic assignments are themselves valid hidden states, so
existence over deterministic strategies decides existence in general, and
the search space is the finite set of total maps from directions to
outcomes.

This module enumerates that space outright.  No solver is involved; the
certificate is the exhaustive check itself, and ``witness_partition``
exposes the bookkeeping behind it: strategies assigning the maximal
outcome to every unprimed direction trigger the ALL_UNPRIMED forbidden
event, and all others deviate at some unprimed direction, which kills the
success event whenever the ONE_UNPRIMED constraints hold.
"""

from __future__ import annotations

import csv
import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field

from .hardy import ConstraintKind, HardyInstance, ZeroConstraint, build_constraints
from .sequence import CapExceededError
from .wigner import Angle, OutcomeLabel, SpinLabel, angle_gap

DEFAULT_ENUM_CAP = 10**8
DIRECTION_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DirectionSet:
    """Deduplicated measurement directions of an instance, ascending."""

    directions: tuple[Angle, ...]

    @classmethod
    def from_instance(
        cls, instance: HardyInstance, tolerance: float = DIRECTION_TOLERANCE
    ) -> "DirectionSet":
        reps: list[float] = []
        for angle in instance.unprimed + instance.primed:
            r = angle.radians
            if not any(angle_gap(r, seen) <= tolerance for seen in reps):
                reps.append(r)
        return cls(tuple(Angle(r) for r in sorted(reps)))

    def __len__(self) -> int:
        return len(self.directions)

    def index_of(self, angle: Angle, tolerance: float = DIRECTION_TOLERANCE) -> int:
        for i, rep in enumerate(self.directions):
            if angle_gap(angle.radians, rep.radians) <= tolerance:
                return i
        raise ValueError(f"angle {angle.radians!r} not among the directions")


@dataclass(frozen=True)
class LhvStrategy:
    """A total map from direction index to a predetermined outcome."""

    assignment: tuple[OutcomeLabel, ...]

    def outcome(self, direction_index: int) -> OutcomeLabel:
        return self.assignment[direction_index]


def enumerate_strategies(
    spin: SpinLabel, directions: DirectionSet, cap: int | None = None
) -> Iterator[LhvStrategy]:
    """Yield every strategy exactly once, in lexicographic order.

    The outcome alphabet per direction is descending m (maximal outcome
    first), so the all-maximal strategy comes first.  Raises
    ``CapExceededError`` if (2s+1)^#directions exceeds ``cap``.
    """
    cap = DEFAULT_ENUM_CAP if cap is None else int(cap)
    total = spin.dimension ** len(directions)
    if total > cap:
        raise CapExceededError(f"{total} strategies exceed cap {cap}")
    for combo in itertools.product(spin.outcomes(), repeat=len(directions)):
        yield LhvStrategy(assignment=combo)


# An event is a map from direction index to the required twice-m value;
# None marks an event that no deterministic strategy can trigger because
# one direction would need two different outcomes at once.
def _event(
    requirements: list[tuple[int, int]],
) -> dict[int, int] | None:
    event: dict[int, int] = {}
    for idx, tm in requirements:
        if event.setdefault(idx, tm) != tm:
            return None
    return event


def _constraint_event(
    instance: HardyInstance,
    directions: DirectionSet,
    constraint: ZeroConstraint,
    tolerance: float,
) -> dict[int, int] | None:
    top = instance.spin.twice_spin
    reqs: list[tuple[int, int]] = []
    if constraint.kind is ConstraintKind.ALL_UNPRIMED:
        for angle in instance.unprimed:
            reqs.append((directions.index_of(angle, tolerance), top))
    else:
        for i in range(instance.n):
            if i + 1 == constraint.slot:
                reqs.append(
                    (
                        directions.index_of(instance.unprimed[i], tolerance),
                        constraint.deviant.twice_m,
                    )
                )
            else:
                reqs.append((directions.index_of(instance.primed[i], tolerance), top))
    return _event(reqs)


def _success_event(
    instance: HardyInstance, directions: DirectionSet, tolerance: float
) -> dict[int, int]:
    top = instance.spin.twice_spin
    event = _event(
        [(directions.index_of(a, tolerance), top) for a in instance.primed]
    )
    assert event is not None  # all requirements demand the same outcome
    return event


def _triggers(strategy: LhvStrategy, event: dict[int, int] | None) -> bool:
    if event is None:
        return False
    return all(strategy.assignment[i].twice_m == tm for i, tm in event.items())


def lhv_max_success(
    instance: HardyInstance,
    constraints: tuple[ZeroConstraint, ...] | None = None,
    cap: int | None = None,
    tolerance: float = DIRECTION_TOLERANCE,
) -> int:
    """Largest success probability any strategy reaches under the constraints.

    Deterministic strategies give the success event probability 0 or 1, so
    the result is exactly 0 or 1: it is 1 iff some strategy triggers no
    forbidden event yet achieves the all-primed maximal event.
    """
    if constraints is None:
        constraints = build_constraints(instance)
    directions = DirectionSet.from_instance(instance, tolerance)
    events = [
        _constraint_event(instance, directions, c, tolerance) for c in constraints
    ]
    success = _success_event(instance, directions, tolerance)
    for strategy in enumerate_strategies(instance.spin, directions, cap):
        if _triggers(strategy, success) and not any(
            _triggers(strategy, e) for e in events
        ):
            return 1
    return 0


@dataclass(frozen=True)
class WitnessRow:
    """How one strategy fares against the constraint system."""

    index: int
    strategy: LhvStrategy
    memberships: tuple[str, ...]  # "B" or the deviating slots "A1", "A3", ...
    violated: tuple[str, ...]  # identifiers of triggered zero constraints
    success: bool


@dataclass(frozen=True)
class WitnessReport:
    """Full enumeration transcript backing the no-go certificate."""

    instance: HardyInstance
    directions: DirectionSet
    rows: tuple[WitnessRow, ...] = field(repr=False)
    contradiction: bool = False


def witness_partition(
    instance: HardyInstance,
    constraints: tuple[ZeroConstraint, ...] | None = None,
    cap: int | None = None,
    tolerance: float = DIRECTION_TOLERANCE,
) -> WitnessReport:
    """Classify every strategy by where it deviates and what it violates.

    A strategy belongs to B when it assigns the maximal outcome to every
    unprimed direction (and hence triggers the ALL_UNPRIMED event), and to
    A_l when it deviates at the unprimed direction of slot l.
    ``contradiction`` is true iff no strategy satisfies all constraints
    while achieving the success event, which matches
    ``lhv_max_success(instance) == 0``.
    """
    if constraints is None:
        constraints = build_constraints(instance)
    directions = DirectionSet.from_instance(instance, tolerance)
    events = [
        (c.identifier, _constraint_event(instance, directions, c, tolerance))
        for c in constraints
    ]
    success = _success_event(instance, directions, tolerance)
    top = instance.spin.twice_spin
    unprimed_idx = [directions.index_of(a, tolerance) for a in instance.unprimed]
    rows = []
    contradiction = True
    for rank, strategy in enumerate(
        enumerate_strategies(instance.spin, directions, cap)
    ):
        deviating = tuple(
            f"A{slot}"
            for slot, di in enumerate(unprimed_idx, start=1)
            if strategy.assignment[di].twice_m != top
        )
        memberships = deviating if deviating else ("B",)
        violated = tuple(
            ident for ident, event in events if _triggers(strategy, event)
        )
        achieved = _triggers(strategy, success)
        if achieved and not violated:
            contradiction = False
        rows.append(
            WitnessRow(
                index=rank,
                strategy=strategy,
                memberships=memberships,
                violated=violated,
                success=achieved,
            )
        )
    return WitnessReport(
        instance=instance,
        directions=directions,
        rows=tuple(rows),
        contradiction=contradiction,
    )


def save_witness_csv(
    report: WitnessReport, path, header_lines: tuple[str, ...] = ()
) -> None:
    """One CSV row per strategy: assignment, memberships, violations, success."""
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write(
            "# directions = "
            + " ".join(repr(d.radians) for d in report.directions.directions)
            + "\n"
        )
        writer = csv.writer(fh)
        writer.writerow(["index", "outcomes", "memberships", "violated", "success"])
        for row in report.rows:
            writer.writerow(
                [
                    row.index,
                    " ".join(str(o.twice_m) for o in row.strategy.assignment),
                    " ".join(row.memberships),
                    " ".join(row.violated),
                    int(row.success),
                ]
            )
        fh.write(f"# contradiction = {report.contradiction}\n")
