"""Maximizing the Hardy success probability over measurement angles.

Two independent searches are provided.

``maximize_success`` enumerates the structured candidate families: the
mandatory pi gap in the unprimed chain can sit at any position, and the
two chain-matching conditions adjacent to the gap can each be satisfied
in two ways, giving a small set of pinning sub-cases with at most one
free primed angle.  Each family is refined by golden-section search.
All but the interior-gap families provably collapse to success
probability 0; they are still enumerated and checked, so the search
doubles as an empirical confirmation that nothing beats

    p_max = (1/2)^{4s},

independent of the sequence length.

``penalty_search`` knows nothing about that structure: it maximizes
p - kappa * sum(residual^2) over all 2n angles from random starts with an
escalating penalty weight, restores feasibility by minimizing the squared
residuals alone, and only then reads off p.  Feasibility is always
verified against the configured tolerance, never assumed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .hardy import HardyInstance, analytic_family, evaluate, save_instance
from .wigner import SpinLabel

PENALTY_SCHEDULE = tuple(10.0**e for e in range(1, 9))

# Two success probabilities within this margin count as tied and the
# lexicographically smaller angle vector wins.
_TIE_EPS = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """Tunables shared by both searches; defaults reproduce all results."""

    coarse_grid_steps: int = 24
    refine_iterations: int = 60
    zero_tolerance: float = 1e-10
    seed: int = 0
    restarts: int = 16

    def __post_init__(self):
        if self.coarse_grid_steps < 2:
            raise ValueError("coarse_grid_steps must be >= 2")
        if self.refine_iterations < 1:
            raise ValueError("refine_iterations must be >= 1")
        if not 0 < self.zero_tolerance < 1:
            raise ValueError("zero_tolerance must be in (0, 1)")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    """Best feasible instance found, its success probability, and a trace."""

    best: HardyInstance
    p: float
    branch: str
    history: tuple[tuple[int, float], ...] = field(repr=False)


def _pinning_cases(t: int, n: int) -> list[tuple[str, str]]:
    """Valid (pi-pin, zero-pin) choices for a gap ending at position t."""
    if t == 1:
        return [("next", "none")]
    pi_sides = ["next", "prev"] if t < n else ["prev"]
    return [(p, z) for p in pi_sides for z in ("below", "at")]


def _template(
    spin: SpinLabel, n: int, t: int, pi_side: str, zero_side: str, theta: float
) -> HardyInstance:
    """Candidate instance for the gap at position t under one pinning case.

    Primed axes default to 0 below the gap, the free angle at the gap, and
    pi above it; the pins override the slots named by the case.  Unprimed
    axes are then filled to satisfy every chain-matching condition.
    """
    primed = [0.0] * (n + 1)
    for i in range(1, n + 1):
        primed[i] = 0.0 if i < t else (theta if i == t else math.pi)
    if pi_side == "prev":
        primed[t - 1] = math.pi
    if zero_side == "at":
        primed[t] = 0.0
    unprimed = [0.0] * (n + 1)
    for i in range(1, n + 1):
        if i < t:
            unprimed[i] = 0.0
        elif i == t:
            unprimed[i] = math.pi
        else:
            unprimed[i] = primed[i + 1] if i < n else primed[n - 1]
    return HardyInstance.of(spin, unprimed[1:], primed[1:])


def _feasible_p(instance: HardyInstance, zero_tolerance: float) -> float:
    """Success probability, or -1 when any zero constraint is violated."""
    report = evaluate(instance, tolerance=zero_tolerance)
    return report.success_p if report.max_residual < zero_tolerance else -1.0


def _golden_refine(family, config: SearchConfig):
    """Maximize p over the free angle in [0, pi]: coarse grid then golden section."""
    best_x, best_p = 0.0, -1.0

    def probe(x: float) -> float:
        nonlocal best_x, best_p
        p = _feasible_p(family(x), config.zero_tolerance)
        if p > best_p:
            best_x, best_p = x, p
        return p

    xs = np.linspace(0.0, math.pi, config.coarse_grid_steps + 1)
    values = [probe(float(x)) for x in xs]
    i = int(np.argmax(values))
    a = float(xs[max(0, i - 1)])
    b = float(xs[min(len(xs) - 1, i + 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = probe(c), probe(d)
    for _ in range(config.refine_iterations):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = probe(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = probe(d)
    return best_x, best_p


def _better(p: float, vector, best_p: float, best_vector) -> bool:
    if p > best_p + _TIE_EPS:
        return True
    return abs(p - best_p) <= _TIE_EPS and (best_vector is None or vector < best_vector)


def maximize_success(
    spin: SpinLabel, n: int, config: SearchConfig | None = None
) -> SearchResult:
    """Search every structured family for the largest feasible success p.

    The winner always attains (1/2)^{4s} regardless of n; ties between
    branches are broken by the lexicographically smallest angle vector.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    config = config or SearchConfig()
    history = []
    best_p, best_vector, best_instance, best_branch = -1.0, None, None, None
    index = 0
    for t in range(1, n + 1):
        for pi_side, zero_side in _pinning_cases(t, n):
            label = f"pi_step={t} pin={pi_side} zero={zero_side}"
            if zero_side == "at":
                # the free angle is pinned away in this case
                inst = _template(spin, n, t, pi_side, zero_side, math.pi / 2)
                p = _feasible_p(inst, config.zero_tolerance)
            else:
                def family(x, t=t, pi_side=pi_side, zero_side=zero_side):
                    return _template(spin, n, t, pi_side, zero_side, x)

                best_x, p = _golden_refine(family, config)
                inst = family(best_x)
            history.append((index, p))
            index += 1
            if p >= 0 and _better(p, inst.angle_vector(), best_p, best_vector):
                best_p, best_vector = p, inst.angle_vector()
                best_instance, best_branch = inst, label
    if best_instance is None:
        raise RuntimeError("no feasible branch found")
    report = evaluate(best_instance, tolerance=config.zero_tolerance)
    if not report.is_hardy_point:
        raise RuntimeError("best branch is not a Hardy point")
    return SearchResult(
        best=best_instance, p=best_p, branch=best_branch, history=tuple(history)
    )


def penalty_search(
    spin: SpinLabel,
    n: int,
    config: SearchConfig | None = None,
    schedule: tuple[float, ...] = PENALTY_SCHEDULE,
) -> SearchResult:
    """Structure-free cross-check of ``maximize_success``.

    Random multi-start Nelder-Mead over all 2n angles, maximizing
    p - kappa * sum(residual^2) with kappa escalating through ``schedule``,
    followed by a feasibility-restoring polish.  Restarts that fail the
    zero tolerance are dropped from the ranking but reported in the
    history with p = nan.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    config = config or SearchConfig()
    rng = np.random.default_rng(config.seed)

    def assess(x):
        report = evaluate(
            HardyInstance.of(spin, x[:n], x[n:]), tolerance=config.zero_tolerance
        )
        return [r for _, r in report.residuals], report.success_p

    def squared_violation(x) -> float:
        residuals, _ = assess(x)
        return math.fsum(r * r for r in residuals)

    history = []
    best_p, best_vector, best_instance, best_restart = -1.0, None, None, None
    for restart in range(config.restarts):
        x = rng.uniform(0.0, 2.0 * math.pi, size=2 * n)
        for kappa in schedule:

            def objective(y, kappa=kappa):
                residuals, p = assess(y)
                return -p + kappa * math.fsum(r * r for r in residuals)

            x = minimize(
                objective,
                x,
                method="Nelder-Mead",
                options=dict(maxiter=2000, xatol=1e-10, fatol=1e-14),
            ).x
        x = minimize(
            squared_violation,
            x,
            method="Nelder-Mead",
            options=dict(maxiter=4000, xatol=1e-12, fatol=1e-30),
        ).x
        instance = HardyInstance.of(spin, x[:n], x[n:])
        report = evaluate(instance, tolerance=config.zero_tolerance)
        feasible = report.max_residual < config.zero_tolerance
        history.append((restart, report.success_p if feasible else float("nan")))
        if feasible and _better(
            report.success_p, instance.angle_vector(), best_p, best_vector
        ):
            best_p, best_vector = report.success_p, instance.angle_vector()
            best_instance, best_restart = instance, restart
    if best_instance is None:
        raise RuntimeError("no restart reached feasibility; raise restarts")
    report = evaluate(best_instance, tolerance=config.zero_tolerance)
    if not report.is_hardy_point:
        raise RuntimeError("feasible restarts found only degenerate points")
    return SearchResult(
        best=best_instance,
        p=best_p,
        branch=f"penalty restart={best_restart}",
        history=tuple(history),
    )


def scan_free_angle(
    spin: SpinLabel, n: int, l: int, grid_points: int = 1000
) -> list[tuple[float, float]]:
    """Success probability of the analytic family across its free angle.

    Returns (theta, p) pairs on a uniform grid over [0, pi].  Every point
    satisfies all zero constraints, and p follows
    cos^{4s}(theta/2) * sin^{4s}(theta/2) exactly.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    rows = []
    for theta in np.linspace(0.0, math.pi, grid_points):
        report = evaluate(analytic_family(spin, n, l, float(theta)))
        rows.append((float(theta), report.success_p))
    return rows


def save_result_text(result: SearchResult, path) -> None:
    """Instance fields plus the probability and branch descriptor.

    The file stays loadable by ``hardy.load_instance``; the extra keys are
    ignored there.
    """
    save_instance(result.best, path)
    with open(path, "a") as fh:
        fh.write(f"p = {result.p!r}\n")
        fh.write(f"branch = {result.branch}\n")


def save_history_csv(
    history: tuple[tuple[int, float], ...], path, header_lines: tuple[str, ...] = ()
) -> None:
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["iteration", "p"])
        for iteration, p in history:
            writer.writerow([iteration, repr(p)])


def save_scan_csv(
    rows: list[tuple[float, float]], path, header_lines: tuple[str, ...] = ()
) -> None:
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["theta", "p"])
        for theta, p in rows:
            writer.writerow([repr(theta), repr(p)])
