"""Command-line front end.

Subcommands
-----------
dmatrix     dump a small-d rotation matrix as CSV
joint       tabulate the joint distribution of a measurement plan
hardy-eval  evaluate the zero constraints of an instance file
hardy-max   search for the best instance at a given spin and length
lhv-check   certify that no predetermined-outcome model reproduces an instance
scan        sweep the free angle of the analytic family
reproduce   print the headline success-probability table

Angles accept plain radians or multiples of pi written like ``0.5pi``.
Spins are given as twice-integers (``--twice-spin 3`` is spin 3/2).  File
outputs embed the fully resolved parameter set as ``#`` header lines and
are byte-identical across repeated runs.  The environment variable
``SPINHARDY_CAP`` overrides both the tabulation and enumeration caps.

Exit codes: 0 success, 2 validation failure, 3 cap exceeded, 4 internal
error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

from . import hardy, lhv, optimize, sequence
from .sequence import CapExceededError
from .wigner import OutcomeLabel, SpinLabel, wigner_d

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4

CAP_ENV_VAR = "SPINHARDY_CAP"

# Literature value for the maximal two-qubit bipartite Hardy probability,
# shown in the reproduce table for comparison; display only.
BIPARTITE_REFERENCE_P = 0.0901099

_REPRODUCE_SPINS = (1, 2, 3, 4)
_REPRODUCE_LENGTHS = (2, 3, 4)


@dataclass(frozen=True)
class RunManifest:
    """A fully resolved invocation: command, parameters, output target."""

    command: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None
    fmt: str = "csv"

    def header_lines(self) -> tuple[str, ...]:
        lines = [f"command = {self.command}"]
        for key in sorted(self.parameters):
            lines.append(f"{key} = {self.parameters[key]}")
        if self.fmt != "csv":
            lines.append(f"format = {self.fmt}")
        return tuple(lines)


def parse_angle(text: str) -> float:
    """Parse radians, allowing a ``pi`` suffix: ``0.5pi``, ``pi``, ``-1.5pi``."""
    t = text.strip().lower()
    if t.endswith("pi"):
        head = t[: -len("pi")].strip()
        if head in ("", "+"):
            return math.pi
        if head == "-":
            return -math.pi
        return float(head) * math.pi
    return float(t)


def _env_cap() -> int | None:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {value}")
    return value


def _config_from(params: dict) -> optimize.SearchConfig:
    return optimize.SearchConfig(
        coarse_grid_steps=params["coarse_grid_steps"],
        refine_iterations=params["refine_iterations"],
        zero_tolerance=params["zero_tolerance"],
        seed=params["seed"],
        restarts=params["restarts"],
    )


def _run_dmatrix(manifest: RunManifest) -> int:
    p = manifest.parameters
    spin = SpinLabel(p["twice_spin"])
    matrix = wigner_d(spin, p["beta"])
    tms = [o.twice_m for o in spin.outcomes()]
    with open(manifest.output_path, "w", newline="") as fh:
        for line in manifest.header_lines():
            fh.write(f"# {line}\n")
        fh.write("twice_alpha," + ",".join(str(tm) for tm in tms) + "\n")
        for i, ta in enumerate(tms):
            row = ",".join(repr(float(v)) for v in matrix.entries[i])
            fh.write(f"{ta},{row}\n")
    return EXIT_OK


def _run_joint(manifest: RunManifest) -> int:
    p = manifest.parameters
    spin = SpinLabel(p["twice_spin"])
    alpha0 = None if p["twice_alpha0"] is None else OutcomeLabel(p["twice_alpha0"])
    plan = sequence.MeasurementPlan.of(
        spin, p["angles"], beta0=p["beta0"], alpha0=alpha0
    )
    dist = sequence.joint_distribution(plan, cap=_env_cap())
    # The serializers embed the resolved plan themselves; only the command
    # line is added here to avoid duplicated keys.
    if manifest.fmt == "text":
        sequence.save_distribution_text(dist, manifest.output_path)
    else:
        sequence.save_distribution_csv(
            dist, manifest.output_path, header_lines=(f"command = {manifest.command}",)
        )
    return EXIT_OK


def _run_hardy_eval(manifest: RunManifest) -> int:
    p = manifest.parameters
    instance = hardy.load_instance(p["instance"])
    report = hardy.evaluate(instance, tolerance=p["tolerance"])
    print(
        f"success_p = {report.success_p!r}  max_residual = {report.max_residual!r}  "
        f"is_hardy_point = {report.is_hardy_point}"
    )
    if manifest.output_path:
        hardy.save_report_csv(
            report, manifest.output_path, header_lines=manifest.header_lines()
        )
    return EXIT_OK


def _run_hardy_max(manifest: RunManifest) -> int:
    p = manifest.parameters
    spin = SpinLabel(p["twice_spin"])
    result = optimize.maximize_success(spin, p["n"], config=_config_from(p))
    print(f"p = {result.p!r}")
    print("unprimed =", " ".join(repr(a.radians) for a in result.best.unprimed))
    print("primed =", " ".join(repr(a.radians) for a in result.best.primed))
    print(f"branch = {result.branch}")
    if manifest.output_path:
        optimize.save_result_text(result, manifest.output_path)
    if p["history"]:
        optimize.save_history_csv(
            result.history, p["history"], header_lines=manifest.header_lines()
        )
    return EXIT_OK


def _run_lhv_check(manifest: RunManifest) -> int:
    p = manifest.parameters
    instance = hardy.load_instance(p["instance"])
    value = lhv.lhv_max_success(instance, cap=_env_cap(), tolerance=p["tolerance"])
    print(f"LHV max success = {value}")
    if manifest.output_path:
        report = lhv.witness_partition(
            instance, cap=_env_cap(), tolerance=p["tolerance"]
        )
        lhv.save_witness_csv(
            report, manifest.output_path, header_lines=manifest.header_lines()
        )
    return EXIT_OK


def _run_scan(manifest: RunManifest) -> int:
    p = manifest.parameters
    spin = SpinLabel(p["twice_spin"])
    rows = optimize.scan_free_angle(spin, p["n"], p["l"], grid_points=p["grid_points"])
    optimize.save_scan_csv(
        rows, manifest.output_path, header_lines=manifest.header_lines()
    )
    return EXIT_OK


def _run_reproduce(manifest: RunManifest) -> int:
    rows = []
    for twice_spin in _REPRODUCE_SPINS:
        spin = SpinLabel(twice_spin)
        for n in _REPRODUCE_LENGTHS:
            result = optimize.maximize_success(spin, n)
            rows.append((twice_spin, n, result.p))
    print("twice_spin  n  p_max")
    for twice_spin, n, p in rows:
        print(f"{twice_spin:>10}  {n}  {p!r}")
    print(
        f"reference   -  {BIPARTITE_REFERENCE_P!r}"
        "  (two-qubit bipartite Hardy maximum, literature value)"
    )
    if manifest.output_path:
        with open(manifest.output_path, "w", newline="") as fh:
            for line in manifest.header_lines():
                fh.write(f"# {line}\n")
            fh.write("label,twice_spin,n,p\n")
            for twice_spin, n, p in rows:
                fh.write(f"sequence,{twice_spin},{n},{p!r}\n")
            fh.write(f"bipartite_reference,,,{BIPARTITE_REFERENCE_P!r}\n")
    return EXIT_OK


_HANDLERS = {
    "dmatrix": _run_dmatrix,
    "joint": _run_joint,
    "hardy-eval": _run_hardy_eval,
    "hardy-max": _run_hardy_max,
    "lhv-check": _run_lhv_check,
    "scan": _run_scan,
    "reproduce": _run_reproduce,
}


def run(manifest: RunManifest) -> int:
    """Execute a resolved manifest; raises on validation or cap errors."""
    handler = _HANDLERS.get(manifest.command)
    if handler is None:
        raise ValueError(f"unknown command {manifest.command!r}")
    return handler(manifest)


def _add_search_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--coarse-grid-steps", type=int, default=24)
    sub.add_argument("--refine-iterations", type=int, default=60)
    sub.add_argument("--zero-tolerance", type=float, default=1e-10)
    sub.add_argument("--restarts", type=int, default=16)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinhardy",
        description="Hardy-type arguments for sequences of spin measurements",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("dmatrix", help="dump a small-d matrix as CSV")
    sub.add_argument("--twice-spin", type=int, required=True)
    sub.add_argument("--beta", type=parse_angle, required=True)
    sub.add_argument("--out", required=True)

    sub = subs.add_parser("joint", help="tabulate a joint outcome distribution")
    sub.add_argument("--twice-spin", type=int, required=True)
    sub.add_argument("--angles", type=parse_angle, nargs="+", required=True)
    sub.add_argument("--beta0", type=parse_angle, default=0.0)
    sub.add_argument("--twice-alpha0", type=int, default=None)
    sub.add_argument("--format", choices=("csv", "text"), default="csv")
    sub.add_argument("--out", required=True)

    sub = subs.add_parser("hardy-eval", help="evaluate an instance file")
    sub.add_argument("--instance", required=True)
    sub.add_argument("--tolerance", type=float, default=hardy.DEFAULT_TOLERANCE)
    sub.add_argument("--out")

    sub = subs.add_parser("hardy-max", help="maximize the success probability")
    sub.add_argument("--twice-spin", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    _add_search_options(sub)
    sub.add_argument("--out")
    sub.add_argument("--history")

    sub = subs.add_parser("lhv-check", help="exhaustive hidden-variable check")
    sub.add_argument("--instance", required=True)
    sub.add_argument("--tolerance", type=float, default=lhv.DIRECTION_TOLERANCE)
    sub.add_argument("--witness")

    sub = subs.add_parser("scan", help="sweep the analytic family's free angle")
    sub.add_argument("--twice-spin", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--l", type=int, required=True)
    sub.add_argument("--grid-points", type=int, default=1000)
    sub.add_argument("--out", required=True)

    sub = subs.add_parser("reproduce", help="print the success-probability table")
    sub.add_argument("--out")

    return parser


def _manifest_from_args(args: argparse.Namespace) -> RunManifest:
    command = args.command
    if command == "dmatrix":
        return RunManifest(
            command,
            {"twice_spin": args.twice_spin, "beta": args.beta},
            output_path=args.out,
        )
    if command == "joint":
        return RunManifest(
            command,
            {
                "twice_spin": args.twice_spin,
                "angles": args.angles,
                "beta0": args.beta0,
                "twice_alpha0": args.twice_alpha0,
            },
            output_path=args.out,
            fmt=args.format,
        )
    if command == "hardy-eval":
        return RunManifest(
            command,
            {"instance": args.instance, "tolerance": args.tolerance},
            output_path=args.out,
        )
    if command == "hardy-max":
        return RunManifest(
            command,
            {
                "twice_spin": args.twice_spin,
                "n": args.n,
                "seed": args.seed,
                "coarse_grid_steps": args.coarse_grid_steps,
                "refine_iterations": args.refine_iterations,
                "zero_tolerance": args.zero_tolerance,
                "restarts": args.restarts,
                "history": args.history,
            },
            output_path=args.out,
        )
    if command == "lhv-check":
        return RunManifest(
            command,
            {"instance": args.instance, "tolerance": args.tolerance},
            output_path=args.witness,
        )
    if command == "scan":
        return RunManifest(
            command,
            {
                "twice_spin": args.twice_spin,
                "n": args.n,
                "l": args.l,
                "grid_points": args.grid_points,
            },
            output_path=args.out,
        )
    return RunManifest(command, {}, output_path=args.out)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION
    try:
        return run(_manifest_from_args(args))
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
