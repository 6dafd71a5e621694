"""``nosig`` command-line front end.

Exit codes: 0 success, 1 verdict differs from ``--expect``, 2 usage error,
3 invalid configuration, 4 scenario error.
"""

import argparse
import json
import math
import sys
from dataclasses import replace

from .config import SCENARIOS, ScenarioConfig, config_from_dict
from .errors import BadConfig, NoSigError, StateError
from .report import report_json, report_text, sweep_csv
from .scenarios import NO_SIGNALLING, SIGNALLING, run_scenario
from .states import BlochAngles
from .sweep import SweepSpec, run_sweep

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_SCENARIO = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    parser = _Parser(prog="nosig", description="Signalling tests for hypothetical quantum machines.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    run = sub.add_parser("run", help="run one scenario or all of them")
    run.add_argument("kind", choices=SCENARIOS + ("all",))
    run.add_argument("--config", metavar="FILE", help="JSON scenario config")
    for which in ("basis1", "basis2"):
        for angle in ("theta", "phi"):
            run.add_argument(f"--{which}-{angle}", type=float, metavar="RAD")
    for name in ("a", "c", "theta", "mu", "nu"):
        run.add_argument(f"--{name}", type=float, dest=f"np_{name}")
    run.add_argument("--threshold", type=float, help="signalling threshold")
    run.add_argument("--no-machine", action="store_true", help="skip the machine (baseline)")
    run.add_argument("--seed", type=int, default=0, help="reserved for randomised baselines")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--expect", choices=(SIGNALLING, NO_SIGNALLING), help="exit 1 unless every verdict matches")

    sweep = sub.add_parser("sweep", help="grid sweep written as CSV")
    sweep.add_argument("kind", choices=SCENARIOS)
    sweep.add_argument("--axes", required=True, metavar="NAME=MIN:MAX:STEPS[,...]")
    sweep.add_argument("--minimize", default="", metavar="mu,nu")
    sweep.add_argument("--phase-steps", type=int, default=16)
    sweep.add_argument("--config", metavar="FILE", help="JSON base config")
    sweep.add_argument("--out", metavar="FILE", help="output path; standard output if omitted")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def _load_config(path, kind):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise BadConfig(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise BadConfig(f"{path}: invalid JSON: {exc}") from None
    if isinstance(data, dict) and "kind" not in data and kind is not None:
        data = {**data, "kind": kind}
    cfg = config_from_dict(data)
    if kind is not None and cfg.kind != kind:
        raise BadConfig(f"{path} configures {cfg.kind}, not {kind}")
    return cfg


def _apply_flags(cfg, args):
    for which in ("basis1", "basis2"):
        theta, phi = getattr(args, f"{which}_theta"), getattr(args, f"{which}_phi")
        if theta is not None or phi is not None:
            old = getattr(cfg, which)
            new = BlochAngles(old.theta if theta is None else theta, old.phi if phi is None else phi)
            cfg = cfg.with_params(**{f"{which}_theta": new.theta, f"{which}_phi": new.phi})
    values = {name: getattr(args, f"np_{name}") for name in ("a", "c", "theta", "mu", "nu")}
    values = {k: v for k, v in values.items() if v is not None}
    if values and cfg.kind != "not_gate":
        raise BadConfig(f"--{', --'.join(values)} only apply to not_gate")
    cfg = cfg.with_params(**values)
    changes = {}
    if args.threshold is not None:
        changes["signalling_threshold"] = args.threshold
    if args.no_machine:
        changes["machine_enabled"] = False
    if changes:
        cfg = replace(cfg, **changes)
    return cfg


def _run(args, out):
    kinds = SCENARIOS if args.kind == "all" else (args.kind,)
    if args.config and args.kind == "all":
        raise BadConfig("--config needs a single scenario kind")
    reports = []
    for kind in kinds:
        cfg = _load_config(args.config, kind) if args.config else ScenarioConfig(kind)
        cfg = _apply_flags(cfg, args)
        reports.append(run_scenario(cfg))
    if args.format == "json":
        payload = report_json(reports if args.kind == "all" else reports[0])
    else:
        payload = "\n\n".join(report_text(r) for r in reports)
    out.write(payload + "\n")
    if args.expect and any(r.verdict != args.expect for r in reports):
        return EXIT_MISMATCH
    return EXIT_OK


def parse_axes(text):
    """``theta=0:3.14:9,a=0.1:0.9:5`` to ``[(name, lo, hi, steps), ...]``."""
    axes = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, rng = item.partition("=")
        parts = rng.split(":")
        if not sep or len(parts) != 3:
            raise UsageError(f"bad axis {item!r}; expected NAME=MIN:MAX:STEPS")
        try:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad axis {item!r}; MIN and MAX must be numbers, STEPS an integer") from None
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise UsageError(f"bad axis {item!r}; bounds must be finite")
        axes.append((name.strip(), lo, hi, steps))
    if not axes:
        raise UsageError("--axes needs at least one axis")
    return axes


def _sweep(args, out):
    axes = parse_axes(args.axes)
    minimize = tuple(filter(None, (s.strip() for s in args.minimize.split(","))))
    base = _load_config(args.config, args.kind) if args.config else None
    spec = SweepSpec(args.kind, axes, minimize, phase_steps=args.phase_steps, base=base)
    text = sweep_csv(run_sweep(spec), spec.parameter_names)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _selftest(out):
    from .acceptance import run_all_criteria

    results = run_all_criteria()
    for r in results:
        out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def main(argv=None, out=None, err=None):
    """Entry point; returns the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "run":
            return _run(args, out)
        if args.command == "sweep":
            return _sweep(args, out)
        return _selftest(out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except NoSigError as exc:
        if isinstance(exc, (BadConfig, StateError)):
            err.write(f"nosig: config error: {exc}\n")
            return EXIT_CONFIG
        err.write(f"nosig: scenario error: {exc}\n")
        return EXIT_SCENARIO
    except ValueError as exc:
        err.write(f"nosig: config error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        err.write(f"nosig: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
