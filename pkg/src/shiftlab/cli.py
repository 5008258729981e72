"""Command line front end: certificates and experiments from a config file.

Six subcommands share one flag set.  ``validate`` stops after the structural
constants, ``weights``/``criteria``/``semicheck``/``orbit`` each add one
section, and ``report`` aggregates everything.  Every document embeds the
config hash and the library version so reports are traceable to their
inputs; identical config and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from ._version import __version__
from .criteria import (
    CriterionReport,
    Verdict,
    conditionmix_lhs,
    cofinite_quotient_witness,
    hypercyclicity_report,
    menet_unilateral,
    shift_hypercyclicity_report,
    telescoping_bound_check,
    weak_mixing_consistency,
)
from .errors import (
    ConfigError,
    EmptyWindow,
    InconsistentWitness,
    NoAdmissibleLevels,
    NonPositiveMeasure,
    ShiftlabError,
    TailRuleMissing,
    UsageError,
)
from .factor_map import semiconjugacy_defect
from .hc_lab import construct_hc_approx, orbit_density_report
from .measure_system import MeasureSystem
from .rationals import format_fraction
from .sampling import random_step_function
from .shift_space import BILATERAL, SeqVector, WeightSequence, derive_weights

COMMANDS = ("validate", "weights", "criteria", "semicheck", "orbit", "report")

_HELP = {
    "validate": "check the config and print the structural constants",
    "weights": "print the derived shift weights",
    "criteria": "evaluate every certificate and print the verdicts",
    "semicheck": "verify the factor identity on sampled step functions",
    "orbit": "build an approximate hypercyclic vector and score its orbit",
    "report": "run everything above and aggregate the sections",
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags, which this tool reserves
    # for config validation; route usage problems through an exception
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="shiftlab", description="exact certificates for cell models and their shifts")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=_HELP[name])
        cmd.add_argument("--config", required=True, help="path to a system config (JSON)")
        cmd.add_argument("--output", choices=("json", "csv"), default="json")
        cmd.add_argument("--out", default=None, help="write to this file instead of stdout")
        cmd.add_argument("--seed", type=int, default=0, help="sampling seed (unsigned 64-bit)")
        cmd.add_argument("--horizon", type=int, default=64)
        cmd.add_argument("--samples", type=int, default=100)
        cmd.add_argument("--eps", type=float, default=1e-2)
        cmd.add_argument("--strict", action="store_true",
                         help="exit 3 when any verdict is InconclusiveWindow")
    return parser


def _cofinite_report(system: MeasureSystem) -> CriterionReport:
    try:
        witness = cofinite_quotient_witness(system, 1, [])
    except NoAdmissibleLevels as exc:
        verdict = Verdict.VIOLATED if system.has_tails else Verdict.INCONCLUSIVE
        return CriterionReport("cofinite_quotient", verdict, {}, str(exc))
    return CriterionReport(
        "cofinite_quotient", Verdict.SATISFIED, witness.to_dict(),
        "one-step pullback does not expand on the chosen levels",
    )


def _telescoping_report(system: MeasureSystem, horizon: int) -> CriterionReport:
    if not system.has_tails:
        return CriterionReport(
            "telescoping_bound", Verdict.INCONCLUSIVE, {},
            "no tail rule: blocks beyond the window are unknown",
        )
    assert system.right_tail is not None
    deep_ratio = 1 / system.right_tail
    if deep_ratio <= 1:
        return CriterionReport(
            "telescoping_bound", Verdict.INCONCLUSIVE,
            {"deep_right_ratio": format_fraction(deep_ratio)},
            "deep one-step ratios do not exceed 1, so no block constant > 1 applies",
        )
    n_k = min(8, max(1, horizon))
    j = system.k_max + n_k
    cp = (1 + deep_ratio) / 2
    result = telescoping_bound_check(system, j, n_k, 1, cp)
    return CriterionReport(
        "telescoping_bound",
        Verdict.SATISFIED if result.holds else Verdict.VIOLATED,
        {**result.to_dict(), "j": j, "n_k": n_k, "n": 1, "cp": format_fraction(cp)},
        "deep backward mass ratio dominates the block bound",
    )


def _experiment(system: MeasureSystem, w: WeightSequence, *, eps: float, horizon: int) -> dict | None:
    if not system.has_tails:
        return None
    targets = [
        SeqVector(BILATERAL, {0: 1.0}),
        SeqVector(BILATERAL, {0: 1.0, 1: 1.0}),
        SeqVector(BILATERAL, {-1: 1.0}),
    ]
    try:
        approx = construct_hc_approx(w, targets, eps=eps, horizon=horizon)
    except ShiftlabError as exc:
        return {"error": str(exc)}
    density = orbit_density_report(w, approx.vector, targets, eps=eps, horizon=horizon)
    return {"approx": approx.to_dict(), "orbit": density.to_dict()}


def _system_section(system: MeasureSystem, c: Fraction, big_k: Fraction) -> dict:
    return {
        "p": format_fraction(system.p),
        "window": [system.k_min, system.k_max],
        "cells": list(system.cells),
        "tails": (
            {"left": format_fraction(system.left_tail), "right": format_fraction(system.right_tail)}
            if system.has_tails
            else None
        ),
        "star_c": format_fraction(c),
        "distortion_K": format_fraction(big_k),
    }


def _weights_section(w: WeightSequence) -> dict:
    return {
        "side": w.side,
        "p": format_fraction(w.p),
        "lo": w.lo,
        "hi": w.hi,
        "wp": {str(k): format_fraction(w.wp_at(k)) for k in range(w.lo, w.hi + 1)},
        "left_tail": [format_fraction(v) for v in w.left_tail] if w.left_tail else None,
        "right_tail": [format_fraction(v) for v in w.right_tail] if w.right_tail else None,
    }


def _criterion_reports(
    system: MeasureSystem,
    w: WeightSequence,
    *,
    seed: int,
    horizon: int,
    samples: int,
) -> list[CriterionReport]:
    return [
        hypercyclicity_report(system),
        shift_hypercyclicity_report(w),
        weak_mixing_consistency(system, seed=seed, samples=samples, horizon=horizon),
        menet_unilateral(w),
        conditionmix_lhs(system),
        _cofinite_report(system),
        _telescoping_report(system, horizon),
    ]


def _semicheck_section(system: MeasureSystem, *, seed: int, samples: int) -> dict:
    # without tails the image of the window floor has no measure, so keep
    # sampled supports one level above it
    floor = None if system.has_tails else system.k_min + 1
    if floor is not None and floor > system.k_max:
        return {"samples": 0, "exact_zero": 0, "max_defect": "0",
                "note": "window too small to shift a step function"}
    rng = random.Random(seed)
    for index in range(samples):
        phi = random_step_function(rng, system, min_level=floor)
        defect = semiconjugacy_defect(system, phi)
        if not (isinstance(defect, Fraction) and defect == 0):
            raise InconsistentWitness(
                f"factor identity defect {defect!r} on sample {index}"
            )
    return {"samples": samples, "exact_zero": samples, "max_defect": "0"}


def run_command(
    command: str,
    system: MeasureSystem,
    *,
    seed: int,
    horizon: int,
    samples: int,
    eps: float,
) -> dict:
    """Sections for one subcommand; ``report`` gets all of them."""
    c = system.validate_star()
    big_k = system.distortion_constant()
    result: dict = {"system": _system_section(system, c, big_k)}
    if command == "validate":
        return result
    w = derive_weights(system)
    if command in ("weights", "report"):
        result["weights"] = _weights_section(w)
    if command in ("criteria", "report"):
        reports = _criterion_reports(system, w, seed=seed, horizon=horizon, samples=samples)
        result["reports"] = [r.to_dict() for r in reports]
    if command in ("semicheck", "report"):
        result["semicheck"] = _semicheck_section(system, seed=seed, samples=samples)
    if command in ("orbit", "report"):
        result["experiment"] = _experiment(system, w, eps=eps, horizon=horizon)
    return result


def render_json(result: dict) -> str:
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def render_csv(result: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["record", "name", "value", "notes"])
    writer.writerow(["meta", "version", result["version"], ""])
    writer.writerow(["meta", "config_sha256", result["config_sha256"], ""])
    system = result["system"]
    writer.writerow(["constant", "star_c", system["star_c"], ""])
    writer.writerow(["constant", "distortion_K", system["distortion_K"], ""])
    if "weights" in result:
        for k, value in result["weights"]["wp"].items():
            writer.writerow(["weight", f"wp({k})", value, ""])
    if "reports" in result:
        for rep in result["reports"]:
            writer.writerow(["report", rep["criterion"], rep["verdict"], rep["notes"]])
    if "semicheck" in result:
        writer.writerow(["semicheck", "max_defect", result["semicheck"]["max_defect"], ""])
    experiment = result.get("experiment")
    if experiment is not None and "orbit" in experiment:
        writer.writerow(["experiment", "orbit_fraction", experiment["orbit"]["fraction"], ""])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not 0 <= args.seed < 2**64:
            parser.error("--seed must fit in an unsigned 64-bit integer")
    except UsageError as exc:
        print(f"shiftlab: {exc}", file=sys.stderr)
        return 64
    try:
        raw = Path(args.config).read_bytes()
    except OSError as exc:
        print(f"shiftlab: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        system = MeasureSystem.from_json(raw.decode("utf-8"))
        result = {
            "command": args.command,
            "version": __version__,
            "config_sha256": hashlib.sha256(raw).hexdigest(),
            "parameters": {
                "seed": args.seed,
                "horizon": args.horizon,
                "samples": args.samples,
                "eps": args.eps,
            },
        }
        result.update(run_command(
            args.command,
            system,
            seed=args.seed,
            horizon=args.horizon,
            samples=args.samples,
            eps=args.eps,
        ))
    except (UnicodeDecodeError, ConfigError, NonPositiveMeasure, EmptyWindow, TailRuleMissing) as exc:
        print(f"shiftlab: invalid config: {exc}", file=sys.stderr)
        return 2
    except InconsistentWitness as exc:
        print(f"shiftlab: {exc}", file=sys.stderr)
        return 1
    rendered = render_json(result) if args.output == "json" else render_csv(result)
    if args.out is None:
        sys.stdout.write(rendered)
    else:
        Path(args.out).write_text(rendered)
    if args.strict and any(
        rep["verdict"] == Verdict.INCONCLUSIVE.value for rep in result.get("reports", [])
    ):
        return 3
    return 0


def console_entry() -> None:
    sys.exit(main(sys.argv[1:]))
