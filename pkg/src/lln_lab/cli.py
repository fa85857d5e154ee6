"""Command-line entry point.

Subcommands: check-conditions, simulate, validate-proof, presets, emit-preset.
Exit codes are a stable contract: 0 = satisfied/converging/ok, 1 =
violated/diverging/failed, 2 = inconclusive/indeterminate, 3 = usage, config,
or budget error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import config_digest, emit_config, parse_config_file
from .diagnostics import compare_modes, run_experiment
from .errors import BudgetError, ValidationError
from .conditions import full_condition_report
from .presets import PRESETS, get_preset
from .proof_validators import (
    ceiling_bound_check,
    rare_part_mean_convergence,
    truncated_series,
    weighted_sum_transfer,
)
from .generators import sample_y_block
from .schedule import build_schedule
from .seeds import SeedStream

ENV_BUDGET = "LLN_LAB_BUDGET"

_EXIT_BY_VERDICT = {
    "satisfied": 0,
    "violated": 1,
    "inconclusive": 2,
    "converging": 0,
    "diverging": 1,
    "indeterminate": 2,
}


def _write(out_dir: Path, name: str, text: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(text)


def _write_manifest(out_dir: Path, command: str, config):
    _write(
        out_dir,
        "manifest.txt",
        f"command={command}\n"
        f"version={__version__}\n"
        f"config_sha256={config_digest(config)}\n"
        f"master_seed={config.master_seed}\n",
    )


def _load(args):
    config = parse_config_file(args.config)
    if getattr(args, "seed", None) is not None:
        from dataclasses import replace

        config = replace(config, master_seed=args.seed)
    return config


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(ENV_BUDGET)
    return int(env) if env else None


def cmd_check_conditions(args) -> int:
    config = _load(args)
    config.validate()
    report = full_condition_report(config)
    sys.stdout.write(report.to_text())
    if args.out:
        out_dir = Path(args.out)
        _write(out_dir, "conditions.txt", report.to_text())
        _write(out_dir, "conditions.kv", report.to_kv())
        _write_manifest(out_dir, "check-conditions", config)
    return _EXIT_BY_VERDICT[report.overall]


def cmd_simulate(args) -> int:
    config = _load(args)
    report = run_experiment(config, budget=_budget(args), threads=args.threads)
    out_dir = Path(args.out)
    _write(out_dir, "summary.txt", report.to_text())
    _write(out_dir, "report.kv", report.to_kv())
    _write(out_dir, "checkpoints.csv", report.checkpoint_csv())
    _write(out_dir, "aggregate.csv", report.aggregate_csv())
    _write_manifest(out_dir, "simulate", config)
    print(
        f"verdict: {report.verdict} (conditions {report.conditions.overall}); "
        f"outputs in {out_dir}"
    )
    return _EXIT_BY_VERDICT[report.verdict]


def cmd_validate_proof(args) -> int:
    config = _load(args)
    config.validate()
    a = config.moment_order
    eps = config.growth_exponent
    lines = [f"proof-machinery report (moment order {a}, growth exponent {eps})"]
    ok = True

    moment = config.y_model.fractional_moment()
    if moment == float("inf"):
        lines.append(
            f"FAIL fractional moment: tail index {config.y_model.tail_index} <= {a}"
        )
        ok = False
    else:
        lines.append(f"PASS fractional moment: {moment:.6g}")

    ceiling = ceiling_bound_check(1.0 / a, eps, n_max=100_000)
    lines.append(
        f"{'PASS' if ceiling.holds else 'FAIL'} ceiling inequality: "
        f"max {ceiling.max_ratio:.6g} at n={ceiling.argmax}, bound {ceiling.bound:.6g}"
    )
    ok = ok and ceiling.holds

    if ok:
        horizon = min(config.horizon, 1_000_000)
        replicas = min(config.replicas, 50)
        stab, vanish, sat = 0, 0, []
        for r in range(replicas):
            y = sample_y_block(config.y_model, 1, horizon, SeedStream(config.master_seed, r, "y"))
            trunc = truncated_series(y, a, growth_exponent=eps)
            sat.append(trunc.saturation_count)
            totals = trunc.truncated_partial_sums
            tail_inc = totals[-1] - float(np.interp(horizon / 10.0, trunc.checkpoints, totals))
            stab += tail_inc <= 0.05 * max(totals[-1], 1e-300)
            transfer = weighted_sum_transfer(y, a, eps)
            vanish += transfer.series_stabilized and transfer.transfer_vanishing
        frac_stab = stab / replicas
        frac_vanish = vanish / replicas
        mean_sat = sum(sat) / len(sat)
        lines.append(
            f"{'PASS' if frac_stab >= 0.9 else 'FAIL'} capped series stabilized "
            f"in {frac_stab:.0%} of {replicas} replicas "
            f"(mean saturation count {mean_sat:.3g})"
        )
        lines.append(
            f"{'PASS' if frac_vanish >= 0.9 else 'FAIL'} weighted series + transfer "
            f"vanishing in {frac_vanish:.0%} of replicas"
        )
        ok = ok and frac_stab >= 0.9 and frac_vanish >= 0.9

        schedule = build_schedule(config.schedule_rule, horizon)
        rare = rare_part_mean_convergence(
            config.y_model, schedule, replicas=replicas, master_seed=config.master_seed
        )
        lines.append(
            f"{'PASS' if rare.verdict == 'converging' else 'FAIL'} rare-part mean "
            f"verdict: {rare.verdict}"
        )
        ok = ok and rare.verdict == "converging"

    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        out_dir = Path(args.out)
        _write(out_dir, "proof_report.txt", text)
        _write_manifest(out_dir, "validate-proof", config)
    return 0 if ok else 1


def cmd_presets(_args) -> int:
    width = max(len(n) for n in PRESETS)
    for name in sorted(PRESETS):
        p = PRESETS[name]
        print(f"{name:<{width}}  conditions={p.expected_conditions:<10} "
              f"simulate={p.expected_simulation:<12} {p.note}")
    return 0


def cmd_emit_preset(args) -> int:
    preset = get_preset(args.name)
    text = emit_config(preset.config)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lln-lab",
        description="Monte-Carlo laboratory for mixed-sequence strong-law diagnostics",
    )
    parser.add_argument("--version", action="version", version=f"lln-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out_default=None):
        p.add_argument("--config", required=True, help="experiment config file")
        p.add_argument("--seed", type=int, default=None, help="override master_seed")
        if needs_out_default is None:
            p.add_argument("--out", default=None, help="directory for report files")
        else:
            p.add_argument("--out", default=needs_out_default, help="output directory")

    p = sub.add_parser("check-conditions", help="verify all hypotheses for a config")
    common(p)
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("simulate", help="run the convergence experiment")
    common(p, needs_out_default="out")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--budget", type=int, default=None,
                   help=f"sample budget horizon*replicas (env {ENV_BUDGET})")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate-proof", help="exercise the series/transfer machinery")
    common(p)
    p.set_defaults(func=cmd_validate_proof)

    p = sub.add_parser("presets", help="list canned scenarios")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("emit-preset", help="write a preset's config file")
    p.add_argument("name")
    p.add_argument("--out", default=None, help="target file (stdout when omitted)")
    p.set_defaults(func=cmd_emit_preset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap to the documented code 3
        return 0 if exc.code == 0 else 3
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget error: {exc}\n{exc.suggestion}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
