"""Flat key-value experiment configs: canonical emission, strict parsing.

The file format is INI-style with one section per module.  Emission is
canonical (fixed section/key order, shortest round-trip float formatting), so
emit -> parse -> emit is byte-identical and a config's SHA-256 pins the whole
experiment.
"""

from __future__ import annotations

import configparser
import hashlib
import io
import re
from pathlib import Path

from .conditions import ConditionSettings
from .diagnostics import DEFAULT_MASTER_SEED, ExperimentConfig
from .errors import ConfigError
from .generators import (
    CenteredUniform,
    Normal,
    QuantileTable,
    Rademacher,
    ScaleRule,
    ShiftRule,
    XModel,
    YModel,
)
from .schedule import ScheduleRule

_DIST_RE = re.compile(r"^(\w+)\((.*)\)$")


def _emit_float(x: float) -> str:
    return repr(float(x))


def _emit_dist(dist) -> str:
    if isinstance(dist, Normal):
        return f"normal({_emit_float(dist.sigma)})"
    if isinstance(dist, CenteredUniform):
        return f"centered_uniform({_emit_float(dist.half_width)})"
    if isinstance(dist, Rademacher):
        return "rademacher"
    if isinstance(dist, QuantileTable):
        pairs = ",".join(
            f"{_emit_float(p)}:{_emit_float(v)}" for p, v in zip(dist.probs, dist.values)
        )
        return f"table({pairs})"
    raise ConfigError(f"cannot serialize distribution {dist!r}")


def _parse_dist(token: str):
    token = token.strip()
    if token == "rademacher":
        return Rademacher()
    m = _DIST_RE.match(token)
    if not m:
        raise ConfigError(f"bad distribution spec {token!r}")
    name, args = m.group(1), m.group(2)
    try:
        if name == "normal":
            return Normal(float(args))
        if name == "centered_uniform":
            return CenteredUniform(float(args))
        if name == "table":
            probs, values = [], []
            for pair in args.split(","):
                p, v = pair.split(":")
                probs.append(float(p))
                values.append(float(v))
            return QuantileTable(tuple(probs), tuple(values))
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad distribution spec {token!r}: {exc}") from exc
    raise ConfigError(f"unknown distribution kind {name!r}")


def emit_config(config: ExperimentConfig) -> str:
    """Canonical text form of a config; stable under parse/emit round trips."""
    x, y, s, c = config.x_model, config.y_model, config.schedule_rule, config.conditions
    out = io.StringIO()

    out.write("[models]\n")
    out.write(f"x_variant = {x.variant}\n")
    out.write(f"x_dists = {'; '.join(_emit_dist(d) for d in x.dists)}\n")
    out.write(f"x_generator_count = {x.generator_count}\n")
    out.write(f"x_modulus = {x.modulus}\n")
    out.write(f"x_scale_base = {_emit_float(x.scale.base)}\n")
    out.write(f"x_scale_gamma = {_emit_float(x.scale.gamma)}\n")
    out.write(f"x_shift_kind = {x.shift.kind}\n")
    out.write(f"x_shift_value = {_emit_float(x.shift.value)}\n")
    out.write(f"zero_mean_from = {x.zero_mean_from}\n")
    out.write(f"y_variant = {y.variant}\n")
    out.write(f"y_tail_index = {_emit_float(y.tail_index)}\n")
    out.write(f"y_scale_power = {_emit_float(y.scale_power)}\n")
    out.write(f"moment_order = {_emit_float(config.moment_order)}\n")
    out.write(f"growth_exponent = {_emit_float(config.growth_exponent)}\n")
    out.write("\n[schedule]\n")
    out.write(f"rule = {s.kind}\n")
    out.write(f"exponent = {_emit_float(s.exponent)}\n")
    out.write(f"density = {_emit_float(s.density)}\n")
    out.write(f"positions = {','.join(str(p) for p in s.positions)}\n")
    out.write("\n[conditions]\n")
    out.write(f"probe_depth = {c.probe_depth}\n")
    out.write(f"envelope_depth = {c.envelope_depth}\n")
    out.write(f"grid_points = {c.grid_points}\n")
    out.write(f"envelope_grid_points = {c.envelope_grid_points}\n")
    out.write("\n[diagnostics]\n")
    out.write(f"horizon = {config.horizon}\n")
    out.write(f"replicas = {config.replicas}\n")
    cps = "auto" if config.checkpoints is None else ",".join(str(n) for n in config.checkpoints)
    out.write(f"checkpoints = {cps}\n")
    out.write(f"master_seed = {config.master_seed}\n")
    out.write(f"mode = {config.mode}\n")
    out.write(f"decay_threshold = {_emit_float(config.decay_threshold)}\n")
    return out.getvalue()


def config_digest(config: ExperimentConfig) -> str:
    return hashlib.sha256(emit_config(config).encode()).hexdigest()


class _Section:
    def __init__(self, parser: configparser.ConfigParser, name: str):
        self._name = name
        self._data = dict(parser[name]) if parser.has_section(name) else {}

    def take(self, key: str, default=None, required: bool = False) -> str:
        if key in self._data:
            return self._data.pop(key).strip()
        if required:
            raise ConfigError(f"missing field {self._name}.{key}")
        return default

    def take_typed(self, key: str, cast, default=None, required: bool = False):
        raw = self.take(key, None, required)
        if raw is None:
            return default
        try:
            return cast(raw)
        except ValueError as exc:
            raise ConfigError(f"{self._name}.{key}: bad value {raw!r}") from exc

    def finish(self):
        if self._data:
            stray = ", ".join(f"{self._name}.{k}" for k in self._data)
            raise ConfigError(f"unknown fields: {stray}")


def parse_config_text(text: str, base_dir: str | Path = ".") -> ExperimentConfig:
    """Parse a config; raises ConfigError naming the offending field."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config does not parse: {exc}") from exc

    models = _Section(parser, "models")
    sched = _Section(parser, "schedule")
    conds = _Section(parser, "conditions")
    diags = _Section(parser, "diagnostics")

    x_variant = models.take("x_variant", required=True)
    dists = tuple(
        _parse_dist(tok) for tok in models.take("x_dists", "normal(1.0)").split(";") if tok.strip()
    )
    x_model = XModel(
        variant=x_variant,
        dists=dists,
        generator_count=models.take_typed("x_generator_count", int, 0),
        modulus=models.take_typed("x_modulus", int, 0),
        scale=ScaleRule(
            models.take_typed("x_scale_base", float, 1.0),
            models.take_typed("x_scale_gamma", float, 0.0),
        ),
        shift=ShiftRule(
            models.take("x_shift_kind", "none"),
            models.take_typed("x_shift_value", float, 0.0),
        ),
        zero_mean_from=models.take_typed("zero_mean_from", int, 1),
    )
    moment_order = models.take_typed("moment_order", float, required=True)
    growth_exponent = models.take_typed("growth_exponent", float, required=True)
    y_model = YModel(
        variant=models.take("y_variant", required=True),
        moment_order=moment_order,
        growth_exponent=growth_exponent,
        tail_index=models.take_typed("y_tail_index", float, 1.0),
        scale_power=models.take_typed("y_scale_power", float, 0.0),
    )
    models.finish()

    rule_kind = sched.take("rule", required=True)
    positions = ()
    raw_positions = sched.take("positions", "")
    positions_file = sched.take("positions_file", "")
    if positions_file:
        path = Path(base_dir) / positions_file
        try:
            lines = path.read_text().split()
        except OSError as exc:
            raise ConfigError(f"schedule.positions_file: cannot read {path}: {exc}") from exc
        positions = tuple(int(tok) for tok in lines)
    elif raw_positions:
        try:
            positions = tuple(int(tok) for tok in raw_positions.split(","))
        except ValueError as exc:
            raise ConfigError(f"schedule.positions: bad value {raw_positions!r}") from exc
    schedule_rule = ScheduleRule(
        kind=rule_kind,
        exponent=sched.take_typed("exponent", float, 0.5),
        density=sched.take_typed("density", float, 1.0),
        positions=positions,
    )
    sched.finish()

    settings = ConditionSettings(
        probe_depth=conds.take_typed("probe_depth", int, 10_000),
        envelope_depth=conds.take_typed("envelope_depth", int, 10_000),
        grid_points=conds.take_typed("grid_points", int, 4097),
        envelope_grid_points=conds.take_typed("envelope_grid_points", int, 1025),
    )
    conds.finish()

    raw_cps = diags.take("checkpoints", "auto")
    if raw_cps == "auto":
        checkpoints = None
    else:
        try:
            checkpoints = tuple(int(tok) for tok in raw_cps.split(","))
        except ValueError as exc:
            raise ConfigError(f"diagnostics.checkpoints: bad value {raw_cps!r}") from exc
    config = ExperimentConfig(
        x_model=x_model,
        y_model=y_model,
        schedule_rule=schedule_rule,
        moment_order=moment_order,
        growth_exponent=growth_exponent,
        zero_mean_from=x_model.zero_mean_from,
        horizon=diags.take_typed("horizon", int, required=True),
        replicas=diags.take_typed("replicas", int, required=True),
        checkpoints=checkpoints,
        master_seed=diags.take_typed("master_seed", int, DEFAULT_MASTER_SEED),
        mode=diags.take("mode", "theorem"),
        decay_threshold=diags.take_typed("decay_threshold", float, 2.0),
        conditions=settings,
    )
    diags.finish()
    return config


def parse_config_file(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, base_dir=path.parent)
