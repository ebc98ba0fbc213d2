"""``xy-discord`` command-line entry point.

Exit status: 0 on success, 2 on a flag or validation error, 1 on a
numerical failure. Output goes to stdout or, atomically, to ``--out``.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import analysis
from .channels import Channel, check_p
from .errors import DegenerateState, DomainEdge, XYDiscordError
from .xstate import (c_representation, classical_correlations, discord, mutual_information,
                     reduced_density_matrix)
from .xy_model import MAX_DISTANCE, ModelParams, QuadratureConfig

PROG = "xy-discord"
COMMANDS = ("state", "trajectory", "psc", "sweep", "qcp", "profile")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _channel(text: str) -> Channel:
    try:
        return Channel.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sweep_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}") from None
    if not (hi > lo and n >= 2):
        raise argparse.ArgumentTypeError(f"need hi > lo and n >= 2 in {text!r}")
    return lo, hi, n


def _flag(text: str) -> bool:
    if isinstance(text, bool):
        return text
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


# name -> (dest, type, default)
OPTIONS = {
    "lambda": ("lam", float, 0.7),
    "gamma": ("gamma", float, 0.7),
    "kt": ("kt", float, 0.0),
    "r": ("r", int, 1),
    "channel": ("channel", _channel, Channel.BPF),
    "p": ("p", float, 0.05),
    "p-points": ("p_points", int, analysis.DEFAULT_P_POINTS),
    "sweep-var": ("sweep_var", str, "lambda"),
    "sweep-range": ("sweep_range", _sweep_range, None),
    "h": ("h", float, analysis.DEFAULT_H),
    "format": ("format", str, "csv"),
    "out": ("out", str, None),
    "emit-plot": ("emit_plot", _flag, False),
}
CHOICES = {"sweep-var": ("lambda", "gamma"), "format": ("csv", "json")}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    for name, (dest, typ, _default) in OPTIONS.items():
        if name == "emit-plot":
            common.add_argument("--emit-plot", dest=dest, action="store_const", const=True)
        else:
            common.add_argument(f"--{name}", dest=dest, type=typ, choices=CHOICES.get(name))
    common.add_argument("--config", dest="config", type=str)

    parser = _Parser(prog=PROG, description="Correlation dynamics of the transverse-field XY chain.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    helps = {
        "state": "initial two-site state and its correlations",
        "trajectory": "I, C, Q versus parametrised time p",
        "psc": "sudden-change time p_sc and dynamics type",
        "sweep": "p_sc and its derivative along lambda or gamma",
        "qcp": "finite-temperature critical-point estimate",
        "profile": "discord versus distance r at fixed p",
    }
    for cmd in COMMANDS:
        sub.add_parser(cmd, parents=[common], help=helps[cmd], argument_default=argparse.SUPPRESS)
    return parser


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key not in OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        dest, typ, _ = OPTIONS[key]
        if key in CHOICES and value not in CHOICES[key]:
            raise UsageError(f"{path}:{lineno}: {key} must be one of {', '.join(CHOICES[key])}")
        try:
            out[dest] = typ(value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return out


def resolve(argv: list[str]) -> argparse.Namespace:
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
    given = vars(ns)
    merged = {dest: default for dest, _typ, default in OPTIONS.values()}
    if "config" in given:
        merged.update(read_config(given["config"]))
    merged.update(given)
    cfg = argparse.Namespace(**merged)
    _validate(cfg)
    return cfg


def _validate(cfg: argparse.Namespace) -> None:
    try:
        cfg.params = ModelParams.from_kt(cfg.lam, cfg.gamma, cfg.kt)
        cfg.quad = QuadratureConfig.from_env()
        check_p(cfg.p)
    except ValueError as exc:
        raise UsageError(str(exc))
    r_cap = 8 if cfg.command == "profile" else MAX_DISTANCE
    if not 1 <= cfg.r <= r_cap:
        raise UsageError(f"--r must lie in [1, {r_cap}] for {cfg.command}")
    if cfg.p_points < 2:
        raise UsageError("--p-points must be >= 2")
    if not cfg.h > 0:
        raise UsageError("--h must be positive")
    if cfg.command == "qcp":
        if cfg.kt <= 0:
            raise UsageError("qcp needs a finite temperature: --kt > 0")
        lo, hi, n = cfg.sweep_range or (0.6, 1.5, 64)
        if lo <= 0 or n < 32:
            raise UsageError("qcp --sweep-range needs lo > 0 and n >= 32")
    if cfg.command == "sweep" and cfg.sweep_range is None:
        raise UsageError("sweep needs --sweep-range lo:hi:n")
    if cfg.emit_plot and (cfg.out is None or cfg.format != "csv"):
        raise UsageError("--emit-plot needs --out and --format csv")


def _num(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return "%.12g" % x


def _csv(header: list[str] | None, rows: list[list]) -> str:
    buf = io.StringIO()
    if header:
        buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _num(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(x):
    if isinstance(x, float):
        return None if math.isnan(x) else float(_num(x))
    return x


def _json(obj) -> str:
    if isinstance(obj, list):
        obj = [{k: _json_value(v) for k, v in rec.items()} for rec in obj]
    elif isinstance(obj, dict):
        obj = {k: _json_value(v) for k, v in obj.items()}
    return json.dumps(obj, indent=1) + "\n"


def _table(cfg, header: list[str], rows: list[list]) -> str:
    if cfg.format == "json":
        return _json([dict(zip(header, row)) for row in rows])
    return _csv(header, rows)


def cmd_state(cfg) -> str:
    s = reduced_density_matrix(cfg.params, cfg.r, cfg.quad)
    c = c_representation(s)
    q = discord(s)
    rec = {"a": s.a, "b": s.b, "d": s.d, "z": s.z, "f": s.f,
           "c1": c.c1, "c2": c.c2, "c3": c.c3, "c4": c.c4,
           "I": mutual_information(s), "C": classical_correlations(s), "Q": q.value, "branch": q.branch}
    if cfg.format == "json":
        rec = {k: _json_value(v) for k, v in rec.items()}
        rec["matrix"] = [[float(_num(v)) for v in row] for row in s.matrix()]
        return json.dumps(rec, indent=1) + "\n"
    return _csv(["key", "value"], [[k, v] for k, v in rec.items()])


def cmd_trajectory(cfg) -> str:
    traj = analysis.trajectory(cfg.params, cfg.r, cfg.channel, analysis.default_p_grid(cfg.p_points), cfg.quad)
    return _table(cfg, ["p", "I", "C", "Q", "branch"], [list(pt) for pt in traj.points])


def cmd_psc(cfg) -> str:
    sc = analysis.sudden_change_point(cfg.params, cfg.r, cfg.channel, cfg.quad)
    if cfg.format == "json":
        return _json({"p_sc": sc.p_sc, "method": sc.method.value, "type": sc.dynamics_type.value})
    value = "absent" if sc.p_sc is None else _num(sc.p_sc)
    return f"p_sc,{value},type,{sc.dynamics_type.value}\n"


def cmd_sweep(cfg) -> str:
    lo, hi, n = cfg.sweep_range
    rows = []
    for x in np.linspace(lo, hi, n):
        x = float(x)
        key = "lam" if cfg.sweep_var == "lambda" else "gamma"
        try:
            params = cfg.params.replace(**{key: x})
        except ValueError as exc:
            raise UsageError(f"--sweep-range leaves the parameter domain: {exc}")
        try:
            p_sc = analysis.sudden_change_point(params, cfg.r, cfg.channel, cfg.quad).p_sc
        except DegenerateState:
            p_sc = None
        try:
            deriv = analysis.psc_derivative(params, cfg.r, cfg.channel, cfg.sweep_var, cfg.h, cfg.quad)
        except DomainEdge:
            deriv = float("nan")
        rows.append([x, float("nan") if p_sc is None else p_sc, deriv])
    return _table(cfg, ["x", "p_sc", "dpsc_dx"], rows)


def cmd_qcp(cfg) -> str:
    lo, hi, n = cfg.sweep_range or (0.6, 1.5, 64)
    est = analysis.qcp_estimate(cfg.channel, cfg.gamma, cfg.params.beta, cfg.r, (lo, hi), n, cfg.h, cfg.quad)
    header = ["kT", "r", "channel", "lambda_star", "peak"]
    row = [cfg.kt, cfg.r, cfg.channel.value, est.lambda_star, est.peak_value]
    if cfg.format == "json":
        rec = dict(zip(header, row))
        rec["grid_lambda_star"] = est.grid_lambda_star
        return _json(rec)
    return _csv(header, [row])


def cmd_profile(cfg) -> str:
    prof = analysis.discord_decay_profile(cfg.params, cfg.channel, cfg.p, cfg.r, cfg.quad)
    return _table(cfg, ["r", "Q"], [[r, q] for r, q in prof])


HANDLERS = {"state": cmd_state, "trajectory": cmd_trajectory, "psc": cmd_psc,
            "sweep": cmd_sweep, "qcp": cmd_qcp, "profile": cmd_profile}

PLOT_TEMPLATES = {
    "trajectory": """\
import numpy as np
import matplotlib.pyplot as plt

data = np.genfromtxt({csv!r}, delimiter=",", names=True, dtype=None, encoding=None)
fig, ax = plt.subplots()
ax.plot(data["p"], data["I"], "-", label="I")
ax.plot(data["p"], data["C"], "--", label="C")
ax.plot(data["p"], data["Q"], "-.", label="Q")
ax.set_xlabel("p")
ax.set_title({title!r})
ax.legend()
fig.savefig({png!r}, dpi=150)
""",
    "sweep": """\
import numpy as np
import matplotlib.pyplot as plt

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots()
ax.plot(data["x"], data["p_sc"], "-")
ax.set_xlabel({xlabel!r})
ax.set_ylabel("p_sc")
inset = ax.inset_axes([0.55, 0.55, 0.4, 0.4])
inset.plot(data["x"], data["dpsc_dx"], "-")
inset.set_ylabel("d p_sc / d x")
ax.set_title({title!r})
fig.savefig({png!r}, dpi=150)
""",
    "profile": """\
import numpy as np
import matplotlib.pyplot as plt

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots()
ax.plot(data["r"], data["Q"], "s-")
ax.set_xlabel("r")
ax.set_ylabel("Q")
ax.set_title({title!r})
fig.savefig({png!r}, dpi=150)
""",
    "generic": """\
# {csv} holds a single record; print it.
print(open({csv!r}).read())
""",
}


def _plot_script(cfg) -> str:
    out = Path(cfg.out)
    template = PLOT_TEMPLATES.get(cfg.command, PLOT_TEMPLATES["generic"])
    title = f"{cfg.command} {cfg.channel.value} lambda={cfg.lam} gamma={cfg.gamma} kT={cfg.kt} r={cfg.r}"
    return template.format(csv=out.name, png=out.with_suffix(".png").name, title=title,
                           xlabel=cfg.sweep_var)


def atomic_write(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = resolve(argv)
        text = HANDLERS[cfg.command](cfg)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=stderr)
        return 2
    except XYDiscordError as exc:
        print(f"{PROG}: error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if cfg.out is None:
        stdout.write(text)
    else:
        atomic_write(cfg.out, text)
        if cfg.emit_plot:
            atomic_write(str(Path(cfg.out).with_suffix(".plot.py")), _plot_script(cfg))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
