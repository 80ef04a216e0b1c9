"""Command-line front end: ``simulate``, ``period`` and ``sweep``.

Every numeric value is written with 17 significant digits so CSV files
round-trip doubles exactly.  Exit status is 0 on success, 2 for
configuration errors and 3 for numerical failures; failures print one line
``error: <kind>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import CantileverError, ConfigError, DegenerateFitError, NumericalError
from .metrics import (_check_amplitudes, amplitude_errors, approximant_trajectory, fit_order,
                      resolution_floor)
from .model import ProblemParams, make_params
from .picard import IterationConfig, picard_initial, picard_solve
from .quadrature import DEFAULT_NODES, period_quadrature
from .reference import integrate_reference, measure_period

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3

DEFAULTS = {
    "alpha": "1.2",
    "beta": "3.7",
    "omega": "pi/4",
    "amplitude": "0.2",
    "n_out": "401",
    "methods": "reference,u1,u2",
    "rel_tol": "1e-10",
    "quad_nodes": str(DEFAULT_NODES),
    "amplitudes": "0.2,0.1,0.05",
}
CONFIG_KEYS = set(DEFAULTS) | {"t_end", "out"}
PICARD_MIN_NODES = 4097

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_PI_RE = re.compile(rf"^\s*([+-]?)\s*({_NUM})?\s*\*?\s*pi\s*(?:/\s*({_NUM}))?\s*$")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_real(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/4`` or ``3*pi/2``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(str(text))
    if not m:
        raise ConfigError(f"cannot parse number {text!r}")
    sign, coef, div = m.groups()
    value = float(coef or 1.0) * math.pi / float(div or 1.0)
    return -value if sign == "-" else value


def read_config_file(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    values = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


@dataclass
class RunConfig:
    params: ProblemParams
    t_end: float
    n_out: int
    methods: list[str]
    output_path: str | None = None
    rel_tol: float = 1e-10
    quad_nodes: int = DEFAULT_NODES
    amplitudes: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.methods:
            raise ConfigError("at least one method is required")
        if self.n_out < 2:
            raise ConfigError(f"n_out must be at least 2, got {self.n_out}")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise ConfigError(f"t_end must be positive and finite, got {self.t_end!r}")
        for m in self.methods:
            parse_method(m)


def parse_method(name: str) -> tuple[str, int]:
    name = name.strip()
    if name in ("reference", "u0", "u1", "u2", "u2c"):
        return name, 0
    if name.startswith("picard:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            n = -1
        if n < 0:
            raise ConfigError(f"bad picard order in {name!r}")
        return "picard", n
    raise ConfigError(f"unknown method {name!r}")


def build_config(args: argparse.Namespace) -> RunConfig:
    values = dict(DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    params = make_params(*(parse_real(values[k]) for k in ("alpha", "beta", "omega", "amplitude")))
    t_end = parse_real(values["t_end"]) if values.get("t_end") else None
    if t_end is None:
        # One linear period for sweeps, two for time histories.
        t_end = params.linear_period * (1 if args.command == "sweep" else 2)
    try:
        n_out = int(values["n_out"])
        quad_nodes = int(values["quad_nodes"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        params=params,
        t_end=t_end,
        n_out=n_out,
        methods=[m.strip() for m in values["methods"].split(",") if m.strip()],
        output_path=values.get("out"),
        rel_tol=parse_real(values["rel_tol"]),
        quad_nodes=quad_nodes,
        amplitudes=[parse_real(a) for a in values["amplitudes"].split(",") if a.strip()],
    )


def _picard_column(params: ProblemParams, order: int, t_end: float, n_out: int) -> np.ndarray:
    # Iterate on a refined Simpson grid that contains every output node.
    factor = max(2, math.ceil((PICARD_MIN_NODES - 1) / (n_out - 1)))
    factor += factor % 2
    cfg = IterationConfig((n_out - 1) * factor + 1, t_end, max(order, 1))
    traj = picard_initial(params, cfg) if order == 0 else picard_solve(params, cfg)[-1]
    return traj.u[::factor]


def method_column(name: str, cfg: RunConfig) -> np.ndarray:
    kind, order = parse_method(name)
    if kind == "reference":
        return integrate_reference(cfg.params, cfg.t_end, cfg.rel_tol, n_out=cfg.n_out).u
    if kind == "picard":
        return _picard_column(cfg.params, order, cfg.t_end, cfg.n_out)
    return approximant_trajectory(cfg.params, kind[1:], cfg.t_end, cfg.n_out).u


def _write(text: str, path: str | None, stdout) -> None:
    if path in (None, "", "-"):
        stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc.strerror}") from None


def cmd_simulate(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    """CSV of every requested method on the uniform output grid."""
    t = cfg.t_end / (cfg.n_out - 1) * np.arange(cfg.n_out)
    columns, status = [], EXIT_OK
    for name in cfg.methods:
        try:
            columns.append(method_column(name, cfg))
        except CantileverError as exc:
            stderr.write(f"error: numerical: method {name}: {exc}\n")
            columns.append(np.full(cfg.n_out, np.nan))
            status = EXIT_NUMERICAL
    lines = [",".join(["t"] + cfg.methods)]
    for i in range(cfg.n_out):
        lines.append(",".join([fmt(t[i])] + [fmt(c[i]) for c in columns]))
    _write("\n".join(lines) + "\n", cfg.output_path, stdout)
    return status


def cmd_period(cfg: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    """Period by quadrature and by reference integration, with their difference."""
    if cfg.params.amplitude == 0.0:
        raise ConfigError("zero-amplitude orbit has no period")
    quad = period_quadrature(cfg.params, cfg.quad_nodes)
    ref = measure_period(cfg.params, min(cfg.rel_tol, 1e-12))
    diff = abs(quad.period - ref.period)
    rows = [
        ("quantity", "value"),
        ("period_quadrature", fmt(quad.period)),
        ("period_reference", fmt(ref.period)),
        ("abs_difference", fmt(diff)),
        ("rel_difference", fmt(diff / quad.period)),
    ]
    _write("".join(f"{k},{v}\n" for k, v in rows), cfg.output_path, stdout)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, amplitudes=None, stdout=sys.stdout, stderr=sys.stderr) -> int:
    """Max-norm errors of u1 and u2 against the reference across amplitudes."""
    amps = _check_amplitudes(cfg.amplitudes if amplitudes is None else amplitudes)
    rel_tol = min(cfg.rel_tol, 1e-12)
    errs = amplitude_errors(cfg.params, amps, cfg.t_end, (1, 2), cfg.n_out, rel_tol)
    floor = resolution_floor(amps, rel_tol)
    lines = ["amplitude,linf_u1,linf_u2"]
    lines += [",".join(fmt(x) for x in (a, *row)) for a, row in zip(amps, errs)]
    footer = []
    for k, label in enumerate(("u1", "u2")):
        try:
            footer.append(f"order_{label}={fmt(fit_order(amps, errs[:, k], floor))}")
        except DegenerateFitError:
            footer.append(f"order_{label}=nan")
    lines.append("# " + ",".join(footer))
    _write("\n".join(lines) + "\n", cfg.output_path, stdout)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--alpha", help="inertia nonlinearity (default 1.2)")
    shared.add_argument("--beta", help="stiffness nonlinearity (default 3.7)")
    shared.add_argument("--omega", help="linear angular frequency, accepts pi/4 (default pi/4)")
    shared.add_argument("--amplitude", help="initial displacement A (default 0.2)")
    shared.add_argument("--t-end", dest="t_end", help="end of the time window")
    shared.add_argument("--n-out", dest="n_out", help="number of output nodes (default 401)")
    shared.add_argument("--methods", help="comma list of reference,u0,u1,u2,u2c,picard:N")
    shared.add_argument("--rel-tol", dest="rel_tol", help="integrator relative tolerance")
    shared.add_argument("--out", help="output file (default stdout)")
    shared.add_argument("--config", help="key = value file; flags override it")

    parser = argparse.ArgumentParser(
        prog="cantilever",
        description="Large-amplitude cantilever beam oscillator: solvers and approximants.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[shared], help="time histories as CSV")
    sub.add_parser("period", parents=[shared], help="period by quadrature and integration")
    sweep = sub.add_parser("sweep", parents=[shared], help="approximation error versus amplitude")
    sweep.add_argument("--amplitudes", help="comma list of amplitudes (default 0.2,0.1,0.05)")
    return parser


COMMANDS = {"simulate": cmd_simulate, "period": cmd_period, "sweep": cmd_sweep}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg, stdout=stdout, stderr=stderr)
    except ConfigError as exc:
        stderr.write(f"error: config: {exc}\n")
        return EXIT_CONFIG
    except NumericalError as exc:
        stderr.write(f"error: numerical: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
