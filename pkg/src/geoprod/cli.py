"""Command-line surface for the extension engine.

One subcommand per engine operation, emitting a human-readable table or
machine-readable CSV.  Values are printed with ``repr`` (shortest
round-tripping form, at most 17 significant digits), so identical
configurations produce byte-identical output.

Exit codes: 0 success, 1 engine error, 2 config error.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, GeoprodError, ZeroFunctionValueError
from .extension import (
    elastic_invariance_check,
    extend,
    factor_cutoff_limit,
    identity_residual,
    isolate_factor,
    product_derivative,
    truncation_error_factors,
)
from .functions import AnalyticFunctionModel, builtin, parse_complex
from .primes import GpoBounds, mu_star_partial_sums, mu_star_terms_up_to
from .sampling import RatioSchedule, TruncationSpec

__all__ = ["main"]

CSV_HEADER = "z_re,z_im,ext_re,ext_im,ref_re,ref_im,rel_err"


def _fmt(x) -> str:
    return repr(float(x))


@dataclass
class RunConfig:
    """Parsed CLI options for one command invocation."""

    fn: str | None = None
    smax: tuple[int, ...] | None = None
    n: int | None = None
    r: list[complex] = field(default_factory=list)
    rk: tuple[complex, ...] | None = None
    prime_s: complex | None = None
    entire: bool = False
    grid: tuple[complex, complex, int] | None = None
    z: complex | None = None
    dz: complex | None = None
    s: complex | None = None
    max_prime_index: int | None = None
    exp_budget: int | None = None
    nmax: int | None = None
    k: int | None = None
    j: int | None = None
    c: complex | None = None
    cutoff: bool = False
    format: str = "table"
    out: str | None = None

    def model(self) -> AnalyticFunctionModel:
        if not self.fn:
            raise ConfigError("missing function: pass --fn")
        try:
            return builtin(self.fn)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def ratio_schedule(self) -> RatioSchedule:
        chosen = [x for x in (self.r or None, self.rk, self.prime_s) if x is not None]
        if len(chosen) > 1:
            raise ConfigError("pass only one of --r, --rk, --prime-s")
        if self.rk is not None:
            return RatioSchedule.per_k(self.rk, entire_function_mode=self.entire)
        if self.prime_s is not None:
            return RatioSchedule.prime_power(self.prime_s, entire_function_mode=self.entire)
        if self.r:
            if len(self.r) != 1:
                raise ConfigError("repeat --r only with the invariance command")
            return RatioSchedule.common(self.r[0], entire_function_mode=self.entire)
        raise ConfigError("missing ratio: pass --r, --rk or --prime-s")

    def truncation(self) -> TruncationSpec:
        if self.smax is None:
            raise ConfigError("missing --smax")
        if self.n is None:
            raise ConfigError("missing --n")
        try:
            return TruncationSpec(self.smax, self.n, self.ratio_schedule())
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def grid_points(self) -> list[complex]:
        if self.grid is None:
            raise ConfigError("missing --grid")
        start, stop, count = self.grid
        if count == 1:
            return [start]
        return [start + (stop - start) * i / (count - 1) for i in range(count)]


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"invalid {what}: {text!r}") from None


def _parse_cx(text: str, what: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError:
        raise ConfigError(f"invalid {what}: {text!r}") from None


def _parse_smax(text: str) -> tuple[int, ...]:
    return tuple(_parse_int(part, "--smax entry") for part in str(text).split(","))


def _parse_grid(text: str) -> tuple[complex, complex, int]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must look like start:stop:count, got {text!r}")
    start = _parse_cx(parts[0], "grid start")
    stop = _parse_cx(parts[1], "grid stop")
    count = _parse_int(parts[2], "grid count")
    if count < 1:
        raise ConfigError("grid count must be at least 1")
    return start, stop, count


def read_config_file(path: str) -> dict[str, str]:
    """Plain key=value lines; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


_FLAG_KEYS = {
    "fn": str,
    "smax": str,
    "n": int,
    "r": str,
    "rk": str,
    "prime-s": str,
    "entire": bool,
    "grid": str,
    "z": str,
    "dz": str,
    "s": str,
    "max-prime-index": int,
    "exp-budget": int,
    "nmax": int,
    "k": int,
    "j": int,
    "c": str,
    "cutoff": bool,
    "format": str,
    "out": str,
}


def _config_to_args(values: dict[str, str]) -> list[str]:
    args: list[str] = []
    for key, value in values.items():
        if key not in _FLAG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if _FLAG_KEYS[key] is bool:
            if value.lower() in ("1", "true", "yes", "on"):
                args.append(f"--{key}")
            elif value.lower() not in ("0", "false", "no", "off"):
                raise ConfigError(f"config key {key!r} expects a boolean, got {value!r}")
        else:
            args.extend([f"--{key}", value])
    return args


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoprod",
        description="Extend analytic functions by multiplying and dividing "
        "sampled values on geometric sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, needs_truncation=False, needs_grid=False):
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--fn", help="exp | half-sine | bump | poly-exp:c1,c2,...")
        p.add_argument("--format", choices=["table", "csv"], default=None)
        p.add_argument("--out", help="output path (default: stdout)")
        if needs_truncation:
            p.add_argument("--smax", help="allowed integers, e.g. 1,2,3,4")
            p.add_argument("--n", type=int, help="depth budget per subset")
            p.add_argument("--r", action="append", help="common ratio (complex a+bi)")
            p.add_argument("--rk", help="per-k ratio list, e.g. 2,2.5,3")
            p.add_argument("--prime-s", dest="prime_s", help="prime-power exponent s")
            p.add_argument("--entire", action="store_true", default=None,
                           help="skip the Re(r_k**k) >= 1/2 check (entire functions)")
        if needs_grid:
            p.add_argument("--grid", help="start:stop:count, complex endpoints allowed")

    p = sub.add_parser("extend", help="evaluate the truncated extension on a grid")
    add_common(p, needs_truncation=True, needs_grid=True)

    p = sub.add_parser("identity", help="extension/f(z) - 1 at one point")
    add_common(p, needs_truncation=True)
    p.add_argument("--z", help="evaluation point")

    p = sub.add_parser("errors", help="truncation error factor decomposition")
    add_common(p, needs_truncation=True)
    p.add_argument("--z", help="evaluation point")

    p = sub.add_parser("invariance", help="deviation across ratio schedules")
    add_common(p, needs_truncation=True)
    p.add_argument("--z", help="evaluation point")

    p = sub.add_parser("factor", help="isolate one factor, or classify a cutoff limit")
    add_common(p)
    p.add_argument("--k", type=int, help="factor order to isolate / sequence order")
    p.add_argument("--z", help="evaluation point")
    p.add_argument("--cutoff", action="store_true", default=None,
                   help="classify lim P(f_j, {k}) instead of isolating f_k")
    p.add_argument("--j", type=int, help="component order (cutoff mode)")
    p.add_argument("--c", help="component coefficient c_j (cutoff mode)")

    p = sub.add_parser("derive", help="derivative from a product of function values")
    add_common(p)
    p.add_argument("--z", help="evaluation point")
    p.add_argument("--dz", help="step (need not be small)")

    p = sub.add_parser("mustar", help="generalized Moebius terms for n <= nmax")
    add_common(p)
    p.add_argument("--s", help="exponent s")
    p.add_argument("--nmax", type=int, help="largest n to include")

    p = sub.add_parser("primesum", help="mu*(n, s) running sums in greatest-prime order")
    add_common(p)
    p.add_argument("--s", help="exponent s")
    p.add_argument("--max-prime-index", dest="max_prime_index", type=int)
    p.add_argument("--exp-budget", dest="exp_budget", type=int)

    # Values like -1:1:201 or -0.5 must parse as values, not flags.
    value_like = re.compile(r"^-\d|^-\.\d")
    parser._negative_number_matcher = value_like
    for child in sub.choices.values():
        child._negative_number_matcher = value_like

    return parser


def _namespace_to_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    cfg.fn = getattr(ns, "fn", None)
    if getattr(ns, "smax", None) is not None:
        cfg.smax = _parse_smax(ns.smax)
    cfg.n = getattr(ns, "n", None)
    if getattr(ns, "r", None):
        cfg.r = [_parse_cx(x, "--r") for x in ns.r]
    if getattr(ns, "rk", None) is not None:
        cfg.rk = tuple(_parse_cx(x, "--rk entry") for x in str(ns.rk).split(","))
    if getattr(ns, "prime_s", None) is not None:
        cfg.prime_s = _parse_cx(ns.prime_s, "--prime-s")
    cfg.entire = bool(getattr(ns, "entire", None))
    if getattr(ns, "grid", None) is not None:
        cfg.grid = _parse_grid(ns.grid)
    for name in ("z", "dz", "s", "c"):
        raw = getattr(ns, name, None)
        if raw is not None:
            setattr(cfg, name, _parse_cx(raw, f"--{name}"))
    for name in ("max_prime_index", "exp_budget", "nmax", "k", "j"):
        value = getattr(ns, name, None)
        if value is not None:
            setattr(cfg, name, int(value))
    cfg.cutoff = bool(getattr(ns, "cutoff", None))
    if getattr(ns, "format", None):
        cfg.format = ns.format
    cfg.out = getattr(ns, "out", None)
    return cfg


class _Output:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: list[str] = []

    def csv(self, header: str, rows) -> None:
        if self.cfg.format == "csv":
            self.lines.append(header)
            self.lines.extend(",".join(row) for row in rows)
        else:
            cells = [header.split(",")] + [list(r) for r in rows]
            widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
            for row in cells:
                self.lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())

    def note(self, text: str) -> None:
        if self.cfg.format != "csv":
            self.lines.append(text)

    def flush(self) -> None:
        text = "\n".join(self.lines) + "\n"
        if self.cfg.out:
            Path(self.cfg.out).write_text(text)
        else:
            sys.stdout.write(text)


def _require(cfg: RunConfig, *names) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise ConfigError(f"missing --{name.replace('_', '-')}")


def _extension_row(z: complex, value: complex, reference: complex | None) -> list[str]:
    if reference is None:
        return [_fmt(z.real), _fmt(z.imag), _fmt(value.real), _fmt(value.imag), "", "", ""]
    rel = abs(value - reference) / abs(reference)
    return [
        _fmt(z.real),
        _fmt(z.imag),
        _fmt(value.real),
        _fmt(value.imag),
        _fmt(reference.real),
        _fmt(reference.imag),
        _fmt(rel),
    ]


def cmd_extend(cfg: RunConfig) -> None:
    model = cfg.model()
    spec = cfg.truncation()
    out = _Output(cfg)
    rows = []
    for z in cfg.grid_points():
        result = extend(model, z, spec)
        rows.append(_extension_row(z, result.value, result.reference))
    out.csv(CSV_HEADER, rows)
    out.flush()


def cmd_identity(cfg: RunConfig) -> None:
    model = cfg.model()
    spec = cfg.truncation()
    _require(cfg, "z")
    residual = identity_residual(model, cfg.z, spec)
    out = _Output(cfg)
    out.csv(
        "z_re,z_im,residual_re,residual_im,abs_residual",
        [[_fmt(cfg.z.real), _fmt(cfg.z.imag), _fmt(residual.real), _fmt(residual.imag),
          _fmt(abs(residual))]],
    )
    out.flush()


def cmd_errors(cfg: RunConfig) -> None:
    model = cfg.model()
    spec = cfg.truncation()
    _require(cfg, "z")
    factors = truncation_error_factors(model, cfg.z, spec)
    out = _Output(cfg)
    tail_k = "" if factors.tail_k_factor is None else _fmt(abs(factors.tail_k_factor))
    residual = "" if factors.residual is None else _fmt(factors.residual)
    out.csv(
        "q_n_re,q_n_im,tail_n_re,tail_n_im,tail_k_abs,ref_re,ref_im,residual",
        [[_fmt(factors.q_n.real), _fmt(factors.q_n.imag),
          _fmt(factors.tail_n_factor.real), _fmt(factors.tail_n_factor.imag),
          tail_k, _fmt(factors.reference.real), _fmt(factors.reference.imag), residual]],
    )
    if factors.tail_k_factor is None:
        out.note("tail_k_factor: unavailable (black-box function)")
    out.flush()


def cmd_invariance(cfg: RunConfig) -> None:
    model = cfg.model()
    _require(cfg, "z", "smax", "n")
    if len(cfg.r) < 1 and cfg.rk is None and cfg.prime_s is None:
        raise ConfigError("pass at least one ratio schedule (--r may repeat)")
    schedules = [RatioSchedule.common(r, entire_function_mode=cfg.entire) for r in cfg.r]
    if cfg.rk is not None:
        schedules.append(RatioSchedule.per_k(cfg.rk, entire_function_mode=cfg.entire))
    if cfg.prime_s is not None:
        schedules.append(RatioSchedule.prime_power(cfg.prime_s, entire_function_mode=cfg.entire))
    specs = [TruncationSpec(cfg.smax, cfg.n, sched) for sched in schedules]
    deviation = elastic_invariance_check(model, cfg.z, specs)
    out = _Output(cfg)
    rows = []
    for spec in specs:
        value = extend(model, cfg.z, spec).value
        rows.append([spec.ratios.kind, _fmt(value.real), _fmt(value.imag)])
    out.csv("schedule,ext_re,ext_im", rows)
    out.note(f"max pairwise relative deviation: {_fmt(deviation)}")
    if cfg.format == "csv":
        out.lines.append(f"deviation,{_fmt(deviation)},")
    out.flush()


def cmd_factor(cfg: RunConfig) -> None:
    _require(cfg, "k", "z")
    out = _Output(cfg)
    if cfg.cutoff:
        _require(cfg, "j", "c")
        result = factor_cutoff_limit(cfg.c, cfg.j, cfg.k, cfg.z)
        value = ["", ""] if result.value is None else [_fmt(result.value.real), _fmt(result.value.imag)]
        estimate = "" if result.error_estimate is None else _fmt(result.error_estimate)
        out.csv(
            "kind,value_re,value_im,error_estimate,last_log_magnitude",
            [[result.kind, *value, estimate, _fmt(result.last_log_magnitude)]],
        )
    else:
        model = cfg.model()
        result = isolate_factor(model, cfg.k, cfg.z)
        out.csv(
            "value_re,value_im,error_estimate,converged",
            [[_fmt(result.value.real), _fmt(result.value.imag),
              _fmt(result.error_estimate), str(result.converged).lower()]],
        )
    out.flush()


def cmd_derive(cfg: RunConfig) -> None:
    model = cfg.model()
    _require(cfg, "z", "dz")
    value = product_derivative(model, cfg.z, cfg.dz)
    out = _Output(cfg)
    out.csv(
        "z_re,z_im,deriv_re,deriv_im",
        [[_fmt(cfg.z.real), _fmt(cfg.z.imag), _fmt(value.real), _fmt(value.imag)]],
    )
    out.flush()


def cmd_mustar(cfg: RunConfig) -> None:
    _require(cfg, "s", "nmax")
    out = _Output(cfg)
    rows = []
    running = 0j
    for term in mu_star_terms_up_to(cfg.s, cfg.nmax):
        running += term.value
        rows.append([str(term.n), _fmt(term.value.real), _fmt(term.value.imag),
                     _fmt(running.real), _fmt(running.imag)])
    out.csv("n,mu_re,mu_im,sum_re,sum_im", rows)
    out.flush()


def cmd_primesum(cfg: RunConfig) -> None:
    _require(cfg, "s", "max_prime_index", "exp_budget")
    try:
        bounds = GpoBounds(cfg.max_prime_index, cfg.exp_budget)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out = _Output(cfg)
    rows = []
    final = 0j
    for n, running in mu_star_partial_sums(cfg.s, bounds):
        rows.append([str(n), _fmt(running.real), _fmt(running.imag)])
        final = running
    out.csv("n,sum_re,sum_im", rows)
    out.note(f"final |sum| = {_fmt(abs(final))}")
    out.flush()


_COMMANDS = {
    "extend": cmd_extend,
    "identity": cmd_identity,
    "errors": cmd_errors,
    "invariance": cmd_invariance,
    "factor": cmd_factor,
    "derive": cmd_derive,
    "mustar": cmd_mustar,
    "primesum": cmd_primesum,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        # Pre-scan for --config so file values become leading (overridable) args.
        if "--config" in argv:
            at = argv.index("--config")
            if at + 1 >= len(argv):
                raise ConfigError("--config needs a path")
            file_args = _config_to_args(read_config_file(argv[at + 1]))
            command, rest = argv[0:1], argv[1:]
            argv = command + file_args + rest
        ns = parser.parse_args(argv)
        cfg = _namespace_to_config(ns)
        _COMMANDS[ns.command](cfg)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ZeroFunctionValueError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 1
    except GeoprodError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
