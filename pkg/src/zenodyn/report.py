"""Command-line front end: runs the figure scenarios and writes CSV data.

Scenarios
---------
eta        renormalization factor versus coupling, one block per omega0
zeno-time  RWA and counter-rotating Zeno times versus omega0
rate       effective decay rate gamma(tau) on a tau grid, both modes
spectrum   bath spectrum, modulation factor and modulated spectrum
survival   memory-kernel survival amplitude on a uniform time grid

Every CSV starts with a `#` comment carrying the fully resolved
configuration as a re-runnable command line, then a header row.  Numbers
are written in scientific notation with 12 significant digits, so repeated
runs with the same configuration are byte-identical.

Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import decay, survival
from .errors import (ConfigError, DomainError, InfiniteZenoTime,
                     NonConvergent, NonFinite, StepTooCoarse, UsageError,
                     ZenodynError)
from .numerics import FixedPointSpec, QuadratureSpec
from .renormalization import SystemConfig, solve_renormalization
from .spectral import (BathSpectrum, ModulatedSpectrum, g_of_omega,
                       g_prime, modulation_factor)

__all__ = ["ScenarioConfig", "parse_config", "run_scenario", "main", "cli"]

SCENARIOS = ("eta", "zeno-time", "rate", "spectrum", "survival")

_DEFAULT_ALPHA = 0.02
_DEFAULT_GAMMA = 0.4
_DEFAULT_MODE = "both"
_DEFAULT_ALPHA_GRID = (0.0, 0.1, 101)
_DEFAULT_OMEGA0_VALUES = (0.2, 0.5, 1.0, 1.5)
_DEFAULT_OMEGA0_GRID = (0.1, 2.0, 39)
_DEFAULT_TAU_GRID = ("log", 1e-2, 1e4, 61)
_DEFAULT_OMEGA_GRID = (0.0, 3.0, 301)
_DEFAULT_T_MAX = 50.0

_SCHEMAS = {
    "eta": "alpha,omega0,eta,omega_a,energy_shift,self_energy,ground_energy",
    "zeno-time": "omega0,tau_z_rwa,tau_z_full,eta",
    "rate": "tau,gamma0_tau,gamma_rwa,gamma_full,"
            "gamma_rwa_over_gamma0,gamma_full_over_gamma0",
    "spectrum": "omega,g,f_factor,g_prime",
    "survival": "tau,re_x,im_x,p,gamma_eff",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved run configuration (flags > config file > defaults)."""

    scenario: str
    alpha: float = _DEFAULT_ALPHA
    gamma_width: float = _DEFAULT_GAMMA
    omega0: float | None = None
    omega0_values: tuple[float, ...] | None = None
    omega0_grid: tuple[float, float, int] | None = None
    alpha_grid: tuple[float, float, int] | None = None
    tau_grid: tuple[str, float, float, int] = _DEFAULT_TAU_GRID
    omega_grid: tuple[float, float, int] = _DEFAULT_OMEGA_GRID
    mode: str = _DEFAULT_MODE
    out: str = ""
    t_max: float = _DEFAULT_T_MAX
    grid_step: float | None = None
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    fp_tol: float = 1e-12
    fp_max_iters: int = 200
    reference: str = "gamma0"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.mode not in ("rwa", "full", "both"):
            raise ConfigError(f"mode must be rwa, full or both, got {self.mode!r}")
        if self.reference not in ("gamma0", "gamma_asym"):
            raise ConfigError(
                f"reference must be gamma0 or gamma_asym, got {self.reference!r}")
        if self.alpha < 0:
            raise ConfigError("alpha must be nonnegative")
        if not 0.0 < self.gamma_width < 2.0:
            raise ConfigError("gamma-width must lie in (0, 2) units of Omega")
        if self.omega0 is not None and self.omega0 <= 0:
            raise ConfigError("omega0 must be positive")
        for name, grid in (("omega0-grid", self.omega0_grid),
                           ("alpha-grid", self.alpha_grid),
                           ("omega-grid", self.omega_grid)):
            if grid is not None:
                lo, hi, count = grid
                if not (lo < hi and count >= 2):
                    raise ConfigError(
                        f"--{name} needs min < max and count >= 2")
        kind, lo, hi, count = self.tau_grid
        if kind not in ("lin", "log"):
            raise ConfigError("--tau-grid kind must be lin or log")
        if not (0.0 < lo < hi and count >= 2):
            raise ConfigError("--tau-grid needs 0 < min < max and count >= 2")
        if self.t_max <= 0:
            raise ConfigError("--t-max must be positive")
        if self.grid_step is not None and self.grid_step <= 0:
            raise ConfigError("--grid-step must be positive")
        if self.fp_max_iters < 1:
            raise ConfigError("--fp-max-iters must be at least 1")
        if self.fp_tol <= 0 or self.abs_tol < 0 or self.rel_tol < 0:
            raise ConfigError("tolerances must be positive")


def _parse_triple(text: str, flag: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{flag} expects min:max:count, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"{flag}: {exc}") from None


def _parse_tau_grid(text: str) -> tuple[str, float, float, int]:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(
            f"--tau-grid expects lin|log:min:max:count, got {text!r}")
    try:
        return parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"--tau-grid: {exc}") from None


def _parse_values(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"{flag}: {exc}") from None
    if not values:
        raise ConfigError(f"{flag} needs at least one value")
    return values


# config-file keys alongside their coercers; keys mirror the flag names
# with underscores
_KEY_PARSERS = {
    "alpha": float,
    "gamma_width": float,
    "omega0": float,
    "omega0_grid": lambda v: _parse_triple(v, "omega0_grid"),
    "omega0_values": lambda v: _parse_values(v, "omega0_values"),
    "alpha_grid": lambda v: _parse_triple(v, "alpha_grid"),
    "omega_grid": lambda v: _parse_triple(v, "omega_grid"),
    "tau_grid": _parse_tau_grid,
    "mode": str,
    "out": str,
    "t_max": float,
    "grid_step": float,
    "abs_tol": float,
    "rel_tol": float,
    "fp_tol": float,
    "fp_max_iters": int,
    "reference": str,
}


def _read_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _KEY_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _KEY_PARSERS[key](value.strip())
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, help="coupling strength")
    common.add_argument("--gamma-width", type=float,
                        help="spectral width Gamma in units of Omega")
    common.add_argument("--omega0", type=float,
                        help="bare transition frequency in units of Omega")
    common.add_argument("--omega0-grid", metavar="MIN:MAX:COUNT",
                        help="linear grid of omega0 values")
    common.add_argument("--tau-grid", metavar="lin|log:MIN:MAX:COUNT",
                        help="measurement-interval grid")
    common.add_argument("--mode", choices=["rwa", "full", "both"],
                        help="which coupling treatment to run")
    common.add_argument("--out", help="output CSV path")
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--abs-tol", type=float,
                        help="quadrature absolute tolerance")
    common.add_argument("--rel-tol", type=float,
                        help="quadrature relative tolerance")
    common.add_argument("--fp-tol", type=float,
                        help="fixed-point residual tolerance")
    common.add_argument("--fp-max-iters", type=int,
                        help="fixed-point iteration budget")

    parser = argparse.ArgumentParser(
        prog="zeno",
        description="Decay dynamics of a two-level system in a structured "
                    "bosonic bath, with and without the rotating-wave "
                    "approximation.")
    sub = parser.add_subparsers(dest="scenario", required=True)
    p_eta = sub.add_parser("eta", parents=[common],
                           help="renormalization factor sweep")
    p_eta.add_argument("--alpha-grid", metavar="MIN:MAX:COUNT",
                       help="linear grid of couplings")
    p_eta.add_argument("--omega0-values", metavar="V1,V2,...",
                       help="comma-separated omega0 values")
    sub.add_parser("zeno-time", parents=[common],
                   help="Zeno time versus transition frequency")
    p_rate = sub.add_parser("rate", parents=[common],
                            help="effective decay rate curve")
    p_rate.add_argument("--reference", choices=["gamma0", "gamma_asym"],
                        help="rate the anti-Zeno windows are measured against")
    p_spec = sub.add_parser("spectrum", parents=[common],
                            help="bath spectrum and its modulation")
    p_spec.add_argument("--omega-grid", metavar="MIN:MAX:COUNT",
                        help="frequency grid for the spectrum")
    p_surv = sub.add_parser("survival", parents=[common],
                            help="survival amplitude from the memory kernel")
    p_surv.add_argument("--t-max", type=float, help="evolution horizon")
    p_surv.add_argument("--grid-step", type=float,
                        help="uniform time step (default auto)")
    return parser


def parse_config(argv: list[str]) -> ScenarioConfig:
    """Resolve command-line tokens (plus optional --config file) to a config.

    Flag values override file values, which override built-in defaults.
    Raises UsageError for malformed command lines and missing required
    flags, ConfigError for contradictory or unparseable values.
    """
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        if exc.code == 0:  # --help
            raise
        raise UsageError("") from None

    file_values = _read_config_file(ns.config) if ns.config else {}

    def pick(flag_name: str, default):
        value = getattr(ns, flag_name, None)
        if value is not None:
            return value
        if flag_name in file_values:
            return file_values[flag_name]
        return default

    scenario = ns.scenario
    omega0 = pick("omega0", None)
    omega0_grid = pick("omega0_grid", None)
    omega0_values = pick("omega0_values", None)
    if isinstance(omega0_grid, str):
        omega0_grid = _parse_triple(omega0_grid, "--omega0-grid")
    if isinstance(omega0_values, str):
        omega0_values = _parse_values(omega0_values, "--omega0-values")
    alpha_grid = pick("alpha_grid", None)
    if isinstance(alpha_grid, str):
        alpha_grid = _parse_triple(alpha_grid, "--alpha-grid")
    omega_grid = pick("omega_grid", None)
    if isinstance(omega_grid, str):
        omega_grid = _parse_triple(omega_grid, "--omega-grid")
    tau_grid = pick("tau_grid", None)
    if isinstance(tau_grid, str):
        tau_grid = _parse_tau_grid(tau_grid)

    if scenario in ("rate", "spectrum", "survival") and omega0 is None:
        raise UsageError(f"the {scenario} scenario requires --omega0")
    if scenario == "eta":
        given = [g for g in (omega0, omega0_values, omega0_grid)
                 if g is not None]
        if len(given) > 1:
            raise ConfigError(
                "give only one of --omega0, --omega0-values, --omega0-grid")
        if omega0 is not None:
            omega0_values = (omega0,)
        elif omega0_grid is not None:
            lo, hi, count = omega0_grid
            omega0_values = tuple(np.linspace(lo, hi, count))
        elif omega0_values is None:
            omega0_values = _DEFAULT_OMEGA0_VALUES
        if alpha_grid is None:
            alpha_grid = _DEFAULT_ALPHA_GRID
    if scenario == "zeno-time":
        if omega0 is not None and omega0_grid is None:
            omega0_values = (omega0,)
        elif omega0_grid is None:
            omega0_grid = _DEFAULT_OMEGA0_GRID

    return ScenarioConfig(
        scenario=scenario,
        alpha=pick("alpha", _DEFAULT_ALPHA),
        gamma_width=pick("gamma_width", _DEFAULT_GAMMA),
        omega0=omega0,
        omega0_values=omega0_values,
        omega0_grid=omega0_grid,
        alpha_grid=alpha_grid,
        tau_grid=tau_grid if tau_grid is not None else _DEFAULT_TAU_GRID,
        omega_grid=omega_grid if omega_grid is not None else _DEFAULT_OMEGA_GRID,
        mode=pick("mode", _DEFAULT_MODE),
        out=pick("out", "") or f"{scenario}.csv",
        t_max=pick("t_max", _DEFAULT_T_MAX),
        grid_step=pick("grid_step", None),
        abs_tol=pick("abs_tol", 1e-10),
        rel_tol=pick("rel_tol", 1e-9),
        fp_tol=pick("fp_tol", 1e-12),
        fp_max_iters=pick("fp_max_iters", 200),
        reference=pick("reference", "gamma0"),
    )


def _fmt(value: float) -> str:
    return format(float(value), ".11e")


def _config_comment(cfg: ScenarioConfig) -> str:
    parts = [f"zeno {cfg.scenario}",
             f"--alpha {cfg.alpha!r}",
             f"--gamma-width {cfg.gamma_width!r}"]
    if cfg.scenario == "eta":
        lo, hi, count = cfg.alpha_grid
        parts.append(f"--alpha-grid {lo!r}:{hi!r}:{count}")
        parts.append("--omega0-values "
                     + ",".join(repr(v) for v in cfg.omega0_values))
    elif cfg.scenario == "zeno-time":
        if cfg.omega0_grid is not None:
            lo, hi, count = cfg.omega0_grid
            parts.append(f"--omega0-grid {lo!r}:{hi!r}:{count}")
        else:
            parts.append(f"--omega0 {cfg.omega0_values[0]!r}")
    else:
        parts.append(f"--omega0 {cfg.omega0!r}")
    if cfg.scenario == "rate":
        kind, lo, hi, count = cfg.tau_grid
        parts.append(f"--tau-grid {kind}:{lo!r}:{hi!r}:{count}")
        parts.append(f"--mode {cfg.mode}")
        parts.append(f"--reference {cfg.reference}")
    if cfg.scenario == "spectrum":
        lo, hi, count = cfg.omega_grid
        parts.append(f"--omega-grid {lo!r}:{hi!r}:{count}")
    if cfg.scenario == "survival":
        parts.append(f"--mode {cfg.mode}")
        parts.append(f"--t-max {cfg.t_max!r}")
        if cfg.grid_step is not None:
            parts.append(f"--grid-step {cfg.grid_step!r}")
    parts.append(f"--abs-tol {cfg.abs_tol!r}")
    parts.append(f"--rel-tol {cfg.rel_tol!r}")
    parts.append(f"--fp-tol {cfg.fp_tol!r}")
    parts.append(f"--fp-max-iters {cfg.fp_max_iters}")
    parts.append(f"--out {cfg.out}")
    return "# " + " ".join(parts)


def _write_csv(path: str, comment: str, header: str, rows: list[str]) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    payload = "\n".join([comment, header, *rows]) + "\n"
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _quad_spec(cfg: ScenarioConfig) -> QuadratureSpec:
    return QuadratureSpec(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                          tail_tol=cfg.abs_tol)


def _fp_spec(cfg: ScenarioConfig) -> FixedPointSpec:
    return FixedPointSpec(tol=cfg.fp_tol, max_iters=cfg.fp_max_iters)


def _tau_values(cfg: ScenarioConfig) -> np.ndarray:
    kind, lo, hi, count = cfg.tau_grid
    if kind == "log":
        return np.logspace(math.log10(lo), math.log10(hi), count)
    return np.linspace(lo, hi, count)


def _system(cfg: ScenarioConfig, omega0: float, alpha: float | None = None):
    spectrum = BathSpectrum(alpha=cfg.alpha if alpha is None else alpha,
                            gamma_width=cfg.gamma_width)
    return SystemConfig(omega0=omega0, spectrum=spectrum)


def _run_eta(cfg: ScenarioConfig) -> None:
    quad, fp = _quad_spec(cfg), _fp_spec(cfg)
    lo, hi, count = cfg.alpha_grid
    alphas = np.linspace(lo, hi, count)
    rows = []
    etas = []
    for omega0 in cfg.omega0_values:
        for alpha in alphas:
            rsys = solve_renormalization(_system(cfg, omega0, alpha), quad, fp)
            etas.append(rsys.eta)
            rows.append(",".join([
                _fmt(alpha), _fmt(omega0), _fmt(rsys.eta), _fmt(rsys.omega_a),
                _fmt(rsys.energy_shift), _fmt(rsys.self_energy),
                _fmt(rsys.ground_energy)]))
    _write_csv(cfg.out, _config_comment(cfg), _SCHEMAS["eta"], rows)
    print(f"eta: wrote {len(rows)} rows to {cfg.out}; "
          f"eta in [{min(etas):.6f}, {max(etas):.6f}] over "
          f"alpha in [{alphas[0]:g}, {alphas[-1]:g}], "
          f"omega0 in {{{','.join(f'{v:g}' for v in cfg.omega0_values)}}}")


def _run_zeno_time(cfg: ScenarioConfig) -> None:
    quad, fp = _quad_spec(cfg), _fp_spec(cfg)
    if cfg.omega0_values is not None:
        omega0s = np.asarray(cfg.omega0_values, dtype=float)
    else:
        lo, hi, count = cfg.omega0_grid
        omega0s = np.linspace(lo, hi, count)
    tz_rwa = decay.zeno_time(_system(cfg, float(omega0s[0])), None, quad)
    rows = []
    tz_full = []
    for omega0 in omega0s:
        sysc = _system(cfg, float(omega0))
        rsys = solve_renormalization(sysc, quad, fp)
        tz = decay.zeno_time(sysc, rsys, quad)
        tz_full.append(tz)
        rows.append(",".join([_fmt(omega0), _fmt(tz_rwa), _fmt(tz),
                              _fmt(rsys.eta)]))
    _write_csv(cfg.out, _config_comment(cfg), _SCHEMAS["zeno-time"], rows)
    diff = np.asarray(tz_full) - tz_rwa
    crossing = ""
    sign_flip = np.nonzero(diff[:-1] * diff[1:] < 0)[0]
    if sign_flip.size:
        i = int(sign_flip[0])
        crossing = (f"; tau_z_full crosses tau_z_rwa between "
                    f"omega0={omega0s[i]:g} and {omega0s[i + 1]:g}")
    print(f"zeno-time: wrote {len(rows)} rows to {cfg.out}; "
          f"tau_z_rwa={tz_rwa:.6g}{crossing}")


def _windows_in_gamma0_tau(result, gamma0):
    return ", ".join(f"[{lo * gamma0:.4g}, {hi * gamma0:.4g}]"
                     for lo, hi in result.windows) or "none"


def _run_rate(cfg: ScenarioConfig) -> None:
    quad, fp = _quad_spec(cfg), _fp_spec(cfg)
    sysc = _system(cfg, cfg.omega0)
    taus = _tau_values(cfg)
    gamma0 = decay.wigner_weisskopf_rate(sysc)
    curves: dict[str, decay.RateCurve] = {}
    summary = [f"rate: omega0={cfg.omega0:g} gamma0={gamma0:.6e}"]
    rsys = None
    if cfg.mode in ("full", "both"):
        rsys = solve_renormalization(sysc, quad, fp)
        summary.append(f"eta={rsys.eta:.6f}")
    if cfg.mode in ("rwa", "both"):
        curves["rwa"] = decay.rate_curve(sysc, None, taus, quad)
        summary.append(f"tau_z_rwa={decay.zeno_time(sysc, None, quad):.6g}")
    if rsys is not None:
        curves["full"] = decay.rate_curve(sysc, rsys, taus, quad)
        summary.append(f"tau_z_full={decay.zeno_time(sysc, rsys, quad):.6g}")

    nan = float("nan")
    rows = []
    for i, tau in enumerate(taus):
        g_rwa = curves["rwa"].gammas[i] if "rwa" in curves else nan
        g_full = curves["full"].gammas[i] if "full" in curves else nan
        rows.append(",".join([
            _fmt(tau), _fmt(gamma0 * tau), _fmt(g_rwa), _fmt(g_full),
            _fmt(g_rwa / gamma0), _fmt(g_full / gamma0)]))
    _write_csv(cfg.out, _config_comment(cfg), _SCHEMAS["rate"], rows)

    for mode, curve in curves.items():
        rsys_for = rsys if mode == "full" else None
        rate_fn = lambda t, r=rsys_for: decay.effective_rate(t, sysc, r, quad)
        windows = decay.classify_zeno(curve, cfg.reference, rate_fn)
        summary.append(
            f"AQZE[{mode}, ref={cfg.reference}] gamma0*tau: "
            f"{_windows_in_gamma0_tau(windows, gamma0)}")
    print(f"wrote {len(rows)} rows to {cfg.out}; " + " ".join(summary))


def _run_spectrum(cfg: ScenarioConfig) -> None:
    quad, fp = _quad_spec(cfg), _fp_spec(cfg)
    sysc = _system(cfg, cfg.omega0)
    rsys = solve_renormalization(sysc, quad, fp)
    mod = ModulatedSpectrum(sysc.spectrum, rsys.omega_a)
    lo, hi, count = cfg.omega_grid
    omegas = np.linspace(lo, hi, count)
    rows = []
    for w in omegas:
        g = float(g_of_omega(w, sysc.spectrum))
        f = float(modulation_factor(w, rsys.omega_a))
        rows.append(",".join([_fmt(w), _fmt(g), _fmt(f), _fmt(g * f)]))
    _write_csv(cfg.out, _config_comment(cfg), _SCHEMAS["spectrum"], rows)
    print(f"spectrum: wrote {len(rows)} rows to {cfg.out}; "
          f"eta={rsys.eta:.6f} omega_a={rsys.omega_a:.6f} "
          f"gamma0={decay.wigner_weisskopf_rate(sysc):.6e} "
          f"asym_full={2 * math.pi * float(g_prime(rsys.omega_a, mod)):.6e}")


def _mode_out_path(out: str, mode: str) -> str:
    root, ext = os.path.splitext(out)
    return f"{root}_{mode}{ext or '.csv'}"


def _run_survival(cfg: ScenarioConfig) -> None:
    quad, fp = _quad_spec(cfg), _fp_spec(cfg)
    sysc = _system(cfg, cfg.omega0)
    modes = ("rwa", "full") if cfg.mode == "both" else (cfg.mode,)
    for mode in modes:
        rsys = solve_renormalization(sysc, quad, fp) if mode == "full" else None
        curve = survival.survival_curve(sysc, rsys, cfg.t_max, quad,
                                        grid_step=cfg.grid_step)
        out = _mode_out_path(cfg.out, mode) if cfg.mode == "both" else cfg.out
        file_cfg = replace(cfg, mode=mode, out=out)
        rows = []
        for tau, x, p in zip(curve.taus, curve.amplitudes,
                             curve.probabilities):
            gamma_eff = -math.log(p) / tau if tau > 0 else float("nan")
            rows.append(",".join([_fmt(tau), _fmt(x.real), _fmt(x.imag),
                                  _fmt(p), _fmt(gamma_eff)]))
        _write_csv(out, _config_comment(file_cfg), _SCHEMAS["survival"], rows)
        print(f"survival[{mode}]: wrote {len(rows)} rows to {out}; "
              f"P({curve.taus[-1]:g}) = {curve.probabilities[-1]:.6e}")


_RUNNERS = {
    "eta": _run_eta,
    "zeno-time": _run_zeno_time,
    "rate": _run_rate,
    "spectrum": _run_spectrum,
    "survival": _run_survival,
}


def run_scenario(cfg: ScenarioConfig) -> int:
    """Execute a resolved scenario; returns 0 and writes its CSV file(s)."""
    _RUNNERS[cfg.scenario](cfg)
    return 0


def main(argv: list[str] | None = None) -> int:
    """CLI entry point returning the process exit code."""
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_config(argv)
        return run_scenario(cfg)
    except (UsageError, ConfigError, DomainError) as exc:
        if str(exc):
            print(f"zeno: {exc}", file=sys.stderr)
        return 2
    except (NonConvergent, NonFinite, StepTooCoarse, InfiniteZenoTime) as exc:
        print(f"zeno: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"zeno: i/o failure: {exc}", file=sys.stderr)
        return 4
    except ZenodynError as exc:  # any other package error counts as numerical
        print(f"zeno: {exc}", file=sys.stderr)
        return 3


def cli() -> None:
    sys.exit(main())
