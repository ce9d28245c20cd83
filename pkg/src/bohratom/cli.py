"""Deterministic command-line front end.

Subcommands
-----------
orbit       closed-form orbit quantities for a list of n
table       the mode-number table (m+, m- rows over n columns)
orbit-wave  polylines of the standing wave painted around the orbit
field-map   |u|^2 grid on the equatorial or meridian plane
integrate   trajectory integration plus drift/residual summary
check       one-shot identity suite; nonzero exit on failure

Configuration precedence: command-line flags beat BOHRATOM_* environment
variables, which beat the TOML config file, which beats built-in
defaults.  All outputs are CSV with a '#'-prefixed metadata preamble;
without --timestamp the bytes depend only on the configuration.

Exit codes: 0 success, 2 configuration error, 3 numerical or domain
error, 4 check-suite failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__, dynamics, quantization, wavefield
from .errors import BohratomError, ConfigError, DomainError, UsageError
from .quantization import OMEGA_MINUS_BOUND, PhysicalParams

SCHEMA = "bohratom/1"

_UNITS = (
    "natural units c=hbar=1; lengths in 1/m_eff unless stated; "
    "map distances in a0 = 1/(m_eff*alpha)"
)

_PRESETS = {
    # figure parameter sets: b=1, alpha=beta=1/3, omega0=0, l=m
    "fig1": {"alpha": "1/3", "b": "1", "xi_charge": 1.0, "omega0": 0.0, "n": "1,2,3"},
    "fig2": {"alpha": "1/3", "b": "1", "xi_charge": 1.0, "omega0": 0.0, "n": "1",
             "plane": "equatorial", "extent": 2.2, "grid_n": 256},
    "fig3": {"alpha": "1/3", "b": "1", "xi_charge": 1.0, "omega0": 0.0, "n": "2",
             "plane": "equatorial", "extent": 6.0, "grid_n": 256},
    "fig4": {"alpha": "1/3", "b": "1", "xi_charge": 1.0, "omega0": 0.0, "n": "3",
             "plane": "equatorial", "extent": 12.5, "grid_n": 256},
    "fig5": {"alpha": "1/3", "b": "1", "xi_charge": 1.0, "omega0": 0.0, "n": "1",
             "plane": "meridian", "extent": 2.2, "grid_n": 256},
    "table2": {"alpha": "1/137", "b": "1", "n": "1/2,1,3/2,2,5/2,10"},
}


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % float(x)
    return str(x)


def _parse_real(text: str):
    """Parse a real; '1/137' stays an exact Fraction, '0.25' a float."""
    text = str(text).strip()
    try:
        if "/" in text:
            return Fraction(text)
        if text.lstrip("+-").isdigit():
            return Fraction(int(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse real value {text!r}") from exc


def _parse_n_list(text: str):
    items = [s for s in str(text).split(",") if s.strip()]
    if not items:
        raise UsageError("empty n list")
    return [_parse_real(s) for s in items]


class Envelope:
    """CSV payload with a deterministic metadata preamble."""

    def __init__(self, command: str, inputs: dict, timestamp: bool):
        self.meta = [("schema", SCHEMA), ("command", command),
                     ("provenance", f"bohratom {__version__}")]
        if timestamp:
            self.meta.append(
                ("timestamp", datetime.now(timezone.utc).isoformat()))
        self.meta.append(("units", _UNITS))
        for key in sorted(inputs):
            self.meta.append((f"input.{key}", _fmt(inputs[key])))
        self.notes: list[tuple[str, str]] = []
        self.header: list[str] = []
        self.rows: list[list] = []

    def note(self, key: str, value):
        self.notes.append((key, _fmt(value)))

    def write(self, stream):
        for key, value in self.meta + self.notes:
            stream.write(f"# {key} = {value}\n")
        if self.header:
            stream.write(",".join(self.header) + "\n")
        for row in self.rows:
            stream.write(",".join(_fmt(v) for v in row) + "\n")


def _load_config_layers(args, command_keys):
    """Merge config file, environment and flags; flags win."""
    merged = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"config file {args.config}: {exc}") from exc
        for key, value in data.items():
            if not isinstance(key, str):
                raise ConfigError(f"config file: bad key {key!r}")
            merged[key] = value
    if args.preset:
        if args.preset not in _PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; "
                              f"choose from {sorted(_PRESETS)}")
        merged.update(_PRESETS[args.preset])
    for key in command_keys:
        env = os.environ.get("BOHRATOM_" + key.upper())
        if env is not None:
            merged[key] = env
    for key in command_keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _params_from(merged: dict) -> PhysicalParams:
    if "alpha_inv" in merged and "alpha" not in merged:
        inv = _parse_real(merged["alpha_inv"])
        merged["alpha"] = (Fraction(1) / inv if isinstance(inv, Fraction)
                           else 1.0 / inv)
    alpha = merged.get("alpha")
    if alpha is None:
        raise ConfigError("alpha is required (flag --alpha/--alpha-inv, "
                          "config key 'alpha', or BOHRATOM_ALPHA)")
    if isinstance(alpha, str):
        alpha = _parse_real(alpha)
    b = merged.get("b", 1)
    if isinstance(b, str):
        b = _parse_real(b)
    try:
        return PhysicalParams(
            alpha=alpha, b=b,
            xi_charge=float(merged.get("xi_charge", 1.0)),
            omega0=float(merged.get("omega0", 0.0)),
            m_eff=float(merged.get("m_eff", 1.0)),
        )
    except BohratomError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid physical parameters: {exc}") from exc


def _echo_params(params: PhysicalParams) -> dict:
    return {"alpha": params.alpha, "b": params.b, "xi_charge": params.xi_charge,
            "omega0": params.omega0, "m_eff": params.m_eff}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

_ORBIT_COLS = ["n", "N", "m_plus", "m_minus", "selection_ok", "selection_residual",
               "v", "r", "P", "E", "omega_plus", "omega_minus", "k_plus", "k_minus",
               "epsilon", "Omega_p", "z0_mod2"]


def cmd_orbit(merged, timestamp):
    params = _params_from(merged)
    if float(params.alpha) >= OMEGA_MINUS_BOUND:
        raise ConfigError(
            f"alpha = {params.alpha} exceeds the omega-minus positivity bound "
            f"(sqrt(5)-1)/2 = {OMEGA_MINUS_BOUND:.6f}"
        )
    n_list = _parse_n_list(merged.get("n", "1"))
    env = Envelope("orbit", {**_echo_params(params), "n": merged.get("n", "1")},
                   timestamp)
    env.header = _ORBIT_COLS
    for n in n_list:
        try:
            sol = quantization.solve_orbit(params, n)
        except BohratomError as exc:
            raise DomainError(f"n = {n}: {exc}") from exc
        env.rows.append([
            sol.n, sol.N, sol.m_plus, sol.m_minus, sol.selection_ok,
            sol.selection_residual, sol.v, sol.r, sol.P, sol.E,
            sol.omega_plus, sol.omega_minus, sol.k_plus, sol.k_minus,
            sol.epsilon, sol.Omega_p,
            sol.z0_mod2 if sol.z0_mod2 is not None else "",
        ])
    return env, 0


def cmd_table(merged, timestamp):
    params = _params_from(merged)
    n_list = _parse_n_list(merged.get("n", "1/2,1,3/2,2,5/2,10"))
    env = Envelope("table", {**_echo_params(params), "n": merged.get("n", "default")},
                   timestamp)
    m_plus_row, m_minus_row = [], []
    for n in n_list:
        mp_, mm_ = quantization.mode_numbers(params, n)
        m_plus_row.append(mp_)
        m_minus_row.append(mm_)
    env.header = ["quantity"] + [f"n={_fmt(n)}" for n in n_list]
    env.rows.append(["m_plus"] + m_plus_row)
    env.rows.append(["m_minus"] + m_minus_row)
    return env, 0


def cmd_orbit_wave(merged, timestamp):
    params = _params_from(merged)
    n_list = _parse_n_list(merged.get("n", "1"))
    samples = int(merged.get("samples", 2048))
    u0 = float(merged.get("u0", 1.0))
    env = Envelope("orbit-wave",
                   {**_echo_params(params), "n": merged.get("n", "1"),
                    "samples": samples, "u0": u0}, timestamp)
    env.header = ["n", "phi", "x_total", "y_total", "x_phase", "y_phase",
                  "x_circle", "y_circle"]
    for n in n_list:
        orbit = quantization.solve_orbit(params, n)
        curve = wavefield.orbit_wave_curve(orbit, u0=u0, samples=samples)
        if curve.undersampled:
            env.note(f"warning.undersampled.n={_fmt(n)}",
                     f"samples={samples} < 8*m_plus={8 * orbit.m_plus:g}")
        closure = abs(curve.total_radius[0] - curve.total_radius[-1])
        env.note(f"closure_distance.n={_fmt(n)}", closure)
        sgn = np.sign(curve.phase_radius - orbit.r)
        env.note(f"phase_wave_zero_crossings.n={_fmt(n)}",
                 int(np.sum(sgn[:-1] * sgn[1:] < 0)))
        sgn = np.sign(curve.envelope)
        env.note(f"envelope_zero_crossings.n={_fmt(n)}",
                 int(np.sum(sgn[:-1] * sgn[1:] < 0)))
        env.note(f"delta.n={_fmt(n)}", curve.delta)
        env.note("scaling", "delta and u0 are presentation-only scales")
        for i in range(len(curve.phi)):
            phi = curve.phi[i]
            env.rows.append([
                n, phi,
                curve.total_radius[i] * math.cos(phi),
                curve.total_radius[i] * math.sin(phi),
                curve.phase_radius[i] * math.cos(phi),
                curve.phase_radius[i] * math.sin(phi),
                orbit.r * math.cos(phi), orbit.r * math.sin(phi),
            ])
    return env, 0


def cmd_field_map(merged, timestamp):
    params = _params_from(merged)
    n = _parse_real(merged.get("n", "1"))
    plane = str(merged.get("plane", "equatorial"))
    grid_n = int(merged.get("grid_n", 256))
    orbit = quantization.solve_orbit(params, n)
    extent = float(merged.get("extent", 2.2 * orbit.r / orbit.a0))
    env = Envelope("field-map",
                   {**_echo_params(params), "n": n, "plane": plane,
                    "grid_n": grid_n, "extent": extent}, timestamp)
    modes = wavefield.modes_for_orbit(orbit, params)
    grid = wavefield.intensity_map(orbit, modes, plane, extent, grid_n)
    iy, ix = np.unravel_index(int(np.argmax(grid.values)), grid.values.shape)
    env.note("argmax.x", grid.xs[ix])
    env.note("argmax.y", grid.ys[iy])
    env.note("argmax.radius", math.hypot(grid.xs[ix], grid.ys[iy]))
    env.note("orbit_radius_a0", orbit.r / orbit.a0)
    second = "z" if plane == "meridian" else "y"
    env.header = ["x", second, "intensity"]
    for i in range(grid_n):
        for j in range(grid_n):
            env.rows.append([grid.xs[j], grid.ys[i], grid.values[i, j]])
    return env, 0


def cmd_integrate(merged, timestamp):
    params = _params_from(merged)
    n = _parse_real(merged.get("n", "1"))
    periods = float(merged.get("periods", 1.0))
    tol = float(merged.get("tol", 1e-12))
    samples = int(merged.get("samples", 1000))
    scale = float(merged.get("omega_p_scale", 1.0))
    u0 = float(merged.get("u0", 1.0))
    orbit = quantization.solve_orbit(params, n)
    env = Envelope("integrate",
                   {**_echo_params(params), "n": n, "periods": periods,
                    "tol": tol, "samples": samples, "omega_p_scale": scale},
                   timestamp)
    env.header = ["t", "x", "y", "tau", "z_phase"]
    initial = dynamics.circular_initials(orbit)
    period = 2.0 * math.pi * orbit.r / orbit.v
    if periods == 0.0:
        env.rows.append([0.0, initial.pos[0], initial.pos[1], 0.0, 0.0])
        env.note("summary", "initial state echo (periods = 0)")
        return env, 0
    traj = dynamics.integrate_orbit(params, initial, periods * period, tol=tol,
                                    samples=samples,
                                    omega_p=scale * orbit.Omega_p)
    env.note("radius_drift_rel", float(np.max(np.abs(traj.radius - orbit.r)) / orbit.r))
    energy = traj.energy
    ang = traj.angular_momentum
    env.note("energy_drift_rel", float(np.max(np.abs(energy - energy[0])) / abs(energy[0])))
    env.note("angular_momentum_drift_rel", float(np.max(np.abs(ang - ang[0])) / abs(ang[0])))
    one_period = dynamics.integrate_orbit(params, initial, period, tol=tol,
                                          samples=64, omega_p=scale * orbit.Omega_p)
    env.note("action_loop_over_2pi", float(one_period.action[-1] / (2.0 * math.pi)))
    if scale == 1.0:
        max_abs, max_phase = dynamics.constraint_residual(traj, orbit, u0)
        env.note("constraint_modulus_residual", max_abs)
        env.note("constraint_phase_residual", max_phase)
    else:
        # detuned internal clock: measure the drift of the integrated
        # clock phase against the on-orbit carrier
        phi = np.unwrap(np.arctan2(traj.pos[:, 1], traj.pos[:, 0]))
        carrier = (orbit.n * phi - (orbit.N - orbit.alpha) * traj.t / orbit.r) / orbit.b
        mism = np.unwrap(np.angle(np.exp(1j * (-traj.z_phase - carrier))))
        slope = float(np.polyfit(traj.t, mism, 1)[0])
        env.note("phase_residual_slope", abs(slope))
        env.note("phase_residual_slope_predicted",
                 abs((scale - 1.0) * orbit.Omega_p * math.sqrt(1.0 - orbit.v**2)))
    for i in range(len(traj.t)):
        env.rows.append([traj.t[i], traj.pos[i, 0], traj.pos[i, 1],
                         traj.tau[i], traj.z_phase[i]])
    return env, 0


def _check_suite(params: PhysicalParams, n_list):
    """All closed-identity checks; returns rows (name, measured, threshold, ok)."""
    rows = []

    def add(name, measured, threshold, ok=None):
        ok = bool(measured <= threshold) if ok is None else ok
        rows.append((name, measured, threshold, ok))

    alpha = float(params.alpha)
    for n in n_list:
        sol = quantization.solve_orbit(params, n)
        disp = abs((sol.E + sol.alpha / sol.r) ** 2 - sol.P**2 - sol.m_eff**2) / sol.m_eff**2
        add(f"dispersion-closure n={_fmt(n)}", disp, 1e-12)
        harmony = abs(-sol.Omega_p * math.sqrt(1.0 - sol.v**2) - sol.lagrangian / sol.b)
        add(f"phase-harmony n={_fmt(n)}", harmony / sol.m_eff, 1e-12)
        mp_, mm_ = quantization.mode_numbers(params, n)
        back = quantization.fine_structure_from_modes(float(mp_), float(mm_), float(params.b))
        add(f"fine-structure-round-trip n={_fmt(n)}", abs(back - alpha) / alpha, 1e-12)
        gv = wavefield.group_velocity(sol)
        add(f"group-velocity n={_fmt(n)}", abs(gv - sol.v) / sol.v, 1e-12)
        vb = dynamics.bohmian_velocity(sol, (0.0, sol.r, math.pi / 2.0, 0.3))
        add(f"bohmian-speed n={_fmt(n)}", abs(float(np.linalg.norm(vb)) - sol.v) / sol.v, 1e-10)
        ok, residual = quantization.check_selection_rule(params, n)
        frac_n = Fraction(n) if not isinstance(n, float) else None
        expect_ok = (frac_n.denominator == 1) if frac_n is not None else ok
        add(f"selection-rule n={_fmt(n)}", float(residual), 1e-9, ok == expect_ok)
        try:
            modes = wavefield.modes_for_orbit(sol, params)
        except BohratomError:
            continue
        worst_q = 0.0
        for mode in modes:
            qfd = wavefield.quantum_potential(mode, (sol.r, math.pi / 2.0, 0.0),
                                              h=1e-4 * sol.r)
            qcf = wavefield.quantum_potential_closed_form(mode, sol.r, math.pi / 2.0)
            scale = (mode.m / sol.r) ** 2
            worst_q = max(worst_q, abs(qfd - qcf) / scale)
        add(f"quantum-potential-fd-vs-closed n={_fmt(n)}", worst_q, 1e-4)
        if abs(float(params.b) * params.beta - alpha) < 1e-12 and params.omega0 == 0.0:
            worst0 = max(
                abs(wavefield.quantum_potential_closed_form(m, sol.r, math.pi / 2.0))
                / (m.m / sol.r) ** 2
                for m in modes)
            add(f"quantum-potential-vanishing n={_fmt(n)}", worst0, 1e-12)
    worst = 0.0
    for l in range(0, 6):
        for wr in (1.0, 7.5, 22.0, 41.0):
            rc = complex(wavefield.radial_coulomb(l, 0.0, 1.0, wr))
            rb = float(wavefield.radial_chargeless(l, 1.0, wr))
            worst = max(worst, abs(rc - rb) / max(abs(rb), 1e-300))
    add("bessel-kummer-identity", worst, 1e-10)
    mode = wavefield.Mode(sign=1, l=1, m=0, omega=1.0, beta=1.0 / 3.0)
    full = complex(wavefield.radial(mode, 1000.0)).real
    asym = wavefield.radial_asymptotic(mode, 1000.0)
    add("asymptotic-agreement l=1 wr=1e3", abs(full - asym) / abs(asym), 1e-2)
    table = quantization.PhysicalParams(alpha=Fraction(1, 137))
    expected = {Fraction(1): (138, 136), Fraction(2): (550, 546),
                Fraction(10): (13710, 13690)}
    tab_ok = all(quantization.mode_numbers(table, n) == (Fraction(a), Fraction(c))
                 for n, (a, c) in expected.items())
    add("mode-number-table alpha=1/137", 0.0 if tab_ok else 1.0, 0.5, tab_ok)
    return rows


def cmd_check(merged, timestamp):
    params = _params_from(merged)
    n_list = _parse_n_list(merged.get("n", "1,2,3"))
    env = Envelope("check", {**_echo_params(params), "n": merged.get("n", "1,2,3")},
                   timestamp)
    env.header = ["check", "measured", "threshold", "status"]
    rows = _check_suite(params, n_list)
    failed = 0
    for name, measured, threshold, ok in rows:
        env.rows.append([name, measured, threshold, "pass" if ok else "FAIL"])
        failed += 0 if ok else 1
    env.note("checks_total", len(rows))
    env.note("checks_failed", failed)
    return env, (4 if failed else 0)


_COMMANDS = {
    "orbit": cmd_orbit,
    "table": cmd_table,
    "orbit-wave": cmd_orbit_wave,
    "field-map": cmd_field_map,
    "integrate": cmd_integrate,
    "check": cmd_check,
}

_COMMON_KEYS = ["alpha", "alpha_inv", "b", "xi_charge", "omega0", "m_eff", "n"]
_EXTRA_KEYS = {
    "orbit": [],
    "table": [],
    "orbit-wave": ["samples", "u0"],
    "field-map": ["plane", "grid_n", "extent"],
    "integrate": ["periods", "tol", "samples", "omega_p_scale", "u0"],
    "check": [],
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bohratom",
        description="Quantized-orbit and pilot-field calculator (natural units).",
    )
    parser.add_argument("--version", action="version",
                        version=f"bohratom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="TOML config file")
        p.add_argument("--preset", help="named parameter preset "
                       f"({', '.join(sorted(_PRESETS))})")
        p.add_argument("--output", "-o", help="output path (default stdout)")
        p.add_argument("--timestamp", action="store_true",
                       help="include a timestamp (breaks byte determinism)")
        p.add_argument("--alpha", help="fine-structure constant (accepts p/q)")
        p.add_argument("--alpha-inv", dest="alpha_inv", help="1/alpha (accepts p/q)")
        p.add_argument("--b", help="phase-scaling constant (accepts p/q)")
        p.add_argument("--xi-charge", dest="xi_charge", type=float,
                       help="field-charge ratio xi (beta = xi alpha)")
        p.add_argument("--omega0", type=float, help="field Compton frequency")
        p.add_argument("--m-eff", dest="m_eff", type=float, help="effective mass")
        p.add_argument("--n", help="comma-separated quantum numbers (accepts p/q)")
        for key in _EXTRA_KEYS[name]:
            flag = "--" + key.replace("_", "-")
            if key == "plane":
                p.add_argument(flag, choices=["equatorial", "meridian"])
            elif key in ("samples", "grid_n"):
                p.add_argument(flag, dest=key, type=int)
            else:
                p.add_argument(flag, dest=key, type=float)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        keys = _COMMON_KEYS + _EXTRA_KEYS[args.command]
        merged = _load_config_layers(args, keys)
        env, code = _COMMANDS[args.command](merged, args.timestamp)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                env.write(fh)
        else:
            env.write(sys.stdout)
        return code
    except (ConfigError, UsageError) as exc:
        print(f"bohratom: configuration error: {exc}", file=sys.stderr)
        return 2
    except BohratomError as exc:
        print(f"bohratom: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
