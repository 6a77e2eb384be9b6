"""Command-line front end: configuration, pipeline runs, file emission.

Each subcommand resolves its inputs in the same order: built-in defaults,
then the --config JSON file, then explicit flags (flags win).  Floating
point output is always printed with 17 significant digits, so rerunning
with an identical configuration produces byte-identical files.

Exit codes: 0 success, 1 I/O or numeric failure, 2 configuration error,
3 no bound state.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from types import SimpleNamespace

import numpy as np

from .boundstate import BoundState, current_field
from .errors import ConfigError, NoBoundStateError, NumericsError
from .matel import well_element_firstorder, well_element_quadrature
from .oracle import CylindricalGrid, assemble, lowest_eigenpair
from .params import DimensionlessParams
from .spectrum import (TRUNCATED, ZETA_REGULARIZED, SpectralConfig,
                       e_min_closed_form, solve_spectrum)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CONFIG = 2
EXIT_NO_BOUND_STATE = 3

# JSON config keys and the argparse attributes they fill
_CONFIG_KEYS = {
    "xi": "xi", "lambda": "lambda_t", "s": "s", "mode": "mode",
    "nmax": "nmax", "epsilon": "epsilon", "grid": "grid",
    "rho_max": "rho_max", "z_max": "z_max", "out": "out", "format": "format",
    "scan": "scan", "from": "scan_from", "to": "scan_to", "steps": "steps",
    "n": "n", "N": "N", "L": "L",
}


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _dump_json(obj, indent: int = 0) -> str:
    """Serialize with floats at 17 significant digits.

    The stdlib encoder prints shortest round-trip floats; pinning the
    width here keeps regression diffs exact across Python versions.
    """
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(f"{pad}  {json.dumps(k)}: {_dump_json(v, indent + 2)}"
                           for k, v in obj.items())
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {_dump_json(v, indent + 2)}" for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    return _g17(obj)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None) is None:
        return
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    for key, value in cfg.items():
        attr = _CONFIG_KEYS.get(key)
        if attr is None or not hasattr(args, attr):
            raise ConfigError(f"unknown config key: {key}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)


def _require(args: argparse.Namespace, attr: str, flag: str):
    value = getattr(args, attr)
    if value is None:
        raise ConfigError(f"missing required {flag}")
    return value


def _dimensionless(args: argparse.Namespace) -> DimensionlessParams:
    xi = float(_require(args, "xi", "--xi"))
    lam = float(_require(args, "lambda_t", "--lambda"))
    s = -1 if args.s is None else int(args.s)
    return DimensionlessParams(xi=xi, lambda_t=lam, s=s)


def _spectral_config(args: argparse.Namespace) -> SpectralConfig:
    mode = args.mode if args.mode is not None else ZETA_REGULARIZED
    nmax = args.nmax if args.nmax is None else int(args.nmax)
    return SpectralConfig(mode=mode, n_max=nmax)


def _parse_grid(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", str(text))
    if m is None:
        raise ConfigError(f"--grid must look like NRxNZ, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _grid_block(grid: CylindricalGrid) -> dict:
    return {"n_rho": int(grid.n_rho), "n_z": int(grid.n_z),
            "rho_max": grid.rho_max, "z_max": grid.z_max,
            "h_rho": grid.h_rho, "h_z": grid.h_z}


def _resolve_grid(args: argparse.Namespace, d: DimensionlessParams,
                  cfg: SpectralConfig) -> CylindricalGrid:
    """Explicit --grid wins; otherwise size the box from the predicted root."""
    if args.grid is None:
        if d.lambda_t == 0.0:
            raise ConfigError("no well to size the box from: "
                              "pass --grid with --rho-max and --z-max")
        eps = solve_spectrum(d, cfg).epsilon
        return CylindricalGrid.sized_for(d, eps)
    nr, nz = _parse_grid(args.grid)
    rho_max = 8.0 if args.rho_max is None else float(args.rho_max)
    if args.z_max is not None:
        z_max = float(args.z_max)
    elif d.lambda_t > 0.0:
        eps = solve_spectrum(d, cfg).epsilon
        z_max = 1.05 * 6.0 / math.sqrt(2.0 * abs(eps))
    else:
        raise ConfigError("no well to size the box from: pass --z-max")
    return CylindricalGrid(rho_max=rho_max, z_max=z_max, n_rho=nr, n_z=nz)


def cmd_spectrum_solve(args: argparse.Namespace) -> int:
    if args.format not in (None, "json"):
        raise ConfigError(f"spectrum solve emits json, got {args.format!r}")
    d = _dimensionless(args)
    root = solve_spectrum(d, _spectral_config(args))
    report = {
        "epsilon_root": root.epsilon,
        "residual": root.residual,
        "mode": root.mode,
        "iterations": int(root.iterations),
    }
    if root.mode == TRUNCATED:
        report["n_max"] = int(root.n_max)
    if d.s == -1:
        closed = e_min_closed_form(d)
        report["e_min_closed"] = closed
        report["discrepancy_ratio"] = closed / root.epsilon
    else:
        # the closed form is an s=-1 result; stay silent rather than wrong
        report["e_min_closed"] = None
        report["discrepancy_ratio"] = None
    _emit(_dump_json(report) + "\n", args.out)
    return EXIT_OK


def cmd_spectrum_scan(args: argparse.Namespace) -> int:
    if args.format not in (None, "csv"):
        raise ConfigError(f"spectrum scan emits csv, got {args.format!r}")
    axis = _require(args, "scan", "--scan")
    if axis not in ("xi", "lambda"):
        raise ConfigError(f"--scan must be xi or lambda, got {axis!r}")
    lo = float(_require(args, "scan_from", "--from"))
    hi = float(_require(args, "scan_to", "--to"))
    steps = int(_require(args, "steps", "--steps"))
    if steps <= 0:
        raise ConfigError(f"--steps must be positive, got {steps}")
    if hi < lo:
        raise ConfigError(f"empty scan range: from {_g17(lo)} to {_g17(hi)}")
    s = -1 if args.s is None else int(args.s)
    cfg = _spectral_config(args)
    if axis == "xi":
        lam_fixed = float(_require(args, "lambda_t", "--lambda"))
    else:
        xi_fixed = float(_require(args, "xi", "--xi"))
    lines = ["param,epsilon_root,e_min_closed,residual"]
    for value in np.linspace(lo, hi, steps):
        if axis == "xi":
            d = DimensionlessParams(xi=float(value), lambda_t=lam_fixed, s=s)
        else:
            d = DimensionlessParams(xi=xi_fixed, lambda_t=float(value), s=s)
        root = solve_spectrum(d, cfg)
        closed = e_min_closed_form(d) if s == -1 else math.nan
        lines.append(",".join([_g17(value), _g17(root.epsilon),
                               _g17(closed), _g17(root.residual)]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_state(args: argparse.Namespace) -> int:
    fmt = "csv" if args.format is None else args.format
    if fmt not in ("csv", "svg"):
        raise ConfigError(f"state emits csv or svg, got {fmt!r}")
    if args.epsilon is not None:
        eps = float(args.epsilon)
        d = DimensionlessParams(
            xi=0.0 if args.xi is None else float(args.xi),
            lambda_t=0.0 if args.lambda_t is None else float(args.lambda_t),
            s=-1 if args.s is None else int(args.s))
    else:
        d = _dimensionless(args)
        eps = solve_spectrum(d, _spectral_config(args)).epsilon
    state = BoundState.from_epsilon(eps, d)

    nr, nz = _parse_grid("64x128" if args.grid is None else args.grid)
    if nr < 2 or nz < 2:
        raise ConfigError(f"state grid must be at least 2x2, got {nr}x{nz}")
    rho_max = 4.0 if args.rho_max is None else float(args.rho_max)
    z_max = 8.0 if args.z_max is None else float(args.z_max)
    if rho_max <= 0.0 or z_max <= 0.0:
        raise ConfigError("rho-max and z-max must be positive")
    # node grid including the rho = 0 axis, where j_phi vanishes exactly
    grid = SimpleNamespace(rho=np.linspace(0.0, rho_max, nr),
                           z=np.linspace(-z_max, z_max, nz))
    field = current_field(state, grid)
    if fmt == "svg":
        label = f"j_phi, epsilon = {_g17(eps)}"
        _emit(_svg_heatmap(field, label), args.out)
        return EXIT_OK
    lines = ["rho,z,psi,j_phi"]
    for i, r_val in enumerate(field.rho_grid):
        for j, z_val in enumerate(field.z_grid):
            lines.append(",".join([_g17(r_val), _g17(z_val),
                                   _g17(field.psi[i, j]),
                                   _g17(field.j_phi[i, j])]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_matel(args: argparse.Namespace) -> int:
    if args.format not in (None, "csv"):
        raise ConfigError(f"matel emits csv, got {args.format!r}")
    xi = float(_require(args, "xi", "--xi"))
    if xi <= 0.0:
        raise ConfigError("matel needs --xi > 0 to report delta / xi^2")
    chosen = (args.n, args.N, args.L)
    if any(v is not None for v in chosen) and any(v is None for v in chosen):
        raise ConfigError("give all of --n, --N, --L or none of them")
    if args.n is not None:
        triples = [(int(args.n), int(args.N), int(args.L))]
    else:
        triples = [(n, big, ell) for n in range(4) for big in range(4)
                   for ell in (0, 1, -1)]
    lines = ["n,N,L,xi,firstorder,quadrature,delta,delta_over_xi2"]
    for n, big, ell in triples:
        first = well_element_firstorder(n, big, ell, xi)
        quadr = well_element_quadrature(n, big, ell, xi)
        delta = quadr - first
        lines.append(",".join([str(n), str(big), str(ell), _g17(xi),
                               _g17(first), _g17(quadr), _g17(delta),
                               _g17(delta / (xi * xi))]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    fmt = "json" if args.format is None else args.format
    if fmt not in ("json", "csv"):
        raise ConfigError(f"oracle emits json or csv, got {fmt!r}")
    d = _dimensionless(args)
    grid = _resolve_grid(args, d, _spectral_config(args))
    result = lowest_eigenpair(assemble(d, grid), tol=1e-10)
    if fmt == "json":
        report = {
            "eigenvalue": result.value,
            "grid": _grid_block(grid),
            "iterations": int(result.iterations),
            "residual": result.residual,
            "shift": result.shift,
        }
        _emit(_dump_json(report) + "\n", args.out)
        return EXIT_OK
    # csv: the ground-state field, normalized like the closed-form state
    psi = result.vector.reshape(grid.n_rho, grid.n_z) / np.sqrt(grid.rho)[:, None]
    psi /= math.sqrt(2.0 * math.pi * grid.h_rho * grid.h_z)
    if psi[np.unravel_index(np.argmax(np.abs(psi)), psi.shape)] < 0.0:
        psi = -psi
    lines = ["rho,z,psi"]
    for i in range(grid.n_rho):
        for j in range(grid.n_z):
            lines.append(",".join([_g17(grid.rho[i]), _g17(grid.z[j]),
                                   _g17(psi[i, j])]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    if args.format not in (None, "json"):
        raise ConfigError(f"compare emits json, got {args.format!r}")
    xi = float(_require(args, "xi", "--xi"))
    lams = _require(args, "lambda_t", "--lambda")
    if not isinstance(lams, (list, tuple)):
        lams = [lams]
    lams = [float(v) for v in lams]
    if any(v <= 0.0 for v in lams):
        raise ConfigError("compare needs positive --lambda values")
    s = -1 if args.s is None else int(args.s)
    cfg = _spectral_config(args)
    points = []
    for lam in lams:
        d = DimensionlessParams(xi=xi, lambda_t=lam, s=s)
        eps_pred = solve_spectrum(d, cfg).epsilon
        grid = _resolve_grid(args, d, cfg)
        result = lowest_eigenpair(assemble(d, grid), tol=1e-10)
        gap = abs(result.value - eps_pred) / abs(result.value)
        points.append({
            "lambda": lam,
            "epsilon_perturbative": eps_pred,
            "epsilon_oracle": result.value,
            "relative_gap": gap,
            "within_target_30pct": bool(gap <= 0.3),
            "grid": _grid_block(grid),
            "iterations": int(result.iterations),
            "residual": result.residual,
        })
    report = {"xi": xi, "s": int(s), "mode": cfg.mode, "points": points}
    if len(points) >= 2:
        order = sorted(range(len(lams)), key=lambda i: lams[i])
        eigs = [points[i]["epsilon_oracle"] for i in order]
        gaps = [points[i]["relative_gap"] for i in order]
        eig_down = all(b < a for a, b in zip(eigs, eigs[1:]))
        gap_up = all(a < b for a, b in zip(gaps, gaps[1:]))
        report["eigenvalue_decreasing_with_lambda"] = eig_down
        report["gap_growing_with_lambda"] = gap_up
        # perturbation theory should improve toward weak coupling
        report["trend_ok"] = eig_down and gap_up
    _emit(_dump_json(report) + "\n", args.out)
    return EXIT_OK


def _heat_color(t: float) -> str:
    stops = ((12, 20, 60), (32, 144, 140), (244, 228, 66))
    t = min(max(t, 0.0), 1.0)
    if t <= 0.5:
        a, b, u = stops[0], stops[1], 2.0 * t
    else:
        a, b, u = stops[1], stops[2], 2.0 * t - 1.0
    r, g, bl = (round(p + (q - p) * u) for p, q in zip(a, b))
    return f"#{r:02x}{g:02x}{bl:02x}"


def _svg_heatmap(field, label: str) -> str:
    values = field.j_phi
    vmax = float(values.max())
    scale = 1.0 / vmax if vmax > 0.0 else 0.0
    left, top, width, height = 60.0, 40.0, 640.0, 400.0
    nr, nz = field.rho_grid.size, field.z_grid.size
    cw, ch = width / nz, height / nr
    total_w, total_h = int(left + width + 20), int(top + height + 40)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" '
        f'height="{total_h}" viewBox="0 0 {total_w} {total_h}">',
        f'<text x="{left:.1f}" y="24" font-family="monospace" '
        f'font-size="14">{label}</text>',
    ]
    for i in range(nr):
        # rho runs upward from the bottom edge
        y = top + height - (i + 1) * ch
        for j in range(nz):
            t = values[i, j] * scale
            parts.append(f'<rect x="{left + j * cw:.2f}" y="{y:.2f}" '
                         f'width="{cw + 0.5:.2f}" height="{ch + 0.5:.2f}" '
                         f'fill="{_heat_color(t)}"/>')
    parts.append(f'<rect x="{left:.1f}" y="{top:.1f}" width="{width:.1f}" '
                 f'height="{height:.1f}" fill="none" stroke="#404040"/>')
    parts.append(f'<text x="8" y="{top + 12:.1f}" font-family="monospace" '
                 f'font-size="12">rho={field.rho_grid[-1]:.4g}</text>')
    parts.append(f'<text x="8" y="{top + height:.1f}" font-family="monospace" '
                 f'font-size="12">rho=0</text>')
    parts.append(f'<text x="{left:.1f}" y="{top + height + 18:.1f}" '
                 f'font-family="monospace" font-size="12">'
                 f'z={field.z_grid[0]:.4g}</text>')
    parts.append(f'<text x="{left + width - 70:.1f}" y="{top + height + 18:.1f}" '
                 f'font-family="monospace" font-size="12">'
                 f'z={field.z_grid[-1]:.4g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--format", choices=("csv", "json", "svg"))


def _add_param_flags(p: argparse.ArgumentParser, many_lambda: bool = False) -> None:
    p.add_argument("--config", help="JSON file mirroring the flags; flags win")
    p.add_argument("--xi", type=float, help="well extent parameter R^2 / 2a^2")
    if many_lambda:
        p.add_argument("--lambda", dest="lambda_t", type=float, nargs="+",
                       help="well strength(s) U0 R^3 in oscillator units")
    else:
        p.add_argument("--lambda", dest="lambda_t", type=float,
                       help="well strength U0 R^3 in oscillator units")
    p.add_argument("--s", type=int, choices=(-1, 1), help="spin projection sign")
    p.add_argument("--mode", choices=(TRUNCATED, ZETA_REGULARIZED))
    p.add_argument("--nmax", type=int, help="level cutoff (truncated mode only)")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", help="lattice size as NRxNZ, e.g. 96x512")
    p.add_argument("--rho-max", dest="rho_max", type=float)
    p.add_argument("--z-max", dest="z_max", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magwell",
        description="Bound states of a magnetized electron in a spherical well")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", help="spectral equation tools")
    ssub = spectrum.add_subparsers(dest="subcommand", required=True)

    solve = ssub.add_parser("solve", help="lowest root of the level equation")
    _add_param_flags(solve)
    _add_output_flags(solve)
    solve.set_defaults(handler=cmd_spectrum_solve)

    scan = ssub.add_parser("scan", help="sweep xi or lambda and tabulate roots")
    _add_param_flags(scan)
    _add_output_flags(scan)
    scan.add_argument("--scan", choices=("xi", "lambda"), help="sweep axis")
    scan.add_argument("--from", dest="scan_from", type=float)
    scan.add_argument("--to", dest="scan_to", type=float)
    scan.add_argument("--steps", type=int)
    scan.set_defaults(handler=cmd_spectrum_scan)

    state = sub.add_parser("state", help="bound-state field table or heatmap")
    _add_param_flags(state)
    _add_grid_flags(state)
    _add_output_flags(state)
    state.add_argument("--epsilon", type=float,
                       help="use this energy directly instead of solving")
    state.set_defaults(handler=cmd_state)

    matel = sub.add_parser("matel", help="well matrix elements: closed form vs quadrature")
    _add_param_flags(matel)
    _add_output_flags(matel)
    matel.add_argument("--n", type=int)
    matel.add_argument("--N", type=int)
    matel.add_argument("--L", type=int)
    matel.set_defaults(handler=cmd_matel)

    oracle = sub.add_parser("oracle", help="finite-difference eigenvalue cross-check")
    _add_param_flags(oracle)
    _add_grid_flags(oracle)
    _add_output_flags(oracle)
    oracle.set_defaults(handler=cmd_oracle)

    compare = sub.add_parser("compare", help="perturbative root vs oracle eigenvalue")
    _add_param_flags(compare, many_lambda=True)
    _add_grid_flags(compare)
    _add_output_flags(compare)
    compare.set_defaults(handler=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.handler(args)
    except NoBoundStateError as exc:
        print(f"no bound state: {exc}", file=sys.stderr)
        return EXIT_NO_BOUND_STATE
    except ValueError as exc:
        # ConfigError and plain validation failures both land here
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
