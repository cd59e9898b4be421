"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 invalid input or numerical failure,
3 inconsistent anchors (the flux is not attainable with the given anchors).
Errors are reported on stderr as a single JSON object.
"""

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from . import analysis, harmonic, io
from .errors import GreentraceError, InconsistentAnchors
from .forward import conformal_map_of, forward_operator
from .inverse import RESIDUAL_TOL, reconstruct, reconstruct_free
from .mapping import Anchors, green_level_curve, trace_boundary
from .profile import NORMALIZATION_TOL, validate_flux

EXIT_IO, EXIT_INVALID, EXIT_INCONSISTENT = 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict
    n: int = 512
    tol_norm: float = NORMALIZATION_TOL
    tol_residual: float = RESIDUAL_TOL
    tol_symmetry: float = analysis.SYMMETRY_TOL
    out: Path = Path(".")
    renormalize: bool = False
    levels: list = field(default_factory=list)

    def __post_init__(self):
        if self.n is not None and (not harmonic.is_power_of_two(self.n) or self.n < 64):
            raise click.BadParameter(f"--n must be a power of two >= 64, got {self.n}")
        for name in ("tol_norm", "tol_residual", "tol_symmetry"):
            if not getattr(self, name) > 0:
                raise click.BadParameter(f"--{name.replace('_', '-')} must be positive")
        for r in self.levels:
            if not 0 < r < 1:
                raise click.BadParameter(f"level radius {r} outside (0, 1)")
        self.out = Path(self.out)


def _fail(code, exc):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, GreentraceError):
        payload.update(exc.details())
    click.echo(json.dumps(payload), err=True)
    sys.exit(code)


def _run(fn, config):
    try:
        config.out.mkdir(parents=True, exist_ok=True)
        fn(config)
    except InconsistentAnchors as exc:
        _fail(EXIT_INCONSISTENT, exc)
    except (GreentraceError, ValueError) as exc:
        _fail(EXIT_INVALID, exc)
    except OSError as exc:
        _fail(EXIT_IO, exc)


def _parse_levels(ctx, param, value):
    if not value:
        return []
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of radii") from None


def _load_profile(config):
    phi, L = io.read_flux_csv(config.inputs["flux"], config.inputs.get("perimeter"))
    return validate_flux(phi, L, tol=config.tol_norm, renormalize=config.renormalize)


def _level_name(r):
    return f"level_{r!r}.csv"


def do_forward(config):
    spec = io.read_map_spec(config.inputs["spec"])
    profile, anchors = forward_operator(spec, config.n)
    trace = trace_boundary(conformal_map_of(spec, config.n), config.n)
    io.write_flux_csv(config.out / "flux.csv", profile)
    io.write_anchors(config.out / "anchors.json", anchors)
    io.write_trace_csv(config.out / "trace.csv", trace)


def do_reconstruct(config):
    profile = _load_profile(config)
    anchors_path = config.inputs.get("anchors")
    zeta_c, zeta_b = io.read_anchors(anchors_path) if anchors_path else (0j, None)
    gamma = config.inputs.get("gamma")
    n = config.n
    if gamma is None:
        if zeta_b is None:
            raise click.UsageError("reconstruct needs --anchors with zeta_b, or --gamma")
        cmap, trace, residual = reconstruct(profile, Anchors(zeta_c, zeta_b), n, config.tol_residual)
    else:
        cmap, trace = reconstruct_free(profile, zeta_c, gamma, n)
        residual = None
    io.write_trace_csv(config.out / "trace.csv", trace)
    report = {
        "mode": "anchored" if gamma is None else "free",
        "n": trace.n,
        "gamma": cmap.gamma,
        "perimeter": trace.perimeter,
        "consistency_residual": residual,
        "series_tail": cmap.tail_bound,
        "zeta_c": [cmap.zeta_c.real, cmap.zeta_c.imag],
        "zeta_b": [cmap.zeta_b.real, cmap.zeta_b.imag],
    }
    io.write_json(config.out / "report.json", report)
    for r in config.levels:
        pts = green_level_curve(cmap, r, trace.n)
        io.write_level_csv(config.out / _level_name(r), trace.theta, pts)


def do_analyze(config):
    profile = _load_profile(config)
    n_max = min(config.inputs.get("n_max", analysis.N_MAX_DEFAULT), profile.n_samples // 4)
    io.write_json(config.out / "univalence.json", analysis.paatero_check(profile).to_dict())
    sym = analysis.symmetry_report(profile, n_max, config.tol_symmetry)
    io.write_json(config.out / "symmetry.json", sym.to_dict())
    kappa = analysis.curvature_from_flux(profile, config.n)
    io.write_curvature_csv(config.out / "curvature.csv", profile.grid, kappa)


_n_option = click.option("--n", "n", type=int, default=None, envvar="GREENTRACE_N",
                         help="Grid size (power of two >= 64).")
_out_option = click.option("--out", type=click.Path(file_okay=False), default=".",
                           envvar="GREENTRACE_OUT", show_default=True, help="Output directory.")
_tol_norm = click.option("--tol-norm", type=float, default=NORMALIZATION_TOL, envvar="GREENTRACE_TOL_NORM",
                         show_default=True, help="Allowed |int phi ds - 1|.")
_renorm = click.option("--renormalize", is_flag=True, envvar="GREENTRACE_RENORMALIZE",
                       help="Divide the flux by its measured integral instead of rejecting it.")
_perimeter = click.option("--perimeter", type=float, default=None, envvar="GREENTRACE_PERIMETER",
                          help="Perimeter L (default: last s plus one spacing).")


@click.group(epilog="Exit codes: 0 ok, 1 I/O error, 2 invalid input, 3 inconsistent anchors.")
def main():
    """Reconstruct planar domains from the boundary flux of their Green's function."""


@main.command()
@click.argument("spec", type=click.Path(dir_okay=False))
@_n_option
@_out_option
def forward(spec, n, out):
    """Compute flux.csv, anchors.json and trace.csv from a map spec JSON."""
    _run(do_forward, RunConfig("forward", {"spec": spec}, 512 if n is None else n, out=out))


@main.command("reconstruct")
@click.argument("flux", type=click.Path(dir_okay=False))
@click.option("--anchors", type=click.Path(dir_okay=False), envvar="GREENTRACE_ANCHORS",
              help="Anchors JSON {zeta_c, zeta_b}.")
@click.option("--gamma", type=float, default=None, envvar="GREENTRACE_GAMMA",
              help="Prescribe the rotation instead of using zeta_b.")
@click.option("--tol-residual", type=float, default=RESIDUAL_TOL, envvar="GREENTRACE_TOL_RESIDUAL",
              show_default=True, help="Maximum consistency residual.")
@click.option("--levels", callback=_parse_levels, default="", envvar="GREENTRACE_LEVELS",
              help="Comma-separated radii r in (0,1) for Green level curves.")
@_n_option
@_tol_norm
@_renorm
@_perimeter
@_out_option
def reconstruct_cmd(flux, anchors, gamma, tol_residual, levels, n, tol_norm, renormalize, perimeter, out):
    """Reconstruct the boundary from a flux CSV; writes trace.csv and report.json."""
    inputs = {"flux": flux, "anchors": anchors, "gamma": gamma, "perimeter": perimeter}
    config = RunConfig("reconstruct", inputs, n, tol_norm, tol_residual, out=out,
                       renormalize=renormalize, levels=levels)
    _run(do_reconstruct, config)


@main.command()
@click.argument("flux", type=click.Path(dir_okay=False))
@click.option("--tol-symmetry", type=float, default=analysis.SYMMETRY_TOL, envvar="GREENTRACE_TOL_SYMMETRY",
              show_default=True, help="Detection threshold for symmetry residuals.")
@click.option("--n-max", type=int, default=analysis.N_MAX_DEFAULT, envvar="GREENTRACE_N_MAX",
              show_default=True, help="Largest rotation order to test.")
@_n_option
@_tol_norm
@_renorm
@_perimeter
@_out_option
def analyze(flux, tol_symmetry, n_max, n, tol_norm, renormalize, perimeter, out):
    """Univalence bound, symmetry residuals and curvature of a flux CSV."""
    inputs = {"flux": flux, "n_max": n_max, "perimeter": perimeter}
    config = RunConfig("analyze", inputs, n, tol_norm, tol_symmetry=tol_symmetry, out=out,
                       renormalize=renormalize)
    _run(do_analyze, config)


if __name__ == "__main__":
    main()
