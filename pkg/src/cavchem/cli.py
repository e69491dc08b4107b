"""Command-line front end: figure-oriented subcommands emitting CSV/JSON/SVG.

Precedence for parameters is flags > config file > built-in defaults.  Every
run writes a manifest.json describing the fully resolved inputs; re-running
from the same manifest reproduces byte-identical CSV/JSON output.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
import time
from pathlib import Path

import click
import numpy as np

import cavchem
from cavchem import hamiltonians, model, reaction, response, svg, sweep
from cavchem.model import DeviceParams, FrequencyGrid, ReactionParams
from cavchem.response import InputPort, SolverError

OUT_ENV_VAR = "CAVCHEM_OUT"

EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3


class ValidationFailure(click.ClickException):
    exit_code = EXIT_VALIDATION


def _load_inputs(config: str | None):
    if config is None:
        d, r = model.reference_defaults()
        return d, r, model.default_grid()
    try:
        return model.load_config(config)
    except (OSError, json.JSONDecodeError, model.ConfigError, TypeError) as exc:
        raise ValidationFailure(f"config error: {exc}") from exc


def _check_params(d: DeviceParams, r: ReactionParams, grid: FrequencyGrid) -> None:
    errors = model.validate(d, r) + model.validate_grid(grid)
    if errors:
        raise ValidationFailure("invalid parameters: " + "; ".join(errors))


def _check_regime(d: DeviceParams, r: ReactionParams, waive: bool) -> None:
    ok, v2, bound = reaction.validity_criterion(r, d)
    if not ok and not waive:
        raise ValidationFailure(
            f"perturbative-IVR validity criterion failed (V^2 = {v2:.4g} >= "
            f"{bound:.4g}); pass --allow-invalid-regime to proceed anyway"
        )


def _resolve_out(out: str | None) -> Path:
    path = Path(os.environ.get(OUT_ENV_VAR) or out or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _parse_fpump_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise click.UsageError(f"bad --fpump list: {exc}") from exc
    if not values:
        raise click.UsageError("--fpump list must not be empty")
    for f in values:
        if not 0.0 <= f < 0.5:
            raise click.UsageError(f"f_pump {f} out of range [0, 0.5)")
    return values


def _write(path: Path, text: str) -> None:
    path.write_text(text)
    click.echo(f"wrote {path}")


def _write_manifest(
    out: Path,
    subcommand: str,
    config: str | None,
    d: DeviceParams,
    r: ReactionParams,
    grid: FrequencyGrid,
    started: float,
    extra: dict | None = None,
) -> None:
    manifest = {
        "tool": "cavchem",
        "version": cavchem.__version__,
        "subcommand": subcommand,
        "config_path": config,
        "output_dir": str(out),
        "parameters": model.dump_config(d, r, grid),
        "options": extra or {},
        "duration_s": round(time.monotonic() - started, 3),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


@click.group()
@click.option("--config", type=click.Path(), default=None, help="JSON config file.")
@click.option("--out", type=click.Path(), default=None, help="Output directory.")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option(
    "--allow-invalid-regime",
    is_flag=True,
    help="Proceed even if the perturbative-IVR validity criterion fails.",
)
@click.pass_context
def main(ctx, config, out, threads, allow_invalid_regime):
    """Coupled-cavity vibrational-polariton device simulator."""
    ctx.ensure_object(dict)
    ctx.obj.update(
        config=config, out=out, threads=threads, waive=allow_invalid_regime
    )


def _common(ctx):
    d, r, grid = _load_inputs(ctx.obj["config"])
    _check_params(d, r, grid)
    _check_regime(d, r, ctx.obj["waive"])
    return d, r, grid, _resolve_out(ctx.obj["out"])


@main.command()
@click.option("--fpump", default="0,0.1,0.2,0.3", show_default=True,
              help="Comma-separated pump fractions.")
@click.option("--port", type=click.Choice(["r", "rc"]), default="r", show_default=True)
@click.pass_context
def spectrum(ctx, fpump, port):
    """Probe (or pump-port) absorbance spectra for a family of pump fractions."""
    started = time.monotonic()
    fpumps = _parse_fpump_list(fpump)
    d, r, grid, out = _common(ctx)
    in_port = InputPort.R_CAVITY if port == "r" else InputPort.RC_CAVITY

    series = []
    for f in fpumps:
        resp = response.solve_response(d, f, in_port, grid, r)
        spec_r = response.absorbance_r(resp, d)
        _write(out / f"absorbance_r_fpump{f:g}.csv", spec_r.to_csv())
        series.append((f"f_pump={f:g}", spec_r.omega, spec_r.values))
        if in_port is InputPort.RC_CAVITY:
            spec_rc = response.absorbance_rc(resp, d)
            _write(out / f"absorbance_rc_fpump{f:g}.csv", spec_rc.to_csv())
            series.append((f"RC, f_pump={f:g}", spec_rc.omega, spec_rc.values))

    peak = max(float(y.max()) for _, _, y in series)
    omegas = grid.omegas()
    p_shape = reaction.ivr_rate(r, omegas)
    series.append(("P lineshape (arb.)", omegas, p_shape * (0.5 * peak / p_shape.max())))
    _write(
        out / "spectrum.svg",
        svg.line_plot(
            series,
            xlabel="probe frequency (cm-1)",
            ylabel="absorbance",
            title=f"absorbance, input port {port.upper()}",
            vlines=[
                ("omega_RC", d.omega_rc, "#00008b"),
                ("omega_R", d.omega_r, "#8b0000"),
                ("omega_P", r.omega_p, "#b8860b"),
            ],
        ),
    )
    _write_manifest(out, "spectrum", ctx.obj["config"], d, r, grid, started,
                    {"fpump": fpumps, "port": port})


@main.command()
@click.option("--fpump", default="0,0.1,0.2,0.3", show_default=True,
              help="Pump fractions for the relative-efficiency spectra.")
@click.option("--fpump-max", default=0.3, show_default=True,
              help="Upper end of the enhancement-vs-pumping curve.")
@click.option("--fpump-step", default=0.01, show_default=True)
@click.pass_context
def efficiency(ctx, fpump, fpump_max, fpump_step):
    """Relative efficiency spectra, enhancement curve, and headline ratios."""
    started = time.monotonic()
    fpumps = _parse_fpump_list(fpump)
    if not 0.0 < fpump_max < 0.5:
        raise click.UsageError(f"--fpump-max {fpump_max} out of range (0, 0.5)")
    d, r, grid, out = _common(ctx)

    result = reaction.headline_ratios(d, r, grid)
    series = []
    for f in fpumps:
        eta = reaction.efficiency(d, r, f, grid)
        rel = response.Spectrum(eta.omega, eta.values / result.eta0)
        _write(out / f"eta_rel_fpump{f:g}.csv", rel.to_csv())
        series.append((f"f_pump={f:g}", rel.omega, rel.values))
    _write(
        out / "eta_rel.svg",
        svg.line_plot(
            series,
            xlabel="probe frequency (cm-1)",
            ylabel="eta / eta0",
            title="relative reaction efficiency",
            vlines=[("omega_ON", result.omega_on, "#c71585")],
        ),
    )

    curve_f = np.arange(0.0, fpump_max + 0.5 * fpump_step, fpump_step)
    point = np.array([result.omega_on])
    eta_off = float(reaction.efficiency(d, r, 0.0, point).values[0])
    curve = np.array(
        [
            float(reaction.efficiency(d, r, float(f), point).values[0]) / eta_off
            for f in curve_f
        ]
    )
    _write(
        out / "enhancement_vs_fpump.csv",
        "\n".join(
            ["f_pump,ratio_on_off"]
            + [f"{format(f, '.17g')},{format(v, '.17g')}" for f, v in zip(curve_f, curve)]
        )
        + "\n",
    )
    _write(
        out / "enhancement_vs_fpump.svg",
        svg.line_plot(
            [("eta(f)/eta(0) at omega_ON", curve_f, curve)],
            xlabel="f_pump",
            ylabel="enhancement",
            title="pump enhancement at the optimal probe frequency",
        ),
    )

    headline = {
        "omega_on": result.omega_on,
        "eta_on": result.eta_on,
        "eta_off": result.eta_off,
        "eta0": result.eta0,
        "ratio_on_off": result.ratio_on_off,
        "ratio_on_bare": result.ratio_on_bare,
    }
    _write(out / "efficiency.json", json.dumps(headline, indent=2) + "\n")
    _write(out / "eta_on_spectrum.csv", result.eta.to_csv())
    _write(out / "eta_off_spectrum.csv", result.eta_off_spectrum.to_csv())
    _write_manifest(out, "efficiency", ctx.obj["config"], d, r, grid, started,
                    {"fpump": fpumps, "fpump_max": fpump_max, "fpump_step": fpump_step})


@main.command("sweep")
@click.option("--axis", "axes", multiple=True,
              type=click.Choice(sweep.AXES), help="Restrict to one axis.")
@click.option("--quantity", "quantities", multiple=True,
              type=click.Choice(sweep.QUANTITIES), help="Restrict to one quantity.")
@click.option("--axis-points", default=31, show_default=True)
@click.option("--fpump-points", default=31, show_default=True)
@click.option("--fpump-max", default=0.3, show_default=True)
@click.pass_context
def sweep_cmd(ctx, axes, quantities, axis_points, fpump_points, fpump_max):
    """Ratio heatmaps over coupling x pump-fraction grids (four panels)."""
    started = time.monotonic()
    if not 0.0 <= fpump_max < 0.5:
        raise click.UsageError(f"--fpump-max {fpump_max} out of range [0, 0.5)")
    d, r, grid, out = _common(ctx)
    axes = axes or sweep.AXES
    quantities = quantities or sweep.QUANTITIES

    for axis in axes:
        lo, hi = sweep.default_axis_range(axis)
        for quantity in quantities:
            spec = sweep.SweepSpec(
                axis=axis, axis_min=lo, axis_max=hi, axis_points=axis_points,
                fpump_min=0.0, fpump_max=fpump_max, fpump_points=fpump_points,
                quantity=quantity,
            )
            try:
                result = sweep.run_sweep(d, r, spec, grid, threads=ctx.obj["threads"])
            except ValueError as exc:
                raise ValidationFailure(str(exc)) from exc
            stem = f"sweep_{axis}_{quantity}"
            _write(out / f"{stem}.csv", sweep.sweep_csv(result))
            _write(out / f"{stem}_omega_on.csv", sweep.omega_on_csv(result))
            _write(
                out / f"{stem}.svg",
                svg.heatmap(
                    spec.fpump_values(), spec.axis_values(), result.values,
                    xlabel="f_pump", ylabel=f"{axis} (cm-1)", title=quantity,
                ),
            )
    _write_manifest(out, "sweep", ctx.obj["config"], d, r, grid, started,
                    {"axes": list(axes), "quantities": list(quantities),
                     "axis_points": axis_points, "fpump_points": fpump_points,
                     "fpump_max": fpump_max})


@main.command()
@click.option("--fpump", default=0.3, show_default=True,
              help="Pump fraction for the pumped case.")
@click.pass_context
def eigen(ctx, fpump):
    """Eigen-system tables and gradient markers for three coupling cases."""
    started = time.monotonic()
    if not 0.0 <= fpump < 0.5:
        raise click.UsageError(f"--fpump {fpump} out of range [0, 0.5)")
    d, r, grid, out = _common(ctx)

    cases = {
        "decoupled_cavities": hamiltonians.build_no_pump(
            dataclasses.replace(d, g_cav=0.0)
        ),
        "full_coupling": hamiltonians.build_no_pump(d),
        "full_coupling_pumped": hamiltonians.build_pump(d, fpump),
    }
    marker_lines = []
    for name, h in cases.items():
        es = hamiltonians.diagonalize(h)
        _write(out / f"eigen_{name}.csv", hamiltonians.eigensystem_csv(es))
        marker_lines.append(f"# {name}")
        for i, row in enumerate(hamiltonians.gradient_markers(es)):
            cells = " ".join(f"{label}:{pos}" for label, pos in row)
            marker_lines.append(
                f"state {i} ({format(es.eigenvalues[i], '.6f')} cm-1): {cells}"
            )
    _write(out / "gradient_markers.txt", "\n".join(marker_lines) + "\n")
    _write_manifest(out, "eigen", ctx.obj["config"], d, r, grid, started,
                    {"fpump": fpump})


@main.command()
@click.pass_context
def validate(ctx):
    """Check parameter invariants and the perturbative validity criterion."""
    d, r, grid = _load_inputs(ctx.obj["config"])
    errors = model.validate(d, r) + model.validate_grid(grid)
    for err in errors:
        click.echo(f"invariant violation: {err}")
    ok, v2, bound = reaction.validity_criterion(r, d)
    click.echo(f"validity criterion: V^2 = {v2:.6g} {'<' if ok else '>='} {bound:.6g}"
               f" -> {'ok' if ok else 'FAILED'}")
    if errors or (not ok and not ctx.obj["waive"]):
        raise ValidationFailure("validation failed")
    click.echo("parameters ok")


def run() -> None:
    try:
        main(obj={})
    except (SolverError, AssertionError) as exc:
        click.echo(f"internal solver error: {exc}", err=True)
        sys.exit(EXIT_SOLVER)


if __name__ == "__main__":
    run()
