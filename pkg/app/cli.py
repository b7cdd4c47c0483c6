"""Command-line interface: `weno run`, `weno presets`, `weno show`."""

import os
from typing import Optional

import click

from app import create_app
from app.exceptions import ConfigParseError, DivergenceError, OutputError
from app.services.config_parser import load_config, render_config
from app.services.presets import get_preset, list_presets

EXIT_PARSE_ERROR = 2
EXIT_DIVERGENCE = 3
EXIT_OUTPUT_ERROR = 4


@click.group()
@click.option(
    "--env",
    type=click.Choice(["development", "production", "testing"]),
    default=lambda: os.getenv("WENO_ENV", "development"),
    show_default="WENO_ENV or development",
    help="Configuration profile (logging, output and cache directories).",
)
@click.pass_context
def main(ctx: click.Context, env: str):
    """WENO-JS, mapped WENO-X and LOP-WENO-X experiments."""
    ctx.obj = create_app(env)


@main.command()
@click.argument("preset", required=False)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Run configuration file in key = value format.")
@click.option("--out", "output_dir", type=click.Path(file_okay=False), default=None,
              help="Output directory for the CSV files.")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Solver threads; 1 keeps results bit-reproducible.")
@click.option("--trace", is_flag=True, default=False,
              help="Record mapping traces for 1D runs.")
@click.option("--full-precision", is_flag=True, default=None,
              help="Write 17 significant digits instead of 6.")
@click.pass_context
def run(
    ctx: click.Context,
    preset: Optional[str],
    config_path: Optional[str],
    output_dir: Optional[str],
    workers: Optional[int],
    trace: bool,
    full_precision: Optional[bool],
):
    """Run PRESET or the configuration given with --config."""
    from tasks.experiment_tasks import run_experiment

    try:
        if (preset is None) == (config_path is None):
            raise ConfigParseError("give exactly one of PRESET or --config")
        config = get_preset(preset).config if preset else load_config(config_path)
        result = run_experiment(
            config,
            output_dir=output_dir,
            workers=workers,
            trace=trace,
            full_precision=full_precision,
            app_config=ctx.obj,
        )
    except ConfigParseError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_PARSE_ERROR)
    except DivergenceError as e:
        click.echo(f"Error: solver diverged: {e}", err=True)
        ctx.exit(EXIT_DIVERGENCE)
    except OutputError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_OUTPUT_ERROR)

    for path in result.files:
        click.echo(path)


@main.command()
@click.option("--full-only", is_flag=True, default=False, help="Hide the desk-scale variants.")
def presets(full_only: bool):
    """List the named experiments."""
    for preset in list_presets(desk=not full_only):
        click.echo(f"{preset.name:<24} {preset.description}")


@main.command()
@click.argument("preset")
@click.pass_context
def show(ctx: click.Context, preset: str):
    """Print PRESET as a configuration file."""
    try:
        config = get_preset(preset).config
    except ConfigParseError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_PARSE_ERROR)
    click.echo(render_config(config), nl=False)


if __name__ == "__main__":
    main()
