"""Command-line interface: replay scripted debates, validate scripts, and
run the HTTP service."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import ServiceConfig
from .errors import ScriptError
from .grid import ForecastGrid
from .replay import DebateScript, emit_report, load_script, run_replay, validate_script

VALIDATION_EXIT = 2


@click.group()
def main() -> None:
    """Forecasting debates: replay, validation, and service."""


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--policy", type=click.Choice(["mean", "brier"]), default="mean", show_default=True)
@click.option("--grid", type=float, default=0.01, show_default=True, help="forecast grid step")
@click.option(
    "--format",
    "format_",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="write report to a file")
def replay(script: str, policy: str, grid: float, format_: str, out: str | None) -> None:
    """Replay a debate script and emit its accuracy/irrationality report."""
    try:
        debate = load_script(script)
        report = run_replay(debate, policy=policy, grid=ForecastGrid.from_step(grid))
    except ScriptError as exc:
        click.echo(f"invalid script: {exc.message}", err=True)
        sys.exit(VALIDATION_EXIT)
    rendered = emit_report(report, format_)
    if out:
        Path(out).write_text(rendered, encoding="utf-8")
        click.echo(f"report written to {out}")
    else:
        click.echo(rendered, nl=False)


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
def validate(script: str) -> None:
    """Check a debate script; exit 2 when it is invalid."""
    try:
        doc = json.loads(Path(script).read_text(encoding="utf-8"))
        debate = DebateScript.from_json(doc)
    except (OSError, ValueError, ScriptError) as exc:
        message = exc.message if isinstance(exc, ScriptError) else str(exc)
        click.echo(f"invalid script: {message}", err=True)
        sys.exit(VALIDATION_EXIT)
    problems = validate_script(debate)
    if problems:
        for problem in problems:
            click.echo(f"invalid script: {problem}", err=True)
        sys.exit(VALIDATION_EXIT)
    click.echo(f"{script}: ok")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--host", default=None, help="override bind host")
@click.option("--port", type=int, default=None, help="override bind port")
@click.option("--store", default=None, help="override store root directory")
def serve(config_path: str | None, host: str | None, port: int | None, store: str | None) -> None:
    """Run the HTTP/JSON service."""
    from .service import serve_api

    config = ServiceConfig.load(config_path)
    if host:
        config.host = host
    if port:
        config.port = port
    if store:
        config.store_root = store
    serve_api(config)


if __name__ == "__main__":
    main()
