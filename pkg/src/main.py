"""Point d'entrée CLI de BAPFactor (factorize, certify, opnorm, gen)."""

import sys
from pathlib import Path
from typing import List, Optional, Sequence

import click
import structlog

from . import __version__
from .exceptions import BapFactorError, ValidationError
from .utils.config import Config
from .utils.logger import setup_logger
from .utils.serialization import dumps


def _parse_list(value: str, cast, field_name: str) -> List:
    try:
        return [cast(item.strip()) for item in value.split(",") if item.strip()]
    except ValueError:
        raise ValidationError.invalid_format(field_name, value, "liste séparée par des virgules")


def _load_config() -> Config:
    config = Config.from_env()
    config.validate()
    setup_logger(config.log_level, config.environment)
    return config


def _stage_line(stage: dict) -> str:
    status = "ok" if stage["passed"] else "ÉCHEC"
    return f"  {stage['name']:<28} {status}"


def _space_label(space: Optional[dict]) -> str:
    return f"{space['norm']}^{space['dim']}" if space else "?"


def _print_report(report: dict) -> None:
    summary = report.get("scenario") or {}
    click.echo(f"{report['command']}: {_space_label(summary.get('x'))} -> {_space_label(summary.get('w'))}, "
               f"{summary.get('block_count', '?')} blocs, K = {summary.get('K', '?')}")
    for stage in report["stages"]:
        click.echo(_stage_line(stage))
    failure = report.get("failure")
    if failure:
        click.echo(f"Échec à l'étape {failure['stage']} (indice {failure['index']})", err=True)
        error = failure.get("error")
        if error:
            click.echo(f"  {error['error_code']}: {error['message']}", err=True)
    click.echo(f"exit_code = {report['exit_code']}")


def _fail(error: BapFactorError) -> None:
    structlog.get_logger("cli").error("command_failed", error_code=error.error_code, message=error.message)
    click.echo(f"Erreur [{error.error_code}]: {error.message}", err=True)
    sys.exit(error.exit_code)


@click.group()
@click.version_option(version=__version__, prog_name="bapfactor")
def main() -> None:
    """Factorisation T = j∘Ã et certification BAP d'opérateurs de rang fini."""


@main.command()
@click.argument("scenario", type=click.Path(path_type=Path))
@click.option("-o", "--output", "out_path", type=click.Path(path_type=Path), default=None,
              help="Rapport JSON")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), default=None,
              help="Courbe des sommes partielles (CSV)")
def factorize(scenario: Path, out_path: Optional[Path], csv_path: Optional[Path]) -> None:
    """Construit Y, Ã et j pour un scénario et certifie chaque borne."""
    from .core.pipeline import FactorisationPipeline

    try:
        config = _load_config()
        report = FactorisationPipeline(config).run_factorize(scenario, out_path, csv_path)
    except BapFactorError as e:
        _fail(e)
        return
    _print_report(report)
    sys.exit(report["exit_code"])


@main.command()
@click.argument("scenario", type=click.Path(path_type=Path))
@click.option("--eps", "eps", default="0", show_default=True,
              help="Valeurs d'ε séparées par des virgules")
@click.option("-o", "--output", "out_path", type=click.Path(path_type=Path), default=None,
              help="Rapport JSON")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), default=None,
              help="Courbe des sommes partielles (CSV)")
def certify(scenario: Path, eps: str, out_path: Optional[Path], csv_path: Optional[Path]) -> None:
    """Certifie la BAP dans les deux sens et compare les certificats."""
    from .core.pipeline import FactorisationPipeline

    try:
        config = _load_config()
        eps_list = _parse_list(eps, float, "eps")
        if not eps_list or any(value < 0 for value in eps_list):
            raise ValidationError.value_out_of_range("eps", eps, min_value=0)
        report = FactorisationPipeline(config).run_certify(scenario, eps_list, out_path, csv_path)
    except BapFactorError as e:
        _fail(e)
        return
    _print_report(report)
    sys.exit(report["exit_code"])


@main.command()
@click.argument("matrix", type=click.Path(path_type=Path))
@click.option("--from", "from_tag", type=click.Choice(["l1", "l2", "linf"], case_sensitive=False),
              required=True, help="Norme du domaine")
@click.option("--to", "to_tag", type=click.Choice(["l1", "l2", "linf"], case_sensitive=False),
              required=True, help="Norme du codomaine")
def opnorm(matrix: Path, from_tag: str, to_tag: str) -> None:
    """Norme induite exacte d'une matrice (contrôle par grille en dimension ≤ 3)."""
    from .core.pipeline import FactorisationPipeline

    try:
        config = _load_config()
        result = FactorisationPipeline(config).run_opnorm(matrix, from_tag, to_tag)
    except BapFactorError as e:
        _fail(e)
        return
    click.echo(dumps(result), nl=False)
    grid = result.get("grid")
    sys.exit(1 if grid is not None and not grid["passed"] else 0)


@main.command()
@click.option("--seed", type=int, required=True, help="Graine PCG64")
@click.option("--dims", required=True, help="dim X,dim W (ex: 3,3)")
@click.option("--tags", required=True, help="Normes de X et W (ex: linf,l1)")
@click.option("--blocks", "block_count", type=int, required=True, help="Nombre de blocs")
@click.option("--ranks", required=True, help="Rangs des blocs (ex: 1,2,1)")
@click.option("--decay", type=float, default=0.5, show_default=True, help="Décroissance dans (0, 1)")
@click.option("-o", "--output", "out_path", type=click.Path(path_type=Path), required=True,
              help="Fichier scénario JSON")
def gen(seed: int, dims: str, tags: str, block_count: int, ranks: str, decay: float,
        out_path: Path) -> None:
    """Génère un scénario reproductible à partir d'une graine."""
    from .core.scenarios import gen_scenario, save_scenario

    try:
        config = _load_config()
        scenario = gen_scenario(
            seed,
            _parse_list(dims, int, "dims"),
            _parse_list(tags, str, "tags"),
            block_count,
            _parse_list(ranks, int, "ranks"),
            decay,
            config
        )
        save_scenario(scenario, out_path)
    except BapFactorError as e:
        _fail(e)
        return
    click.echo(dumps(scenario.summary()), nl=False)


def run(argv: Optional[Sequence[str]] = None) -> None:
    """Lance la CLI (utilisé par ``python -m src``)."""
    main.main(args=list(argv) if argv is not None else None, prog_name="bapfactor")


if __name__ == "__main__":
    run()
