"""
The `flask schubert` command group: one command per tool.

    flask --app run schubert info --matroid catalog:ex82
    flask --app run schubert verify all --matroid catalog:U(2,2) --json report.json

Exit codes: 0 when everything requested passed, 1 when a check failed or an
internal consistency error fired, 2 for input and usage errors.
"""

import json
import logging
import sys
from typing import Dict

import click
from flask.cli import AppGroup
from tabulate import tabulate

from app.schubert.catalog import read_matroid_source
from app.tools.registry import ToolRegistry

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

schubert_cli = AppGroup('schubert', help='Tropical matroid Schubert varieties.')


def matroid_option(f):
    return click.option('--matroid', '-m', 'matroid', required=True, metavar='FILE|catalog:NAME',
                        help='Matroid document path or catalog:NAME.')(f)


def common_options(f):
    f = click.option('--quiet', '-q', is_flag=True, help='Only warnings and errors on stderr.')(f)
    f = click.option('--seedless', is_flag=True,
                     help='Accepted for compatibility; every computation is deterministic.')(f)
    f = click.option('--json', 'json_out', metavar='OUT', default=None,
                     help="Write the result as JSON to OUT ('-' for stdout).")(f)
    return f


def size_options(f):
    f = click.option('--force-large', is_flag=True, help='Run cohomology above the ground set limit.')(f)
    f = click.option('--max-p', type=click.IntRange(min=0), default=None, help='Highest row p to compute.')(f)
    return f


def _write_json(data: Dict, out: str) -> None:
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'
    if out == '-':
        click.echo(text, nl=False)
    else:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text)


def _print_tables(tool, data: Dict) -> None:
    for title, headers, rows in tool.summary_tables(data):
        if title:
            click.echo(title)
        click.echo(tabulate(rows, headers=headers, tablefmt='simple'))
        click.echo()


def run_tool(slug: str, form_data: Dict, json_out: str = None, quiet: bool = False, **_) -> None:
    """Validate, execute and render one tool, then exit with the status contract."""
    if quiet:
        logging.getLogger('app').setLevel(logging.WARNING)

    tool = ToolRegistry.get_tool(slug)
    is_valid, error_message = tool.validate_input(form_data)
    if not is_valid:
        click.echo(f'Error: {error_message}', err=True)
        sys.exit(EXIT_INPUT)

    results = tool.execute(form_data)
    if not results['success']:
        click.echo(f"Error: {results['message']}", err=True)
        if results.get('error', {}).get('details'):
            click.echo(json.dumps(results['error']['details'], sort_keys=True), err=True)
        sys.exit(EXIT_INPUT if results.get('input_error') else EXIT_FAILED)

    data = results['data']
    if json_out:
        _write_json(data, json_out)
    elif slug == 'export-dot':
        click.echo(data['dot'], nl=False)
    else:
        _print_tables(tool, data)

    if not quiet and json_out != '-':
        click.echo(results['message'], err=True)
    if data.get('passed') is False:
        sys.exit(EXIT_FAILED)
    sys.exit(EXIT_OK)


@schubert_cli.command('info')
@matroid_option
@common_options
def info_command(matroid, **options):
    """Rank, Whitney numbers, f-vector and characteristic polynomials."""
    run_tool('info', {'matroid': read_matroid_source(matroid)}, **options)


@schubert_cli.command('fan')
@matroid_option
@common_options
def fan_command(matroid, **options):
    """Rays and cones of the augmented Bergman fan."""
    run_tool('fan', {'matroid': read_matroid_source(matroid)}, **options)


@schubert_cli.command('faces')
@matroid_option
@click.option('--force-large', is_flag=True, help='Build the face complex above the ground set limit.')
@common_options
def faces_command(matroid, force_large, **options):
    """Cells and strata of Y_M."""
    run_tool('faces', {'matroid': read_matroid_source(matroid), 'force_large': force_large}, **options)


@schubert_cli.command('cohomology')
@matroid_option
@size_options
@common_options
def cohomology_command(matroid, max_p, force_large, **options):
    """The table dim H^{p,q}(Y_M)."""
    form = {'matroid': read_matroid_source(matroid), 'max_p': max_p, 'force_large': force_large}
    run_tool('cohomology', form, **options)


@schubert_cli.command('spectral')
@matroid_option
@click.option('--max-p', type=click.IntRange(min=0), default=None, help='Highest row p to compute.')
@common_options
def spectral_command(matroid, max_p, **options):
    """E_1 and E_2 pages of the rank spectral sequence."""
    run_tool('spectral', {'matroid': read_matroid_source(matroid), 'max_p': max_p}, **options)


@schubert_cli.command('algebra')
@matroid_option
@click.option('--force-large', is_flag=True, help='Build the Chow ring above the ground set limit.')
@common_options
def algebra_command(matroid, force_large, **options):
    """The graded Mobius algebra against the Chow ring subalgebra."""
    run_tool('algebra', {'matroid': read_matroid_source(matroid), 'force_large': force_large}, **options)


@schubert_cli.command('verify')
@click.argument('check', default='all')
@matroid_option
@size_options
@common_options
def verify_command(check, matroid, max_p, force_large, **options):
    """Run CHECK (a slug, a comma separated list, or all) and print the report."""
    form = {'matroid': read_matroid_source(matroid), 'check': check, 'max_p': max_p, 'force_large': force_large}
    run_tool('verify', form, **options)


@schubert_cli.command('export-dot')
@matroid_option
@common_options
def export_dot_command(matroid, **options):
    """The stratification poset as Graphviz DOT."""
    run_tool('export-dot', {'matroid': read_matroid_source(matroid)}, **options)


@schubert_cli.command('catalog')
@common_options
def catalog_command(**options):
    """List catalog matroids."""
    run_tool('catalog', {}, **options)
