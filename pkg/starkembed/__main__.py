#
# Copyright (c) 2026 The starkembed developers
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without modification,
# are permitted provided that the following conditions are met:
#
#   1. Redistributions of source code must retain the above copyright notice, this
#   list of conditions and the following disclaimer.
#
#   2. Redistributions in binary form must reproduce the above copyright notice, this
#   list of conditions and the following disclaimer in the documentation and/or
#   other materials provided with the distribution.
#
#   3. Neither the name of the copyright holder nor the names of other
#   contributors to this software may be used to endorse or promote products
#   derived from this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND
# ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE IMPLIED
# WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE
# DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE LIABLE FOR
# ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES
# (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES;
# LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON
# ANY THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT
# (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS
# SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.
#

"""starkembed command line tool."""
import logging
import sys

import click

from starkembed import version as starkembed_version
from starkembed.exceptions import InvalidInputException, StarkEmbedException
from starkembed.integrator.magnus import TRACE_LOGGING_LEVEL
from starkembed.phases.search import BudgetExhaustedException
from starkembed.pipeline import run_asymptotics, run_construct, run_embed, run_oscint, run_phases, \
    write_document
from starkembed.utility.config import RunConfig
from starkembed.utility.output import to_json

logger = logging.getLogger(__name__)

EXIT_INVALID_INPUT = 1
EXIT_BUDGET_EXHAUSTED = 2
EXIT_FAILED = 3


class RunFailure(click.ClickException):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def exit_code_of(e):
    if isinstance(e, BudgetExhaustedException):
        return EXIT_BUDGET_EXHAUSTED
    if isinstance(e, InvalidInputException):
        return EXIT_INVALID_INPUT
    return EXIT_FAILED


def module_tag(e):
    """'integrator' for exceptions raised from starkembed.integrator.*."""
    parts = type(e).__module__.split('.')
    return parts[1] if len(parts) > 2 else parts[-1]


def guarded(func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except StarkEmbedException as e:
        raise RunFailure("[{}] {}".format(module_tag(e), e), exit_code_of(e))


class StarkGroup(click.Group):
    """
    Click group with the exit codes of this tool: usage errors exit with 1,
    as 2 is reserved for an exhausted search budget.
    """

    def main(self, *args, **kwargs):
        kwargs['standalone_mode'] = False
        try:
            rv = super().main(*args, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_INVALID_INPUT)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_INVALID_INPUT)
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=StarkGroup)
@click.option('-v', '--verbose',
              help='Increase verbosity of output. Can be specified more than once (up to -v -v -v -v).',
              count=True)
@click.option('-o', '--output',
              help='Log output to file',
              metavar='<filename>')
@click.pass_context
def cli(ctx, verbose, output):
    if verbose == 0:
        log_level = logging.ERROR
    elif verbose == 1:
        log_level = logging.WARNING
    elif verbose == 2:
        log_level = logging.INFO
    elif verbose == 3:
        log_level = logging.DEBUG
    else:
        # Custom level, logs the per-chunk statistics of the stepping engine
        log_level = TRACE_LOGGING_LEVEL

    logging.basicConfig(format='%(asctime)s %(message)s', level=log_level)

    if output:
        root = logging.getLogger('')
        fh = logging.FileHandler(output)
        fh.setLevel(log_level)
        fh.setFormatter(logging.Formatter('%(asctime)s %(message)s'))
        root.addHandler(fh)

    ctx.obj = {'progress': verbose >= 2}


def config_option(f):
    return click.option('--config', 'config_path',
                        help='YAML or JSON file with default values for the options below.',
                        type=click.Path(exists=True, dir_okay=False))(f)


def search_options(f):
    for option in reversed([
        click.option('--n', type=int, help='Number of eigenvalues.'),
        click.option('--seed', type=int, help='Seed of the phase search.'),
        click.option('--max-samples', type=int, help='Budget of the phase search.'),
    ]):
        f = option(f)
    return f


def model_options(f):
    for option in reversed([
        click.option('--alpha', type=float, help='Exponent of the Stark envelope -x^alpha.'),
        click.option('--mode', type=click.Choice(['thm13', 'thm15']),
                     help='thm13: N equally spaced eigenvalues. thm15: the levels given with --levels.'),
        click.option('--a', 'a', type=float, help='Amplitude of the oscillatory terms.'),
        click.option('--levels', type=str, help='Levels for thm15 mode, e.g. "E=1:theta=0.3,E=2:theta=1.1".'),
        click.option('--xi-max', type=float, help='End of the integration in xi.'),
        click.option('--tol-ode', type=float, help='Relative tolerance of the ODE stepping.'),
        click.option('--tol-quad', type=float, help='Relative tolerance of the phase quadrature.'),
        click.option('--spec-in', type=click.Path(exists=True, dir_okay=False),
                     help='Use the potential stored in this spec file.'),
        click.option('--spec-out', type=click.Path(), help='Write the potential spec to this file.'),
        click.option('--out-dir', type=click.Path(file_okay=False), help='Directory for result files.'),
    ]):
        f = option(f)
    return f


def load_config(command, config_path, **flags):
    return guarded(lambda: RunConfig.load(config_path, **flags).validate(command))


@cli.command()
def version():
    """Display starkembed version."""
    click.echo("starkembed version {}".format(starkembed_version.STARKEMBED_VERSION))


@cli.command(short_help='Search the phases of a low-sup trigonometric sum.')
@config_option
@search_options
@click.option('--out-dir', type=click.Path(file_okay=False), help='Also write phases.json to this directory.')
@click.pass_context
def phases(ctx, config_path, **flags):
    """
    Draw phase vectors until the certified sups of the two trigonometric sums
    stay within the bound, and print the result as JSON.
    """
    config = load_config('phases', config_path, **flags)
    document = guarded(run_phases, config, ctx.obj['progress'])
    write_document(config, 'phases.json', document)
    click.echo(to_json(document))


@cli.command(short_help='Construct a potential and sample it.')
@config_option
@model_options
@search_options
@click.option('--samples', type=int, help='Number of potential samples.')
@click.pass_context
def construct(ctx, config_path, **flags):
    """
    Construct the potential, write potential.csv (x, q, xi, V), spec.json and
    construct.json with the measured sups to --out-dir.
    """
    config = load_config('construct', config_path, **flags)
    document = guarded(run_construct, config, ctx.obj['progress'])
    click.echo(to_json(document['bounds']))


@cli.command(short_help='Construct a potential and certify its eigenvalues.')
@config_option
@model_options
@search_options
@click.option('--xi-min', type=float, help='Start of the decay fits.')
@click.option('--match-level', type=int, help='Match the boundary angle of this thm15 level.')
@click.option('--method', type=click.Choice(['magnus', 'DOP853']), help='ODE integrator.')
@click.pass_context
def embed(ctx, config_path, **flags):
    """
    Construct the potential, integrate the decaying solution of every level,
    and write report.json, trace_level_<j>.csv and spec.json to --out-dir.

    Exits with 3 when the certificate fails.
    """
    config = load_config('embed', config_path, **flags)
    _, report = guarded(run_embed, config, ctx.obj['progress'])
    click.echo(report.summary_table())
    if not report.passed:
        ctx.exit(EXIT_FAILED)


@cli.command(short_help='Decay of oscillatory integrals.')
@config_option
@click.option('--alpha', type=float, help='Exponent of the Stark envelope.')
@click.option('--kind', type=click.Choice(['single', 'pair']), help='One phase or the sum of two.')
@click.option('--a-coef', type=float, help='Coefficient of the phase.')
@click.option('--gamma', type=float, help='Constant shift of the phase.')
@click.option('--e1', type=float, help='Energy of the first phase.')
@click.option('--e2', type=float, help='Energy of the second phase.')
@click.option('--sign', type=click.Choice(['+', '-']), help='Sign between the two phases.')
@click.option('--xi0', type=str, help='Comma separated starting points.')
@click.option('--xi-end', type=float, help='End of the partial integrals.')
@click.option('--tol-quad', type=float, help='Relative tolerance of the phase quadrature.')
@click.option('--out-dir', type=click.Path(file_okay=False), help='Directory for oscint.csv and oscint.json.')
@click.pass_context
def oscint(ctx, config_path, **flags):
    """
    Sup of the partial integrals of sin(a Phi + gamma) / s over [xi0, xi_end]
    for every xi0 and their log-log slope.
    """
    config = load_config('oscint', config_path, **flags)
    document = guarded(run_oscint, config)
    click.echo(to_json(document))
    if document['verdict'] != 'pass':
        ctx.exit(EXIT_FAILED)


@cli.command(short_help='Compare the two routes to a decaying solution.')
@config_option
@model_options
@search_options
@click.option('--xi-min', type=float, help='Start of the comparison window.')
@click.option('--level', type=int, help='Level index, 0 by default.')
@click.option('--method', type=click.Choice(['magnus', 'DOP853']), help='ODE integrator.')
@click.pass_context
def asymptotics(ctx, config_path, **flags):
    """
    Decaying solution of one level by the Levinson iteration and by backward
    integration, their decay fits, their agreement and the fit of a growing solution.
    """
    config = load_config('asymptotics', config_path, **flags)
    document = guarded(run_asymptotics, config, ctx.obj['progress'])
    click.echo(to_json(document))
    if document['verdict'] != 'pass':
        ctx.exit(EXIT_FAILED)


if __name__ == '__main__':
    cli()
