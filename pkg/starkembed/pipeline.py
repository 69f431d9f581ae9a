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

"""Orchestration of the command-line operations."""

# Python standard library
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

# 3rd party libraries
import numpy as np
import tqdm

# Package libraries
from starkembed.analysis.boundary import match_boundary
from starkembed.analysis.fit import fit_decay
from starkembed.analysis.oscillatory import osc_decay_profile, reference_rate
from starkembed.analysis.report import theorem_report
from starkembed.integrator.levinson import levinson_subordinate, subordinate_by_backward
from starkembed.integrator.solve import integrate_xi
from starkembed.liouville.params import ModelParams
from starkembed.liouville.transform import beta, inverse_map
from starkembed.phases.search import search_phases
from starkembed.phases.trig import lemma_bound
from starkembed.potential.bounds import lemma_chain_bound, tail_sup_x, tail_sup_xi, theorem_bound, \
    triangle_bound
from starkembed.potential.construct import build_thm13_spec, build_thm15_spec
from starkembed.potential.export import default_x_grid, export_potential, sample_potential
from starkembed.potential.model import ConstructionMode, PotentialSpec
from starkembed.utility.output import dump_json, write_csv

logger = logging.getLogger(__name__)

OSCINT_COLUMNS = ['xi0', 'sup_partial_integral']
OSC_SLOPE_LIMIT = -0.05
AGREEMENT_LIMIT = 0.05
BOUNDED_RATIO_LIMIT = 3.0


def _out_path(config, name):
    if config.out_dir is None:
        return None
    os.makedirs(config.out_dir, exist_ok=True)
    return os.path.join(config.out_dir, name)


def write_document(config, name, document):
    """Write document as JSON to the output directory, if there is one."""
    path = _out_path(config, name)
    if path is not None:
        dump_json(document, path)


def fit_window(config):
    """[xi_min, xi_max / sqrt(10)], leaving the last half decade to the truncation at xi_max."""
    return config.xi_min, config.xi_max / math.sqrt(10.0)


def run_phases(config, progress=False):
    theta, certificate = search_phases(config.n, config.max_samples, config.seed, threads=config.threads,
                                       progress=progress)
    return {
        'command': 'phases',
        'N': config.n,
        'seed': config.seed,
        'theta': theta,
        'certificate': certificate,
        'bound': lemma_bound(config.n),
        'samples_used': theta.index + 1,
    }


def table_max(config):
    return max(ModelParams.DEFAULT_XI_TABLE_MAX, 2.0 * config.xi_max)


def build_spec(config, command, progress=False):
    """
    The potential of a run, read from --spec-in or constructed.

    :return: tuple (PotentialSpec, phase search document or None)
    """
    if config.spec_in is not None:
        with open(config.spec_in, 'r') as f:
            spec = PotentialSpec.from_json(f.read())
        logger.info("Loaded spec from {}".format(config.spec_in))
        return spec, None

    if config.mode == 'thm13':
        phases = run_phases(config, progress)
        spec = build_thm13_spec(config.n, config.alpha, phases['theta'], a=config.a, tol_ode=config.tol_ode,
                                tol_quad=config.tol_quad, xi_table_max=table_max(config))
        return spec, phases

    a = config.amplitude
    strict = not (command == 'asymptotics' and a <= (2.0 - config.alpha) / (2.0 * (2.0 + config.alpha)))
    spec = build_thm15_spec(config.levels, a, config.alpha, strict=strict, tol_ode=config.tol_ode,
                            tol_quad=config.tol_quad, xi_table_max=table_max(config))
    return spec, None


def _write_spec(spec, config, default_name):
    for path in (_out_path(config, default_name), config.spec_out):
        if path is not None:
            with open(path, 'w') as f:
                f.write(spec.to_json())
                f.write('\n')


def measure_bounds(spec, xi_max):
    """Sup measurements over the last decade below xi_max next to the proven bounds."""
    params = spec.params
    xi_lo = max(xi_max / 10.0, spec.active_start)
    document = {
        'window_xi': [xi_lo, xi_max],
        'theorem_bound': theorem_bound(spec),
        'triangle_bound_xiV': triangle_bound(spec.N, spec.a),
    }
    if spec.mode == ConstructionMode.THM13:
        document['lemma_chain_bound_xiV'] = lemma_chain_bound(spec.N, spec.a)
    if spec.a == 0.0:
        document['sup_xiV'] = 0.0
        document['sup_x'] = 0.0
    else:
        document['sup_xiV'] = tail_sup_xi(spec, xi_lo, xi_max)
        document['sup_x'] = tail_sup_x(spec, inverse_map(xi_lo, params), inverse_map(xi_max, params))
    return document


def run_construct(config, progress=False):
    spec, phases = build_spec(config, 'construct', progress)
    grid = default_x_grid(spec, config.xi_max, config.samples)
    path = _out_path(config, 'potential.csv')
    if path is None:
        x, q, xi, V = sample_potential(spec, grid)
    else:
        x, q, xi, V = export_potential(spec, path, x=grid)
    _write_spec(spec, config, 'spec.json')
    document = {
        'command': 'construct',
        'spec': spec,
        'phases': phases,
        'samples': len(x),
        'sample_max_xiV': float(np.max(xi * np.abs(V))),
        'bounds': measure_bounds(spec, config.xi_max),
    }
    write_document(config, 'construct.json', document)
    return document


def _level_run(spec, j, config):
    trace = subordinate_by_backward(spec, j, config.xi_max, config.xi_min, method=config.method)
    return trace, fit_decay(trace, window=fit_window(config))


def run_levels(spec, config, progress=False):
    """Subordinate solution and decay fit of every level, at most config.threads at a time."""
    bar = tqdm.tqdm(desc="levels", total=spec.N, disable=not progress)
    try:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_level_run, spec, j, config) for j in range(spec.N)]
            results = []
            for future in futures:
                results.append(future.result())
                bar.update(1)
    finally:
        bar.close()
    return [trace for trace, _ in results], [fit for _, fit in results]


def run_embed(config, progress=False):
    """
    Construct, integrate every level backward from xi_max and certify.

    :return: tuple (document, CertificateReport)
    """
    spec, phases = build_spec(config, 'embed', progress)
    extra = {'command': 'embed', 'phases': phases, 'xi_max': config.xi_max, 'xi_min': config.xi_min}
    if config.match_level is not None:
        match = match_boundary(spec, config.match_level)
        spec = match.spec
        extra['boundary'] = match

    traces, fits = run_levels(spec, config, progress)
    report = theorem_report(spec, traces, fits, xi_max=config.xi_max, extra=extra)
    document = report.to_dict()

    for j, trace in enumerate(traces):
        path = _out_path(config, 'trace_level_{}.csv'.format(j))
        if path is not None:
            trace.to_csv(path)
    _write_spec(spec, config, 'spec.json')
    write_document(config, 'report.json', document)
    return document, report


def run_oscint(config):
    energies = [config.e1] if config.kind == 'single' else [config.e1, config.e2]
    params = ModelParams(config.alpha, energies=energies, tol_quad=config.tol_quad,
                         xi_table_max=max(ModelParams.DEFAULT_XI_TABLE_MAX, 2.0 * config.xi_end))
    profile = osc_decay_profile(config.kind, config.a_coef, config.gamma, config.e1, params, E2=config.e2,
                                sign=config.sign, xi0_list=config.xi0, xi_end=config.xi_end)
    document = {
        'command': 'oscint',
        'alpha': config.alpha,
        'profile': profile,
        'slope_limit': OSC_SLOPE_LIMIT,
        'verdict': 'pass' if profile.slope <= OSC_SLOPE_LIMIT else 'fail',
    }
    if config.kind == 'pair' and config.sign == '-':
        document['reference_rate'] = reference_rate(config.alpha)

    path = _out_path(config, 'oscint.csv')
    if path is not None:
        write_csv(path, OSCINT_COLUMNS, [profile.xi0_list, profile.sups])
    write_document(config, 'oscint.json', document)
    return document


def growing_init(spec, j, xi):
    """(phi, phi') of the rotating-frame direction y = (0, 1) of level j at xi."""
    level = spec.levels[j]
    theta = spec.params.phase(level.E)(xi) + level.t
    s = math.sqrt(1.0 - beta(level.E, xi, spec.params))
    return math.sin(theta) / s, math.cos(theta)


def non_resonant_ratio(spec, j, xi_range, method='magnus'):
    """
    max R / min R of a solution at the energy midway between level j and its neighbour.

    :return: tuple (energy, ratio)
    """
    k = j + 1 if j + 1 < spec.N else j - 1
    E = 0.5 * (spec.levels[j].E + spec.levels[k].E)
    trace = integrate_xi(spec, E, xi_range, (1.0, 0.0), method=method)
    R = trace.R[np.isfinite(trace.R)]
    return E, float(np.max(R) / np.min(R))


def run_asymptotics(config, progress=False):
    """Levinson and backward subordinate solutions of one level, their agreement and the growing solution."""
    spec, phases = build_spec(config, 'asymptotics', progress)
    j = config.level or 0
    lo, hi = fit_window(config)

    solution = levinson_subordinate(spec, j, config.xi_max, config.xi_min)
    backward = subordinate_by_backward(spec, j, config.xi_max, config.xi_min, method=config.method)
    forward = integrate_xi(spec, spec.levels[j].E, (config.xi_min, config.xi_max),
                           growing_init(spec, j, config.xi_min), method=config.method)

    overlap = backward.window(lo, hi)
    levinson_R = np.interp(overlap.grid, solution.grid, np.hypot(solution.y[:, 0], solution.y[:, 1]))
    ratio = overlap.R / levinson_R
    ratio /= np.median(ratio)
    agreement = float(np.max(np.abs(ratio - 1.0)))

    checks = [agreement <= AGREEMENT_LIMIT]
    document = {
        'command': 'asymptotics',
        'level': j,
        'E': spec.levels[j].E,
        'a': spec.a,
        'phases': phases,
        'levinson': solution,
        'levinson_fit': fit_decay(solution, window=(lo, hi)),
        'backward_fit': fit_decay(backward, window=(lo, hi)),
        'forward_fit': fit_decay(forward, window=(lo, hi)),
        'agreement': agreement,
        'agreement_limit': AGREEMENT_LIMIT,
    }
    if spec.N >= 2:
        E, bounded = non_resonant_ratio(spec, j, (config.xi_min, config.xi_max), method=config.method)
        document['non_resonant'] = {'E': E, 'ratio': bounded, 'limit': BOUNDED_RATIO_LIMIT}
        checks.append(bounded <= BOUNDED_RATIO_LIMIT)
    document['verdict'] = 'pass' if all(checks) else 'fail'
    write_document(config, 'asymptotics.json', document)
    return document
