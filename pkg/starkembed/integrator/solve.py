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

"""Integration of the transformed equation in xi and of the Schroedinger equation in x."""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np
from scipy.integrate import solve_ivp

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.integrator.magnus import MAX_STEP, StepFailureException, propagate
from starkembed.integrator.trace import SolutionTrace, rotate
from starkembed.liouville.phase import PhaseDomainException
from starkembed.liouville.transform import forward_map, inverse_map, q_potential

logger = logging.getLogger(__name__)

REPORT_PER_DECADE = 64
METHODS = ('magnus', 'DOP853')
DIRECTIONS = ('forward', 'backward')


def report_grid(lo, hi, per_decade=REPORT_PER_DECADE):
    """Logarithmic reporting grid including both ends; a grid starting at 0 keeps 0 as its first point."""
    if not hi > lo:
        raise InvalidInputException("Empty range [{}, {}]".format(lo, hi))
    start = lo if lo > 0 else hi * 1e-3
    count = max(2, int(math.ceil(math.log10(hi / start) * per_decade)) + 1)
    grid = np.geomspace(start, hi, count)
    if lo <= 0:
        grid = np.concatenate([[lo], grid[grid > lo]])
    grid[0], grid[-1] = lo, hi
    return grid


def frame_phase(spec, E):
    """t_j of the level with energy E, 0 for energies that are not levels."""
    if spec is not None:
        for level in spec.levels:
            if abs(level.E - E) <= 1e-12 * max(1.0, abs(E)):
                return level.t
    return 0.0


def rotating_frame(trace, E, t, params):
    """
    Trace with y = Rot(Phi_E + t) (sqrt(1 - beta_E) phi, phi') filled in.

    :param SolutionTrace trace: a trace in either variable
    :param float E: energy of the frame
    :param float t: frame phase
    :param ModelParams params: model parameters
    :return: SolutionTrace
    """
    y1 = np.full(len(trace), np.nan)
    y2, R = y1.copy(), y1.copy()
    positive = trace.grid > 0
    if np.any(positive):
        part = trace.window(trace.grid[positive][0], np.inf)
        xi, phi, dphi = part.xi_state(params)
        try:
            y1[positive], y2[positive], R[positive] = rotate(xi, phi, dphi, E, t, params)
        except PhaseDomainException as e:
            logger.warning("No rotating frame for E={}: {}".format(E, e))
    meta = dict(trace.meta, frame_phase=float(t))
    return SolutionTrace(trace.grid, trace.phi, trace.dphi, trace.E, trace.variable, y1, y2, R, meta)


def _points(report, breakpoints, lo, hi, extra=None):
    inner = [p for p in breakpoints if lo < p < hi]
    parts = [report, inner]
    if extra is not None:
        parts.append(extra[(extra > lo) & (extra < hi)])
    return np.unique(np.concatenate(parts))


def _check_init(init):
    init = np.asarray(init, dtype=float)
    if init.shape != (2,) or not np.all(np.isfinite(init)) or not np.any(init != 0.0):
        raise InvalidInputException("Initial data must be a finite non-zero pair, got {}".format(init))
    return init


def _run(w, points, report, init, tol, direction, method):
    if direction not in DIRECTIONS:
        raise InvalidInputException("Unknown direction {}".format(direction))
    if method not in METHODS:
        raise InvalidInputException("Unknown method {}".format(method))
    backward = direction == 'backward'
    wanted = np.isin(points, report)

    if method == 'magnus':
        states, stats = propagate(w, points, init, tol, backward=backward)
        return states[wanted], stats

    # reference route, piecewise between consecutive mandatory points
    def rhs(t, y):
        return [y[1], w(np.asarray(t)) * y[0]]

    order = range(len(points) - 1)
    if backward:
        order = reversed(order)
    states = np.empty((len(points), 2))
    states[-1 if backward else 0] = init
    state = init
    evaluations = 0
    for k in order:
        span = (points[k + 1], points[k]) if backward else (points[k], points[k + 1])
        solution = solve_ivp(rhs, span, state, method='DOP853', rtol=tol, atol=tol * 1e-3, max_step=MAX_STEP)
        if not solution.success:
            raise StepFailureException(float(solution.t[-1]))
        evaluations += solution.nfev
        state = solution.y[:, -1]
        states[k if backward else k + 1] = state
    return states[wanted], {'steps': evaluations, 'chunks': len(points) - 1}


def integrate_xi(spec, E, xi_range, init, direction='forward', method='magnus', report=None, params=None):
    """
    Solve -phi'' + Q(xi, E) phi = phi on xi_range.

    :param PotentialSpec spec: potential, None for V = 0 (params then required)
    :param float E: energy
    :param tuple xi_range: (xi_lo, xi_hi) with 0 < xi_lo < xi_hi
    :param init: (phi, phi') at xi_lo, or at xi_hi when direction is backward
    :param str direction: forward or backward
    :param str method: magnus, or DOP853 for the scipy reference integrator
    :param report: explicit reporting abscissae, 64 per decade when None
    :return: SolutionTrace with the rotating frame of E filled in where Phi_E is tabulated
    """
    params = spec.params if spec is not None else params
    if params is None:
        raise InvalidInputException("Model parameters are required without a potential")
    lo, hi = float(xi_range[0]), float(xi_range[1])
    if not 0.0 < lo < hi:
        raise InvalidInputException("Need 0 < xi_lo < xi_hi, got [{}, {}]".format(lo, hi))
    init = _check_init(init)
    V = spec.V if spec is not None else None
    tol = params.tol_ode

    def w(xi):
        return q_potential(xi, E, V, params) - 1.0

    report = report_grid(lo, hi) if report is None else np.unique(np.clip(report, lo, hi))
    breakpoints = spec.breakpoints() if spec is not None else []
    points = _points(report, breakpoints, lo, hi)
    states, stats = _run(w, points, report, init, tol, direction, method)

    meta = {'method': method, 'direction': direction, 'tol_ode': tol, 'range': [lo, hi], 'steps': stats['steps']}
    logger.info("xi trace E={:.6g} on [{:.4g}, {:.4g}] ({}, {}): {} steps".format(
        E, lo, hi, method, direction, stats['steps']))
    trace = SolutionTrace(report, states[:, 0], states[:, 1], E, 'xi', meta=meta)
    return rotating_frame(trace, E, frame_phase(spec, E), params)


def x_step_grid(lo, hi, params, max_step=MAX_STEP):
    """Union of a uniform x grid and the image of a uniform xi grid, both with step max_step."""
    uniform = np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / max_step)) + 1))
    xi_lo, xi_hi = forward_map(lo, params), forward_map(hi, params)
    mapped = inverse_map(np.linspace(xi_lo, xi_hi, max(2, int(math.ceil((xi_hi - xi_lo) / max_step)) + 1)), params)
    return np.concatenate([uniform, mapped])


def integrate_x(spec, E, x_range, init, direction='forward', method='magnus', report=None):
    """
    Solve -u'' - x^alpha u + q u = E u on x_range.

    :param tuple x_range: (x_lo, x_hi) with 0 <= x_lo < x_hi
    :param init: (u, u') at x_lo, or at x_hi when direction is backward
    :return: SolutionTrace in the variable x
    """
    params = spec.params
    lo, hi = float(x_range[0]), float(x_range[1])
    if not 0.0 <= lo < hi:
        raise InvalidInputException("Need 0 <= x_lo < x_hi, got [{}, {}]".format(lo, hi))
    init = _check_init(init)
    alpha = params.alpha
    tol = params.tol_ode

    def w(x):
        x = np.asarray(x, dtype=float)
        return spec.q(x) - x ** alpha - E

    report = report_grid(lo, hi) if report is None else np.unique(np.clip(report, lo, hi))
    breakpoints = [inverse_map(p, params) for p in spec.breakpoints()]
    points = _points(report, breakpoints, lo, hi, x_step_grid(lo, hi, params))
    states, stats = _run(w, points, report, init, tol, direction, method)

    meta = {'method': method, 'direction': direction, 'tol_ode': tol, 'range': [lo, hi], 'steps': stats['steps']}
    logger.info("x trace E={:.6g} on [{:.4g}, {:.4g}] ({}, {}): {} steps".format(
        E, lo, hi, method, direction, stats['steps']))
    trace = SolutionTrace(report, states[:, 0], states[:, 1], E, 'x', meta=meta)
    return rotating_frame(trace, E, frame_phase(spec, E), params)
