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

"""Sup bounds of the constructed potentials and the bound formulas they are checked against."""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np

# Package libraries
from starkembed.liouville.transform import forward_map, inverse_map
from starkembed.potential.model import ConstructionMode, PotentialSpecException

logger = logging.getLogger(__name__)

INITIAL_STEP = math.pi / 8.0
REFINE_RTOL = 0.005
MAX_REFINEMENTS = 6
MIN_OSCILLATIONS = 100
CHUNK = 1 << 16


def thm13_bound(N, alpha):
    """48 (2 - alpha) sqrt(N ln N), the bound on x^(1 - alpha/2) |q(x)| for equally spaced levels."""
    return 48.0 * (2.0 - alpha) * math.sqrt(N * math.log(N))


def thm15_bound(N, alpha, a):
    return 2.0 * (2.0 + alpha) * a * N


def thm15_epsilon(alpha, a):
    return 2.0 * (2.0 + alpha) * a - (2.0 - alpha)


def theorem_bound(spec):
    """The proven bound on x^(1 - alpha/2) |q(x)| for the construction of spec."""
    if spec.mode == ConstructionMode.THM13:
        return thm13_bound(spec.N, spec.params.alpha)
    return thm15_bound(spec.N, spec.params.alpha, spec.a)


def lemma_chain_bound(N, a):
    """96 a sqrt(N ln N), the tail bound of xi |V(xi)| for equally spaced levels."""
    return 96.0 * a * math.sqrt(N * math.log(N))


def triangle_bound(N, a):
    return 4.0 * a * N


def _grid_max(f, lo, hi, step):
    count = int(math.ceil((hi - lo) / step)) + 1
    best = 0.0
    for start in range(0, count, CHUNK):
        grid = lo + np.arange(start, min(start + CHUNK, count), dtype=float) * step
        grid = np.minimum(grid, hi)
        best = max(best, float(np.max(f(grid))))
    return best


def _refined_sup(f, xi_lo, xi_hi, step):
    if not xi_hi > xi_lo:
        raise PotentialSpecException("Empty window [{}, {}]".format(xi_lo, xi_hi))
    if (xi_hi - xi_lo) / math.pi < MIN_OSCILLATIONS:
        logger.warning("Window [{:.4g}, {:.4g}] holds fewer than {} oscillations; the sup is not a limsup".format(
            xi_lo, xi_hi, MIN_OSCILLATIONS))

    previous = _grid_max(f, xi_lo, xi_hi, step)
    for _ in range(MAX_REFINEMENTS):
        step /= 2.0
        current = _grid_max(f, xi_lo, xi_hi, step)
        logger.debug("Sup refinement h={:.4g}: {:.8g}".format(step, current))
        if abs(current - previous) <= REFINE_RTOL * max(abs(current), 1e-300):
            return current
        previous = current

    logger.warning("Sup on [{:.4g}, {:.4g}] did not settle after {} refinements".format(
        xi_lo, xi_hi, MAX_REFINEMENTS))
    return previous


def tail_sup_xi(spec, xi_lo, xi_hi, step=INITIAL_STEP):
    """
    sup of xi |V(xi)| over [xi_lo, xi_hi].

    The grid is halved until two successive maxima agree within 0.5%.
    """
    if xi_lo < spec.active_start:
        raise PotentialSpecException("xi_lo={} below the active start {}".format(xi_lo, spec.active_start))
    return _refined_sup(lambda xi: xi * np.abs(spec.V(xi)), xi_lo, xi_hi, step)


def tail_sup_x(spec, x_lo, x_hi, step=INITIAL_STEP):
    """
    sup of x^(1 - alpha/2) |q(x)| over [x_lo, x_hi].

    Sampled on a grid uniform in xi, where the oscillation of q has constant period.
    """
    params = spec.params
    xi_lo, xi_hi = forward_map(x_lo, params), forward_map(x_hi, params)
    if xi_lo < spec.active_start * (1.0 - 1e-12):
        raise PotentialSpecException("x_lo={} below the active region".format(x_lo))
    xi_lo = max(xi_lo, spec.active_start)
    exponent = 1.0 - params.alpha / 2.0

    def scaled(xi):
        x = inverse_map(xi, params)
        return x ** exponent * np.abs(spec.q(x))

    return _refined_sup(scaled, xi_lo, xi_hi, step)
