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

"""
Oscillatory integrals of the form int sin(a Phi(s) + gamma) / s ds.

Phi is either a single phase Phi_E or the sum or difference of two phases.
Each panel is integrated with an 8-point Gauss-Legendre rule. Panels never
exceed a quarter of the local period and grow by at most 1% geometrically.
"""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.stats import linregress

# Package libraries
from starkembed.exceptions import InvalidInputException

logger = logging.getLogger(__name__)

GROWTH = 1.01
DEFAULT_XI0 = (1e2, 1e3, 1e4)
DEFAULT_XI_END = 1e5
KINDS = ('single', 'pair')
SIGNS = ('+', '-')

_NODES, _WEIGHTS = leggauss(8)


class HypothesisException(InvalidInputException):
    pass


class OscillatoryPhase:
    def __init__(self, a_coef, gamma, E1, params, E2=None, sign='+', allow_degenerate=False):
        """
        The phase a (Phi_E1 +/- Phi_E2) + gamma, or a Phi_E1 + gamma without E2.

        :param float a_coef: non-zero coefficient a
        :param float gamma: constant shift
        :param str sign: '+' or '-' between the two phases
        :param bool allow_degenerate: accept E1 == E2 with sign '-', where the phase is constant
        """
        if a_coef == 0:
            raise HypothesisException("The coefficient a must be non-zero")
        if sign not in SIGNS:
            raise InvalidInputException("Sign must be '+' or '-', got {}".format(sign))
        if E2 is not None and sign == '-' and E1 == E2 and not allow_degenerate:
            raise HypothesisException("E1 and E2 must differ for the difference phase")
        self.a_coef = float(a_coef)
        self.gamma = float(gamma)
        self.params = params
        self.first = params.phase(E1)
        self.second = None if E2 is None else params.phase(E2)
        self.factor = 1.0 if sign == '+' else -1.0

    def __call__(self, s):
        phase = self.first(s)
        if self.second is not None:
            phase = phase + self.factor * self.second(s)
        return self.a_coef * phase + self.gamma

    def rate(self, s):
        """|d/ds| of the phase."""
        rate = self.first.derivative(s)
        if self.second is not None:
            rate = rate + self.factor * self.second.derivative(s)
        return abs(self.a_coef * rate)

    def integrand(self, s):
        return np.sin(self(s)) / s


def panel_edges(phase, xi0, xi_end):
    """Quarter-period panels where the phase turns fast, 1% geometric panels where it turns slowly."""
    if not xi_end > xi0:
        raise InvalidInputException("Need xi_end > xi0, got [{}, {}]".format(xi0, xi_end))
    rate = max(phase.rate(xi0), phase.rate(xi_end), 1e-300)
    step = math.pi / (2.0 * rate)
    # geometric growth until the panels reach the quarter-period length
    switch = min(max(step / (GROWTH - 1.0), xi0), xi_end)
    parts = []
    if switch > xi0:
        count = int(math.ceil(math.log(switch / xi0) / math.log(GROWTH))) + 1
        parts.append(np.geomspace(xi0, switch, count)[:-1])
    count = int(math.ceil((xi_end - switch) / step)) + 1
    parts.append(np.linspace(switch, xi_end, max(count, 2)))
    return np.concatenate(parts)


def partial_integrals(phase, xi0, xi_end):
    """
    Running integrals I(xi) = int_{xi0}^{xi} sin(phase(s)) / s ds at the panel edges.

    :return: tuple (edges, integrals), integrals[0] = 0
    """
    edges = panel_edges(phase, xi0, xi_end)
    a, b = edges[:-1], edges[1:]
    half, mid = 0.5 * (b - a), 0.5 * (b + a)
    points = mid[:, None] + half[:, None] * _NODES[None, :]
    panels = half * (phase.integrand(points) @ _WEIGHTS)
    return edges, np.concatenate([[0.0], np.cumsum(panels)])


def osc_integral_single(a_coef, gamma, E, xi0, xi, params):
    """int_{xi0}^{xi} sin(a Phi_E(s) + gamma) / s ds."""
    phase = OscillatoryPhase(a_coef, gamma, E, params)
    return float(partial_integrals(phase, xi0, xi)[1][-1])


def osc_integral_pair(a_coef, gamma, E1, E2, sign, xi0, xi, params, allow_degenerate=False):
    """int_{xi0}^{xi} sin(a Phi_E1(s) +/- a Phi_E2(s) + gamma) / s ds."""
    phase = OscillatoryPhase(a_coef, gamma, E1, params, E2=E2, sign=sign, allow_degenerate=allow_degenerate)
    return float(partial_integrals(phase, xi0, xi)[1][-1])


def sup_partial_integral(phase, xi0, xi_end):
    """sup over xi in [xi0, xi_end] of |I(xi)|, sampled at the panel edges."""
    return float(np.max(np.abs(partial_integrals(phase, xi0, xi_end)[1])))


def reference_rate(alpha):
    """Decay rate (2 - alpha) / (2 + alpha) of the difference-phase integrals."""
    return (2.0 - alpha) / (2.0 + alpha)


class OscProfile:
    def __init__(self, kind, xi0_list, sups, slope, stderr, xi_end, settings):
        self.kind = kind
        self.xi0_list = [float(x) for x in xi0_list]
        self.sups = [float(s) for s in sups]
        self.slope = float(slope)
        self.stderr = float(stderr)
        self.xi_end = float(xi_end)
        self.settings = settings

    @property
    def decreasing(self):
        return all(later < earlier for earlier, later in zip(self.sups, self.sups[1:]))

    def to_dict(self):
        return {
            'kind': self.kind,
            'xi0': self.xi0_list,
            'sup_partial_integral': self.sups,
            'slope': self.slope,
            'slope_stderr': self.stderr,
            'decreasing': self.decreasing,
            'xi_end': self.xi_end,
            'settings': self.settings,
        }


def osc_decay_profile(kind, a_coef, gamma, E1, params, E2=None, sign='+', xi0_list=DEFAULT_XI0,
                      xi_end=DEFAULT_XI_END):
    """
    Sup of the partial integrals over [xi0, xi_end] for every xi0, and the
    log-log slope of those sups against xi0.

    :param str kind: 'single' or 'pair'
    :return: OscProfile
    """
    if kind not in KINDS:
        raise InvalidInputException("Unknown integral kind {}".format(kind))
    if kind == 'pair' and E2 is None:
        raise InvalidInputException("The pair integral needs E2")
    if len(xi0_list) < 2:
        raise InvalidInputException("At least two starting points are needed for a slope")
    if min(xi0_list) <= 1.0 or max(xi0_list) >= xi_end:
        raise InvalidInputException("Starting points must satisfy 1 < xi0 < xi_end")

    phase = OscillatoryPhase(a_coef, gamma, E1, params, E2=E2 if kind == 'pair' else None, sign=sign)
    xi0_list = sorted(float(x) for x in xi0_list)
    sups = [sup_partial_integral(phase, xi0, xi_end) for xi0 in xi0_list]
    if min(sups) > 0.0:
        result = linregress(np.log(xi0_list), np.log(sups))
        slope, stderr = result.slope, result.stderr
    else:
        slope, stderr = -math.inf, 0.0
    settings = {'a_coef': a_coef, 'gamma': gamma, 'E1': E1, 'E2': E2 if kind == 'pair' else None,
                'sign': sign if kind == 'pair' else None}
    logger.info("Oscillatory profile {}: sups {} slope {:.4f}".format(kind, ["{:.4g}".format(s) for s in sups],
                                                                     slope))
    return OscProfile(kind, xi0_list, sups, slope, stderr, xi_end, settings)
