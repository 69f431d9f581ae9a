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

"""Residuals of the two-term expansion of the phase integral."""

# Python standard library
import logging

# 3rd party libraries
import numpy as np
from scipy.stats import linregress

# Package libraries
from starkembed.liouville.params import LiouvilleDomainException
from starkembed.liouville.phase import taylor_constant

logger = logging.getLogger(__name__)

SLOPE_RTOL = 0.2
ZERO_ATOL = 1e-12
DEFAULT_POINTS = 32


class TaylorCheck:
    def __init__(self, E, alpha, xi, residuals, slope, stderr, expected):
        self.E = float(E)
        self.alpha = float(alpha)
        self.xi = np.asarray(xi, dtype=float)
        self.residuals = np.asarray(residuals, dtype=float)
        self.slope = slope
        self.stderr = stderr
        self.expected = float(expected)

    @property
    def passed(self):
        if self.slope is None:
            return bool(np.max(np.abs(self.residuals)) <= ZERO_ATOL)
        return abs(self.slope - self.expected) <= SLOPE_RTOL * abs(self.expected)

    def to_dict(self):
        return {
            'E': self.E,
            'alpha': self.alpha,
            'xi': self.xi,
            'residuals': self.residuals,
            'slope': self.slope,
            'slope_stderr': self.stderr,
            'expected_slope': self.expected,
            'passed': self.passed,
        }


def default_xi_list(params, xi_end=1e5, points=DEFAULT_POINTS):
    lo = max(1e2, 10.0 * params.xi_start)
    return np.geomspace(lo, max(xi_end, 10.0 * lo), points)


def taylor_phase_check(E, params, xi_list=None):
    """
    Residuals Phi_E(xi) - xi - tau E xi^kappa - t, t the limit constant, and the
    log-log slope of their magnitude, expected to be 1 - 2 gamma.

    :param float E: energy
    :param ModelParams params: model parameters, alpha > 2/3
    :param xi_list: abscissas inside the phase table, default log-spaced up to 1e5
    :return: TaylorCheck
    """
    if params.alpha <= 2.0 / 3.0:
        raise LiouvilleDomainException("The phase expansion check requires alpha > 2/3, got {}".format(params.alpha))
    xi = default_xi_list(params) if xi_list is None else np.asarray(xi_list, dtype=float)

    expected = params.taylor_exponent
    if E == 0:
        return TaylorCheck(E, params.alpha, xi, np.zeros_like(xi), None, None, expected)

    table = params.phase(E)
    constant = taylor_constant(E, params)
    residuals = table.deviation(xi) - params.tau * E * xi ** params.kappa - constant

    result = linregress(np.log(xi), np.log(np.abs(residuals)))
    check = TaylorCheck(E, params.alpha, xi, residuals, float(result.slope), float(result.stderr), expected)
    logger.info("Phase expansion for E={}: slope {:.4f} against {:.4f}".format(E, check.slope, expected))
    return check
