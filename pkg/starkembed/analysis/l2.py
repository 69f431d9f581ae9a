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

"""Weighted square integrability of subordinate solutions."""

# Python standard library
import logging

# 3rd party libraries
import numpy as np
from scipy.integrate import trapezoid

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.liouville.transform import beta, weight

logger = logging.getLogger(__name__)


class L2Certificate:
    def __init__(self, passed, margin, exponent, stderr, density_exponent, threshold, norm_estimate=None):
        self.passed = bool(passed)
        self.margin = float(margin)
        self.exponent = float(exponent)
        self.stderr = float(stderr)
        self.density_exponent = float(density_exponent)
        self.threshold = float(threshold)
        self.norm_estimate = norm_estimate

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            'passed': self.passed,
            'margin': self.margin,
            'exponent': self.exponent,
            'stderr': self.stderr,
            'density_exponent': self.density_exponent,
            'threshold': self.threshold,
            'norm_estimate': self.norm_estimate,
        }


def _norm_estimate(trace, fit, params, density_exponent):
    """
    int p phi^2 dxi on the fit window from the envelope, p R^2 / (2 s^2) averaging
    phi^2 over a period, plus the power-law tail beyond it. None when the tail diverges.
    """
    part = trace.window(*fit.window)
    xi, R = part.grid, part.R
    keep = np.isfinite(R)
    xi, R = xi[keep], R[keep]
    if len(xi) < 2 or density_exponent >= -1.0:
        return None
    density = weight(xi, params) * R ** 2 / (2.0 * (1.0 - beta(trace.E, xi, params)))
    # integrate in ln xi, the reporting grid is logarithmic
    inside = trapezoid(density * xi, np.log(xi))
    tail = density[-1] * xi[-1] / -(density_exponent + 1.0)
    return float(inside + tail)


def certify_l2(fit, params, a_required=None, trace=None):
    """
    Square integrability from a decay fit of the envelope R ~ xi^e.

    The density p phi^2 then decays like xi^(2e - gamma), integrable iff
    e < -(1 - gamma) / 2 = -(2 - alpha) / (2 (2 + alpha)). The fit passes when
    e + 2 stderr is still below that threshold.

    :param DecayFit fit: envelope fit of the solution
    :param ModelParams params: model parameters
    :param float a_required: decay rate to demand instead; the threshold exponent becomes -a_required,
        so the fit passes when R decays at least like xi^(-a_required). This is a decay check and
        certifies L2 only when a_required >= l2_threshold.
    :param SolutionTrace trace: when given, the weighted norm is estimated as well
    :return: L2Certificate
    """
    threshold = -(params.l2_threshold if a_required is None else float(a_required))
    margin = threshold - (fit.exponent + 2.0 * fit.stderr)
    density_exponent = 2.0 * fit.exponent - params.gamma
    norm = None
    if trace is not None:
        norm = _norm_estimate(trace, fit, params, density_exponent)
    certificate = L2Certificate(margin > 0.0, margin, fit.exponent, fit.stderr, density_exponent, threshold, norm)
    logger.info("L2 check: exponent {:.5f} +/- {:.2e} against {:.5f}: {}".format(
        fit.exponent, fit.stderr, threshold, 'pass' if certificate.passed else 'fail'))
    return certificate


def certify_l2_x(trace, params):
    """
    Compare int u^2 dx with int p phi^2 dxi over an x-space trace.

    Both are trapezoidal sums over the samples; they agree up to the quadrature
    error when the trace resolves the oscillation.

    :return: tuple (x-space integral, xi-space integral, relative difference)
    """
    if trace.variable != 'x':
        raise InvalidInputException("An x-space trace is required")
    positive = trace.grid > 0
    x, u = trace.grid[positive], trace.phi[positive]
    x_integral = trapezoid(u ** 2, x)
    xi_trace = trace.window(x[0], x[-1]).to_xi(params)
    xi_integral = trapezoid(weight(xi_trace.grid, params) * xi_trace.phi ** 2, xi_trace.grid)
    difference = abs(x_integral - xi_integral) / max(abs(x_integral), 1e-300)
    logger.debug("x-space norm {:.8g}, xi-space norm {:.8g}".format(x_integral, xi_integral))
    return float(x_integral), float(xi_integral), float(difference)
