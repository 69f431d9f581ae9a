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

"""Phase integral Phi_E(xi) = Phi_E(xi_start) + integral of sqrt(1 - beta_E) from xi_start."""

# Python standard library
import logging
import math
import threading

# 3rd party libraries
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.liouville.params import LiouvilleDomainException
from starkembed.liouville.transform import weight

logger = logging.getLogger(__name__)


class PhaseDomainException(InvalidInputException):
    pass


NODES_PER_DECADE = 512
DEFAULT_XI_REF = 1e6

_LOW_RULE = leggauss(10)
_HIGH_RULE = leggauss(20)


def phase_excess(E, xi, params):
    """
    sqrt(1 - beta_E(xi)) - 1, evaluated as z / (1 + sqrt(1 + z)) with z = -beta_E.
    """
    z = float(E) * weight(xi, params)
    return z / (1.0 + np.sqrt(1.0 + z))


def _gauss(f, a, b, rule, magnitude=False):
    nodes, weights = rule
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    points = mid[:, None] + half[:, None] * nodes[None, :]
    values = f(points)
    if magnitude:
        return half * (values @ weights), half * (np.abs(values) @ weights)
    return half * (values @ weights)


def integrate_panels(f, edges, tol, max_depth=30):
    """
    Integrals of a vectorized function over consecutive panels.

    Each panel is integrated with the 10- and 20-point Gauss-Legendre rules; panels
    where the two disagree by more than tol (relative) are bisected until they agree.

    :param f: vectorized integrand
    :param numpy.ndarray edges: increasing panel edges
    :param float tol: relative tolerance per panel
    :return: numpy.ndarray of len(edges) - 1 panel integrals
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    owner = np.arange(len(a))
    totals = np.zeros(len(a))

    for depth in range(max_depth):
        low = _gauss(f, a, b, _LOW_RULE)
        high, scale = _gauss(f, a, b, _HIGH_RULE, magnitude=True)
        ok = np.abs(high - low) <= tol * scale + 1e-300
        np.add.at(totals, owner[ok], high[ok])
        if ok.all():
            return totals

        a, b, owner = a[~ok], b[~ok], owner[~ok]
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        owner = np.concatenate([owner, owner])
        logger.debug("Quadrature depth {}: bisecting {} panels".format(depth + 1, len(mid)))

    logger.warning("Quadrature did not reach tolerance {} on {} panels".format(tol, len(a)))
    np.add.at(totals, owner, _gauss(f, a, b, _HIGH_RULE))
    return totals


class PhaseTable:
    """
    Dense monotone table of Phi_E on [xi_start, xi_hi].

    The deviation D(xi) = Phi_E(xi) - xi is accumulated panel by panel on a
    logarithmic grid and interpolated by cubic Hermite splines in log(xi) with the
    exact derivative at every node. Phi_E(xi_start) = xi_start.

    The table starts out covering [xi_start, xi_table_max] and grows on demand when
    asked for abscissas beyond its current end.
    """

    def __init__(self, E, params):
        self.E = float(E)
        self.params = params
        self.xi_lo = params.xi_start
        self.xi_hi = params.xi_table_max
        self._lock = threading.Lock()

        z_start = self.E * weight(self.xi_lo, params)
        if 1.0 + z_start <= 0.0:
            raise PhaseDomainException(
                "1 - beta_E is not positive at xi_start={} for E={}; raise xi_start".format(self.xi_lo, self.E))

        self.nodes = self._grid(self.xi_lo, self.xi_hi)
        self._deviation = self._accumulate(self.nodes, 0.0)
        self._spline = self._fit(self.nodes, self._deviation)
        logger.debug("Phase table for E={} built on {} nodes over [{:.4g}, {:.4g}]".format(
            self.E, len(self.nodes), self.xi_lo, self.xi_hi))

    @staticmethod
    def _grid(lo, hi):
        count = int(math.ceil(math.log10(hi / lo) * NODES_PER_DECADE)) + 1
        return np.geomspace(lo, hi, count)

    def _accumulate(self, nodes, start):
        if self.E == 0.0:
            return np.full(len(nodes), float(start))
        increments = integrate_panels(self.excess, nodes, self.params.tol_quad)
        return np.concatenate([[start], start + np.cumsum(increments)])

    def _fit(self, nodes, deviation):
        return CubicHermiteSpline(np.log(nodes), deviation, nodes * self.excess(nodes))

    def extend(self, xi_needed):
        """
        Grow the table so that it covers xi_needed.

        The new end is at least twice the old one so that repeated requests slightly
        past the end do not rebuild the spline every time.
        """
        with self._lock:
            if xi_needed <= self.xi_hi:
                return
            old_hi = self.xi_hi
            new_hi = max(2.0 * float(xi_needed), 2.0 * old_hi)
            # the first node of the new grid is the old last node
            fresh = self._grid(old_hi, new_hi)
            fresh[0] = self.nodes[-1]
            added = self._accumulate(fresh, self._deviation[-1])

            nodes = np.concatenate([self.nodes, fresh[1:]])
            deviation = np.concatenate([self._deviation, added[1:]])
            spline = self._fit(nodes, deviation)

            self.nodes, self._deviation, self._spline = nodes, deviation, spline
            self.xi_hi = float(nodes[-1])
            logger.debug("Phase table for E={} extended from {:.4g} to {:.4g} ({} nodes)".format(
                self.E, old_hi, self.xi_hi, len(nodes)))

    def excess(self, xi):
        return phase_excess(self.E, xi, self.params)

    def _log_abscissa(self, xi):
        arr = np.asarray(xi, dtype=float)
        slack = 1e-12
        if np.any(arr < self.xi_lo * (1.0 - slack)):
            raise PhaseDomainException("xi below the phase table start {}".format(self.xi_lo))
        top = float(np.max(arr)) if arr.size else self.xi_lo
        if top > self.xi_hi * (1.0 + slack):
            self.extend(top)
        return np.log(np.clip(arr, self.xi_lo, self.xi_hi))

    def deviation(self, xi):
        """Phi_E(xi) - xi."""
        log_xi = self._log_abscissa(xi)
        value = self._spline(log_xi)
        return float(value) if np.ndim(xi) == 0 else value

    def __call__(self, xi):
        log_xi = self._log_abscissa(xi)
        value = np.asarray(xi, dtype=float) + self._spline(log_xi)
        return float(value) if np.ndim(xi) == 0 else value

    def derivative(self, xi):
        """d Phi_E / d xi = sqrt(1 - beta_E(xi))."""
        self._log_abscissa(xi)
        return 1.0 + self.excess(xi)


def phase_integral(E, xi, params):
    """
    Phi_E(xi) for xi >= xi_start.

    :param float E: energy
    :param xi: abscissa, scalar or array
    :param ModelParams params: model parameters
    """
    return params.phase(E)(xi)


def taylor_tail(E, params, xi_ref=DEFAULT_XI_REF):
    """
    Integral of sqrt(1 - beta_E) - 1 - z/2 over [xi_ref, infinity), z = -beta_E.

    The integrand equals -g^2/2 with g = z / (1 + sqrt(1 + z)). Its leading part
    -z^2/8 integrates in closed form; the rest,
    -g^2/2 + z^2/8 = z g (z + 2 g) / (8 (1 + sqrt(1 + z))), is O(z^3) and is
    integrated numerically in u = log(s / xi_ref).
    """
    if params.alpha <= 2.0 / 3.0:
        raise LiouvilleDomainException("The phase expansion constant requires alpha > 2/3")
    E = float(E)
    if E == 0.0:
        return 0.0

    power = 2.0 * params.gamma - 1.0
    leading = -(E * E * params.c ** (-2.0 * params.alpha) / 8.0) * xi_ref ** (-power) / power

    def remainder(u):
        s = xi_ref * math.exp(u)
        z = E * params.c ** -params.alpha * s ** -params.gamma
        g = z / (1.0 + math.sqrt(1.0 + z))
        return s * z * g * (z + 2.0 * g) / (8.0 * (1.0 + math.sqrt(1.0 + z)))

    rest, error = quad(remainder, 0.0, np.inf, epsabs=1e-16, epsrel=1e-12, limit=200)
    logger.debug("Taylor tail for E={}: leading {} + remainder {} (+/- {})".format(E, leading, rest, error))
    return leading + rest


def taylor_constant(E, params, xi_ref=DEFAULT_XI_REF):
    """
    The limit of Phi_E(xi) - xi - tau E xi^kappa as xi -> infinity.

    D(xi_ref) comes from the table, which grows past xi_table_max if xi_ref lies
    beyond it; the part beyond xi_ref is :func:`taylor_tail`. Needs alpha > 2/3.
    """
    if params.alpha <= 2.0 / 3.0:
        raise LiouvilleDomainException("The phase expansion constant requires alpha > 2/3")
    table = params.phase(E)
    return table.deviation(xi_ref) - params.tau * float(E) * xi_ref ** params.kappa + taylor_tail(E, params, xi_ref)
