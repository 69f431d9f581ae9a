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

"""Model parameters of the perturbed Stark operator."""

# Python standard library
import logging
import math
import threading

# Package libraries
from starkembed.exceptions import InvalidInputException

logger = logging.getLogger(__name__)


class LiouvilleDomainException(InvalidInputException, ValueError):
    pass


class ModelParams:
    """
    The ambient operator -u'' - x^alpha u + q u = E u and the numerical tolerances
    used by every module.

    Derived constants are computed once in the constructor. Instances are treated
    as immutable; the only mutable state is the cache of phase tables. Each energy
    has its own build lock, and a table only grows past xi_table_max on demand.
    """
    DEFAULT_TOL_ODE = 1e-10
    DEFAULT_TOL_QUAD = 1e-10
    DEFAULT_XI_TABLE_MAX = 2e6
    # |beta_E| at the start of the active region never exceeds this
    BETA_CEILING = 0.5

    def __init__(self,
                 alpha,
                 xi_start=None,
                 energies=(),
                 tol_ode=DEFAULT_TOL_ODE,
                 tol_quad=DEFAULT_TOL_QUAD,
                 xi_table_max=DEFAULT_XI_TABLE_MAX):
        """
        :param float alpha: exponent of the Stark envelope, 0 < alpha < 2
        :param float xi_start: start of the active region; derived from energies when None
        :param energies: energies the model must support (used for the default xi_start)
        :param float tol_ode: relative tolerance of the ODE stepping
        :param float tol_quad: relative tolerance of the phase quadrature
        :param float xi_table_max: upper end of the cached phase tables
        """
        alpha = float(alpha)
        if not 0.0 < alpha < 2.0:
            raise LiouvilleDomainException("alpha must lie in (0, 2), got {}".format(alpha))
        if tol_ode <= 0 or tol_quad <= 0:
            raise LiouvilleDomainException("Tolerances must be positive")

        self.alpha = alpha
        self.c = self.c_of(alpha)
        self.tau = self.tau_of(alpha)
        # p(xi) = c^-alpha xi^-gamma
        self.gamma = 2.0 * alpha / (2.0 + alpha)
        # exponent of the second phase term tau E xi^kappa
        self.kappa = (2.0 - alpha) / (2.0 + alpha)
        # coefficient of xi^-2 in the transformed potential
        self.k2 = (-1.25 * alpha ** 2 + alpha * (alpha - 1.0)) / (2.0 + alpha) ** 2
        self.tol_ode = float(tol_ode)
        self.tol_quad = float(tol_quad)

        if xi_start is None:
            xi_start = self.default_xi_start(energies)
        if xi_start <= 0:
            raise LiouvilleDomainException("xi_start must be positive, got {}".format(xi_start))
        self.xi_start = float(xi_start)
        self.xi_table_max = float(max(xi_table_max, 10.0 * self.xi_start))

        self._phase_tables = {}
        self._lock = threading.Lock()
        self._key_locks = {}

    @staticmethod
    def c_of(alpha):
        return (1.0 + alpha / 2.0) ** (2.0 / (2.0 + alpha))

    @staticmethod
    def tau_of(alpha):
        return (2.0 + alpha) / (2.0 * (2.0 - alpha)) * (1.0 + alpha / 2.0) ** (-2.0 * alpha / (2.0 + alpha))

    def default_xi_start(self, energies):
        """Smallest xi >= 1 with |beta_E(xi)| <= 1/2 for every configured energy."""
        largest = max([abs(float(e)) for e in energies], default=0.0)
        if largest == 0.0:
            return 1.0
        xi = (largest * self.c ** -self.alpha / self.BETA_CEILING) ** (1.0 / self.gamma)
        return max(1.0, xi)

    @property
    def active_start(self):
        """The potential vanishes on [0, active_start]."""
        return max(1.0, self.xi_start)

    @property
    def l2_threshold(self):
        """Amplitude a above which the subordinate solution is weighted-L2."""
        return (2.0 - self.alpha) / (2.0 * (2.0 + self.alpha))

    @property
    def taylor_exponent(self):
        """Decay exponent of the remainder of the phase expansion."""
        return 1.0 - 2.0 * self.gamma

    def phase(self, E):
        """
        Cached phase table of energy E.

        :param float E: energy
        :return: PhaseTable
        """
        key = float(E)
        table = self._phase_tables.get(key)
        if table is not None:
            return table

        with self._lock:
            key_lock = self._key_locks.setdefault(key, threading.Lock())

        # tables of different energies build concurrently
        with key_lock:
            table = self._phase_tables.get(key)
            if table is None:
                # Local import, the phase module depends on this one
                from starkembed.liouville.phase import PhaseTable
                table = PhaseTable(key, self)
                self._phase_tables[key] = table
        return table

    def to_dict(self):
        return {
            'alpha': self.alpha,
            'xi_start': self.xi_start,
            'tol_ode': self.tol_ode,
            'tol_quad': self.tol_quad,
            'xi_table_max': self.xi_table_max,
        }

    @staticmethod
    def from_dict(data):
        return ModelParams(alpha=data['alpha'],
                           xi_start=data['xi_start'],
                           tol_ode=data.get('tol_ode', ModelParams.DEFAULT_TOL_ODE),
                           tol_quad=data.get('tol_quad', ModelParams.DEFAULT_TOL_QUAD),
                           xi_table_max=data.get('xi_table_max', ModelParams.DEFAULT_XI_TABLE_MAX))

    def __repr__(self):
        return "ModelParams(alpha={}, xi_start={}, c={:.6f}, tau={:.6f})".format(
            self.alpha, self.xi_start, self.c, self.tau)


class BetaSymbol:
    """beta_E(xi) = -E / (c^alpha xi^(2 alpha / (2 + alpha)))."""

    def __init__(self, E, params):
        self.E = float(E)
        self.params = params

    def __call__(self, xi):
        from starkembed.liouville.transform import beta
        return beta(self.E, xi, self.params)

    def sup_on(self, xi_lo):
        """sup of |beta_E| on [xi_lo, inf), attained at xi_lo since beta decays monotonically."""
        return abs(self(xi_lo))

    def admissible(self, xi_lo):
        return 1.0 - self(xi_lo) > 0.0 and math.isfinite(self(xi_lo))
