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

"""Trigonometric sums with frequencies j/N and their certified suprema."""

import math

import numpy as np

from starkembed.exceptions import InvalidInputException


class PhaseVector:
    def __init__(self, theta, seed=None, index=None):
        """
        Phases theta_j in [0, 1) of the sums sum_j sin(2 j xi / N + 2 pi theta_j).

        :param theta: sequence of N phases
        :param int seed: seed of the random stream the phases were drawn from
        :param int index: sample index within that stream
        """
        theta = np.asarray(theta, dtype=float).ravel()
        if theta.size < 1:
            raise InvalidInputException("A phase vector needs at least one phase")
        if np.any(theta < 0.0) or np.any(theta >= 1.0):
            raise InvalidInputException("Phases must lie in [0, 1)")
        self.theta = theta
        self.seed = seed
        self.index = index

    @property
    def N(self):
        return self.theta.size

    def to_dict(self):
        return {'theta': [float(t) for t in self.theta], 'N': self.N, 'seed': self.seed, 'index': self.index}


class SupCertificate:
    def __init__(self, M1, M2, grid_step, bound_used, grid_max1, grid_max2):
        """
        Certified upper bounds M1 >= sup|f1| and M2 >= sup|f2| over the whole half-line.

        :param float M1: certified sup of |f1|
        :param float M2: certified sup of |f2|
        :param float grid_step: spacing h of the evaluation grid
        :param float bound_used: bound M1 + M2 was compared against
        :param float grid_max1: max |f1| on the grid, a lower bound of the true sup
        :param float grid_max2: max |f2| on the grid
        """
        self.M1 = float(M1)
        self.M2 = float(M2)
        self.grid_step = float(grid_step)
        self.bound_used = float(bound_used)
        self.grid_max1 = float(grid_max1)
        self.grid_max2 = float(grid_max2)

    @property
    def total(self):
        return self.M1 + self.M2

    @property
    def satisfied(self):
        return self.total <= self.bound_used

    def to_dict(self):
        return {
            'M1': self.M1,
            'M2': self.M2,
            'h': self.grid_step,
            'bound': self.bound_used,
            'grid_max1': self.grid_max1,
            'grid_max2': self.grid_max2,
        }


def frequencies(N):
    return np.arange(1, N + 1, dtype=float) / N


def trig_sums(xi, theta):
    """
    f1 = sum_j sin(2 E_j xi + 2 pi theta_j) and f2 = the cosine sum, E_j = j/N.

    :param xi: scalar or array of abscissae
    :param PhaseVector theta: phases
    :return: tuple (f1, f2) shaped like xi
    """
    xi_arr = np.asarray(xi, dtype=float)
    argument = 2.0 * xi_arr[..., None] * frequencies(theta.N) + 2.0 * math.pi * theta.theta
    f1 = np.sin(argument).sum(axis=-1)
    f2 = np.cos(argument).sum(axis=-1)
    if np.ndim(xi) == 0:
        return float(f1), float(f2)
    return f1, f2


def lemma_bound(N):
    if N < 1:
        raise InvalidInputException("N must be at least 1")
    return 4.0 * math.sqrt(2.0 * N * math.log(8.0 * (N + 1) * N))


def default_grid_step(N):
    """Grid step whose Lipschitz slack (N+1)h/2 is 0.1% of the lemma bound."""
    return min(0.001 * lemma_bound(N) * 2.0 / (N + 1), math.pi / 8.0)


def certified_sup(theta, h=None, chunk=1 << 15):
    """
    Rigorous sup bounds of |f1| and |f2| over the half-line.

    Both sums are (N+1)-Lipschitz and pi N periodic, so the maximum over the grid
    {0, h, ..., pi N} plus (N+1) h / 2 bounds the supremum.

    :param PhaseVector theta: phases
    :param float h: grid step, default_grid_step(N) when None
    :param int chunk: grid points evaluated per vectorized block
    :return: SupCertificate
    """
    N = theta.N
    if h is None:
        h = default_grid_step(N)
    if h <= 0:
        raise InvalidInputException("Grid step must be positive")

    period = math.pi * N
    count = int(math.floor(period / h)) + 1
    max1 = max2 = 0.0
    for start in range(0, count, chunk):
        grid = np.arange(start, min(start + chunk, count), dtype=float) * h
        f1, f2 = trig_sums(grid, theta)
        max1 = max(max1, float(np.max(np.abs(f1))))
        max2 = max(max2, float(np.max(np.abs(f2))))
    # the period end closes the grid
    f1, f2 = trig_sums(period, theta)
    max1, max2 = max(max1, abs(f1)), max(max2, abs(f2))

    slack = (N + 1) * h / 2.0
    return SupCertificate(max1 + slack, max2 + slack, h, lemma_bound(N), max1, max2)
