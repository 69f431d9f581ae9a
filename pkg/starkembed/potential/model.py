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

"""Data model of the generalized Wigner-von Neumann potential."""

# Python standard library
import json
import logging
import math
from enum import Enum

# 3rd party libraries
import numpy as np

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.liouville.params import ModelParams
from starkembed.liouville.transform import forward_map

logger = logging.getLogger(__name__)


class PotentialSpecException(InvalidInputException):
    pass


class ConstructionMode(Enum):
    THM13 = 'thm13'
    THM15 = 'thm15'


class EnergyLevel:
    def __init__(self, E, t=0.0, a_cut=None, theta_bc=None):
        """
        One target eigenvalue.

        :param float E: energy
        :param float t: phase t_j in [0, pi)
        :param float a_cut: the term is switched on at xi >= a_cut; None means at the active start
                            and math.inf switches it off
        :param float theta_bc: boundary angle in [0, pi] with u'(0)/u(0) = tan(theta_bc)
        """
        self.E = float(E)
        self.t = float(t)
        self.a_cut = None if a_cut is None else float(a_cut)
        self.theta_bc = None if theta_bc is None else float(theta_bc)

        if not 0.0 <= self.t < math.pi:
            raise PotentialSpecException("Phase t must lie in [0, pi), got {}".format(self.t))
        if self.a_cut is not None and self.a_cut <= 0:
            raise PotentialSpecException("Cutoff must be positive, got {}".format(self.a_cut))
        if self.theta_bc is not None and not 0.0 <= self.theta_bc <= math.pi:
            raise PotentialSpecException("Boundary angle must lie in [0, pi], got {}".format(self.theta_bc))

    def to_dict(self):
        a_cut = self.a_cut
        if a_cut is not None and math.isinf(a_cut):
            a_cut = 'inf'
        return {'E': self.E, 't': self.t, 'a_cut': a_cut, 'theta_bc': self.theta_bc}

    @staticmethod
    def from_dict(data):
        a_cut = data.get('a_cut')
        return EnergyLevel(data['E'],
                           t=data.get('t', 0.0),
                           a_cut=None if a_cut is None else float(a_cut),
                           theta_bc=data.get('theta_bc'))


class Bump:
    def __init__(self, kappa=0.0, lo=1.0, hi=2.0):
        """
        W(xi) = kappa w(xi) with w = C ((xi - lo)(hi - xi))^3 on (lo, hi), zero elsewhere.

        w is twice continuously differentiable and normalized to unit integral.
        """
        if not hi > lo:
            raise PotentialSpecException("Bump support must be a non-empty interval")
        self.kappa = float(kappa)
        self.lo = float(lo)
        self.hi = float(hi)
        # integral of ((s - lo)(hi - s))^3 over (lo, hi) is (hi - lo)^7 / 140
        self._norm = 140.0 / (self.hi - self.lo) ** 7

    def shape(self, xi):
        xi = np.asarray(xi, dtype=float)
        inside = (xi > self.lo) & (xi < self.hi)
        return np.where(inside, self._norm * ((xi - self.lo) * (self.hi - xi)) ** 3, 0.0)

    def __call__(self, xi):
        return self.kappa * self.shape(xi)

    def to_dict(self):
        return {'kappa': self.kappa, 'lo': self.lo, 'hi': self.hi}

    @staticmethod
    def from_dict(data):
        return Bump(data['kappa'], data.get('lo', 1.0), data.get('hi', 2.0))


class PotentialSpec:
    """
    V(xi) = (4a/xi) sum_j chi_j(xi) sin(2 Phi_{E_j}(xi) + 2 t_j) + W(xi)

    The oscillatory sum vanishes on [0, active_start]; chi_j is the indicator of
    [a_cut_j, inf) for levels with a cutoff. W is an optional bump used to match
    boundary conditions. q(x) = x^alpha V(xi(x)).
    """
    SCHEMA = 1

    def __init__(self, mode, a, levels, params, bump=None, strict=True):
        """
        :param ConstructionMode mode: construction the spec follows
        :param float a: amplitude
        :param list levels: EnergyLevel list
        :param ModelParams params: model parameters
        :param Bump bump: optional compactly supported bump
        :param bool strict: enforce the amplitude threshold for square-integrable eigenfunctions
        """
        self.mode = ConstructionMode(mode)
        self.a = float(a)
        self.levels = list(levels)
        self.params = params
        self.bump = bump
        self.strict = strict
        self._validate()

    def _validate(self):
        if len(self.levels) < 1:
            raise PotentialSpecException("A potential needs at least one energy level")
        energies = [level.E for level in self.levels]
        if len(set(energies)) != len(energies):
            raise PotentialSpecException("Energies must be pairwise distinct: {}".format(energies))
        if self.a < 0:
            raise PotentialSpecException("Amplitude must be non-negative")
        if self.strict and self.a <= self.params.l2_threshold:
            raise PotentialSpecException("Amplitude a={} must exceed (2-alpha)/(2(2+alpha))={:.6f}".format(
                self.a, self.params.l2_threshold))
        if self.mode == ConstructionMode.THM13 and self.params.alpha <= 2.0 / 3.0:
            raise PotentialSpecException("thm13 construction requires alpha > 2/3")
        if self.mode == ConstructionMode.THM15:
            for level in self.levels:
                if level.a_cut is None or level.a_cut < self.params.xi_start:
                    raise PotentialSpecException("Cutoffs must be present and >= xi_start in thm15 mode")

    @property
    def N(self):
        return len(self.levels)

    @property
    def energies(self):
        return [level.E for level in self.levels]

    @property
    def active_start(self):
        return self.params.active_start

    def level_start(self, level):
        """First xi at which the term of a level is switched on."""
        if level.a_cut is None:
            return self.active_start
        return max(self.active_start, level.a_cut)

    def breakpoints(self):
        """Abscissae where V may jump or lose smoothness."""
        points = {self.active_start}
        for level in self.levels:
            start = self.level_start(level)
            if math.isfinite(start):
                points.add(start)
        if self.bump is not None:
            points.update((self.bump.lo, self.bump.hi))
        return sorted(points)

    def resonant_term(self, xi, j):
        """(4a/xi) chi_j sin(2 Phi_{E_j} + 2 t_j), the term of level j alone."""
        xi = np.asarray(xi, dtype=float)
        level = self.levels[j]
        out = np.zeros(xi.shape)
        mask = (xi > self.active_start) & (xi >= self.level_start(level))
        if np.any(mask):
            table = self.params.phase(level.E)
            out[mask] = 4.0 * self.a / xi[mask] * np.sin(2.0 * table(xi[mask]) + 2.0 * level.t)
        return out

    def V(self, xi):
        xi_arr = np.asarray(xi, dtype=float)
        out = np.zeros(xi_arr.shape)
        if self.a != 0.0:
            for j in range(self.N):
                out += self.resonant_term(xi_arr, j)
        if self.bump is not None:
            out += self.bump(xi_arr)
        return float(out) if np.ndim(xi) == 0 else out

    def q(self, x):
        x_arr = np.asarray(x, dtype=float)
        xi = forward_map(x_arr, self.params)
        out = x_arr ** self.params.alpha * self.V(xi)
        return float(out) if np.ndim(x) == 0 else out

    def with_bump(self, bump):
        return PotentialSpec(self.mode, self.a, self.levels, self.params, bump=bump, strict=self.strict)

    def to_dict(self):
        return {
            'schema': self.SCHEMA,
            'mode': self.mode.value,
            'a': self.a,
            'strict': self.strict,
            'params': self.params.to_dict(),
            'levels': [level.to_dict() for level in self.levels],
            'bump': None if self.bump is None else self.bump.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=4, separators=(',', ': '), allow_nan=False)

    @staticmethod
    def from_json(data):
        """
        Parses a spec written by to_json.

        :param str data: the spec in string format
        :return: PotentialSpec
        """
        try:
            kwargs = json.loads(data)
            if kwargs.get('schema') != PotentialSpec.SCHEMA:
                raise PotentialSpecException("Unsupported spec schema {}".format(kwargs.get('schema')))
            bump = kwargs.get('bump')
            return PotentialSpec(kwargs['mode'],
                                 kwargs['a'],
                                 [EnergyLevel.from_dict(level) for level in kwargs['levels']],
                                 ModelParams.from_dict(kwargs['params']),
                                 bump=None if bump is None else Bump.from_dict(bump),
                                 strict=kwargs.get('strict', True))
        except (KeyError, TypeError, ValueError) as e:
            raise PotentialSpecException("Malformed potential spec: {}".format(e))
