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

"""Sampled solutions and their rotating-frame coordinates."""

# Python standard library
import json
import logging

# 3rd party libraries
import numpy as np

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.liouville.transform import beta, state_to_xi
from starkembed.utility.output import SCHEMA, to_json, write_csv

logger = logging.getLogger(__name__)


def frame_angle(xi, E, t, params):
    """Phi_E(xi) + t, NaN below xi_start."""
    xi = np.asarray(xi, dtype=float)
    table = params.phase(E)
    inside = xi >= table.xi_lo
    angle = np.full(xi.shape, np.nan)
    if np.any(inside):
        angle[inside] = table(xi[inside]) + t
    return angle


def rotate(xi, phi, dphi, E, t, params):
    """
    y = Rot(Phi_E + t) (sqrt(1 - beta_E) phi, phi').

    :return: tuple (y1, y2, R)
    """
    theta = frame_angle(xi, E, t, params)
    with np.errstate(invalid='ignore'):
        s = np.sqrt(1.0 - beta(E, np.asarray(xi, dtype=float), params))
    u1 = s * phi
    cos, sin = np.cos(theta), np.sin(theta)
    y1 = cos * u1 - sin * dphi
    y2 = sin * u1 + cos * dphi
    return y1, y2, np.hypot(y1, y2)


class SolutionTrace:
    """
    Solution samples on an increasing grid.

    For variable 'xi' the samples are (phi, phi') of the transformed equation; for
    variable 'x' they are (u, u') of the Schroedinger equation. The rotating-frame
    coordinates y1, y2 and the amplitude R always refer to the xi-space state and
    are NaN where the phase of E is not tabulated.
    """
    VARIABLES = ('xi', 'x')

    def __init__(self, grid, phi, dphi, E, variable='xi', y1=None, y2=None, R=None, meta=None):
        if variable not in self.VARIABLES:
            raise InvalidInputException("Unknown trace variable {}".format(variable))
        self.grid = np.asarray(grid, dtype=float)
        self.phi = np.asarray(phi, dtype=float)
        self.dphi = np.asarray(dphi, dtype=float)
        self.E = float(E)
        self.variable = variable
        nan = np.full(self.grid.shape, np.nan)
        self.y1 = nan if y1 is None else np.asarray(y1, dtype=float)
        self.y2 = nan.copy() if y2 is None else np.asarray(y2, dtype=float)
        self.R = nan.copy() if R is None else np.asarray(R, dtype=float)
        self.meta = dict(meta or {})

    def __len__(self):
        return len(self.grid)

    @property
    def columns(self):
        if self.variable == 'xi':
            return ['xi', 'phi', 'dphi', 'y1', 'y2', 'R']
        return ['x', 'u', 'du', 'y1', 'y2', 'R']

    def xi_state(self, params):
        """(xi, phi, phi') regardless of the trace variable."""
        if self.variable == 'xi':
            return self.grid, self.phi, self.dphi
        return state_to_xi(self.grid, self.phi, self.dphi, params)

    def to_xi(self, params):
        if self.variable == 'xi':
            return self
        xi, phi, dphi = self.xi_state(params)
        meta = dict(self.meta, mapped_from='x')
        return SolutionTrace(xi, phi, dphi, self.E, 'xi', self.y1, self.y2, self.R, meta)

    def window(self, lo, hi):
        """Samples with lo <= grid <= hi."""
        keep = (self.grid >= lo) & (self.grid <= hi)
        return SolutionTrace(self.grid[keep], self.phi[keep], self.dphi[keep], self.E, self.variable,
                             self.y1[keep], self.y2[keep], self.R[keep], self.meta)

    def scaled(self, factor):
        return SolutionTrace(self.grid, factor * self.phi, factor * self.dphi, self.E, self.variable,
                             factor * self.y1, factor * self.y2, abs(factor) * self.R, self.meta)

    def wronskian(self, other):
        """phi1 phi2' - phi2 phi1' sample by sample."""
        if len(self) != len(other) or not np.allclose(self.grid, other.grid, rtol=1e-14, atol=0.0):
            raise InvalidInputException("Wronskian needs traces on the same grid")
        return self.phi * other.dphi - other.phi * self.dphi

    def to_dict(self):
        return {'E': self.E, 'variable': self.variable, 'samples': len(self), 'meta': self.meta}

    def to_csv(self, path):
        write_csv(path, self.columns, [self.grid, self.phi, self.dphi, self.y1, self.y2, self.R])

    def to_json_sidecar(self, path):
        with open(path, 'w') as f:
            f.write(to_json(self.to_dict()))
            f.write('\n')

    def save_npz(self, path):
        np.savez(path, schema=SCHEMA, grid=self.grid, phi=self.phi, dphi=self.dphi, y1=self.y1, y2=self.y2,
                 R=self.R, E=self.E, variable=self.variable, meta=json.dumps(self.meta, sort_keys=True))

    @staticmethod
    def load_npz(path):
        with np.load(path, allow_pickle=False) as data:
            if int(data['schema']) != SCHEMA:
                raise InvalidInputException("Unsupported trace schema {}".format(int(data['schema'])))
            return SolutionTrace(data['grid'], data['phi'], data['dphi'], float(data['E']), str(data['variable']),
                                 data['y1'], data['y2'], data['R'], json.loads(str(data['meta'])))
