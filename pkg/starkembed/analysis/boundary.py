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
Boundary matching of a subordinate solution at x = 0.

A bump W = kappa w supported on (1, 2) in xi is added to the potential and kappa
is chosen so that the solution decaying at infinity leaves x = 0 with the
prescribed angle, u'(0) / u(0) = tan(theta_bc).
"""

# Python standard library
import logging
import math

# 3rd party libraries
from scipy.optimize import brentq

# Package libraries
from starkembed.exceptions import StarkEmbedException
from starkembed.integrator.levinson import subordinate_by_backward
from starkembed.integrator.solve import integrate_x
from starkembed.liouville.transform import state_to_x
from starkembed.potential.model import Bump, ConstructionMode, PotentialSpecException

logger = logging.getLogger(__name__)

ANGLE_TOL = 1e-6
KAPPA_STEP = 0.25
DEFAULT_KAPPA_RANGE = (-40.0, 40.0)
SUBORDINATE_XI_MAX = 1e4


class NoCrossingException(StarkEmbedException):
    def __init__(self, kappa_range):
        super().__init__("Angle mismatch does not change sign for kappa in [{}, {}]; enlarge the range".format(
            *kappa_range))
        self.kappa_range = kappa_range


def wrap_half_turn(angle):
    """angle reduced to [-pi/2, pi/2)."""
    return (angle + 0.5 * math.pi) % math.pi - 0.5 * math.pi


class BoundaryMatch:
    def __init__(self, spec, level, kappa, angle, target, evaluations):
        self.spec = spec
        self.level = level
        self.kappa = float(kappa)
        self.angle = float(angle)
        self.target = float(target)
        self.evaluations = evaluations

    @property
    def mismatch(self):
        return wrap_half_turn(self.angle - self.target)

    def to_dict(self):
        return {
            'level': self.level,
            'kappa': self.kappa,
            'angle': self.angle,
            'theta_bc': self.target,
            'mismatch': self.mismatch,
            'evaluations': self.evaluations,
        }


def matching_point(spec):
    """Abscissa in xi where the subordinate solution is handed over to the x-space integration."""
    return max(2.0, spec.active_start)


def subordinate_state(spec, j, xi_m, xi_max=SUBORDINATE_XI_MAX):
    """(x, u, u') of the decaying solution of level j at xi_m."""
    trace = subordinate_by_backward(spec, j, max(xi_max, 10.0 * xi_m), xi_m)
    x, u, du = state_to_x(trace.grid[0], trace.phi[0], trace.dphi[0], spec.params)
    return float(x), float(u), float(du)


def transported_angle(spec, j, kappa, state=None):
    """
    Angle of (u(0), u'(0)) modulo pi for the decaying solution of level j when the
    bump carries the weight kappa.

    :param PotentialSpec spec: potential without bump
    :param int j: level index
    :param float kappa: bump weight
    :param tuple state: (x_m, u, u') at the matching point, computed when None
    """
    if state is None:
        state = subordinate_state(spec, j, matching_point(spec))
    x_m, u, du = state
    bumped = spec.with_bump(Bump(kappa))
    trace = integrate_x(bumped, spec.levels[j].E, (0.0, x_m), (u, du), direction='backward', report=[0.0, x_m])
    return math.atan2(trace.dphi[0], trace.phi[0]) % math.pi


def match_boundary(spec, j, kappa_range=DEFAULT_KAPPA_RANGE, tol=ANGLE_TOL, step=KAPPA_STEP):
    """
    Find the bump weight closest to zero that matches the boundary angle of level j.

    Kappa is scanned outwards from 0 on both sides; a bracket only counts when the
    wrapped mismatch changes sign by less than pi/2, which excludes wrap-around jumps.

    :param PotentialSpec spec: thm15 potential whose level j carries theta_bc
    :param int j: level index
    :param tuple kappa_range: scanned interval, containing 0
    :return: BoundaryMatch with the adjusted spec
    """
    if spec.mode != ConstructionMode.THM15:
        raise PotentialSpecException("Boundary matching needs a thm15 potential")
    if not 0 <= j < spec.N:
        raise PotentialSpecException("Level index {} outside 0..{}".format(j, spec.N - 1))
    target = spec.levels[j].theta_bc
    if target is None:
        raise PotentialSpecException("Level {} has no boundary angle".format(j))
    lo, hi = float(kappa_range[0]), float(kappa_range[1])
    if not lo <= 0.0 <= hi or not hi > lo:
        raise PotentialSpecException("kappa range [{}, {}] must contain 0".format(lo, hi))

    target = target % math.pi
    state = subordinate_state(spec, j, matching_point(spec))
    evaluations = [0]

    def mismatch(kappa):
        evaluations[0] += 1
        return wrap_half_turn(transported_angle(spec, j, kappa, state) - target)

    def result(kappa):
        angle = transported_angle(spec, j, kappa, state)
        match = BoundaryMatch(spec.with_bump(Bump(kappa)), j, kappa, angle, target, evaluations[0])
        logger.info("Boundary of level {} matched with kappa={:.8g} (mismatch {:.2e}, {} evaluations)".format(
            j, kappa, match.mismatch, evaluations[0]))
        return match

    at_zero = mismatch(0.0)
    if abs(at_zero) <= tol:
        return result(0.0)

    sides = {1: (0.0, at_zero), -1: (0.0, at_zero)}
    limits = {1: hi, -1: lo}
    k = 1
    while sides:
        for direction in sorted(sides, reverse=True):
            previous, value = sides[direction]
            kappa = direction * k * step
            if abs(kappa) > abs(limits[direction]):
                kappa = limits[direction]
            current = mismatch(kappa)
            if current == 0.0:
                return result(kappa)
            if current * value < 0 and abs(current - value) < 0.5 * math.pi:
                a, b = sorted((previous, kappa))
                root = brentq(mismatch, a, b, xtol=1e-12, rtol=1e-12)
                match = result(root)
                if abs(match.mismatch) > tol:
                    logger.warning("Matched angle misses theta_bc by {:.2e}".format(match.mismatch))
                return match
            logger.debug("kappa={:.4g}: mismatch {:.6f}".format(kappa, current))
            if kappa == limits[direction]:
                del sides[direction]
            else:
                sides[direction] = (kappa, current)
        k += 1

    raise NoCrossingException((lo, hi))
