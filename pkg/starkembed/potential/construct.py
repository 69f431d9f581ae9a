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

"""Construction of potentials with prescribed embedded eigenvalues."""

# Python standard library
import logging
import math

# Package libraries
from starkembed.liouville.params import ModelParams
from starkembed.liouville.phase import taylor_constant
from starkembed.phases.trig import PhaseVector
from starkembed.potential.model import ConstructionMode, EnergyLevel, PotentialSpec, PotentialSpecException

logger = logging.getLogger(__name__)


def eval_V(xi, spec):
    return spec.V(xi)


def eval_q(x, spec):
    return spec.q(x)


def thm13_energies(N, alpha):
    """E_j = j / (N tau), j = 1..N."""
    tau = ModelParams.tau_of(alpha)
    return [j / (N * tau) for j in range(1, N + 1)]


def thm13_amplitude(alpha):
    return (2.0 - alpha) / (2.0 + alpha)


def build_thm13_spec(N, alpha, phases, a=None, xi_start=None, tol_ode=ModelParams.DEFAULT_TOL_ODE,
                     tol_quad=ModelParams.DEFAULT_TOL_QUAD, xi_table_max=ModelParams.DEFAULT_XI_TABLE_MAX):
    """
    Potential with the N equally spaced eigenvalues j / (N tau).

    The phase t_j of each term is chosen so that t_j plus the phase expansion
    constant of E_j equals pi theta_j modulo pi; the resulting sum then follows
    the searched trigonometric sums in the tail.

    :param int N: number of eigenvalues, at least 2
    :param float alpha: Stark exponent in (2/3, 2)
    :param phases: PhaseVector or sequence of N phases in [0, 1)
    :param float a: amplitude, (2 - alpha) / (2 + alpha) when None
    :return: PotentialSpec
    """
    if N < 2:
        raise PotentialSpecException("The equally spaced construction needs N >= 2; use thm15 mode for N=1")
    if not 2.0 / 3.0 < alpha < 2.0:
        raise PotentialSpecException("The equally spaced construction needs alpha in (2/3, 2), got {}".format(alpha))
    if not isinstance(phases, PhaseVector):
        phases = PhaseVector(phases)
    if phases.N != N:
        raise PotentialSpecException("Expected {} phases, got {}".format(N, phases.N))

    energies = thm13_energies(N, alpha)
    params = ModelParams(alpha, xi_start=xi_start, energies=energies, tol_ode=tol_ode, tol_quad=tol_quad,
                         xi_table_max=xi_table_max)
    if a is None:
        a = thm13_amplitude(alpha)

    levels = []
    for E, theta in zip(energies, phases.theta):
        constant = taylor_constant(E, params)
        t = (math.pi * theta - constant) % math.pi
        # rounding can land exactly on pi
        if t >= math.pi:
            t = 0.0
        levels.append(EnergyLevel(E, t=t))
        logger.debug("Level E={:.6f}: theta={:.6f} constant={:.6f} t={:.6f}".format(E, theta, constant, t))

    spec = PotentialSpec(ConstructionMode.THM13, a, levels, params)
    logger.info("Built equally spaced spec: N={} alpha={} a={:.6f} xi_start={:.4g}".format(
        N, alpha, a, params.xi_start))
    return spec


def default_cutoffs(N, params):
    """a_j = active_start 2^j."""
    return [params.active_start * 2.0 ** j for j in range(1, N + 1)]


def build_thm15_spec(levels, a, alpha, xi_start=None, strict=True, tol_ode=ModelParams.DEFAULT_TOL_ODE,
                     tol_quad=ModelParams.DEFAULT_TOL_QUAD, xi_table_max=ModelParams.DEFAULT_XI_TABLE_MAX):
    """
    Potential with arbitrary distinct eigenvalues and staggered cutoffs.

    Levels without a cutoff get the default a_j = active_start 2^j.

    :param list levels: EnergyLevel list
    :param float a: amplitude, above (2 - alpha) / (2 (2 + alpha)) when strict
    :param float alpha: Stark exponent in (0, 2)
    :param bool strict: enforce the amplitude threshold
    :return: PotentialSpec
    """
    levels = list(levels)
    if len(levels) < 1:
        raise PotentialSpecException("At least one level is required")
    energies = [level.E for level in levels]
    if len(set(energies)) != len(energies):
        raise PotentialSpecException("Energies must be pairwise distinct: {}".format(energies))

    params = ModelParams(alpha, xi_start=xi_start, energies=energies, tol_ode=tol_ode, tol_quad=tol_quad,
                         xi_table_max=xi_table_max)
    cutoffs = default_cutoffs(len(levels), params)
    completed = []
    for level, cutoff in zip(levels, cutoffs):
        a_cut = cutoff if level.a_cut is None else level.a_cut
        completed.append(EnergyLevel(level.E, t=level.t, a_cut=a_cut, theta_bc=level.theta_bc))

    spec = PotentialSpec(ConstructionMode.THM15, a, completed, params, strict=strict)
    logger.info("Built arbitrary-level spec: N={} alpha={} a={:.6f} cutoffs={}".format(
        len(levels), alpha, a, [level.a_cut for level in completed]))
    return spec

