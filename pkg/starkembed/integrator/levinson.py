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
The decaying solution at a resonant energy.

In the rotating frame y = Rot(Phi_E + t) (s phi, phi') of level j the equation is
y' = M y. Splitting M = Lambda + H + E_rem with Lambda = diag(-lambda, lambda) and
substituting y = (I + Q) phi_tilde, Q = -integral of H up to xi_max, leaves
phi_tilde' = (Lambda + R) phi_tilde with an integrable R. The decaying solution
phi_tilde = exp(-int lambda) psi is the fixed point of a Volterra operator and is
found by Picard iteration.
"""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np
from scipy.integrate import cumulative_trapezoid

# Package libraries
from starkembed.exceptions import StarkEmbedException, InvalidInputException
from starkembed.integrator.solve import integrate_xi, report_grid
from starkembed.integrator.trace import SolutionTrace
from starkembed.liouville.phase import integrate_panels
from starkembed.liouville.transform import beta

logger = logging.getLogger(__name__)

GRID_STEP = math.pi / 32.0
MAX_ITER = 60
PICARD_TOL = 1e-12
Q_NORM_LIMIT = 0.5
BINS_PER_DECADE = 8


class NotContractingException(StarkEmbedException):
    def __init__(self, q_norm, kernel_norm, reason=""):
        self.q_norm = q_norm
        self.kernel_norm = kernel_norm
        super().__init__("Fixed-point iteration does not contract ({}): sup|Q|={:.4g}, int|R|={:.4g}".format(
            reason, q_norm, kernel_norm))


def lambda_rate(xi, E, t, a, params):
    """lambda(xi) = 2 a sin^2(2 Phi_E(xi) + 2 t) / xi."""
    xi_arr = np.asarray(xi, dtype=float)
    value = 2.0 * a * np.sin(2.0 * params.phase(E)(xi_arr) + 2.0 * t) ** 2 / xi_arr
    return float(value) if np.ndim(xi) == 0 else value


def lambda_offset(level, a, params, xi0, xi_end=1e5):
    """
    lim (int_{xi0}^{xi} lambda - a ln(xi / xi0)) = -a int_{xi0}^inf cos(4 theta(s)) / s ds.

    The oscillatory integral is truncated at xi_end, leaving an error below a / (2 xi_end).
    """
    table = params.phase(level.E)
    if not xi_end > xi0:
        raise InvalidInputException("xi0={} beyond the integration end {}".format(xi0, xi_end))
    count = int(math.ceil((xi_end - xi0) / (math.pi / 4.0))) + 1
    edges = np.linspace(xi0, xi_end, count)

    def integrand(s):
        return np.cos(4.0 * (table(s) + level.t)) / s

    return -a * float(np.sum(integrate_panels(integrand, edges, params.tol_quad)))


def _tail(pieces_of, grid):
    """Trapezoidal integrals from every grid point to the last one."""
    pieces = 0.5 * (pieces_of[1:] + pieces_of[:-1]) * np.diff(grid)
    return np.concatenate([np.cumsum(pieces[::-1])[::-1], [0.0]])


def _tail_matrix(f, grid):
    out = np.empty_like(f)
    for i in range(2):
        for k in range(2):
            out[:, i, k] = _tail(f[:, i, k], grid)
    return out


def _decay_slope(grid, norms):
    """Log-log slope of the binned maxima of xi |R(xi)|."""
    edges = np.geomspace(grid[0], grid[-1], max(3, int(math.log10(grid[-1] / grid[0]) * BINS_PER_DECADE) + 1))
    centers, peaks = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        inside = (grid >= lo) & (grid < hi)
        if np.any(inside):
            centers.append(math.sqrt(lo * hi))
            peaks.append(float(np.max(grid[inside] * norms[inside])))
    if len(peaks) < 2 or min(peaks) <= 0.0:
        return -math.inf
    slope, _ = np.polyfit(np.log(centers), np.log(peaks), 1)
    return float(slope)


class LevinsonSolution:
    """
    Fixed point of the Volterra iteration on a uniform grid.

    ytilde holds phi_tilde, y the rotating-frame vector (I + Q) phi_tilde and
    (phi, dphi) the solution of the transformed equation.
    """

    def __init__(self, grid, ytilde, y, phi, dphi, E, t, iteration_count, residual, gap_ratios, q_norm,
                 kernel_norm, kernel_slope):
        self.grid = grid
        self.ytilde = ytilde
        self.y = y
        self.phi = phi
        self.dphi = dphi
        self.E = E
        self.t = t
        self.iteration_count = iteration_count
        self.residual = residual
        self.gap_ratios = gap_ratios
        self.q_norm = q_norm
        self.kernel_norm = kernel_norm
        self.kernel_slope = kernel_slope

    @property
    def max_gap_ratio(self):
        return max(self.gap_ratios) if self.gap_ratios else 0.0

    def to_trace(self, report=None):
        """Samples at the grid nodes nearest to the reporting grid."""
        if report is None:
            report = report_grid(self.grid[0], self.grid[-1])
        index = np.unique(np.clip(np.searchsorted(self.grid, report), 0, len(self.grid) - 1))
        y1, y2 = self.y[index, 0], self.y[index, 1]
        meta = {'method': 'levinson', 'iterations': self.iteration_count, 'residual': self.residual,
                'q_norm': self.q_norm, 'kernel_norm': self.kernel_norm, 'frame_phase': self.t}
        return SolutionTrace(self.grid[index], self.phi[index], self.dphi[index], self.E, 'xi', y1, y2,
                             np.hypot(y1, y2), meta)

    def to_dict(self):
        return {
            'iterations': self.iteration_count,
            'residual': self.residual,
            'gap_ratios': self.gap_ratios,
            'q_norm': self.q_norm,
            'kernel_norm': self.kernel_norm,
            'kernel_slope': self.kernel_slope,
        }


def levinson_kernels(spec, j, grid):
    """
    Frame angle, s, lambda, Q and R of level j on the grid.

    :return: dict of arrays
    """
    params = spec.params
    level = spec.levels[j]
    E = level.E
    theta = params.phase(E)(grid) + level.t
    b = beta(E, grid, params)
    s = np.sqrt(1.0 - b)
    ds_over_s = params.gamma * b / (2.0 * grid * s * s)
    V = spec.V(grid)
    V_rest = V - spec.resonant_term(grid, j)
    W_over_s = (V + params.k2 / grid ** 2) / s
    lam = 2.0 * spec.a * np.sin(2.0 * theta) ** 2 / grid

    cos, sin = np.cos(theta), np.sin(theta)
    sin2, cos2 = np.sin(2.0 * theta), np.cos(2.0 * theta)
    n = len(grid)

    M = np.empty((n, 2, 2))
    M[:, 0, 0] = ds_over_s * cos * cos - W_over_s * sin * cos
    M[:, 0, 1] = ds_over_s * cos * sin - W_over_s * sin * sin
    M[:, 1, 0] = ds_over_s * cos * sin + W_over_s * cos * cos
    M[:, 1, 1] = ds_over_s * sin * sin + W_over_s * cos * sin

    H = np.empty((n, 2, 2))
    H[:, 0, 0] = -0.5 * V_rest * sin2
    H[:, 1, 1] = 0.5 * V_rest * sin2
    H[:, 0, 1] = -0.5 * V * (1.0 - cos2)
    H[:, 1, 0] = 0.5 * V * (1.0 + cos2)

    # E_rem = M - Lambda - H, formed in place
    remainder = M
    remainder -= H
    remainder[:, 0, 0] += lam
    remainder[:, 1, 1] -= lam

    Q = -_tail_matrix(H, grid)
    identity_plus_Q = Q + np.eye(2)

    # Lambda Q - Q Lambda + H Q + E_rem (I + Q)
    rhs = remainder @ identity_plus_Q
    del M, remainder
    rhs += H @ Q
    rhs[:, 0, 1] -= 2.0 * lam * Q[:, 0, 1]
    rhs[:, 1, 0] += 2.0 * lam * Q[:, 1, 0]
    R = np.linalg.solve(identity_plus_Q, rhs)

    return {'theta': theta, 's': s, 'lambda': lam, 'Q': Q, 'R': R}


def levinson_subordinate(spec, j, xi_max, xi_min=None, max_iter=MAX_ITER, tol=PICARD_TOL, step=GRID_STEP):
    """
    Decaying solution at E_j by Picard iteration of

        psi_1(xi) = 1 - int_xi^X (R psi)_1
        psi_2(xi) = -int_xi^X exp(-2 (L(y) - L(xi))) (R psi)_2(y) dy

    with L the integral of lambda and the upper limit truncated at X = xi_max.

    :param PotentialSpec spec: the potential
    :param int j: index of the resonant level
    :param float xi_max: truncation point X
    :param float xi_min: left end of the window, the start of level j when None
    :return: LevinsonSolution
    """
    if not 0 <= j < spec.N:
        raise InvalidInputException("Level index {} outside 0..{}".format(j, spec.N - 1))
    level = spec.levels[j]
    start = spec.level_start(level)
    xi_lo = start if xi_min is None else float(xi_min)
    if xi_lo < start:
        raise InvalidInputException("Window start {} below the start {} of level {}".format(xi_lo, start, j))
    if not xi_max > xi_lo:
        raise InvalidInputException("xi_max={} must exceed xi_min={}".format(xi_max, xi_lo))

    grid = np.linspace(xi_lo, xi_max, int(math.ceil((xi_max - xi_lo) / step)) + 1)
    kernels = levinson_kernels(spec, j, grid)
    Q, R = kernels['Q'], kernels['R']

    q_norm = float(np.max(np.linalg.norm(Q, axis=(1, 2))))
    r_norms = np.linalg.norm(R, axis=(1, 2))
    kernel_norm = float(np.sum(0.5 * (r_norms[1:] + r_norms[:-1]) * np.diff(grid)))
    slope = _decay_slope(grid, r_norms)
    logger.info("Level {}: sup|Q|={:.4g} int|R|={:.4g} slope of xi|R|={:.3f} on {} nodes".format(
        j, q_norm, kernel_norm, slope, len(grid)))
    if q_norm > Q_NORM_LIMIT:
        raise NotContractingException(q_norm, kernel_norm, "sup|Q| above 1/2")
    if not slope < 0.0:
        raise NotContractingException(q_norm, kernel_norm, "xi|R| does not decay")

    L = cumulative_trapezoid(kernels['lambda'], grid, initial=0.0)
    grow, shrink = np.exp(2.0 * L), np.exp(-2.0 * L)

    psi = np.zeros((len(grid), 2))
    gaps, ratios = [], []
    for iteration in range(1, max_iter + 1):
        g = np.einsum('nij,nj->ni', R, psi)
        new = np.empty_like(psi)
        new[:, 0] = 1.0 - _tail(g[:, 0], grid)
        new[:, 1] = -grow * _tail(shrink * g[:, 1], grid)
        gap = float(np.max(np.abs(new - psi)))
        psi = new
        if gaps:
            ratios.append(gap / gaps[-1] if gaps[-1] > 0.0 else 0.0)
        gaps.append(gap)
        logger.debug("Picard iteration {}: gap {:.3e}".format(iteration, gap))

        if gap <= tol:
            break
        if len(ratios) >= 2 and ratios[-1] > 1.0 and ratios[-2] > 1.0:
            raise NotContractingException(q_norm, kernel_norm, "iterates diverge")
    else:
        raise NotContractingException(q_norm, kernel_norm, "no convergence in {} iterations".format(max_iter))

    ytilde = np.exp(-L)[:, None] * psi
    y = np.einsum('nij,nj->ni', Q + np.eye(2), ytilde)
    theta, s = kernels['theta'], kernels['s']
    cos, sin = np.cos(theta), np.sin(theta)
    u1 = cos * y[:, 0] + sin * y[:, 1]
    u2 = -sin * y[:, 0] + cos * y[:, 1]

    logger.info("Level {}: converged in {} iterations, max gap ratio {:.3f}".format(
        j, iteration, max(ratios) if ratios else 0.0))
    return LevinsonSolution(grid, ytilde, y, u1 / s, u2, level.E, level.t, iteration, gaps[-1], ratios, q_norm,
                            kernel_norm, slope)


def subordinate_by_backward(spec, j, xi_max, xi_min, method='magnus'):
    """
    Decaying solution at E_j by backward integration from xi_max.

    The start vector is the decaying rotating-frame direction y = (1, 0), so
    phi = cos(theta) / s and phi' = -sin(theta) at xi_max.

    :return: SolutionTrace on [xi_min, xi_max]
    """
    if not 0 <= j < spec.N:
        raise InvalidInputException("Level index {} outside 0..{}".format(j, spec.N - 1))
    if not xi_max > xi_min:
        raise InvalidInputException("xi_max={} must exceed xi_min={}".format(xi_max, xi_min))
    params = spec.params
    level = spec.levels[j]
    theta = params.phase(level.E)(xi_max) + level.t
    s = math.sqrt(1.0 - beta(level.E, xi_max, params))
    return integrate_xi(spec, level.E, (xi_min, xi_max), (math.cos(theta) / s, -math.sin(theta)),
                        direction='backward', method=method)
