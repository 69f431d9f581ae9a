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

"""Power-law fits of solution envelopes."""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np
from scipy.stats import linregress

# Package libraries
from starkembed.exceptions import StarkEmbedException

logger = logging.getLogger(__name__)

MIN_DECADES = 1.5
MIN_POINTS = 64
# samples closer than this are dense enough to resolve single oscillations
ENVELOPE_SPACING = math.pi / 4.0


class WindowTooShortException(StarkEmbedException):
    pass


class DecayFit:
    def __init__(self, exponent, stderr, window, n_points, r_squared, envelope=False):
        """
        Least-squares slope of ln R against ln xi.

        :param float exponent: fitted slope
        :param float stderr: standard error of the slope
        :param tuple window: (xi_lo, xi_hi)
        :param int n_points: points entering the regression
        :param float r_squared: coefficient of determination
        :param bool envelope: True when the fit used per-period maxima
        """
        self.exponent = float(exponent)
        self.stderr = float(stderr)
        self.window = (float(window[0]), float(window[1]))
        self.n_points = int(n_points)
        self.r_squared = float(r_squared)
        self.envelope = envelope

    def to_dict(self):
        return {
            'exponent': self.exponent,
            'stderr': self.stderr,
            'window': list(self.window),
            'n_points': self.n_points,
            'r_squared': self.r_squared,
            'envelope': self.envelope,
        }

    def __repr__(self):
        return "DecayFit(exponent={:.5f}, stderr={:.2e}, window=[{:.4g}, {:.4g}], n={})".format(
            self.exponent, self.stderr, self.window[0], self.window[1], self.n_points)


def _samples(source):
    if hasattr(source, 'y'):
        return np.asarray(source.grid), np.hypot(source.y[:, 0], source.y[:, 1])
    if hasattr(source, 'R'):
        return np.asarray(source.grid), np.asarray(source.R)
    grid, R = source
    return np.asarray(grid, dtype=float), np.asarray(R, dtype=float)


def envelope_points(grid, R, period=2.0 * math.pi):
    """Maximum of R inside every period-long bin, with the abscissa where it is attained."""
    bins = np.floor((grid - grid[0]) / period).astype(int)
    starts = np.flatnonzero(np.diff(np.concatenate([[-1], bins])))
    xs, peaks = [], []
    for lo, hi in zip(starts, np.concatenate([starts[1:], [len(grid)]])):
        k = lo + int(np.argmax(R[lo:hi]))
        xs.append(grid[k])
        peaks.append(R[k])
    # a trailing partial bin does not hold a full period
    if len(xs) > 1 and grid[-1] - grid[starts[-1]] < 0.99 * period:
        xs, peaks = xs[:-1], peaks[:-1]
    return np.array(xs), np.array(peaks)


def fit_decay(source, window=None, min_decades=MIN_DECADES, min_points=MIN_POINTS):
    """
    Fit R ~ xi^e on a window.

    Dense samples (median spacing below pi/4) are reduced to per-period maxima
    first, so the fit follows the envelope instead of the oscillation.

    :param source: SolutionTrace, LevinsonSolution or a (grid, R) pair
    :param tuple window: (xi_lo, xi_hi), the whole source when None
    :return: DecayFit
    """
    grid, R = _samples(source)
    lo, hi = (grid[0], grid[-1]) if window is None else window
    # window ends given as decades may miss grid nodes by an ulp
    keep = (grid >= lo * (1.0 - 1e-9)) & (grid <= hi * (1.0 + 1e-9)) & np.isfinite(R) & (R > 0)
    grid, R = grid[keep], R[keep]

    if len(grid) < 2 or math.log10(grid[-1] / grid[0]) < min_decades - 1e-9:
        raise WindowTooShortException("Fit window [{:.4g}, {:.4g}] spans less than {} decades".format(
            lo, hi, min_decades))

    envelope = bool(np.median(np.diff(grid)) < ENVELOPE_SPACING)
    if envelope:
        grid, R = envelope_points(grid, R)
    if len(grid) < min_points:
        raise WindowTooShortException("Only {} points in [{:.4g}, {:.4g}], need {}".format(
            len(grid), lo, hi, min_points))

    result = linregress(np.log(grid), np.log(R))
    fit = DecayFit(result.slope, result.stderr, (lo, hi), len(grid), result.rvalue ** 2, envelope)
    logger.debug("Decay fit: {}".format(fit))
    return fit
