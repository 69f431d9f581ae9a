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

"""Sampling of a potential for export."""

# Python standard library
import logging

# 3rd party libraries
import numpy as np

# Package libraries
from starkembed.liouville.transform import forward_map, inverse_map
from starkembed.utility.output import write_csv

logger = logging.getLogger(__name__)

POTENTIAL_COLUMNS = ['x', 'q', 'xi', 'V']


def sample_potential(spec, x):
    """
    :param PotentialSpec spec: the potential
    :param x: non-negative x grid
    :return: tuple of arrays (x, q, xi, V)
    """
    x = np.asarray(x, dtype=float)
    xi = forward_map(x, spec.params)
    V = spec.V(xi)
    return x, x ** spec.params.alpha * V, xi, V


def default_x_grid(spec, xi_max, samples):
    """Grid uniform in xi on [0, xi_max], mapped to x."""
    return inverse_map(np.linspace(0.0, xi_max, samples), spec.params)


def export_potential(spec, path, x=None, xi_max=1e3, samples=4096):
    """
    Write the samples (x, q, xi, V) of a potential to a CSV file.

    :return: tuple of the sampled arrays
    """
    if x is None:
        x = default_x_grid(spec, xi_max, samples)
    columns = sample_potential(spec, x)
    write_csv(path, POTENTIAL_COLUMNS, columns)
    logger.info("Wrote {} potential samples to {}".format(len(columns[0]), path))
    return columns
