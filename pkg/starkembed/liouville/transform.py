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
Change of variables between x-space and xi-space.

With xi = x^(1 + alpha/2) / (1 + alpha/2) and phi(xi) = x^(alpha/4) u(x) the
equation -u'' - x^alpha u + q u = E u becomes -phi'' + Q(xi, E) phi = phi where

    Q = k2 xi^-2 + beta_E(xi) + V(xi),   q(x) = x^alpha V(xi(x)).
"""

import numpy as np

from starkembed.liouville.params import LiouvilleDomainException


def _as_array(value, name, strict=False):
    arr = np.asarray(value, dtype=float)
    bad = arr <= 0 if strict else arr < 0
    if np.any(bad) or np.any(np.isnan(arr)):
        raise LiouvilleDomainException("{} must be {}, got {}".format(
            name, "positive" if strict else "non-negative", value))
    return arr


def _result(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def forward_map(x, params):
    """xi(x) = integral of t^(alpha/2) over [0, x]."""
    arr = _as_array(x, "x")
    half = 1.0 + params.alpha / 2.0
    return _result(arr ** half / half, x)


def inverse_map(xi, params):
    """x(xi) = c xi^(2 / (2 + alpha))."""
    arr = _as_array(xi, "xi")
    return _result(params.c * arr ** (2.0 / (2.0 + params.alpha)), xi)


def weight(xi, params):
    arr = _as_array(xi, "xi", strict=True)
    return _result(params.c ** -params.alpha * arr ** -params.gamma, xi)


def beta(E, xi, params):
    return _result(-float(E) * np.asarray(weight(xi, params)), xi)


def q_potential(xi, E, V, params):
    """
    Transformed potential Q(xi, E) including both xi^-2 terms.

    :param xi: abscissa (scalar or array), positive
    :param float E: energy
    :param V: callable xi -> V(xi), or None for the unperturbed operator
    :param ModelParams params: model parameters
    """
    arr = _as_array(xi, "xi", strict=True)
    value = params.k2 / arr ** 2 + beta(E, arr, params)
    if V is not None:
        value = value + V(arr)
    return _result(value, xi)


def u_to_phi(x, u_value, params):
    arr = _as_array(x, "x", strict=True)
    return _result(arr ** (params.alpha / 4.0) * np.asarray(u_value, dtype=float), u_value)


def phi_to_u(xi, phi_value, params):
    x = inverse_map(_as_array(xi, "xi", strict=True), params)
    return _result(x ** (-params.alpha / 4.0) * np.asarray(phi_value, dtype=float), phi_value)


def state_to_xi(x, u_value, du_value, params):
    """
    Map an x-space state (u, u') to the xi-space state (phi, phi').

    :return: tuple (xi, phi, dphi)
    """
    x = _as_array(x, "x", strict=True)
    u_value = np.asarray(u_value, dtype=float)
    du_value = np.asarray(du_value, dtype=float)
    quarter = params.alpha / 4.0
    phi = x ** quarter * u_value
    dphi = x ** -quarter * (quarter * u_value / x + du_value)
    return forward_map(x, params), phi, dphi


def state_to_x(xi, phi_value, dphi_value, params):
    """
    Inverse of state_to_xi.

    :return: tuple (x, u, du)
    """
    xi = _as_array(xi, "xi", strict=True)
    x = inverse_map(xi, params)
    quarter = params.alpha / 4.0
    u_value = x ** -quarter * np.asarray(phi_value, dtype=float)
    du_value = x ** quarter * np.asarray(dphi_value, dtype=float) - quarter * u_value / x
    return x, u_value, du_value
