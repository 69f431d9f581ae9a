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
Fourth-order Magnus stepping for y' = [[0, 1], [w(t), 0]] y.

The two-point Gauss-Legendre Magnus generator is traceless, so its exponential is
evaluated in closed form and every step propagator has determinant one.
"""

# Python standard library
import logging
import math

# 3rd party libraries
import numpy as np

# Package libraries
from starkembed.exceptions import StarkEmbedException

logger = logging.getLogger(__name__)

TRACE_LOGGING_LEVEL = 5
MAX_STEP = math.pi / 20.0
MAX_ROUNDS = 16
CHUNK = 1 << 15

_GAUSS_OFFSET = math.sqrt(3.0) / 6.0
_COMMUTATOR = math.sqrt(3.0) / 12.0


class StepFailureException(StarkEmbedException):
    def __init__(self, xi):
        self.xi = xi
        super().__init__("Step size control failed near {:.10g}".format(xi))


def _exp_coefficients(mu2):
    """C, S with exp(Omega) = C I + S Omega for Omega^2 = mu2 I."""
    r = np.sqrt(np.abs(mu2))
    safe = np.where(r == 0.0, 1.0, r)
    grows = mu2 > 0.0
    C = np.where(grows, np.cosh(r), np.cos(r))
    S = np.where(r == 0.0, 1.0, np.where(grows, np.sinh(r), np.sin(r)) / safe)
    return C, S


def magnus_step(w, t0, h):
    """
    Propagators over [t0, t0 + h] for arrays of intervals.

    :param w: vectorized coefficient function
    :param numpy.ndarray t0: left ends
    :param numpy.ndarray h: signed step lengths
    :return: numpy.ndarray of shape (n, 2, 2)
    """
    w1 = w(t0 + (0.5 - _GAUSS_OFFSET) * h)
    w2 = w(t0 + (0.5 + _GAUSS_OFFSET) * h)
    d = _COMMUTATOR * h * h * (w1 - w2)
    c = 0.5 * h * (w1 + w2)
    C, S = _exp_coefficients(d * d + h * c)

    P = np.empty(t0.shape + (2, 2))
    P[..., 0, 0] = C + S * d
    P[..., 0, 1] = S * h
    P[..., 1, 0] = S * c
    P[..., 1, 1] = C - S * d
    return P


def unimodular_inverse(P):
    inverse = np.empty_like(P)
    inverse[..., 0, 0] = P[..., 1, 1]
    inverse[..., 1, 1] = P[..., 0, 0]
    inverse[..., 0, 1] = -P[..., 0, 1]
    inverse[..., 1, 0] = -P[..., 1, 0]
    return inverse


def adaptive_propagators(w, nodes, tol, marks=None, max_rounds=MAX_ROUNDS):
    """
    Step-doubling controlled propagators between consecutive nodes.

    Each interval is compared as one step against two half steps; intervals whose
    propagators differ by more than tol (relative to max(1, |P|)) are bisected.
    The two-half-step propagator of every accepted interval is kept.

    :param w: vectorized coefficient function
    :param numpy.ndarray nodes: increasing nodes
    :param float tol: local tolerance
    :param numpy.ndarray marks: boolean flag per interval, carried to the left half on bisection
    :return: tuple (left ends, steps, propagators, marks) sorted by left end
    """
    a = np.asarray(nodes[:-1], dtype=float)
    h = np.diff(np.asarray(nodes, dtype=float))
    if marks is None:
        marks = np.zeros(len(a), dtype=bool)

    accepted = []
    for round_ in range(max_rounds + 1):
        full = magnus_step(w, a, h)
        first = magnus_step(w, a, 0.5 * h)
        second = magnus_step(w, a + 0.5 * h, 0.5 * h)
        halves = second @ first

        error = np.max(np.abs(full - halves), axis=(1, 2))
        scale = np.maximum(1.0, np.max(np.abs(halves), axis=(1, 2)))
        ok = error <= tol * scale
        accepted.append((a[ok], h[ok], halves[ok], marks[ok]))
        if ok.all():
            break

        a, h, marks = a[~ok], h[~ok], marks[~ok]
        if round_ == max_rounds:
            raise StepFailureException(float(a[0]))
        logger.log(TRACE_LOGGING_LEVEL, "Round {}: bisecting {} intervals".format(round_ + 1, len(a)))
        a = np.concatenate([a, a + 0.5 * h])
        marks = np.concatenate([marks, np.zeros(len(marks), dtype=bool)])
        h = np.concatenate([0.5 * h, 0.5 * h])

    a, h, P, marks = (np.concatenate(part) for part in zip(*accepted))
    order = np.argsort(a, kind='stable')
    return a[order], h[order], P[order], marks[order]


def chain(P, y0):
    """
    States y_k = P_k ... P_1 y0 for k = 0..n.

    Products are formed with a blocked scan: prefix products inside blocks of
    about sqrt(n) propagators are vectorized across blocks, then the block
    totals are chained.

    :param numpy.ndarray P: propagators, shape (n, 2, 2)
    :param numpy.ndarray y0: initial state
    :return: numpy.ndarray of shape (n + 1, 2)
    """
    y0 = np.asarray(y0, dtype=float)
    n = len(P)
    if n == 0:
        return y0[None, :].copy()

    size = int(math.ceil(math.sqrt(n)))
    count = -(-n // size)
    padding = count * size - n
    if padding:
        P = np.concatenate([P, np.broadcast_to(np.eye(2), (padding, 2, 2))])
    blocks = P.reshape(count, size, 2, 2)

    prefix = np.empty_like(blocks)
    prefix[:, 0] = blocks[:, 0]
    for i in range(1, size):
        prefix[:, i] = blocks[:, i] @ prefix[:, i - 1]

    starts = np.empty((count, 2))
    state = y0
    for k in range(count):
        starts[k] = state
        state = prefix[k, -1] @ state

    states = np.einsum('mbij,mj->mbi', prefix, starts).reshape(-1, 2)[:n]
    return np.vstack([y0[None, :], states])


def segment_nodes(points, max_step=MAX_STEP):
    """
    Nodes covering the sorted mandatory points with steps of at most max_step.

    :return: tuple (nodes, index of every mandatory point in nodes)
    """
    points = np.asarray(points, dtype=float)
    lengths = np.diff(points)
    counts = np.maximum(1, np.ceil(lengths / max_step).astype(int))
    pieces = [points[i] + np.arange(counts[i]) * (lengths[i] / counts[i]) for i in range(len(lengths))]
    # the first node of every piece is the mandatory point itself
    pieces.append(points[-1:])
    nodes = np.concatenate(pieces)
    index = np.concatenate([[0], np.cumsum(counts)])
    nodes[index] = points
    return nodes, index


def propagate(w, points, y0, tol, backward=False, max_step=MAX_STEP, chunk=CHUNK):
    """
    Integrate across the sorted mandatory points and return the states at each of them.

    :param w: vectorized coefficient function
    :param points: increasing abscissae, the first and last are the interval ends
    :param y0: state at points[0], or at points[-1] when backward
    :param float tol: local tolerance
    :param bool backward: start at the right end
    :return: tuple (states of shape (len(points), 2), statistics dict)
    """
    points = np.asarray(points, dtype=float)
    states = np.empty((len(points), 2))
    stats = {'steps': 0, 'chunks': 0}

    # group the mandatory points so that each group spans about chunk base intervals
    nodes_all, index = segment_nodes(points, max_step)
    groups = [0]
    for k in range(1, len(points)):
        if index[k] - index[groups[-1]] >= chunk or k == len(points) - 1:
            groups.append(k)
    spans = list(zip(groups[:-1], groups[1:]))
    if backward:
        spans.reverse()

    state = np.asarray(y0, dtype=float)
    states[-1 if backward else 0] = state
    for lo, hi in spans:
        nodes = nodes_all[index[lo]:index[hi] + 1]
        marks = np.zeros(len(nodes) - 1, dtype=bool)
        marks[index[lo:hi] - index[lo]] = True
        a, h, P, marks = adaptive_propagators(w, nodes, tol, marks)
        stats['steps'] += len(a)
        stats['chunks'] += 1

        if backward:
            path = chain(unimodular_inverse(P[::-1]), state)[::-1]
            state = path[0]
        else:
            path = chain(P, state)
            state = path[-1]
        # path[k] is the state at a[k]; path[-1] at the right end
        states[lo:hi] = path[:-1][marks]
        states[hi] = path[-1]
        logger.log(TRACE_LOGGING_LEVEL, "Chunk [{:.6g}, {:.6g}]: {} steps".format(nodes[0], nodes[-1], len(a)))

    return states, stats
