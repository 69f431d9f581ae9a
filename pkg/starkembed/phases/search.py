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

"""Rejection sampling of phase vectors meeting the trigonometric-sum bound."""

# Python standard library
import logging
import math
from concurrent.futures import ThreadPoolExecutor

# 3rd party libraries
import numpy as np
import tqdm

# Package libraries
from starkembed.exceptions import StarkEmbedException, InvalidInputException
from starkembed.phases.trig import PhaseVector, certified_sup, lemma_bound, frequencies

logger = logging.getLogger(__name__)


class BudgetExhaustedException(StarkEmbedException):
    def __init__(self, samples):
        self.samples = samples
        super().__init__("No certified phase vector within {} samples".format(samples))


def sample_theta(N, seed, index):
    """
    Phase vector number index of the stream seeded by seed.

    Every (seed, index) pair owns an independent generator, so samples can be drawn
    in any order or in parallel with identical results.
    """
    rng = np.random.default_rng([int(seed), int(index)])
    return PhaseVector(rng.random(N), seed=seed, index=index)


def _candidate(N, seed, index, h):
    theta = sample_theta(N, seed, index)
    return theta, certified_sup(theta, h)


def search_phases(N, max_samples, seed, h=None, threads=1, progress=False):
    """
    First sampled phase vector whose certified M1 + M2 is within the lemma bound.

    :param int N: number of frequencies
    :param int max_samples: sampling budget
    :param int seed: non-negative seed
    :param float h: certification grid step
    :param int threads: candidates certified concurrently
    :param bool progress: show a progress bar
    :return: tuple (PhaseVector, SupCertificate)
    """
    if N < 1:
        raise InvalidInputException("N must be at least 1")
    if max_samples < 1:
        raise InvalidInputException("max_samples must be at least 1")
    if seed < 0:
        raise InvalidInputException("seed must be non-negative")

    threads = max(1, int(threads))
    bound = lemma_bound(N)
    logger.info("Searching phases for N={} (bound {:.4f}, budget {}, seed {})".format(N, bound, max_samples, seed))

    bar = tqdm.tqdm(desc="phases", total=max_samples, disable=not progress)
    try:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start in range(0, max_samples, threads):
                indices = range(start, min(start + threads, max_samples))
                results = list(pool.map(lambda i: _candidate(N, seed, i, h), indices))
                # lowest index wins regardless of completion order
                for theta, certificate in results:
                    bar.update(1)
                    logger.debug("Sample {}: M1+M2={:.4f}".format(theta.index, certificate.total))
                    if certificate.satisfied:
                        logger.info("Sample {} certified: M1={:.4f} M2={:.4f}".format(
                            theta.index, certificate.M1, certificate.M2))
                        return theta, certificate
    finally:
        bar.close()

    raise BudgetExhaustedException(max_samples)


def default_lambda(N):
    """Exponential-moment parameter sqrt(8 ln(8 N (N+1)) / N)."""
    return math.sqrt(8.0 * math.log(8.0 * N * (N + 1)) / N)


def moment_bound(N, lam):
    return math.exp(N * lam * lam / 4.0)


def _moment_samples(N, lam, samples, xi, seed):
    rng = np.random.default_rng([int(seed)])
    theta = rng.random((samples, N))
    f1 = np.sin(2.0 * xi * frequencies(N) + 2.0 * math.pi * theta).sum(axis=1)
    return np.exp(lam * f1)


def moment_check(N, lam=None, samples=20000, xi=0.0, seed=0):
    """
    Monte Carlo estimate of the mean of exp(lam f1(xi, theta)) over uniform theta.

    :return: float estimate, to be compared with moment_bound(N, lam)
    """
    if lam is None:
        lam = default_lambda(N)
    if lam <= 0:
        raise InvalidInputException("lambda must be positive")
    return float(np.mean(_moment_samples(N, lam, samples, xi, seed)))


def moment_check_passes(N, lam=None, samples=20000, xi=0.0, seed=0):
    """True when the estimate stays below exp(N lam^2 / 4) up to three standard errors."""
    if lam is None:
        lam = default_lambda(N)
    values = _moment_samples(N, lam, samples, xi, seed)
    estimate = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(samples))
    return estimate <= moment_bound(N, lam) + 3.0 * stderr
