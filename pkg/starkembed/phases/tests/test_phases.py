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

import math
import unittest

import numpy as np
from scipy.special import i0

from starkembed.exceptions import InvalidInputException
from starkembed.phases.trig import PhaseVector, trig_sums, certified_sup, lemma_bound, default_grid_step
from starkembed.phases.search import search_phases, sample_theta, moment_check, moment_check_passes, \
    moment_bound, default_lambda, BudgetExhaustedException


class TestTrigSums(unittest.TestCase):
    def test_zero_phases_at_origin(self):
        f1, f2 = trig_sums(0.0, PhaseVector(np.zeros(5)))
        self.assertAlmostEqual(f1, 0.0, places=14)
        self.assertAlmostEqual(f2, 5.0, places=14)

    def test_single_frequency_is_on_unit_circle(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            theta = PhaseVector(rng.random(1))
            f1, f2 = trig_sums(rng.uniform(0, 100, 50), theta)
            np.testing.assert_allclose(f1 ** 2 + f2 ** 2, 1.0, rtol=1e-13)

    def test_opposite_phases_cancel(self):
        f1, f2 = trig_sums(0.0, PhaseVector([0.0, 0.5]))
        self.assertAlmostEqual(f1, 0.0, places=14)
        self.assertAlmostEqual(f2, 0.0, places=14)

    def test_period(self):
        rng = np.random.default_rng(1)
        theta = PhaseVector(rng.random(6))
        xi = rng.uniform(0, 50, 100)
        for before, after in zip(trig_sums(xi, theta), trig_sums(xi + math.pi * 6, theta)):
            np.testing.assert_allclose(before, after, atol=1e-12)

    def test_mean_zero_over_period(self):
        theta = PhaseVector(np.random.default_rng(2).random(4))
        xi = np.linspace(0.0, math.pi * 4, 4001)[:-1]
        f1, f2 = trig_sums(xi, theta)
        self.assertAlmostEqual(float(np.mean(f1)), 0.0, places=12)
        self.assertAlmostEqual(float(np.mean(f2)), 0.0, places=12)

    def test_rejects_bad_phases(self):
        self.assertRaises(InvalidInputException, PhaseVector, [0.2, 1.0])
        self.assertRaises(InvalidInputException, PhaseVector, [-0.1])
        self.assertRaises(InvalidInputException, PhaseVector, [])


class TestLemmaBound(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(lemma_bound(1), 9.4192, places=4)
        self.assertAlmostEqual(lemma_bound(2), 15.7399, places=4)
        self.assertAlmostEqual(lemma_bound(8), 40.35, places=1)
        self.assertRaises(InvalidInputException, lemma_bound, 0)

    def test_normalized_bound_increasing(self):
        normalized = [lemma_bound(N) / math.sqrt(N) for N in range(1, 65)]
        self.assertTrue(all(b > a for a, b in zip(normalized, normalized[1:])))

    def test_grid_step_slack(self):
        for N in (1, 4, 16, 64):
            self.assertLessEqual((N + 1) * default_grid_step(N) / 2, 0.001 * lemma_bound(N) + 1e-15)


class TestCertifiedSup(unittest.TestCase):
    def test_single_frequency(self):
        certificate = certified_sup(PhaseVector([0.37]))
        slack = 2 * certificate.grid_step / 2
        for value in (certificate.M1, certificate.M2):
            self.assertGreaterEqual(value, 1.0)
            self.assertLessEqual(value, 1.0 + slack + 1e-15)

    def test_is_upper_bound_on_finer_grid(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            theta = PhaseVector(rng.random(4))
            certificate = certified_sup(theta)
            fine = np.linspace(0.0, math.pi * 4, int(math.pi * 4 / (certificate.grid_step / 10)) + 1)
            f1, f2 = trig_sums(fine, theta)
            self.assertLessEqual(np.max(np.abs(f1)), certificate.M1)
            self.assertLessEqual(np.max(np.abs(f2)), certificate.M2)
            self.assertGreaterEqual(certificate.M1, certificate.grid_max1)

    def test_deterministic(self):
        first = certified_sup(sample_theta(4, 0, 0))
        second = certified_sup(sample_theta(4, 0, 0))
        self.assertEqual(first.to_dict(), second.to_dict())


class TestSearchPhases(unittest.TestCase):
    def test_single_frequency_first_sample(self):
        theta, certificate = search_phases(1, 1, seed=5)
        self.assertEqual(theta.index, 0)
        self.assertLessEqual(certificate.total, 2.0 + 2 * certificate.grid_step)

    def test_same_seed_same_phases(self):
        first, _ = search_phases(8, 64, seed=11)
        second, _ = search_phases(8, 64, seed=11, threads=4)
        np.testing.assert_array_equal(first.theta, second.theta)
        self.assertEqual(first.index, second.index)

    def test_finds_certified_phases(self):
        for N in (2, 4, 8, 16, 32):
            theta, certificate = search_phases(N, 64, seed=0)
            self.assertLessEqual(certificate.total, lemma_bound(N))
            finer = certified_sup(theta, certificate.grid_step / 10)
            self.assertLessEqual(finer.total, lemma_bound(N))

    def test_single_draw_success_rate(self):
        successes = sum(certified_sup(sample_theta(16, 2024, i)).satisfied for i in range(200))
        self.assertGreaterEqual(successes / 200.0, 0.15)

    def test_budget_exhausted(self):
        # a bound no phase vector can meet: the grid step is huge so the slack alone exceeds it
        with self.assertRaises(BudgetExhaustedException) as context:
            search_phases(2, 3, seed=0, h=100.0)
        self.assertEqual(context.exception.samples, 3)

    def test_rejects_bad_arguments(self):
        self.assertRaises(InvalidInputException, search_phases, 0, 10, 0)
        self.assertRaises(InvalidInputException, search_phases, 2, 0, 0)


class TestMomentCheck(unittest.TestCase):
    def test_small_lambda(self):
        self.assertAlmostEqual(moment_check(3, lam=1e-8, samples=1000), 1.0, places=6)
        self.assertAlmostEqual(moment_bound(3, 1e-8), 1.0, places=12)

    def test_bessel_oracle(self):
        estimate = moment_check(1, lam=1.0, samples=400000, seed=1)
        self.assertAlmostEqual(estimate, i0(1.0), delta=0.01)
        self.assertLessEqual(i0(1.0), math.exp(0.25))

    def test_default_lambda_repetitions(self):
        passes = sum(moment_check_passes(8, default_lambda(8), samples=2000, seed=s) for s in range(50))
        self.assertGreaterEqual(passes, 49)


if __name__ == '__main__':
    unittest.main()
