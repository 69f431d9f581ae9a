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

import unittest

import numpy as np
from scipy.integrate import quad

from starkembed.liouville.params import ModelParams, LiouvilleDomainException
from starkembed.liouville.phase import PhaseDomainException, phase_integral, taylor_constant, taylor_tail, \
    integrate_panels
from starkembed.liouville.transform import beta


class TestPhaseIntegral(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.params = ModelParams(1.0, energies=[1.0])

    def test_zero_energy_is_identity(self):
        xi = np.geomspace(self.params.xi_start, 1e5, 40)
        np.testing.assert_allclose(phase_integral(0.0, xi, self.params), xi, rtol=1e-15)

    def test_starts_at_xi_start(self):
        self.assertAlmostEqual(phase_integral(1.0, self.params.xi_start, self.params), self.params.xi_start,
                               places=12)

    def test_additivity_against_quad(self):
        for lo, hi in ((3.0, 7.0), (40.0, 95.5), (1234.0, 5678.0)):
            reference, _ = quad(lambda s: np.sqrt(1.0 - beta(1.0, s, self.params)), lo, hi,
                                epsabs=0, epsrel=1e-13, limit=200)
            difference = phase_integral(1.0, hi, self.params) - phase_integral(1.0, lo, self.params)
            self.assertAlmostEqual(difference, reference, delta=1e-9 * reference)

    def test_derivative_matches_integrand(self):
        rng = np.random.default_rng(3)
        xi = np.sort(10 ** rng.uniform(1, 5, 100))
        h = 1e-4 * xi
        difference = (phase_integral(1.0, xi + h, self.params) - phase_integral(1.0, xi - h, self.params)) / (2 * h)
        integrand = np.sqrt(1.0 - beta(1.0, xi, self.params))
        np.testing.assert_allclose(difference, integrand, rtol=1e-8)

    def test_strictly_increasing(self):
        xi = np.geomspace(self.params.xi_start, 1e6, 2000)
        self.assertTrue(np.all(np.diff(phase_integral(1.0, xi, self.params)) > 0))

    def test_opposite_energies_cancel_to_first_order(self):
        xi = np.geomspace(1e2, 1e5, 60)
        combined = phase_integral(1.0, xi, self.params) + phase_integral(-1.0, xi, self.params) - 2 * xi
        self.assertLess(np.ptp(combined[xi >= 1e4]), 0.1)
        self.assertLess(np.max(np.abs(combined)), 5.0)

    def test_rejects_too_negative_energy(self):
        params = ModelParams(1.0, xi_start=1.0)
        self.assertRaises(PhaseDomainException, phase_integral, -5.0, 10.0, params)

    def test_rejects_below_table(self):
        self.assertRaises(PhaseDomainException, phase_integral, 1.0, 0.5 * self.params.xi_start, self.params)

    def test_extends_above_table(self):
        params = ModelParams(1.0, energies=[1.0])
        end = params.xi_table_max
        xi = np.array([0.5 * end, 2.5 * end, 5e6])
        value = phase_integral(1.0, xi, params)
        self.assertGreaterEqual(params.phase(1.0).xi_hi, 5e6)

        reference = ModelParams(1.0, energies=[1.0], xi_table_max=2e7)
        np.testing.assert_allclose(value, phase_integral(1.0, xi, reference), rtol=1e-12)
        np.testing.assert_allclose(params.phase(1.0).deviation(xi), reference.phase(1.0).deviation(xi), atol=1e-6)
        self.assertTrue(np.all(np.diff(phase_integral(1.0, np.geomspace(1e6, 1e7, 500), params)) > 0))

    def test_extension_is_continuous_at_old_end(self):
        params = ModelParams(0.8, energies=[-1.0])
        end = params.xi_table_max
        below = params.phase(-1.0)(end)
        params.phase(-1.0).extend(3 * end)
        self.assertAlmostEqual(params.phase(-1.0)(end), below, delta=1e-9 * end)
        self.assertEqual(params.phase(-1.0).nodes[0], params.xi_start)
        self.assertTrue(np.all(np.diff(params.phase(-1.0).nodes) > 0))

    def test_table_is_cached(self):
        self.assertIs(self.params.phase(1.0), self.params.phase(1.0))


class TestTaylorConstant(unittest.TestCase):
    def test_expansion_converges(self):
        params = ModelParams(1.0, energies=[1.0])
        constant = taylor_constant(1.0, params)
        xi = np.array([1e3, 1e4, 1e5])
        residual = phase_integral(1.0, xi, params) - xi - params.tau * xi ** params.kappa - constant
        self.assertTrue(np.all(np.abs(residual[1:]) < np.abs(residual[:-1])))
        # successive decades shrink by about 10^(-1/3)
        np.testing.assert_allclose(residual[1:] / residual[:-1], 10 ** (-1.0 / 3.0), rtol=0.05)

    def test_zero_energy(self):
        self.assertEqual(taylor_constant(0.0, ModelParams(1.0)), 0.0)

    def test_tail_matches_leading_closed_form(self):
        for alpha in (1.0, 0.8, 1.5):
            with self.subTest(alpha=alpha):
                params = ModelParams(alpha)
                xi_ref = 1e6
                power = 2 * params.gamma - 1
                leading = -(params.c ** (-2 * alpha) / 8) * xi_ref ** -power / power
                tail = taylor_tail(1.0, params, xi_ref)
                self.assertLess(tail, 0.0)
                self.assertAlmostEqual(tail / leading, 1.0, delta=1e-3)
                # the correction beyond the z^2 term is positive and of relative size below z(xi_ref)
                z_ref = params.c ** -alpha * xi_ref ** -params.gamma
                self.assertGreater(tail - leading, 0.0)
                self.assertLess(tail - leading, z_ref * abs(leading))

    def test_tail_value_at_unit_alpha(self):
        self.assertAlmostEqual(taylor_tail(1.0, ModelParams(1.0), 1e6), -0.00218, delta=2e-5)
        self.assertEqual(taylor_tail(0.0, ModelParams(1.0), 1e6), 0.0)

    def test_reference_point_beyond_table(self):
        params = ModelParams(1.0, energies=[1.0])
        near = taylor_constant(1.0, params)
        far = taylor_constant(1.0, params, xi_ref=4 * params.xi_table_max)
        self.assertAlmostEqual(near, far, delta=1e-6)

    def test_rejects_small_alpha(self):
        self.assertRaises(LiouvilleDomainException, taylor_constant, 1.0, ModelParams(0.5))


class TestPanels(unittest.TestCase):
    def test_polynomial_exact(self):
        edges = np.linspace(0.0, 2.0, 5)
        values = integrate_panels(lambda s: s ** 3, edges, 1e-12)
        self.assertAlmostEqual(values.sum(), 4.0, places=13)

    def test_bisects_hard_panels(self):
        edges = np.array([0.0, 50.0])
        value = integrate_panels(lambda s: np.cos(s), edges, 1e-12)[0]
        self.assertAlmostEqual(value, np.sin(50.0), places=10)


if __name__ == '__main__':
    unittest.main()
