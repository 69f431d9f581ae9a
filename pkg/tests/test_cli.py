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

import csv
import filecmp
import json
import math
import os
import shutil
import tempfile
import unittest
from unittest import mock

from click.testing import CliRunner

from starkembed.integrator.levinson import NotContractingException
from starkembed.phases.search import BudgetExhaustedException
from starkembed.phases.trig import lemma_bound

SLOW = os.environ.get('STARK_EMBED_SLOW_TESTS') == '1'


def read_columns(path):
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    return rows[0], [[float(value) for value in row] for row in rows[1:]]


class TestCli(unittest.TestCase):
    def setUp(self):
        script_abspath = os.path.abspath(__file__)
        script_dirname = os.path.dirname(script_abspath)
        os.chdir(script_dirname)

        from starkembed.__main__ import cli
        self.cli = cli
        self.runner = CliRunner()
        self.work_directory = tempfile.mkdtemp(prefix="starkembed_cli_tests_")

    def tearDown(self):
        shutil.rmtree(self.work_directory, ignore_errors=True)

    def out(self, *names):
        return os.path.join(self.work_directory, *names)

    def test_version(self):
        result = self.runner.invoke(self.cli, ['version'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('starkembed version', result.output)

    def test_phases(self):
        args = ['phases', '--n', '8', '--seed', '1', '--out-dir', self.out('phases')]
        result = self.runner.invoke(self.cli, args)
        self.assertEqual(result.exit_code, 0, result.output)
        document = json.loads(result.output)
        self.assertLessEqual(document['certificate']['M1'] + document['certificate']['M2'], lemma_bound(8))
        self.assertAlmostEqual(lemma_bound(8), 4.0 * math.sqrt(16.0 * math.log(576.0)))
        self.assertEqual(document['samples_used'], document['theta']['index'] + 1)
        self.assertTrue(os.path.exists(self.out('phases', 'phases.json')))

        again = self.runner.invoke(self.cli, args)
        self.assertEqual(again.output, result.output)

    def test_invalid_input_exits_with_one(self):
        result = self.runner.invoke(self.cli, ['phases', '--n', '0'])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('[utility]', result.output)

        result = self.runner.invoke(self.cli, ['embed', '--alpha', '0.5', '--mode', 'thm13'])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('alpha > 2/3', result.output)

        result = self.runner.invoke(self.cli, ['phases', '--no-such-flag'])
        self.assertEqual(result.exit_code, 1)

        result = self.runner.invoke(self.cli, ['embed', '--config', os.path.join('configs', 'broken_levels.yaml')])
        self.assertEqual(result.exit_code, 1)

    def test_budget_exhausted_exits_with_two(self):
        with mock.patch('starkembed.pipeline.search_phases', side_effect=BudgetExhaustedException(3)):
            result = self.runner.invoke(self.cli, ['phases', '--n', '4'])
        self.assertEqual(result.exit_code, 2)
        self.assertIn('3 samples', result.output)

    def test_numerical_failure_is_tagged(self):
        with mock.patch('starkembed.__main__.run_embed', side_effect=NotContractingException(0.7, 2.0, 'test')):
            result = self.runner.invoke(self.cli, ['embed'])
        self.assertEqual(result.exit_code, 3)
        self.assertIn('[integrator]', result.output)

    def test_construct_thm15(self):
        out_dir = self.out('construct')
        result = self.runner.invoke(self.cli, ['construct', '--mode', 'thm15', '--levels', 'E=1,E=2,E=3',
                                               '--a', '0.2', '--xi-max', '1e3', '--samples', '2000',
                                               '--out-dir', out_dir])
        self.assertEqual(result.exit_code, 0, result.output)
        header, rows = read_columns(os.path.join(out_dir, 'potential.csv'))
        self.assertEqual(header, ['x', 'q', 'xi', 'V'])
        self.assertEqual(len(rows), 2000)
        self.assertLessEqual(max(xi * abs(V) for _, _, xi, V in rows), 2.4)

        with open(os.path.join(out_dir, 'construct.json')) as f:
            document = json.load(f)
        self.assertEqual(document['schema'], 1)
        start = document['spec']['params']['xi_start']
        self.assertTrue(all(q == 0.0 for _, q, xi, _ in rows if xi <= start))
        self.assertLessEqual(document['bounds']['sup_x'], document['bounds']['theorem_bound'])

        again = self.out('again')
        result = self.runner.invoke(self.cli, ['construct', '--spec-in', os.path.join(out_dir, 'spec.json'),
                                               '--xi-max', '1e3', '--samples', '2000', '--out-dir', again])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertTrue(filecmp.cmp(os.path.join(out_dir, 'potential.csv'), os.path.join(again, 'potential.csv'),
                                    shallow=False))
        self.assertTrue(filecmp.cmp(os.path.join(out_dir, 'spec.json'), os.path.join(again, 'spec.json'),
                                    shallow=False))

    def test_oscint(self):
        out_dir = self.out('oscint')
        result = self.runner.invoke(self.cli, ['oscint', '--kind', 'single', '--out-dir', out_dir])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertLess(json.loads(result.output)['profile']['slope'], 0.0)

        with open(os.path.join(out_dir, 'oscint.csv'), 'rb') as f:
            header = f.readline()
        with open(os.path.join('golden_data', 'oscint_columns.csv'), 'rb') as f:
            self.assertEqual(header, f.read())
        _, rows = read_columns(os.path.join(out_dir, 'oscint.csv'))
        self.assertEqual([row[0] for row in rows], [1e2, 1e3, 1e4])

    def test_oscint_degenerate_pair(self):
        result = self.runner.invoke(self.cli, ['oscint', '--kind', 'pair', '--e1', '1', '--e2', '1',
                                               '--sign', '-'])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('[analysis]', result.output)
        self.assertIn('must differ', result.output)

    def test_embed_thm15_report(self):
        out_dir = self.out('embed')
        result = self.runner.invoke(self.cli, ['embed', '--config', os.path.join('configs', 'thm15_two_levels.yaml'),
                                               '--out-dir', out_dir])
        self.assertEqual(result.exit_code, 0, result.output)
        with open(os.path.join(out_dir, 'report.json')) as f:
            report = json.load(f)
        self.assertAlmostEqual(report['theorem_bound'], 2.0 * 3.0 * 0.3 * 2)
        self.assertAlmostEqual(report['epsilon'], 0.8)
        self.assertEqual(report['verdict'], 'pass')
        self.assertEqual(report['l2_certified'], [True, True])
        self.assertLessEqual(report['measured_sup_x'], report['theorem_bound'])
        self.assertEqual(len(report['fits']), 2)
        for j in range(2):
            header, _ = read_columns(os.path.join(out_dir, 'trace_level_{}.csv'.format(j)))
            self.assertEqual(header, ['xi', 'phi', 'dphi', 'y1', 'y2', 'R'])
        self.assertTrue(os.path.exists(os.path.join(out_dir, 'spec.json')))

    @unittest.skipUnless(SLOW, "set STARK_EMBED_SLOW_TESTS=1 for desk-scale runs")
    def test_embed_thm13_certifies_both_levels(self):
        out_dir = self.out('embed13')
        result = self.runner.invoke(self.cli, ['embed', '--alpha', '1', '--n', '2', '--mode', 'thm13',
                                               '--xi-max', '1e5', '--seed', '7', '--out-dir', out_dir])
        self.assertEqual(result.exit_code, 0, result.output)
        with open(os.path.join(out_dir, 'report.json')) as f:
            report = json.load(f)
        self.assertEqual(report['verdict'], 'pass')
        self.assertEqual(report['l2_certified'], [True, True])
        self.assertGreaterEqual(report['measured_sup_x'], 0.9 * report['thm11_floor'])
        for fit in report['fits']:
            self.assertAlmostEqual(fit['exponent'], -1.0 / 3.0, delta=0.05)

    @unittest.skipUnless(SLOW, "set STARK_EMBED_SLOW_TESTS=1 for desk-scale runs")
    def test_asymptotics(self):
        result = self.runner.invoke(self.cli, ['asymptotics', '--alpha', '1', '--n', '2', '--seed', '7'])
        self.assertEqual(result.exit_code, 0, result.output)
        document = json.loads(result.output)
        self.assertLessEqual(document['agreement'], 0.05)
        self.assertAlmostEqual(document['backward_fit']['exponent'], -1.0 / 3.0, delta=0.05)
        self.assertAlmostEqual(document['forward_fit']['exponent'], 1.0 / 3.0, delta=0.05)
        self.assertLessEqual(document['non_resonant']['ratio'], 3.0)

        result = self.runner.invoke(self.cli, ['asymptotics', '--mode', 'thm15', '--levels', 'E=1', '--a', '0'])
        document = json.loads(result.output)
        self.assertAlmostEqual(document['backward_fit']['exponent'], 0.0, delta=0.02)
        self.assertAlmostEqual(document['forward_fit']['exponent'], 0.0, delta=0.02)
        self.assertEqual(result.exit_code, 0 if document['verdict'] == 'pass' else 3, result.output)


if __name__ == '__main__':
    unittest.main()
