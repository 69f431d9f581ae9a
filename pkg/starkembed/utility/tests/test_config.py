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

import os
import shutil
import tempfile
import unittest
from unittest import mock

import yaml

from starkembed.utility.config import RunConfig, RunConfigWrongException, parse_levels, threads_from_environment


class TestRunConfig(unittest.TestCase):
    CONFIG_EXAMPLES_PATH = 'configs'

    def setUp(self):
        script_abspath = os.path.abspath(__file__)
        script_dirname = os.path.dirname(script_abspath)
        os.chdir(script_dirname)

    def example(self, name):
        return os.path.join(self.CONFIG_EXAMPLES_PATH, name)

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.alpha, RunConfig.DEFAULT_ALPHA)
        self.assertEqual(config.n, 2)
        self.assertEqual(config.mode, 'thm13')
        self.assertEqual(config.xi_max, 1e5)
        self.assertEqual(config.xi_min, 1e3)
        self.assertIsNone(config.a)
        self.assertIsNone(config.amplitude)
        self.assertEqual(config.xi0, [1e2, 1e3, 1e4])

    def test_yaml_file(self):
        config = RunConfig.load(self.example('thm15_levels.yaml'))
        self.assertEqual(config.mode, 'thm15')
        self.assertEqual([level.E for level in config.levels], [1.0, 2.0])
        self.assertEqual(config.levels[0].theta_bc, 0.3)
        self.assertEqual(config.levels[1].a_cut, 40.0)
        self.assertIsNone(config.levels[0].a_cut)
        self.assertEqual(config.amplitude, 0.2)
        config.validate('embed')

    def test_json_file_and_flag_precedence(self):
        config = RunConfig.load(self.example('embed.json'), seed=11, n=None)
        self.assertEqual(config.alpha, 1.5)
        self.assertEqual(config.n, 4)
        self.assertEqual(config.seed, 11)
        self.assertEqual(config.xi_max, 2e5)
        self.assertEqual(len(config.levels), 2)
        self.assertIsNone(config.levels[1].theta_bc)

    def test_empty_file_keeps_defaults(self):
        config = RunConfig.load(self.example('empty.yaml'))
        self.assertEqual(config.alpha, RunConfig.DEFAULT_ALPHA)

    def test_wrong_files(self):
        for name in ('corrupt.yaml', 'list.yaml', 'unknown_key.yaml', 'missing.yaml'):
            with self.assertRaises(RunConfigWrongException, msg=name):
                RunConfig.load(self.example(name))

    def test_wrong_values(self):
        self.assertRaises(RunConfigWrongException, RunConfig, alpha='one')
        self.assertRaises(RunConfigWrongException, RunConfig, xi0='1e2,x')
        self.assertRaises(RunConfigWrongException, RunConfig, levels=3)

    def test_xi0_list(self):
        self.assertEqual(RunConfig(xi0='1e2, 1e3').xi0, [100.0, 1000.0])


class TestLevels(unittest.TestCase):
    def test_parse(self):
        levels = parse_levels("E=1:theta=0.3,E=2:theta=1.1")
        self.assertEqual([(level.E, level.theta_bc) for level in levels], [(1.0, 0.3), (2.0, 1.1)])
        levels = parse_levels(" E = -0.5 : t=0.25 : cut=12 ")
        self.assertEqual(levels[0].E, -0.5)
        self.assertEqual(levels[0].t, 0.25)
        self.assertEqual(levels[0].a_cut, 12.0)

    def test_rejections(self):
        for text in ("", "theta=0.3", "E=1:phi=2", "E=1:E=2", "E=x", "E=1:theta=4", "E=1:t=-1"):
            with self.assertRaises(RunConfigWrongException, msg=text):
                parse_levels(text)


class TestThreads(unittest.TestCase):
    def test_environment(self):
        with mock.patch.dict(os.environ, {'STARK_EMBED_THREADS': '4'}):
            self.assertEqual(threads_from_environment(), 4)
            self.assertEqual(RunConfig().threads, 4)
        for value in ('0', '-2', 'many', ''):
            with mock.patch.dict(os.environ, {'STARK_EMBED_THREADS': value}):
                self.assertEqual(threads_from_environment(), 1)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(threads_from_environment(), 1)


class TestValidation(unittest.TestCase):
    def assertInvalid(self, command, **values):
        with self.assertRaises(RunConfigWrongException):
            RunConfig(**values).validate(command)

    def test_phases(self):
        RunConfig(n=1).validate('phases')
        self.assertInvalid('phases', n=0)
        self.assertInvalid('phases', max_samples=0)

    def test_thm13(self):
        RunConfig().validate('embed')
        self.assertInvalid('embed', alpha=0.5)
        self.assertInvalid('embed', n=1)
        self.assertInvalid('construct', alpha=2.0)
        self.assertInvalid('embed', a=0.1)
        self.assertInvalid('embed', tol_ode=0.0)

    def test_thm15(self):
        self.assertInvalid('embed', mode='thm15')
        self.assertInvalid('embed', mode='thm15', levels='E=1,E=1')
        RunConfig(mode='thm15', levels='E=1', alpha=0.5).validate('construct')
        self.assertInvalid('construct', mode='other', levels='E=1')

    def test_amplitude_zero_only_for_asymptotics(self):
        RunConfig(mode='thm15', levels='E=1', a=0.0).validate('asymptotics')
        self.assertInvalid('embed', mode='thm15', levels='E=1', a=0.0)
        self.assertInvalid('asymptotics', mode='thm15', levels='E=1', a=-0.1)

    def test_fit_window(self):
        self.assertInvalid('embed', xi_max=5e4)
        self.assertInvalid('asymptotics', xi_min=0.0)
        RunConfig(xi_max=1e5, xi_min=1e3).validate('asymptotics')

    def test_match_level(self):
        RunConfig(mode='thm15', levels='E=1:theta=0.3', match_level=0).validate('embed')
        self.assertInvalid('embed', mode='thm15', levels='E=1', match_level=0)
        self.assertInvalid('embed', mode='thm15', levels='E=1:theta=0.3', match_level=1)
        self.assertInvalid('embed', match_level=0)

    def test_asymptotics_level(self):
        RunConfig(level=1).validate('asymptotics')
        self.assertInvalid('asymptotics', level=2)

    def test_oscint(self):
        RunConfig().validate('oscint')
        self.assertInvalid('oscint', kind='pair')
        RunConfig(kind='pair', e2=2.0, sign='-').validate('oscint')
        self.assertInvalid('oscint', xi0=[1e2])
        self.assertInvalid('oscint', xi0=[1e2, 1e6])
        self.assertInvalid('oscint', kind='triple')

    def test_unknown_command(self):
        self.assertInvalid('plot')

    def test_spec_in_skips_model_checks(self):
        RunConfig(spec_in='spec.json', n=1).validate('construct')


class TestRoundTrip(unittest.TestCase):
    def setUp(self):
        self.work_directory = tempfile.mkdtemp(prefix="starkembed_config_tests_")

    def tearDown(self):
        shutil.rmtree(self.work_directory, ignore_errors=True)

    def test_written_document_is_accepted(self):
        config = RunConfig(mode='thm15', levels='E=1:theta=0.3:cut=20', a=0.25, seed=5)
        document = config.to_dict()
        del document['threads']
        document['levels'] = "E=1:theta=0.3:cut=20"
        path = os.path.join(self.work_directory, 'config.yaml')
        with open(path, 'w') as f:
            yaml.safe_dump(document, f)
        loaded = RunConfig.load(path)
        self.assertEqual(loaded.a, 0.25)
        self.assertEqual(loaded.seed, 5)
        self.assertEqual(loaded.levels[0].a_cut, 20.0)


if __name__ == '__main__':
    unittest.main()
