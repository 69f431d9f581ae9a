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

"""Run configuration shared by every command."""

# Python standard library
import logging
import math
import os
import re

# 3rd party libraries
import yaml

# Package libraries
from starkembed.exceptions import InvalidInputException
from starkembed.potential.model import EnergyLevel, PotentialSpecException

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'STARK_EMBED_THREADS'
COMMANDS = ('phases', 'construct', 'embed', 'oscint', 'asymptotics')
MODES = ('thm13', 'thm15')


class RunConfigWrongException(InvalidInputException):
    pass


def threads_from_environment():
    """Worker thread cap from STARK_EMBED_THREADS, 1 when unset or invalid."""
    value = os.environ.get(THREADS_VARIABLE)
    if value is None:
        return 1
    match = re.match(r"^\s*(?P<threads>[1-9]\d*)\s*$", value)
    if not match:
        logger.warning("Ignoring {}={!r}, expected a positive integer".format(THREADS_VARIABLE, value))
        return 1
    return int(match.group('threads'))


def parse_levels(text):
    """
    Parse 'E=1:theta=0.3,E=2:theta=1.1' into EnergyLevel objects.

    Each entry starts with E=<float> followed by optional theta=, t= and cut=
    fields separated by colons.
    """
    levels = []
    for entry in text.split(','):
        entry = entry.strip()
        if not entry:
            continue
        fields = {}
        for item in entry.split(':'):
            match = re.match(r"^\s*(?P<key>E|theta|t|cut)\s*=\s*(?P<value>[^=]+?)\s*$", item)
            if not match:
                raise RunConfigWrongException("Cannot parse level field {!r} in {!r}".format(item, entry))
            if match.group('key') in fields:
                raise RunConfigWrongException("Field {} given twice in {!r}".format(match.group('key'), entry))
            fields[match.group('key')] = match.group('value')
        levels.append(_level(fields, entry))
    if not levels:
        raise RunConfigWrongException("No levels in {!r}".format(text))
    return levels


def _level(fields, origin):
    if 'E' not in fields:
        raise RunConfigWrongException("Level {!r} has no energy".format(origin))
    unknown = set(fields) - {'E', 'theta', 't', 'cut'}
    if unknown:
        raise RunConfigWrongException("Unknown level fields {} in {!r}".format(sorted(unknown), origin))
    try:
        values = {key: float(value) for key, value in fields.items()}
        return EnergyLevel(values['E'], t=values.get('t', 0.0), a_cut=values.get('cut'),
                           theta_bc=values.get('theta'))
    except (TypeError, ValueError, PotentialSpecException) as e:
        raise RunConfigWrongException("Invalid level {!r}: {}".format(origin, e))


class RunConfig:
    DEFAULT_ALPHA = 1.0
    DEFAULT_N = 2
    DEFAULT_MODE = 'thm13'
    DEFAULT_SEED = 0
    DEFAULT_XI_MAX = 1e5
    DEFAULT_XI_MIN = 1e3
    DEFAULT_TOL_ODE = 1e-10
    DEFAULT_TOL_QUAD = 1e-10
    DEFAULT_MAX_SAMPLES = 64
    DEFAULT_THM15_A = 0.2
    DEFAULT_SAMPLES = 4096
    DEFAULT_KIND = 'single'
    DEFAULT_A_COEF = 2.0
    DEFAULT_XI0 = (1e2, 1e3, 1e4)

    # name -> converter
    FIELDS = {
        'alpha': float,
        'n': int,
        'mode': str,
        'a': float,
        'seed': int,
        'xi_max': float,
        'xi_min': float,
        'tol_ode': float,
        'tol_quad': float,
        'max_samples': int,
        'levels': None,
        'out_dir': str,
        'spec_in': str,
        'spec_out': str,
        'match_level': int,
        'level': int,
        'samples': int,
        'kind': str,
        'a_coef': float,
        'gamma': float,
        'e1': float,
        'e2': float,
        'sign': str,
        'xi0': None,
        'xi_end': float,
        'method': str,
    }

    def __init__(self, **values):
        self.alpha = self.DEFAULT_ALPHA
        self.n = self.DEFAULT_N
        self.mode = self.DEFAULT_MODE
        self.a = None
        self.seed = self.DEFAULT_SEED
        self.xi_max = self.DEFAULT_XI_MAX
        self.xi_min = self.DEFAULT_XI_MIN
        self.tol_ode = self.DEFAULT_TOL_ODE
        self.tol_quad = self.DEFAULT_TOL_QUAD
        self.max_samples = self.DEFAULT_MAX_SAMPLES
        self.levels = None
        self.out_dir = None
        self.spec_in = None
        self.spec_out = None
        self.match_level = None
        self.level = None
        self.samples = self.DEFAULT_SAMPLES
        self.kind = self.DEFAULT_KIND
        self.a_coef = self.DEFAULT_A_COEF
        self.gamma = 0.0
        self.e1 = 1.0
        self.e2 = None
        self.sign = '+'
        self.xi0 = list(self.DEFAULT_XI0)
        self.xi_end = 1e5
        self.method = 'magnus'
        self.threads = threads_from_environment()
        self.update(values)

    def update(self, values):
        """Override fields with the non-None entries of values."""
        for key, value in values.items():
            key = key.replace('-', '_')
            if key not in self.FIELDS:
                raise RunConfigWrongException("Unknown configuration key {}".format(key))
            if value is None:
                continue
            setattr(self, key, self._convert(key, value))

    def _convert(self, key, value):
        if key == 'levels':
            if isinstance(value, str):
                return parse_levels(value)
            if isinstance(value, (list, tuple)) and all(isinstance(v, EnergyLevel) for v in value):
                return list(value)
            if isinstance(value, (list, tuple)) and all(isinstance(v, dict) for v in value):
                return [_level(dict(entry), entry) for entry in value]
            raise RunConfigWrongException("levels must be a string or a list of mappings")
        if key == 'xi0':
            if isinstance(value, str):
                value = value.split(',')
            try:
                return [float(v) for v in value]
            except (TypeError, ValueError):
                raise RunConfigWrongException("xi0 must be a list of numbers, got {!r}".format(value))
        try:
            return self.FIELDS[key](value)
        except (TypeError, ValueError):
            raise RunConfigWrongException("Invalid value {!r} for {}".format(value, key))

    @staticmethod
    def read_file(path):
        """
        Reads a YAML or JSON config file into a mapping.

        :param str path: file path
        :return: dict
        """
        try:
            with open(path, 'r') as f:
                document = yaml.load(f, Loader=yaml.SafeLoader)
        except (OSError, yaml.YAMLError) as e:
            raise RunConfigWrongException("Cannot read config {}: {}".format(path, e))
        if document is None:
            return {}
        if not isinstance(document, dict):
            raise RunConfigWrongException("Config {} must hold a mapping".format(path))
        return document

    @classmethod
    def load(cls, path=None, **flags):
        """Defaults, then the config file, then explicit flags."""
        config = cls()
        if path is not None:
            config.update(cls.read_file(path))
        config.update(flags)
        return config

    @property
    def amplitude(self):
        """a, with the construction default when unset; None means the thm13 default."""
        if self.a is not None:
            return self.a
        return self.DEFAULT_THM15_A if self.mode == 'thm15' else None

    def _require(self, condition, message, *args):
        if not condition:
            raise RunConfigWrongException(message.format(*args))

    def _validate_model(self, command):
        self._require(self.mode in MODES, "mode must be one of {}, got {}", MODES, self.mode)
        self._require(0.0 < self.alpha < 2.0, "alpha must lie in (0, 2), got {}", self.alpha)
        if self.spec_in is not None:
            return
        if self.mode == 'thm13':
            self._require(self.alpha > 2.0 / 3.0, "thm13 mode requires alpha > 2/3, got {}", self.alpha)
            self._require(self.n >= 2, "thm13 mode requires n >= 2, got {}", self.n)
            self._require(self.max_samples >= 1, "max_samples must be at least 1")
        else:
            self._require(bool(self.levels), "thm15 mode requires --levels")
            energies = [level.E for level in self.levels]
            self._require(len(set(energies)) == len(energies), "Energies must be distinct: {}", energies)
        if self.a is not None:
            self._require(self.a >= 0.0, "a must be non-negative, got {}", self.a)
            threshold = (2.0 - self.alpha) / (2.0 * (2.0 + self.alpha))
            if command != 'asymptotics':
                self._require(self.a > threshold, "a={} must exceed (2-alpha)/(2(2+alpha))={:.6f}",
                              self.a, threshold)

    def _validate_window(self):
        self._require(0.0 < self.xi_min, "xi_min must be positive")
        self._require(self.xi_max >= 100.0 * self.xi_min,
                      "xi_max={} must be at least 100 xi_min={} for the decay fits", self.xi_max, self.xi_min)

    def validate(self, command):
        """
        Check the preconditions of a command before any computation.

        :param str command: one of COMMANDS
        :return: self
        """
        self._require(command in COMMANDS, "Unknown command {}", command)
        self._require(self.tol_ode > 0.0 and self.tol_quad > 0.0, "Tolerances must be positive")
        self._require(math.isfinite(self.xi_max), "xi_max must be finite")

        if command == 'phases':
            self._require(self.n >= 1, "n must be at least 1, got {}", self.n)
            self._require(self.max_samples >= 1, "max_samples must be at least 1")
        elif command == 'construct':
            self._validate_model(command)
            self._require(self.samples >= 2, "samples must be at least 2")
        elif command == 'embed':
            self._validate_model(command)
            self._validate_window()
            if self.match_level is not None:
                self._require(self.mode == 'thm15', "--match-level needs thm15 mode")
                self._require(self.levels is not None and 0 <= self.match_level < len(self.levels),
                              "match_level {} outside the configured levels", self.match_level)
                self._require(self.levels[self.match_level].theta_bc is not None,
                              "Level {} has no theta", self.match_level)
        elif command == 'asymptotics':
            self._validate_model(command)
            self._validate_window()
            self._require(self.method in ('magnus', 'DOP853'), "Unknown method {}", self.method)
            if self.level is not None and self.spec_in is None:
                count = self.n if self.mode == 'thm13' else len(self.levels)
                self._require(0 <= self.level < count, "level {} outside 0..{}", self.level, count - 1)
        elif command == 'oscint':
            self._require(0.0 < self.alpha < 2.0, "alpha must lie in (0, 2), got {}", self.alpha)
            self._require(self.kind in ('single', 'pair'), "kind must be single or pair, got {}", self.kind)
            self._require(self.sign in ('+', '-'), "sign must be + or -, got {}", self.sign)
            self._require(self.kind == 'single' or self.e2 is not None, "pair integrals need --e2")
            self._require(len(self.xi0) >= 2, "At least two xi0 values are needed")
            self._require(1.0 < min(self.xi0) and max(self.xi0) < self.xi_end,
                          "xi0 values must satisfy 1 < xi0 < xi_end")
        return self

    def to_dict(self):
        document = {key: getattr(self, key) for key in self.FIELDS}
        document['levels'] = None if self.levels is None else [level.to_dict() for level in self.levels]
        document['threads'] = self.threads
        return document
