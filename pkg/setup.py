#!/usr/bin/env python
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
Setup script for starkembed.

USAGE:
    python setup.py install

"""
import os

from setuptools import setup, find_packages

from starkembed import version

# Change directory to be able to run python setup.py develop from another directory
os.chdir(os.path.dirname(os.path.realpath(__file__)))

description = """A Python package that constructs Stark-type Schroedinger operators with embedded eigenvalues
and certifies them numerically"""

with open("requirements.txt") as reqs_file:
    reqs = reqs_file.readlines()

cmdclass = {}
try:
    from setuptools.command.test import test as TestCommand

    class NoseTestCommand(TestCommand):
        def finalize_options(self):
            TestCommand.finalize_options(self)
            self.test_args = []
            self.test_suite = True

        def run_tests(self):
            import nose
            nose.run_exit(argv=['nosetests', '--with-xunit', '--xunit-file=unittests.xml'])

    cmdclass['test'] = NoseTestCommand
except ImportError:
    # setuptools >= 72 dropped the test command; run pytest instead
    pass


setup(
    name="starkembed",
    version=version.STARKEMBED_VERSION,
    license="Modified BSD License",
    author="The starkembed developers",
    description="Embedded eigenvalues for Stark-type Schroedinger operators",
    long_description=description,
    packages=find_packages(exclude=["tests.*", "tests"]),
    package_data={
        '': ['../requirements.txt'],
    },
    python_requires='>=3.8',
    install_requires=reqs,
    tests_require=[
        "nose >= 1.3.4",
        "pytest",
    ],
    zip_safe=False,
    classifiers=[
        'Development Status :: 4 - Beta',

        'Intended Audience :: Science/Research',

        'Operating System :: MacOS',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: POSIX :: Linux',

        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',

        'License :: OSI Approved :: BSD License',

        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],
    keywords='schroedinger stark embedded eigenvalues spectral theory wigner-von neumann ode',
    cmdclass=cmdclass,
    entry_points='''
      [console_scripts]
      starkembed = starkembed.__main__:cli
    ''',
)
