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

"""Aggregation of the per-level checks into a single certificate."""

# Python standard library
import logging
import math

# Package libraries
from starkembed.exceptions import StarkEmbedException
from starkembed.analysis.l2 import certify_l2
from starkembed.liouville.transform import inverse_map
from starkembed.potential.bounds import tail_sup_x, theorem_bound, thm15_epsilon
from starkembed.potential.model import ConstructionMode

logger = logging.getLogger(__name__)

CONSISTENCY_SLACK = 0.1


class IncompleteInputsException(StarkEmbedException):
    pass


def thm11_floor(alpha, k):
    """(2 - alpha) / sqrt(2) * sqrt(k), the least limsup x^(1 - alpha/2)|q| carrying k eigenvalues."""
    return (2.0 - alpha) / math.sqrt(2.0) * math.sqrt(k)


class CertificateReport:
    """
    Verdict of one embedding run.

    The report certifies at least as many eigensolutions as there are L2 passes;
    ruling out further eigenvalues is beyond a numerical check.
    """

    def __init__(self, spec, measured_sup_x, sup_window, fits, l2, extra=None):
        self.spec = spec
        self.mode = spec.mode
        self.N = spec.N
        self.alpha = spec.params.alpha
        self.a = spec.a
        self.measured_sup_x = float(measured_sup_x)
        self.sup_window = sup_window
        self.theorem_bound = theorem_bound(spec)
        self.epsilon = thm15_epsilon(self.alpha, self.a) if self.mode == ConstructionMode.THM15 else None
        self.fits = list(fits)
        self.l2 = list(l2)
        self.extra = extra or {}

    @property
    def l2_certified(self):
        return [bool(certificate) for certificate in self.l2]

    @property
    def certified_count(self):
        return sum(self.l2_certified)

    @property
    def thm11_floor(self):
        return thm11_floor(self.alpha, self.certified_count)

    @property
    def thm11_consistent(self):
        if self.certified_count == 0:
            return True
        return self.measured_sup_x >= (1.0 - CONSISTENCY_SLACK) * self.thm11_floor

    @property
    def sup_within_bound(self):
        return self.measured_sup_x <= self.theorem_bound

    @property
    def reasons(self):
        reasons = []
        if not self.sup_within_bound:
            reasons.append("measured sup {:.6g} exceeds the bound {:.6g}".format(
                self.measured_sup_x, self.theorem_bound))
        for j, passed in enumerate(self.l2_certified):
            if not passed:
                reasons.append("level {} (E={:.6g}) is not L2-certified".format(j, self.spec.energies[j]))
        if not self.thm11_consistent:
            reasons.append("measured sup {:.6g} below the necessary floor {:.6g}".format(
                self.measured_sup_x, self.thm11_floor))
        return reasons

    @property
    def passed(self):
        return not self.reasons

    def to_dict(self):
        document = {
            'mode': self.mode.value,
            'N': self.N,
            'alpha': self.alpha,
            'a': self.a,
            'energies': self.spec.energies,
            'measured_sup_x': self.measured_sup_x,
            'sup_window_x': list(self.sup_window),
            'theorem_bound': self.theorem_bound,
            'sup_within_bound': self.sup_within_bound,
            'fits': [fit.to_dict() for fit in self.fits],
            'l2': [certificate.to_dict() for certificate in self.l2],
            'l2_certified': self.l2_certified,
            'certified_eigensolutions': ">= {}".format(self.certified_count),
            'thm11_floor': self.thm11_floor,
            'thm11_consistent': self.thm11_consistent,
            'verdict': 'pass' if self.passed else 'fail',
            'reasons': self.reasons,
        }
        if self.epsilon is not None:
            document['epsilon'] = self.epsilon
        document.update(self.extra)
        return document

    def summary_table(self):
        rows = [
            ("mode", self.mode.value),
            ("alpha", "{:g}".format(self.alpha)),
            ("N", str(self.N)),
            ("a", "{:.6g}".format(self.a)),
            ("sup x^(1-alpha/2)|q|", "{:.6g}".format(self.measured_sup_x)),
            ("theorem bound", "{:.6g}".format(self.theorem_bound)),
        ]
        for j, (fit, certificate) in enumerate(zip(self.fits, self.l2)):
            rows.append(("level {} exponent".format(j), "{:.5f} +/- {:.1e} [{}]".format(
                fit.exponent, fit.stderr, 'L2' if certificate else 'not L2')))
        rows.append(("certified eigensolutions", ">= {}".format(self.certified_count)))
        rows.append(("necessary floor", "{:.6g} [{}]".format(
            self.thm11_floor, 'ok' if self.thm11_consistent else 'violated')))
        rows.append(("verdict", 'pass' if self.passed else 'fail'))
        width = max(len(name) for name, _ in rows)
        lines = ["{} : {}".format(name.ljust(width), value) for name, value in rows]
        lines.extend("  - {}".format(reason) for reason in self.reasons)
        return "\n".join(lines)


def theorem_report(spec, traces, fits, xi_max=1e5, measured_sup_x=None, extra=None):
    """
    Build the certificate of a constructed potential.

    :param PotentialSpec spec: the potential
    :param traces: per-level SolutionTrace of the subordinate solution, or None entries
    :param fits: per-level DecayFit of the same solutions
    :param float xi_max: end of the integration; the sup is taken over its last decade
    :param float measured_sup_x: precomputed sup, measured here when None
    :return: CertificateReport
    """
    traces = list(traces) if traces is not None else [None] * spec.N
    fits = list(fits)
    if len(fits) != spec.N or len(traces) != spec.N or any(fit is None for fit in fits):
        raise IncompleteInputsException("Need a decay fit for each of the {} levels, got {}".format(
            spec.N, sum(fit is not None for fit in fits)))

    params = spec.params
    window = (inverse_map(max(xi_max / 10.0, spec.active_start), params), inverse_map(xi_max, params))
    if measured_sup_x is None:
        measured_sup_x = 0.0 if spec.a == 0.0 else tail_sup_x(spec, *window)

    l2 = [certify_l2(fit, params, trace=trace) for fit, trace in zip(fits, traces)]
    report = CertificateReport(spec, measured_sup_x, window, fits, l2, extra)
    logger.info("Certificate: {} ({} of {} levels L2)".format(
        'pass' if report.passed else 'fail', report.certified_count, spec.N))
    return report
