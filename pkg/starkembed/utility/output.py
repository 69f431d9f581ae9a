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

"""Writers for the JSON and CSV result files."""

# Python standard library
import csv
import json
import math

# 3rd party libraries
import numpy as np

SCHEMA = 1


def _encode(o):
    if hasattr(o, 'to_dict'):
        return o.to_dict()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError("Object of type {} is not JSON serializable".format(type(o).__name__))


def _finite(d):
    # JSON has no NaN or infinity; they are written as null
    if isinstance(d, dict):
        return dict((k, _finite(v)) for k, v in d.items())
    if isinstance(d, (list, tuple)):
        return [_finite(v) for v in d]
    if isinstance(d, (float, np.floating)) and not math.isfinite(d):
        return None
    return d


def to_json(document):
    """
    Deterministic JSON text: sorted keys, four-space indent, schema version added.

    :param dict document: the document
    :return: str
    """
    document = json.loads(json.dumps(document, default=_encode))
    document.setdefault('schema', SCHEMA)
    return json.dumps(_finite(document), sort_keys=True, indent=4, separators=(',', ': '), allow_nan=False)


def dump_json(document, path):
    with open(path, 'w') as f:
        f.write(to_json(document))
        f.write('\n')


def write_csv(path, header, columns):
    """
    Column-wise CSV with CRLF line ends and floats printed with 17 significant digits.

    :param str path: output file
    :param list header: column names
    :param columns: sequence of equally long arrays
    """
    columns = [np.asarray(c, dtype=float) for c in columns]
    if len(columns) != len(header):
        raise ValueError("{} columns for {} header names".format(len(columns), len(header)))
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\r\n')
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow(['{:.17g}'.format(value) for value in row])
