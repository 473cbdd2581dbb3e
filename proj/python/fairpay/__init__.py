# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Envy-free allocation with subsidies and transfers.

Instances, allocations and reports are plain dicts in the same JSON layout
the fairpay command line reads and writes. Numbers are exact strings such as
"3/4" or "1*sqrt(2)".
"""

import json

from . import _core
from ._core import FairpayError, NotEnvyFreeableError, TheoremViolation

__all__ = [
    "FairpayError",
    "NotEnvyFreeableError",
    "TheoremViolation",
    "generate",
    "solve",
    "verify",
    "oracle",
    "is_envy_freeable",
    "min_subsidies",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _alloc_text(allocation):
    # lists of item indices are accepted as well as bundle keys
    if isinstance(allocation, str):
        return allocation
    bundles = []
    for b in allocation:
        if isinstance(b, (list, tuple, set)):
            b = str(sum(1 << g for g in b))
        bundles.append(str(b))
    return json.dumps(bundles)


def generate(kind, n=None, m=None, eps=None, cls="additive", seed=None):
    """Builds a named instance family; returns the instance dict."""
    return json.loads(_core.generate(kind, n, m, None if eps is None else str(eps), cls, seed))


def solve(instance, alg, alpha=None, rho=None, workers=1):
    """Runs alg on instance and returns the report dict (result + certificates)."""
    return json.loads(
        _core.solve(_text(instance), alg, "" if alpha is None else str(alpha), "" if rho is None else str(rho), workers)
    )


def verify(instance, report, check, workers=1):
    """Re-checks a report independently. Returns (ok, lines)."""
    ok, text = _core.verify(_text(instance), _text(report), check, workers)
    return ok, text.splitlines()


def oracle(instance, task, alpha=None, welfare="sw", allocation=None, workers=1):
    alloc = ""
    if allocation is not None:
        alloc = ",".join(json.loads(_alloc_text(allocation)))
    return json.loads(
        _core.oracle(_text(instance), task, "" if alpha is None else str(alpha), welfare, alloc, workers)
    )


def is_envy_freeable(instance, allocation):
    return _core.is_envy_freeable(_text(instance), _alloc_text(allocation))


def min_subsidies(instance, allocation):
    return json.loads(_core.min_subsidies(_text(instance), _alloc_text(allocation)))
