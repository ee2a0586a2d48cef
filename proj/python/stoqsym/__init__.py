# Copyright 2026 The stoqsym Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Symmetry-reduced ground states of stoquastic Pauli Hamiltonians."""

import json

from ._stoqsym import (
    InconsistentEffectiveGraph,
    NonConvergence,
    ParseError,
    __version__,
    equivalent,
    export_ctg,
    export_gamma,
    normalize,
    verify,
    violations,
)
from . import _stoqsym

__all__ = [
    "InconsistentEffectiveGraph",
    "NonConvergence",
    "ParseError",
    "effective",
    "equivalent",
    "export_ctg",
    "export_gamma",
    "normalize",
    "sample",
    "verify",
    "violations",
]


def effective(text, seed=0, start=None, tol=1e-12, max_iter=1000000, threads=1):
    """Effective Hamiltonian and ground state of the component of `start`."""
    return json.loads(
        _stoqsym.effective_json(text, seed, start, tol, max_iter, threads))


def sample(text, shots, seed=0, orbit_cap=1 << 16, threads=1, include_shots=True):
    """Draw `shots` basis states from the ground-state distribution."""
    return json.loads(
        _stoqsym.sample_json(text, shots, seed, orbit_cap, threads, include_shots))
