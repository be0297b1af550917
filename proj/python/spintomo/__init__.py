# Copyright 2026 The spintomo Authors
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

"""Spin-qubit state tomography by pulse sequences and single-qubit POMs."""

import json as _json

from ._spintomo import (
    Plan,
    SpintomoError,
    closed_form_u12,
    compile,
    equivalent_measurement,
    evolve,
    exact_probabilities,
    expand,
    fidelity,
    from_bloch,
    linear_invert,
    pair_hamiltonian,
    pauli_matrix,
    plan,
    random_density,
    reconstruct,
    simulate,
    to_bloch,
    trace_distance,
    u1,
    u2,
)
from ._spintomo import verify as _verify


def verify(scope="all"):
    """Run verification suites and return their reports as dicts."""
    return [_json.loads(s) for s in _verify(scope)]


__all__ = [
    "Plan",
    "SpintomoError",
    "closed_form_u12",
    "compile",
    "equivalent_measurement",
    "evolve",
    "exact_probabilities",
    "expand",
    "fidelity",
    "from_bloch",
    "linear_invert",
    "pair_hamiltonian",
    "pauli_matrix",
    "plan",
    "random_density",
    "reconstruct",
    "simulate",
    "to_bloch",
    "trace_distance",
    "u1",
    "u2",
    "verify",
]
