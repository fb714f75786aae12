# Copyright 2026 The twsat Authors
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

"""Classical satisfiability of bounded-treewidth quantum circuits."""

from ._twsat import (
    Circuit,
    InternalError,
    ResourceError,
    ValidationError,
    acceptance_probability,
    brute_force_max,
    choose_epsilon,
    dm_simulate,
    random_circuit,
    run_cli,
    solve,
    verifier_circuit,
)

__all__ = [
    "Circuit",
    "InternalError",
    "ResourceError",
    "ValidationError",
    "acceptance_probability",
    "brute_force_max",
    "choose_epsilon",
    "dm_simulate",
    "random_circuit",
    "run_cli",
    "solve",
    "verifier_circuit",
]
