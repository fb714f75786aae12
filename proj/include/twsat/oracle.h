// Copyright 2026 The twsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWSAT_ORACLE_H
#define TWSAT_ORACLE_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "twsat/circuit.h"

namespace twsat {

struct OracleOptions {
    /// Cap on simultaneously live wires, counted in qubits: d^wires may not exceed 2^max_wires.
    int max_wires = 12;
    /// Cap on d^n for brute_force_max.
    size_t max_assignments = 4096;
};

/// tr[C(rho_y) M(C)] by dense density-matrix evolution over the live wires. Inputs are
/// allocated right before their first gate and outputs are measured as soon as their wire is
/// produced. y sets the uninitialized inputs; it must be empty when there are none.
double dm_simulate(const QuantumCircuit &c, std::string_view y = "", const OracleOptions &options = {});

struct OracleMax {
    std::string y;
    double probability = 0;
    /// Acceptance probability of every assignment in ascending lexicographic order.
    std::vector<double> all;
};

/// Maximum of dm_simulate over every assignment. Ties within 1e-12 keep the lexicographically
/// smallest y.
OracleMax brute_force_max(const QuantumCircuit &c, const OracleOptions &options = {});

/// Every assignment string over 0..d-1 of length n, ascending.
std::vector<std::string> all_assignments(int d, int n);

}  // namespace twsat

#endif
