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

#ifndef TWSAT_EXACTSIM_H
#define TWSAT_EXACTSIM_H

#include <cstdint>
#include <string>
#include <vector>

#include "twsat/circuit.h"
#include "twsat/network.h"
#include "twsat/tensor.h"

namespace twsat {

struct SimulationOptions {
    /// Keep every node tensor in the trace instead of releasing children once the parent exists.
    bool keep_all = false;
};

struct SimulationTrace {
    /// Per tree node; empty tensors for released nodes unless keep_all was set.
    std::vector<Tensor> node_tensors;
    Complex scalar{0, 0};
    /// |scalar|.
    double value = 0;
    int peak_rank = 0;
    std::vector<std::string> warnings;
};

/// Bottom-up contraction of the tensors along the tree. Throws ValidationError when the tree is
/// invalid for the network or a tensor does not live on its position's index set.
SimulationTrace simulate(const AbstractNetwork &net, const std::vector<Tensor> &tensors, const ContractionTree &tree,
                         const SimulationOptions &options = {});

struct CircuitSimulation {
    SimulationTrace trace;
    int rank = 0;
    int height = 0;
};

/// Builds the circuit network and a good contraction tree, then simulates. The circuit must be
/// fully initialized. Warns when the scalar has an imaginary part above 1e-6.
CircuitSimulation simulate_circuit(const QuantumCircuit &c, uint64_t seed = 0);
double acceptance_probability(const QuantumCircuit &c, uint64_t seed = 0);

}  // namespace twsat

#endif
