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

#include "twsat/exactsim.h"

#include <cmath>
#include <sstream>

#include "twsat/errors.h"

namespace twsat {

SimulationTrace simulate(const AbstractNetwork &net, const std::vector<Tensor> &tensors, const ContractionTree &tree,
                         const SimulationOptions &options) {
    if ((int)tensors.size() != net.size()) {
        throw ValidationError("simulate: " + std::to_string(tensors.size()) + " tensors for " +
                              std::to_string(net.size()) + " positions");
    }
    auto report = validate_contraction_tree(net, tree);
    if (!report.ok()) {
        throw ValidationError("simulate: invalid contraction tree: " + report.violations.front());
    }
    for (int p = 0; p < net.size(); p++) {
        if (tensors[p].indices() != net.sets[p]) {
            throw ValidationError("simulate: tensor at position " + std::to_string(p) + " lives on " +
                                  tensors[p].indices().str() + " but the network expects " + net.sets[p].str());
        }
        if (tensors[p].d() != tensors[0].d()) {
            throw ValidationError("simulate: tensor at position " + std::to_string(p) + " has a different d");
        }
    }
    SimulationTrace trace;
    trace.node_tensors.resize(tree.nodes.size());
    for (int u : tree.post_order()) {
        const auto &node = tree.nodes[u];
        if (node.is_leaf()) {
            trace.node_tensors[u] = tensors[node.position];
        } else {
            trace.node_tensors[u] = contract(trace.node_tensors[node.left], trace.node_tensors[node.right]);
            if (!options.keep_all) {
                trace.node_tensors[node.left] = Tensor();
                trace.node_tensors[node.right] = Tensor();
            }
        }
        trace.peak_rank = std::max(trace.peak_rank, trace.node_tensors[u].rank());
    }
    trace.scalar = trace.node_tensors[tree.root].value();
    trace.value = std::abs(trace.scalar);
    return trace;
}

CircuitSimulation simulate_circuit(const QuantumCircuit &c, uint64_t seed) {
    if (c.num_uninitialized() > 0) {
        throw ValidationError("circuit has " + std::to_string(c.num_uninitialized()) +
                              " uninitialized inputs; exact simulation needs an initialized circuit");
    }
    TensorNetwork tn = to_tensor_network(c);
    GoodContractionTree good = build_good_contraction_tree(tn.net, seed);
    CircuitSimulation out;
    out.trace = simulate(tn.net, tn.tensors, good.tree);
    out.rank = good.rank;
    out.height = good.height;
    if (std::abs(out.trace.scalar.imag()) > 1e-6) {
        std::ostringstream msg;
        msg << "acceptance scalar has imaginary part " << out.trace.scalar.imag();
        out.trace.warnings.push_back(msg.str());
    }
    return out;
}

double acceptance_probability(const QuantumCircuit &c, uint64_t seed) {
    return simulate_circuit(c, seed).trace.value;
}

}  // namespace twsat
