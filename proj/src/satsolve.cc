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

#include "twsat/satsolve.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "twsat/errors.h"
#include "twsat/exactsim.h"

namespace twsat {

namespace {

double log_growth(int d, int r) {
    // log(3 d^(2r) + 1)
    double log_dd = 2.0 * r * std::log((double)d);
    return std::log(3.0) + log_dd + std::log1p(std::exp(-(std::log(3.0) + log_dd)));
}

}  // namespace

double simulation_bound(double epsilon, int d, int r, int h) {
    double direct = std::pow(3.0 * std::pow((double)d, 2.0 * r) + 1.0, h);
    if (std::isfinite(direct)) {
        return epsilon * direct;
    }
    double log_bound = std::log(epsilon) + h * log_growth(d, r);
    return log_bound > 700 ? std::numeric_limits<double>::infinity() : std::exp(log_bound);
}

FeasibilitySimulation epsilon_simulate(const AbstractNetwork &net, const std::vector<std::vector<Tensor>> &candidates,
                                       const ContractionTree &tree, const NetParams &params,
                                       const EpsilonOptions &options) {
    params.validate();
    if ((int)candidates.size() != net.size()) {
        throw ValidationError("epsilon_simulate: " + std::to_string(candidates.size()) + " candidate sets for " +
                              std::to_string(net.size()) + " positions");
    }
    auto report = validate_contraction_tree(net, tree);
    if (!report.ok()) {
        throw ValidationError("epsilon_simulate: invalid contraction tree: " + report.violations.front());
    }
    FeasibilitySimulation sim;
    sim.tree = tree;
    sim.params = params;
    sim.rank = report.rank;
    sim.height = report.height;
    sim.sets.resize(tree.nodes.size());
    for (int p = 0; p < net.size(); p++) {
        if (candidates[p].empty()) {
            throw ValidationError("epsilon_simulate: position " + std::to_string(p) + " has no candidates");
        }
        for (const auto &t : candidates[p]) {
            if (t.indices() != net.sets[p]) {
                throw ValidationError("epsilon_simulate: candidate at position " + std::to_string(p) + " lives on " +
                                      t.indices().str() + " but the network expects " + net.sets[p].str());
            }
        }
    }
    sim.d = candidates[0][0].d();
    SetContractOptions set_options{options.threads, options.max_set_size};
    for (int u : tree.post_order()) {
        const auto &node = tree.nodes[u];
        if (node.is_leaf()) {
            sim.sets[u] = TensorSet::leaf(candidates[node.position]);
            if (sim.sets[u].size() > options.max_set_size) {
                throw ResourceError("node " + std::to_string(u) + ": leaf set of size " +
                                    std::to_string(sim.sets[u].size()) + " exceeds the cap of " +
                                    std::to_string(options.max_set_size));
            }
            continue;
        }
        try {
            sim.sets[u] = set_contract_trunc(sim.sets[node.left], sim.sets[node.right], params, set_options);
        } catch (const ResourceError &e) {
            throw ResourceError("node " + std::to_string(u) + " (children " + std::to_string(node.left) + ", " +
                                std::to_string(node.right) + ", operand sizes " +
                                std::to_string(sim.sets[node.left].size()) + " x " +
                                std::to_string(sim.sets[node.right].size()) + "): " + e.what());
        } catch (const ValidationError &e) {
            throw ValidationError("node " + std::to_string(u) + ": " + e.what());
        }
    }
    sim.bound = simulation_bound(params.epsilon, sim.d, sim.rank, sim.height);
    return sim;
}

std::vector<int> trace_member(const FeasibilitySimulation &sim, int root_member) {
    const auto &tree = sim.tree;
    int leaves = 0;
    for (const auto &node : tree.nodes) {
        leaves += node.is_leaf() ? 1 : 0;
    }
    std::vector<int> choice(leaves, -1);
    std::vector<std::pair<int, int>> stack{{tree.root, root_member}};
    while (!stack.empty()) {
        auto [u, member] = stack.back();
        stack.pop_back();
        const auto &set = sim.sets[u];
        if (member < 0 || member >= (int)set.size() || set.provenance.size() != set.size()) {
            throw InternalError("extraction: node " + std::to_string(u) + " has no provenance for member " +
                                std::to_string(member));
        }
        const auto &node = tree.nodes[u];
        const Provenance &p = set.provenance[member];
        if (node.is_leaf()) {
            choice[node.position] = p.left;
        } else {
            stack.push_back({node.right, p.right});
            stack.push_back({node.left, p.left});
        }
    }
    for (int c : choice) {
        if (c < 0) {
            throw InternalError("extraction: a leaf was not reached");
        }
    }
    return choice;
}

Extraction extract_initialization(const FeasibilitySimulation &sim) {
    const auto &root = sim.sets.at(sim.tree.root);
    if (root.size() == 0 || root.indices.size() != 0) {
        throw InternalError("extraction: root set is empty or not scalar");
    }
    Extraction out;
    double best = -1;
    for (size_t i = 0; i < root.size(); i++) {
        double mod = std::abs(root.members[i].value());
        if (mod > best) {
            best = mod;
            out.root_member = (int)i;
        }
    }
    out.alpha = root.members[out.root_member].value();
    out.choice = trace_member(sim, out.root_member);
    return out;
}

EpsilonChoice choose_epsilon(double delta, int d, int r, int h, double floor) {
    if (!(delta > 0 && delta < 1)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    EpsilonChoice out;
    double direct = std::pow(3.0 * std::pow((double)d, 2.0 * r) + 1.0, h);
    double eps = std::isfinite(direct) ? delta / direct : std::exp(std::log(delta) - h * log_growth(d, r));
    if (eps < floor) {
        out.floored = true;
        out.epsilon = floor;
        out.implied_bound = simulation_bound(floor, d, r, h);
        std::ostringstream msg;
        msg << "epsilon " << eps << " for delta " << delta << " is below the floor " << floor
            << "; using the floor, which only guarantees " << out.implied_bound;
        out.warning = msg.str();
    } else {
        out.epsilon = eps;
        out.implied_bound = simulation_bound(eps, d, r, h);
    }
    return out;
}

SolveReport solve_classical_assignment(const QuantumCircuit &c, const SolveOptions &options) {
    if (options.delta.has_value() == options.epsilon.has_value()) {
        throw ValidationError("give exactly one of delta and epsilon");
    }
    require_valid(c);
    FeasibilityNetwork f = to_feasibility_network(c);
    GoodContractionTree good = build_good_contraction_tree(f.net, options.seed);

    SolveReport report;
    report.d = c.d;
    report.rank = good.rank;
    report.height = good.height;
    report.positions = f.net.size();
    report.uninitialized = (int)f.input_positions.size();
    report.treewidth_bound = good.treewidth_bound;
    report.carving_width = good.carving_width;

    NetParams params;
    params.clamp_outside = true;
    if (options.delta) {
        auto choice = choose_epsilon(*options.delta / 2, c.d, good.rank, good.height, options.epsilon_floor);
        params.epsilon = choice.epsilon;
        if (choice.floored) {
            report.warnings.push_back(choice.warning);
        }
    } else {
        params.epsilon = *options.epsilon;
    }
    report.epsilon = params.epsilon;

    EpsilonOptions eopts{options.threads, options.max_set_size};
    FeasibilitySimulation sim = epsilon_simulate(f.net, f.candidates, good.tree, params, eopts);
    for (const auto &s : sim.sets) {
        report.set_sizes.push_back(s.size());
    }
    Extraction ex = extract_initialization(sim);
    report.alpha = ex.alpha;
    report.y = decode_assignment(f, ex.choice);
    report.root_bound = sim.bound;
    report.certified_bound = 2 * sim.bound;
    if (options.delta && report.certified_bound > *options.delta * (1 + 1e-9)) {
        std::ostringstream msg;
        msg << "certified bound " << report.certified_bound << " does not meet delta " << *options.delta;
        report.warnings.push_back(msg.str());
    }
    auto exact = simulate_circuit(initialize(c, report.y), options.seed);
    report.probability = exact.trace.value;
    for (const auto &w : exact.trace.warnings) {
        report.warnings.push_back(w);
    }
    return report;
}

}  // namespace twsat
