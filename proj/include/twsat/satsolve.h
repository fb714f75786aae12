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

#ifndef TWSAT_SATSOLVE_H
#define TWSAT_SATSOLVE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twsat/circuit.h"
#include "twsat/network.h"
#include "twsat/tensor_set.h"

namespace twsat {

/// epsilon * (3 d^(2r) + 1)^h, computed in the log domain. May be +inf.
double simulation_bound(double epsilon, int d, int r, int h);

struct FeasibilitySimulation {
    ContractionTree tree;
    NetParams params;
    int d = 2;
    int rank = 0;
    int height = 0;
    /// One set per tree node. Leaves hold the candidate lists verbatim; internal nodes hold
    /// set_contract_trunc of their children.
    std::vector<TensorSet> sets;
    /// simulation_bound(params.epsilon, d, rank, height).
    double bound = 0;
};

struct EpsilonOptions {
    int threads = 1;
    size_t max_set_size = 1000000;
};

/// Bottom-up set dynamic program. Throws ResourceError naming the node when a set outgrows the
/// cap, and ValidationError when an entry leaves the net range or shapes disagree.
FeasibilitySimulation epsilon_simulate(const AbstractNetwork &net, const std::vector<std::vector<Tensor>> &candidates,
                                       const ContractionTree &tree, const NetParams &params,
                                       const EpsilonOptions &options = {});

struct Extraction {
    /// Chosen candidate per network position.
    std::vector<int> choice;
    Complex alpha{0, 0};
    /// Position of alpha in the root set.
    int root_member = 0;
};

/// Follows the provenance of one root member down to the leaves.
std::vector<int> trace_member(const FeasibilitySimulation &sim, int root_member);

/// Picks the root member of largest modulus, lowest position on ties, and traces it.
Extraction extract_initialization(const FeasibilitySimulation &sim);

struct EpsilonChoice {
    double epsilon = 0;
    /// Set when delta / (3d^(2r)+1)^h fell below the floor and the floor was returned instead.
    bool floored = false;
    /// simulation_bound at the returned epsilon.
    double implied_bound = 0;
    std::string warning;
};

/// delta / (3 d^(2r) + 1)^h, or the floor when that is smaller.
EpsilonChoice choose_epsilon(double delta, int d, int r, int h, double floor = 1e-12);

struct SolveOptions {
    /// Exactly one of delta and epsilon must be set.
    std::optional<double> delta;
    std::optional<double> epsilon;
    uint64_t seed = 0;
    int threads = 1;
    size_t max_set_size = 1000000;
    double epsilon_floor = 1e-12;
};

struct SolveReport {
    std::string y;
    /// Exact acceptance probability of the returned assignment.
    double probability = 0;
    Complex alpha{0, 0};
    double epsilon = 0;
    /// Bound on |alpha - VAL| for the simulation that was run.
    double root_bound = 0;
    /// Certified bound on |probability - best probability|: twice root_bound.
    double certified_bound = 0;
    int d = 2;
    int rank = 0;
    int height = 0;
    int positions = 0;
    int uninitialized = 0;
    int treewidth_bound = 0;
    int carving_width = 0;
    /// Set size per tree node.
    std::vector<size_t> set_sizes;
    std::vector<std::string> warnings;
};

/// Feasibility network, good contraction tree, epsilon choice, set dynamic program,
/// extraction and exact re-simulation of the extracted assignment. In delta mode epsilon is
/// chosen for delta / 2 so that the certified bound is at most delta.
SolveReport solve_classical_assignment(const QuantumCircuit &c, const SolveOptions &options);

}  // namespace twsat

#endif
