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

#ifndef TWSAT_TESTS_SUPPORT_ORACLES_H
#define TWSAT_TESTS_SUPPORT_ORACLES_H

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "twsat/circuit.h"
#include "twsat/graph.h"
#include "twsat/network.h"
#include "twsat/tensor.h"

namespace twsat_test {

using twsat::Complex;

/// Exact treewidth by minimizing over every elimination ordering. Small graphs only.
int brute_force_treewidth(const twsat::Multigraph &g);

/// Number of edges with exactly one endpoint in the vertex mask.
int cut_of_mask(const twsat::Multigraph &g, uint32_t mask);

/// Exact carving width by dynamic programming over vertex subsets. Small graphs only.
int brute_force_carving_width(const twsat::Multigraph &g);

/// Recomputes width, height and contractiveness straight from the definitions.
struct NaiveCarving {
    int width = 0;
    int height = 0;
    bool contractive = true;
};
NaiveCarving naive_carving_measure(const twsat::Multigraph &g, const twsat::CarvingTree &tree);

/// Random connected multigraph: a random spanning tree plus extra edges, labels 1..m shuffled.
twsat::Multigraph random_connected_graph(int n, int extra_edges, std::mt19937_64 &rng);

/// Random rooted binary tree with one leaf per vertex.
twsat::CarvingTree random_carving_tree(int n, std::mt19937_64 &rng);

/// Network whose member p holds the labels of the edges incident to vertex p.
twsat::AbstractNetwork network_of_graph(const twsat::Multigraph &g);

/// Random valid connected network with up to max_sets members.
twsat::AbstractNetwork random_network(int max_sets, std::mt19937_64 &rng);

/// Random dense tensor with entries of modulus at most bound.
twsat::Tensor random_tensor(int d, const twsat::IndexSet &indices, double bound, std::mt19937_64 &rng);

/// Value of a tensor network by summing over every joint assignment of all indices.
Complex full_sum_value(const twsat::AbstractNetwork &net, const std::vector<twsat::Tensor> &tensors);

/// Contracts the network by repeatedly merging the first two members that share an index.
Complex greedy_sequential_value(const twsat::AbstractNetwork &net, const std::vector<twsat::Tensor> &tensors);

/// Random valid contraction tree: repeatedly joins two random groups that share an index.
twsat::ContractionTree random_contraction_tree(const twsat::AbstractNetwork &net, std::mt19937_64 &rng);

/// Exact scalar of every initialization of a feasibility instance, enumerated in mixed radix
/// over the candidate counts with the last position varying fastest.
struct Initializations {
    std::vector<std::vector<int>> choices;
    std::vector<Complex> values;
    /// Largest modulus over the values.
    double best = 0;
};
Initializations enumerate_initializations(const twsat::AbstractNetwork &net,
                                          const std::vector<std::vector<twsat::Tensor>> &candidates,
                                          const twsat::ContractionTree &tree);

/// Random density matrix (positive semidefinite, trace 1).
twsat::Matrix random_density(int d, std::mt19937_64 &rng);

/// Random measurement element 0 <= M <= I.
twsat::Matrix random_effect(int d, std::mt19937_64 &rng);

/// Kraus operators of a random trace-preserving channel from dim_in to dim_out, taken from the
/// blocks of a random isometry.
std::vector<twsat::Matrix> random_kraus(int dim_in, int dim_out, int count, std::mt19937_64 &rng);

/// Sum of K rho K^dagger.
twsat::Matrix apply_channel(const std::vector<twsat::Matrix> &kraus, const twsat::Matrix &rho);

/// Kronecker product.
twsat::Matrix kron(const twsat::Matrix &a, const twsat::Matrix &b);

}  // namespace twsat_test

#endif
