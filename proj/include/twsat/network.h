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

#ifndef TWSAT_NETWORK_H
#define TWSAT_NETWORK_H

#include <cstdint>
#include <string>
#include <vector>

#include "twsat/graph.h"
#include "twsat/index_set.h"

namespace twsat {

/// Ordered list of index sets. Members are identified by position since a set may occur twice.
struct AbstractNetwork {
    std::vector<IndexSet> sets;

    int size() const {
        return (int)sets.size();
    }
    int rank() const;

    bool operator==(const AbstractNetwork &other) const = default;
};

struct IndexCount {
    int index;
    int count;

    bool operator==(const IndexCount &other) const = default;
};

struct NetworkReport {
    /// Every index occurs in exactly two sets.
    bool counts_ok = true;
    bool connected = true;
    std::vector<IndexCount> bad_counts;

    bool ok() const {
        return counts_ok && connected;
    }
    std::string message() const;
};

NetworkReport validate_network(const AbstractNetwork &net);

/// One vertex per position and one edge per shared index, labeled by the index.
/// Throws ValidationError when an index does not occur exactly twice.
Multigraph graph_of_network(const AbstractNetwork &net);

struct ContractionNode {
    int left = -1;
    int right = -1;
    int parent = -1;
    /// Network position carried by a leaf, -1 for internal nodes.
    int position = -1;
    IndexSet label;

    bool is_leaf() const {
        return left < 0;
    }
    bool operator==(const ContractionNode &other) const = default;
};

/// Binary tree whose leaves are the network members and whose internal nodes carry the
/// symmetric difference of their children.
struct ContractionTree {
    std::vector<ContractionNode> nodes;
    int root = -1;

    int rank() const;
    int height() const;
    /// Children before parents; left subtree before right subtree.
    std::vector<int> post_order() const;
    /// Depth of each node below the root.
    std::vector<int> depths() const;
    /// Height of the subtree rooted at each node.
    std::vector<int> subtree_heights() const;

    bool operator==(const ContractionTree &other) const = default;
};

struct TreeReport {
    std::vector<std::string> violations;
    int rank = 0;
    int height = 0;

    bool ok() const {
        return violations.empty();
    }
};

/// Checks the leaf bijection, the symmetric-difference labels, nonempty child intersections
/// and the empty root label.
TreeReport validate_contraction_tree(const AbstractNetwork &net, const ContractionTree &tree);

/// Labels a contractive carving of graph_of_network(net). Throws ValidationError naming the
/// first internal node whose children do not share an index.
ContractionTree contraction_tree_from_carving(const AbstractNetwork &net, const RootedCarving &carving);

struct GoodContractionTree {
    ContractionTree tree;
    int rank = 0;
    int height = 0;
    int max_degree = 0;
    int treewidth_bound = 0;
    int initial_carving_width = 0;
    int initial_carving_height = 0;
    int carving_width = 0;
};

/// Min-fill tree decomposition, carving conversion, contractification, labeling.
GoodContractionTree build_good_contraction_tree(const AbstractNetwork &net, uint64_t seed = 0);

}  // namespace twsat

#endif
