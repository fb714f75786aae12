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

#ifndef TWSAT_GRAPH_H
#define TWSAT_GRAPH_H

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace twsat {

struct GraphEdge {
    int u;
    int v;
    int label;

    bool operator==(const GraphEdge &other) const = default;
};

/// Undirected multigraph over vertices 0..n-1 with distinct positive edge labels.
/// Parallel edges are allowed, loops are not.
class Multigraph {
   public:
    Multigraph() = default;
    explicit Multigraph(int num_vertices);

    /// Adds an edge and returns its id. Throws ValidationError on loops, bad endpoints,
    /// non-positive or repeated labels.
    int add_edge(int u, int v, int label);

    int num_vertices() const {
        return (int)adjacency_.size();
    }
    int num_edges() const {
        return (int)edges_.size();
    }
    const std::vector<GraphEdge> &edges() const {
        return edges_;
    }
    /// Ids of the edges incident to v, in insertion order.
    const std::vector<int> &incident(int v) const {
        return adjacency_[v];
    }
    int degree(int v) const {
        return (int)adjacency_[v].size();
    }
    int max_degree() const;

    /// Connected components, each sorted ascending, ordered by smallest member.
    std::vector<std::vector<int>> connected_components() const;
    bool is_connected() const;

    bool operator==(const Multigraph &other) const;

   private:
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::unordered_set<int> labels_;
};

/// Throws ValidationError naming the components when g is disconnected or empty.
void require_connected(const Multigraph &g, const char *context);

/// Formats components as "{0,1} {2}".
std::string describe_components(const std::vector<std::vector<int>> &components);

/// Tree decomposition (T, beta). Node i of T carries bags[i] (sorted vertex ids).
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> arcs;
    int root = 0;
    int width = -1;

    int measured_width() const;
};

/// Checks the three covering/connectivity conditions plus tree shape and stored width.
/// Throws ValidationError naming the violated condition.
void validate_tree_decomposition(const Multigraph &g, const TreeDecomposition &td);

/// Min-fill elimination. Ties go to the vertex with the lowest priority; seed 0 uses the
/// vertex id as priority, any other seed a seeded permutation of the ids.
TreeDecomposition min_fill_tree_decomposition(const Multigraph &g, uint64_t seed = 0);

struct CarvingNode {
    int left = -1;
    int right = -1;
    int parent = -1;
    /// Vertex carried by a leaf, -1 for internal nodes.
    int vertex = -1;

    bool is_leaf() const {
        return left < 0;
    }
    bool operator==(const CarvingNode &other) const = default;
};

/// Bare rooted binary tree whose leaves carry labels. No graph attached.
struct CarvingTree {
    std::vector<CarvingNode> nodes;
    int root = -1;

    static CarvingTree single_leaf(int vertex);
    /// Adds an internal node over two existing roots and returns its id.
    int join(int left, int right);
    int add_leaf(int vertex);
    std::vector<int> leaf_labels() const;

    bool operator==(const CarvingTree &other) const = default;
};

struct CarvingStats {
    int width = 0;
    int height = 0;
    bool contractive = true;

    bool operator==(const CarvingStats &other) const = default;
};

/// Rooted carving decomposition of a specific graph, with cached per-node cut sizes.
class RootedCarving {
   public:
    /// Validates that the tree is a rooted binary tree whose leaves biject onto the vertices
    /// of g, then measures it. Throws ValidationError otherwise.
    static RootedCarving build(const Multigraph &g, CarvingTree tree);

    const CarvingTree &tree() const {
        return tree_;
    }
    const std::vector<int> &cut_sizes() const {
        return cut_;
    }
    int width() const {
        return stats_.width;
    }
    int height() const {
        return stats_.height;
    }
    bool contractive() const {
        return stats_.contractive;
    }
    const CarvingStats &stats() const {
        return stats_;
    }
    /// Lowest-id internal node whose children share no edge, or -1.
    int first_non_contractive() const {
        return first_bad_;
    }

   private:
    CarvingTree tree_;
    std::vector<int> cut_;
    CarvingStats stats_;
    int first_bad_ = -1;
};

/// Recomputes width, height and contractiveness of `tree` over g from scratch.
CarvingStats carving_stats(const Multigraph &g, const CarvingTree &tree);

RootedCarving tree_decomposition_to_carving(const Multigraph &g, const TreeDecomposition &td);

/// Caterpillar tree over an ordering: the deepest internal node joins order[0] and order[1],
/// every later order[k] hangs as the right child one level up.
CarvingTree caterpillar_tree(std::span<const int> order);

/// Breadth first order from the lowest vertex id, neighbors visited in ascending id.
std::vector<int> bfs_order(const Multigraph &g);

/// Contractive caterpillar carving of height n-1 from a breadth first traversal.
RootedCarving bfs_caterpillar_carving(const Multigraph &g);

/// Graph over the parts with one edge per crossing edge of g (labels preserved).
Multigraph quotient_graph(const Multigraph &g, const std::vector<std::vector<int>> &parts);

/// Replaces each leaf of `quotient` labeled i by the tree parts[i]. Leaves of the result carry
/// the part labels.
CarvingTree compose_carving_trees(const CarvingTree &quotient, std::span<const CarvingTree> parts);

/// Composition measured against g, the union graph of the parts.
RootedCarving compose_carvings(
    const Multigraph &g, const CarvingTree &quotient, std::span<const CarvingTree> parts);

/// Converts any carving of a connected graph into a contractive one of no larger width and
/// height at most width * height.
RootedCarving contractify(const Multigraph &g, const RootedCarving &carving);

}  // namespace twsat

#endif
