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

#include "twsat/network.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "twsat/errors.h"

namespace twsat {

int AbstractNetwork::rank() const {
    int r = 0;
    for (const auto &s : sets) {
        r = std::max(r, (int)s.size());
    }
    return r;
}

namespace {

std::map<int, std::vector<int>> holders_of(const AbstractNetwork &net) {
    std::map<int, std::vector<int>> holders;
    for (int p = 0; p < net.size(); p++) {
        for (int i : net.sets[p]) {
            holders[i].push_back(p);
        }
    }
    return holders;
}

Multigraph graph_unchecked(const AbstractNetwork &net, const std::map<int, std::vector<int>> &holders) {
    Multigraph g(net.size());
    for (const auto &[index, where] : holders) {
        if (where.size() == 2) {
            g.add_edge(where[0], where[1], index);
        }
    }
    return g;
}

}  // namespace

std::string NetworkReport::message() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    const char *sep = "";
    for (const auto &bad : bad_counts) {
        out << sep << "index " << bad.index << " occurs " << bad.count << " time" << (bad.count == 1 ? "" : "s");
        sep = "; ";
    }
    if (!connected) {
        out << sep << "network graph is disconnected or empty";
    }
    return out.str();
}

NetworkReport validate_network(const AbstractNetwork &net) {
    NetworkReport report;
    auto holders = holders_of(net);
    for (const auto &[index, where] : holders) {
        if (where.size() != 2) {
            report.counts_ok = false;
            report.bad_counts.push_back({index, (int)where.size()});
        }
    }
    report.connected = graph_unchecked(net, holders).is_connected();
    return report;
}

Multigraph graph_of_network(const AbstractNetwork &net) {
    auto holders = holders_of(net);
    for (const auto &[index, where] : holders) {
        if (where.size() != 2) {
            throw ValidationError(
                "invalid network: index " + std::to_string(index) + " occurs " + std::to_string(where.size()) +
                " times");
        }
    }
    return graph_unchecked(net, holders);
}

int ContractionTree::rank() const {
    int r = 0;
    for (const auto &node : nodes) {
        r = std::max(r, (int)node.label.size());
    }
    return r;
}

std::vector<int> ContractionTree::post_order() const {
    std::vector<int> out;
    if (root < 0) {
        return out;
    }
    std::vector<std::pair<int, bool>> st{{root, false}};
    while (!st.empty()) {
        auto [u, expanded] = st.back();
        st.pop_back();
        if (expanded || nodes[u].is_leaf()) {
            out.push_back(u);
        } else {
            st.push_back({u, true});
            st.push_back({nodes[u].right, false});
            st.push_back({nodes[u].left, false});
        }
    }
    return out;
}

std::vector<int> ContractionTree::depths() const {
    std::vector<int> depth(nodes.size(), 0);
    auto post = post_order();
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
        const auto &node = nodes[*it];
        if (!node.is_leaf()) {
            depth[node.left] = depth[*it] + 1;
            depth[node.right] = depth[*it] + 1;
        }
    }
    return depth;
}

std::vector<int> ContractionTree::subtree_heights() const {
    std::vector<int> h(nodes.size(), 0);
    for (int u : post_order()) {
        const auto &node = nodes[u];
        if (!node.is_leaf()) {
            h[u] = 1 + std::max(h[node.left], h[node.right]);
        }
    }
    return h;
}

int ContractionTree::height() const {
    if (root < 0) {
        return 0;
    }
    return subtree_heights()[root];
}

TreeReport validate_contraction_tree(const AbstractNetwork &net, const ContractionTree &tree) {
    TreeReport report;
    int k = (int)tree.nodes.size();
    if (tree.root < 0 || tree.root >= k) {
        report.violations.push_back("tree has no valid root");
        return report;
    }
    // Structure: every node reachable once, binary, parent links consistent.
    std::vector<int> seen(k, 0);
    std::vector<int> st{tree.root};
    seen[tree.root] = 1;
    bool structural = true;
    while (!st.empty()) {
        int u = st.back();
        st.pop_back();
        const auto &node = tree.nodes[u];
        if (node.is_leaf()) {
            if (node.right >= 0) {
                report.violations.push_back("node " + std::to_string(u) + " has only a right child");
                structural = false;
            }
            continue;
        }
        for (int c : {node.left, node.right}) {
            if (c < 0 || c >= k || seen[c] || tree.nodes[c].parent != u) {
                report.violations.push_back("node " + std::to_string(u) + " has a malformed child link");
                structural = false;
                continue;
            }
            seen[c] = 1;
            st.push_back(c);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != k) {
        report.violations.push_back("some nodes are unreachable from the root");
        structural = false;
    }
    if (!structural) {
        return report;
    }

    // (i) leaves biject onto positions with matching labels.
    std::vector<int> leaf_for(net.size(), -1);
    for (int u = 0; u < k; u++) {
        const auto &node = tree.nodes[u];
        if (!node.is_leaf()) {
            continue;
        }
        if (node.position < 0 || node.position >= net.size()) {
            report.violations.push_back("condition (i): leaf " + std::to_string(u) + " names no network position");
            continue;
        }
        if (leaf_for[node.position] >= 0) {
            report.violations.push_back(
                "condition (i): position " + std::to_string(node.position) + " has two leaves");
            continue;
        }
        leaf_for[node.position] = u;
        if (node.label != net.sets[node.position]) {
            report.violations.push_back(
                "condition (i): leaf " + std::to_string(u) + " is labeled " + node.label.str() + " but position " +
                std::to_string(node.position) + " holds " + net.sets[node.position].str());
        }
    }
    for (int p = 0; p < net.size(); p++) {
        if (leaf_for[p] < 0) {
            report.violations.push_back("condition (i): position " + std::to_string(p) + " has no leaf");
        }
    }
    // (ii) internal labels.
    for (int u = 0; u < k; u++) {
        const auto &node = tree.nodes[u];
        if (node.is_leaf()) {
            continue;
        }
        const auto &l = tree.nodes[node.left].label;
        const auto &r = tree.nodes[node.right].label;
        if (!l.intersects(r)) {
            report.violations.push_back(
                "condition (ii): children of node " + std::to_string(u) + " share no index");
        }
        if (node.label != l.symmetric_difference(r)) {
            report.violations.push_back(
                "condition (ii): node " + std::to_string(u) + " label is not the symmetric difference of its children");
        }
    }
    if (!tree.nodes[tree.root].label.empty()) {
        report.violations.push_back("root label is not empty");
    }
    report.rank = tree.rank();
    report.height = tree.height();
    return report;
}

ContractionTree contraction_tree_from_carving(const AbstractNetwork &net, const RootedCarving &carving) {
    const CarvingTree &ct = carving.tree();
    auto labels = ct.leaf_labels();
    if ((int)labels.size() != net.size()) {
        throw ValidationError("contraction_tree_from_carving: carving leaf count differs from network size");
    }
    ContractionTree tree;
    tree.root = ct.root;
    tree.nodes.resize(ct.nodes.size());
    for (size_t u = 0; u < ct.nodes.size(); u++) {
        const auto &c = ct.nodes[u];
        auto &t = tree.nodes[u];
        t.left = c.left;
        t.right = c.right;
        t.parent = c.parent;
        if (c.is_leaf()) {
            if (c.vertex < 0 || c.vertex >= net.size()) {
                throw ValidationError("contraction_tree_from_carving: leaf names no network position");
            }
            t.position = c.vertex;
            t.label = net.sets[c.vertex];
        }
    }
    int first_bad = -1;
    for (int u : tree.post_order()) {
        auto &node = tree.nodes[u];
        if (node.is_leaf()) {
            continue;
        }
        const auto &l = tree.nodes[node.left].label;
        const auto &r = tree.nodes[node.right].label;
        if (!l.intersects(r) && (first_bad < 0 || u < first_bad)) {
            first_bad = u;
        }
        node.label = l.symmetric_difference(r);
    }
    if (first_bad >= 0) {
        throw ValidationError(
            "contraction_tree_from_carving: carving is not contractive, children of internal node " +
            std::to_string(first_bad) + " share no index");
    }
    return tree;
}

GoodContractionTree build_good_contraction_tree(const AbstractNetwork &net, uint64_t seed) {
    if (net.sets.empty()) {
        throw ValidationError("build_good_contraction_tree: empty network");
    }
    Multigraph g = graph_of_network(net);
    require_connected(g, "build_good_contraction_tree");
    TreeDecomposition td = min_fill_tree_decomposition(g, seed);
    RootedCarving initial = tree_decomposition_to_carving(g, td);
    RootedCarving good = contractify(g, initial);

    GoodContractionTree out;
    out.tree = contraction_tree_from_carving(net, good);
    out.rank = out.tree.rank();
    out.height = out.tree.height();
    out.max_degree = g.max_degree();
    out.treewidth_bound = td.width;
    out.initial_carving_width = initial.width();
    out.initial_carving_height = initial.height();
    out.carving_width = good.width();
    if (out.rank != out.carving_width) {
        throw InternalError("build_good_contraction_tree: tree rank differs from carving width");
    }
    return out;
}

}  // namespace twsat
