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

#include "twsat/graph.h"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "twsat/errors.h"

namespace twsat {

Multigraph::Multigraph(int num_vertices) {
    if (num_vertices < 0) {
        throw ValidationError("negative vertex count");
    }
    adjacency_.resize(num_vertices);
}

int Multigraph::add_edge(int u, int v, int label) {
    int n = num_vertices();
    if (u < 0 || v < 0 || u >= n || v >= n) {
        throw ValidationError(
            "edge " + std::to_string(label) + " has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (u == v) {
        throw ValidationError("edge " + std::to_string(label) + " is a loop at vertex " + std::to_string(u));
    }
    if (label <= 0) {
        throw ValidationError("edge label " + std::to_string(label) + " is not positive");
    }
    if (!labels_.insert(label).second) {
        throw ValidationError("edge label " + std::to_string(label) + " is used twice");
    }
    int id = (int)edges_.size();
    edges_.push_back({u, v, label});
    adjacency_[u].push_back(id);
    adjacency_[v].push_back(id);
    return id;
}

int Multigraph::max_degree() const {
    int result = 0;
    for (const auto &a : adjacency_) {
        result = std::max(result, (int)a.size());
    }
    return result;
}

std::vector<std::vector<int>> Multigraph::connected_components() const {
    int n = num_vertices();
    std::vector<int> seen(n, 0);
    std::vector<std::vector<int>> result;
    for (int s = 0; s < n; s++) {
        if (seen[s]) {
            continue;
        }
        std::vector<int> comp{s};
        seen[s] = 1;
        for (size_t k = 0; k < comp.size(); k++) {
            int x = comp[k];
            for (int e : adjacency_[x]) {
                int y = edges_[e].u == x ? edges_[e].v : edges_[e].u;
                if (!seen[y]) {
                    seen[y] = 1;
                    comp.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

bool Multigraph::is_connected() const {
    return num_vertices() > 0 && connected_components().size() == 1;
}

bool Multigraph::operator==(const Multigraph &other) const {
    return num_vertices() == other.num_vertices() && edges_ == other.edges_;
}

std::string describe_components(const std::vector<std::vector<int>> &components) {
    std::ostringstream out;
    for (size_t i = 0; i < components.size(); i++) {
        if (i) {
            out << ' ';
        }
        out << '{';
        for (size_t j = 0; j < components[i].size(); j++) {
            if (j) {
                out << ',';
            }
            out << components[i][j];
        }
        out << '}';
    }
    return out.str();
}

void require_connected(const Multigraph &g, const char *context) {
    if (g.num_vertices() == 0) {
        throw ValidationError(std::string(context) + ": graph has no vertices");
    }
    auto comps = g.connected_components();
    if (comps.size() != 1) {
        throw ValidationError(
            std::string(context) + ": graph is disconnected, components " + describe_components(comps));
    }
}

// ---------------------------------------------------------------------------
// Tree decompositions.

int TreeDecomposition::measured_width() const {
    int w = -1;
    for (const auto &b : bags) {
        w = std::max(w, (int)b.size() - 1);
    }
    return w;
}

void validate_tree_decomposition(const Multigraph &g, const TreeDecomposition &td) {
    int n = g.num_vertices();
    int k = (int)td.bags.size();
    if (k == 0) {
        throw ValidationError("tree decomposition has no nodes");
    }
    if ((int)td.arcs.size() != k - 1) {
        throw ValidationError("tree decomposition: arc count is not nodes-1, not a tree");
    }
    if (td.root < 0 || td.root >= k) {
        throw ValidationError("tree decomposition: root out of range");
    }
    std::vector<std::vector<int>> adj(k);
    for (auto [a, b] : td.arcs) {
        if (a < 0 || b < 0 || a >= k || b >= k || a == b) {
            throw ValidationError("tree decomposition: bad arc");
        }
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> seen(k, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                reached++;
                stack.push_back(y);
            }
        }
    }
    if (reached != k) {
        throw ValidationError("tree decomposition: nodes do not form a connected tree");
    }

    std::vector<std::vector<int>> holders(n);
    for (int u = 0; u < k; u++) {
        const auto &bag = td.bags[u];
        for (size_t i = 0; i < bag.size(); i++) {
            int v = bag[i];
            if (v < 0 || v >= n) {
                throw ValidationError("tree decomposition: bag " + std::to_string(u) + " holds unknown vertex");
            }
            if (i > 0 && bag[i - 1] >= v) {
                throw ValidationError("tree decomposition: bag " + std::to_string(u) + " is not sorted/distinct");
            }
            holders[v].push_back(u);
        }
    }
    for (int v = 0; v < n; v++) {
        if (holders[v].empty()) {
            throw ValidationError("tree decomposition: vertex " + std::to_string(v) + " is in no bag (coverage)");
        }
    }
    for (const auto &e : g.edges()) {
        bool ok = false;
        for (int u : holders[e.u]) {
            if (std::binary_search(td.bags[u].begin(), td.bags[u].end(), e.v)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ValidationError(
                "tree decomposition: edge " + std::to_string(e.label) + " is inside no bag (edge coverage)");
        }
    }
    // Bags holding v must induce a connected subtree.
    std::vector<int> mark(k, -1);
    for (int v = 0; v < n; v++) {
        for (int u : holders[v]) {
            mark[u] = v;
        }
        std::vector<int> st{holders[v][0]};
        std::vector<int> vis{holders[v][0]};
        mark[holders[v][0]] = -2 - v;
        size_t count = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x]) {
                if (mark[y] == v) {
                    mark[y] = -2 - v;
                    count++;
                    st.push_back(y);
                }
            }
        }
        if (count != holders[v].size()) {
            throw ValidationError(
                "tree decomposition: bags holding vertex " + std::to_string(v) +
                " are not connected (running intersection)");
        }
    }
    if (td.width != td.measured_width()) {
        throw ValidationError("tree decomposition: stored width differs from max bag size minus one");
    }
}

TreeDecomposition min_fill_tree_decomposition(const Multigraph &g, uint64_t seed) {
    require_connected(g, "min_fill_tree_decomposition");
    int n = g.num_vertices();
    std::vector<int> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(priority.begin(), priority.end(), rng);
    }

    std::vector<std::set<int>> nbr(n);
    for (const auto &e : g.edges()) {
        nbr[e.u].insert(e.v);
        nbr[e.v].insert(e.u);
    }
    std::vector<int> position(n, -1);
    std::vector<int> order;
    std::vector<std::vector<int>> bags;
    for (int step = 0; step < n; step++) {
        int best = -1;
        long best_fill = 0;
        for (int v = 0; v < n; v++) {
            if (position[v] >= 0) {
                continue;
            }
            long fill = 0;
            for (auto a = nbr[v].begin(); a != nbr[v].end(); ++a) {
                for (auto b = std::next(a); b != nbr[v].end(); ++b) {
                    if (!nbr[*a].count(*b)) {
                        fill++;
                    }
                }
            }
            if (best < 0 || fill < best_fill || (fill == best_fill && priority[v] < priority[best])) {
                best = v;
                best_fill = fill;
            }
        }
        position[best] = step;
        order.push_back(best);
        std::vector<int> bag(nbr[best].begin(), nbr[best].end());
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        bags.push_back(std::move(bag));
        for (int a : nbr[best]) {
            for (int b : nbr[best]) {
                if (a != b) {
                    nbr[a].insert(b);
                }
            }
            nbr[a].erase(best);
        }
        nbr[best].clear();
    }

    TreeDecomposition td;
    td.bags = std::move(bags);
    td.root = n - 1;
    for (int step = 0; step + 1 < n; step++) {
        int v = order[step];
        int parent_step = n;
        for (int u : td.bags[step]) {
            if (u != v && position[u] > step) {
                parent_step = std::min(parent_step, position[u]);
            }
        }
        if (parent_step == n) {
            throw InternalError("min_fill_tree_decomposition: orphan bag on a connected graph");
        }
        td.arcs.emplace_back(parent_step, step);
    }
    td.width = td.measured_width();
    return td;
}

// ---------------------------------------------------------------------------
// Carving trees.

CarvingTree CarvingTree::single_leaf(int vertex) {
    CarvingTree t;
    t.root = t.add_leaf(vertex);
    return t;
}

int CarvingTree::add_leaf(int vertex) {
    CarvingNode node;
    node.vertex = vertex;
    nodes.push_back(node);
    return (int)nodes.size() - 1;
}

int CarvingTree::join(int left, int right) {
    CarvingNode node;
    node.left = left;
    node.right = right;
    nodes.push_back(node);
    int id = (int)nodes.size() - 1;
    nodes[left].parent = id;
    nodes[right].parent = id;
    return id;
}

std::vector<int> CarvingTree::leaf_labels() const {
    std::vector<int> out;
    for (const auto &node : nodes) {
        if (node.is_leaf()) {
            out.push_back(node.vertex);
        }
    }
    return out;
}

namespace {

struct Measured {
    std::vector<int> cut;
    CarvingStats stats;
    int first_bad = -1;
};

/// Checks structure and the leaf bijection, then measures cuts via per-edge walks to the LCA.
Measured measure(const Multigraph &g, const CarvingTree &t) {
    int n = g.num_vertices();
    int k = (int)t.nodes.size();
    if (n == 0) {
        throw ValidationError("carving: graph has no vertices");
    }
    if (t.root < 0 || t.root >= k) {
        throw ValidationError("carving: root out of range");
    }
    if (t.nodes[t.root].parent != -1) {
        throw ValidationError("carving: root has a parent");
    }
    std::vector<int> depth(k, -1);
    std::vector<int> leaf_of(n, -1);
    std::vector<int> stack{t.root};
    depth[t.root] = 0;
    int visited = 0;
    int height = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        visited++;
        const auto &node = t.nodes[u];
        height = std::max(height, depth[u]);
        if (node.is_leaf()) {
            if (node.right >= 0) {
                throw ValidationError("carving: node " + std::to_string(u) + " has only a right child");
            }
            if (node.vertex < 0 || node.vertex >= n) {
                throw ValidationError(
                    "carving: leaf " + std::to_string(u) + " carries unknown vertex " + std::to_string(node.vertex));
            }
            if (leaf_of[node.vertex] >= 0) {
                throw ValidationError(
                    "carving: leaf labels are not a bijection, vertex " + std::to_string(node.vertex) +
                    " appears twice");
            }
            leaf_of[node.vertex] = u;
            continue;
        }
        if (node.right < 0 || node.vertex >= 0) {
            throw ValidationError("carving: internal node " + std::to_string(u) + " is not binary");
        }
        for (int c : {node.left, node.right}) {
            if (c < 0 || c >= k || depth[c] >= 0 || t.nodes[c].parent != u) {
                throw ValidationError("carving: malformed child link at node " + std::to_string(u));
            }
            depth[c] = depth[u] + 1;
            stack.push_back(c);
        }
    }
    if (visited != k) {
        throw ValidationError("carving: nodes unreachable from the root");
    }
    for (int v = 0; v < n; v++) {
        if (leaf_of[v] < 0) {
            throw ValidationError(
                "carving: leaf labels are not a bijection, vertex " + std::to_string(v) + " has no leaf");
        }
    }

    Measured m;
    m.cut.assign(k, 0);
    std::vector<char> joined(k, 0);
    for (const auto &e : g.edges()) {
        int x = leaf_of[e.u];
        int y = leaf_of[e.v];
        while (x != y) {
            if (depth[x] >= depth[y]) {
                m.cut[x]++;
                x = t.nodes[x].parent;
            } else {
                m.cut[y]++;
                y = t.nodes[y].parent;
            }
        }
        joined[x] = 1;
    }
    m.stats.height = height;
    m.stats.width = *std::max_element(m.cut.begin(), m.cut.end());
    for (int u = 0; u < k; u++) {
        if (!t.nodes[u].is_leaf() && !joined[u]) {
            m.stats.contractive = false;
            m.first_bad = u;
            break;
        }
    }
    return m;
}

int append_subtree(const CarvingTree &src, int src_node, CarvingTree &dst) {
    const auto &node = src.nodes[src_node];
    if (node.is_leaf()) {
        return dst.add_leaf(node.vertex);
    }
    int l = append_subtree(src, node.left, dst);
    int r = append_subtree(src, node.right, dst);
    return dst.join(l, r);
}

int combine_balanced(CarvingTree &t, const std::vector<int> &items, size_t lo, size_t hi) {
    if (hi - lo == 1) {
        return items[lo];
    }
    size_t mid = lo + (hi - lo) / 2;
    int l = combine_balanced(t, items, lo, mid);
    int r = combine_balanced(t, items, mid, hi);
    return t.join(l, r);
}

}  // namespace

RootedCarving RootedCarving::build(const Multigraph &g, CarvingTree tree) {
    Measured m = measure(g, tree);
    RootedCarving c;
    c.tree_ = std::move(tree);
    c.cut_ = std::move(m.cut);
    c.stats_ = m.stats;
    c.first_bad_ = m.first_bad;
    return c;
}

CarvingStats carving_stats(const Multigraph &g, const CarvingTree &tree) {
    return measure(g, tree).stats;
}

RootedCarving tree_decomposition_to_carving(const Multigraph &g, const TreeDecomposition &td) {
    validate_tree_decomposition(g, td);
    int n = g.num_vertices();
    int k = (int)td.bags.size();
    std::vector<std::vector<int>> adj(k);
    for (auto [a, b] : td.arcs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> depth(k, -1);
    std::vector<std::vector<int>> children(k);
    std::vector<int> order{td.root};
    depth[td.root] = 0;
    for (size_t i = 0; i < order.size(); i++) {
        int u = order[i];
        std::vector<int> next = adj[u];
        std::sort(next.begin(), next.end());
        for (int c : next) {
            if (depth[c] < 0) {
                depth[c] = depth[u] + 1;
                children[u].push_back(c);
                order.push_back(c);
            }
        }
    }
    std::vector<int> home(n, -1);
    for (int u = 0; u < k; u++) {
        for (int v : td.bags[u]) {
            if (home[v] < 0 || depth[u] < depth[home[v]] || (depth[u] == depth[home[v]] && u < home[v])) {
                home[v] = u;
            }
        }
    }
    std::vector<std::vector<int>> assigned(k);
    for (int v = 0; v < n; v++) {
        assigned[home[v]].push_back(v);
    }

    CarvingTree t;
    std::vector<int> built(k, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int u = *it;
        std::vector<int> items;
        for (int v : assigned[u]) {
            items.push_back(t.add_leaf(v));
        }
        for (int c : children[u]) {
            if (built[c] >= 0) {
                items.push_back(built[c]);
            }
        }
        if (!items.empty()) {
            built[u] = combine_balanced(t, items, 0, items.size());
        }
    }
    t.root = built[td.root];
    return RootedCarving::build(g, std::move(t));
}

CarvingTree caterpillar_tree(std::span<const int> order) {
    if (order.empty()) {
        throw ValidationError("caterpillar_tree: empty ordering");
    }
    CarvingTree t;
    int acc = t.add_leaf(order[0]);
    for (size_t k = 1; k < order.size(); k++) {
        int leaf = t.add_leaf(order[k]);
        acc = t.join(acc, leaf);
    }
    t.root = acc;
    return t;
}

std::vector<int> bfs_order(const Multigraph &g) {
    require_connected(g, "bfs_order");
    int n = g.num_vertices();
    std::vector<int> seen(n, 0);
    std::vector<int> order{0};
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); i++) {
        int x = order[i];
        std::vector<int> next;
        for (int e : g.incident(x)) {
            const auto &edge = g.edges()[e];
            next.push_back(edge.u == x ? edge.v : edge.u);
        }
        std::sort(next.begin(), next.end());
        for (int y : next) {
            if (!seen[y]) {
                seen[y] = 1;
                order.push_back(y);
            }
        }
    }
    return order;
}

RootedCarving bfs_caterpillar_carving(const Multigraph &g) {
    auto order = bfs_order(g);
    return RootedCarving::build(g, caterpillar_tree(order));
}

Multigraph quotient_graph(const Multigraph &g, const std::vector<std::vector<int>> &parts) {
    int n = g.num_vertices();
    std::vector<int> part_of(n, -1);
    for (size_t p = 0; p < parts.size(); p++) {
        if (parts[p].empty()) {
            throw ValidationError("quotient_graph: part " + std::to_string(p) + " is empty");
        }
        for (int v : parts[p]) {
            if (v < 0 || v >= n) {
                throw ValidationError("quotient_graph: part " + std::to_string(p) + " holds unknown vertex");
            }
            if (part_of[v] >= 0) {
                throw ValidationError("quotient_graph: vertex " + std::to_string(v) + " is in two parts");
            }
            part_of[v] = (int)p;
        }
    }
    for (int v = 0; v < n; v++) {
        if (part_of[v] < 0) {
            throw ValidationError("quotient_graph: vertex " + std::to_string(v) + " is in no part");
        }
    }
    Multigraph q((int)parts.size());
    for (const auto &e : g.edges()) {
        if (part_of[e.u] != part_of[e.v]) {
            q.add_edge(part_of[e.u], part_of[e.v], e.label);
        }
    }
    return q;
}

CarvingTree compose_carving_trees(const CarvingTree &quotient, std::span<const CarvingTree> parts) {
    std::vector<int> used(parts.size(), 0);
    for (const auto &node : quotient.nodes) {
        if (!node.is_leaf()) {
            continue;
        }
        if (node.vertex < 0 || node.vertex >= (int)parts.size() || used[node.vertex]) {
            throw ValidationError("compose_carvings: quotient leaves do not match the parts one to one");
        }
        used[node.vertex] = 1;
    }
    for (size_t i = 0; i < parts.size(); i++) {
        if (!used[i]) {
            throw ValidationError("compose_carvings: part " + std::to_string(i) + " has no quotient leaf");
        }
        if (parts[i].root < 0) {
            throw ValidationError("compose_carvings: part " + std::to_string(i) + " is empty");
        }
    }
    CarvingTree out;
    auto rec = [&](auto &self, int u) -> int {
        const auto &node = quotient.nodes[u];
        if (node.is_leaf()) {
            const auto &part = parts[node.vertex];
            return append_subtree(part, part.root, out);
        }
        int l = self(self, node.left);
        int r = self(self, node.right);
        return out.join(l, r);
    };
    out.root = rec(rec, quotient.root);
    return out;
}

RootedCarving compose_carvings(
    const Multigraph &g, const CarvingTree &quotient, std::span<const CarvingTree> parts) {
    return RootedCarving::build(g, compose_carving_trees(quotient, parts));
}

namespace {

struct Component {
    std::vector<int> vertices;
    CarvingTree tree;
};

constexpr int kMaxTreeSearch = 12;

/// Contractive carving of the quotient graph minimizing the largest cut its nodes induce in the
/// whole graph. Every node covers a connected set of parts and its children share an edge.
/// boundary[i] counts the edges leaving part i; between[i][j] the edges joining parts i and j.
/// Falls back to the BFS caterpillar past kMaxTreeSearch parts.
CarvingTree min_cut_contractive_tree(
    const Multigraph &q, const std::vector<int> &boundary, const std::vector<std::vector<int>> &between) {
    int s = q.num_vertices();
    if (s > kMaxTreeSearch) {
        return caterpillar_tree(bfs_order(q));
    }
    uint32_t full = (1u << s) - 1;
    std::vector<int> cut(full + 1, 0);
    for (uint32_t m = 1; m <= full; m++) {
        int low = std::countr_zero(m);
        uint32_t rest = m & (m - 1);
        int c = cut[rest] + boundary[low];
        for (uint32_t r = rest; r; r &= r - 1) {
            c -= 2 * between[low][std::countr_zero(r)];
        }
        cut[m] = c;
    }
    auto joined = [&](uint32_t x, uint32_t y) {
        for (uint32_t r = x; r; r &= r - 1) {
            int i = std::countr_zero(r);
            for (uint32_t t = y; t; t &= t - 1) {
                if (between[i][std::countr_zero(t)] > 0) {
                    return true;
                }
            }
        }
        return false;
    };
    std::vector<int> best(full + 1, INT_MAX);
    std::vector<uint32_t> split(full + 1, 0);
    for (uint32_t m = 1; m <= full; m++) {
        if (std::popcount(m) == 1) {
            best[m] = cut[m];
            continue;
        }
        uint32_t low = m & (~m + 1);
        uint32_t rest = m & ~low;
        for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
            uint32_t x = sub | low;
            uint32_t y = m & ~x;
            if (y && best[x] != INT_MAX && best[y] != INT_MAX && joined(x, y)) {
                int cand = std::max({cut[m], best[x], best[y]});
                if (cand < best[m]) {
                    best[m] = cand;
                    split[m] = x;
                }
            }
            if (sub == 0) {
                break;
            }
        }
    }
    CarvingTree t;
    auto build = [&](auto &self, uint32_t m) -> int {
        if (std::popcount(m) == 1) {
            return t.add_leaf(std::countr_zero(m));
        }
        int l = self(self, split[m]);
        int r = self(self, m & ~split[m]);
        return t.join(l, r);
    };
    t.root = build(build, full);
    return t;
}

}  // namespace

RootedCarving contractify(const Multigraph &g, const RootedCarving &carving) {
    require_connected(g, "contractify");
    const CarvingTree &in = carving.tree();
    int n = g.num_vertices();

    // Post-order over the input tree.
    std::vector<int> post;
    {
        std::vector<std::pair<int, bool>> st{{in.root, false}};
        while (!st.empty()) {
            auto [u, expanded] = st.back();
            st.pop_back();
            if (expanded || in.nodes[u].is_leaf()) {
                post.push_back(u);
            } else {
                st.push_back({u, true});
                st.push_back({in.nodes[u].right, false});
                st.push_back({in.nodes[u].left, false});
            }
        }
    }

    std::vector<std::vector<Component>> comps(in.nodes.size());
    std::vector<int> comp_of(n, -1);
    for (int u : post) {
        const auto &node = in.nodes[u];
        if (node.is_leaf()) {
            comps[u].push_back({{node.vertex}, CarvingTree::single_leaf(node.vertex)});
            continue;
        }
        std::vector<Component> kids = std::move(comps[node.left]);
        for (auto &c : comps[node.right]) {
            kids.push_back(std::move(c));
        }
        comps[node.left].clear();
        comps[node.right].clear();
        int k = (int)kids.size();
        for (int i = 0; i < k; i++) {
            for (int v : kids[i].vertices) {
                comp_of[v] = i;
            }
        }
        std::vector<int> uf(k);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) {
                x = uf[x] = uf[uf[x]];
            }
            return x;
        };
        std::vector<int> crossing;
        for (int e = 0; e < g.num_edges(); e++) {
            const auto &edge = g.edges()[e];
            int a = comp_of[edge.u];
            int b = comp_of[edge.v];
            if (a >= 0 && b >= 0 && a != b) {
                crossing.push_back(e);
                int ra = find(a);
                int rb = find(b);
                if (ra != rb) {
                    uf[std::max(ra, rb)] = std::min(ra, rb);
                }
            }
        }

        std::vector<std::vector<int>> groups;
        std::vector<int> group_of_root(k, -1);
        std::vector<int> by_smallest(k);
        std::iota(by_smallest.begin(), by_smallest.end(), 0);
        std::sort(by_smallest.begin(), by_smallest.end(), [&](int a, int b) {
            return kids[a].vertices.front() < kids[b].vertices.front();
        });
        for (int i : by_smallest) {
            int r = find(i);
            if (group_of_root[r] < 0) {
                group_of_root[r] = (int)groups.size();
                groups.emplace_back();
            }
            groups[group_of_root[r]].push_back(i);
        }

        std::vector<Component> merged;
        for (const auto &group : groups) {
            if (group.size() == 1) {
                merged.push_back(std::move(kids[group[0]]));
                continue;
            }
            std::vector<int> local(k, -1);
            for (size_t j = 0; j < group.size(); j++) {
                local[group[j]] = (int)j;
            }
            Multigraph q((int)group.size());
            for (int e : crossing) {
                const auto &edge = g.edges()[e];
                int a = local[comp_of[edge.u]];
                int b = local[comp_of[edge.v]];
                if (a >= 0 && b >= 0) {
                    q.add_edge(a, b, edge.label);
                }
            }
            std::vector<int> boundary(group.size(), 0);
            std::vector<std::vector<int>> between(group.size(), std::vector<int>(group.size(), 0));
            for (size_t j = 0; j < group.size(); j++) {
                for (int v : kids[group[j]].vertices) {
                    for (int e : g.incident(v)) {
                        const auto &edge = g.edges()[e];
                        int w = edge.u == v ? edge.v : edge.u;
                        int other = comp_of[w] >= 0 ? local[comp_of[w]] : -1;
                        if (other != (int)j) {
                            boundary[j]++;
                        }
                        if (other >= 0 && other != (int)j) {
                            between[j][other]++;
                        }
                    }
                }
            }
            CarvingTree qt = min_cut_contractive_tree(q, boundary, between);
            std::vector<CarvingTree> parts;
            Component c;
            for (int i : group) {
                parts.push_back(std::move(kids[i].tree));
                c.vertices.insert(c.vertices.end(), kids[i].vertices.begin(), kids[i].vertices.end());
            }
            std::sort(c.vertices.begin(), c.vertices.end());
            c.tree = compose_carving_trees(qt, parts);
            merged.push_back(std::move(c));
        }
        for (const auto &kid : kids) {
            for (int v : kid.vertices) {
                comp_of[v] = -1;
            }
        }
        for (const auto &c : merged) {
            for (int v : c.vertices) {
                comp_of[v] = -1;
            }
        }
        comps[u] = std::move(merged);
    }

    auto &top = comps[in.root];
    if (top.size() != 1) {
        throw InternalError("contractify: root does not hold a single component");
    }
    RootedCarving out = RootedCarving::build(g, std::move(top[0].tree));
    if (!out.contractive()) {
        throw InternalError("contractify: output is not contractive");
    }
    return out;
}

}  // namespace twsat
