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

#include "twsat/text_format.h"

#include <sstream>
#include <vector>

#include "twsat/errors.h"

namespace twsat {

namespace {

std::vector<std::string> content_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        size_t stop = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(start, stop - start + 1));
    }
    return lines;
}

std::vector<std::string> tokens(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

int to_int(const std::string &tok, const char *what) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) {
        throw ValidationError(std::string("expected an integer for ") + what + ", got '" + tok + "'");
    }
    return v;
}

void expect_header(const std::vector<std::string> &head, const char *magic, size_t fields) {
    if (head.size() != fields || head[0] != magic) {
        throw ValidationError(std::string("expected header '") + magic + " v1 ...'");
    }
    if (head[1] != "v1") {
        throw ValidationError(std::string("unsupported ") + magic + " version '" + head[1] + "'");
    }
}

void append_indices(std::ostringstream &out, const IndexSet &s) {
    for (int i : s) {
        out << ' ' << i;
    }
}

}  // namespace

std::string sniff_format(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) {
        return "";
    }
    if (lines[0][0] == '{') {
        return "{";
    }
    auto t = tokens(lines[0]);
    return t.empty() ? "" : t[0];
}

std::string format_graph(const Multigraph &g) {
    std::ostringstream out;
    out << "d-graph v1 " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto &e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.label << '\n';
    }
    return out.str();
}

Multigraph parse_graph(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) {
        throw ValidationError("graph file is empty");
    }
    auto head = tokens(lines[0]);
    expect_header(head, "d-graph", 4);
    int n = to_int(head[2], "vertex count");
    int m = to_int(head[3], "edge count");
    if ((int)lines.size() - 1 != m) {
        throw ValidationError("graph file declares " + std::to_string(m) + " edges but lists " +
                              std::to_string(lines.size() - 1));
    }
    Multigraph g(n);
    for (int i = 1; i <= m; i++) {
        auto t = tokens(lines[i]);
        if (t.size() != 3) {
            throw ValidationError("graph edge line " + std::to_string(i) + " needs 'u v label'");
        }
        g.add_edge(to_int(t[0], "endpoint"), to_int(t[1], "endpoint"), to_int(t[2], "label"));
    }
    return g;
}

std::string format_network(const AbstractNetwork &net) {
    std::ostringstream out;
    out << "d-network v1 " << net.size() << '\n';
    for (const auto &s : net.sets) {
        out << s.size();
        append_indices(out, s);
        out << '\n';
    }
    return out.str();
}

AbstractNetwork parse_network(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) {
        throw ValidationError("network file is empty");
    }
    auto head = tokens(lines[0]);
    expect_header(head, "d-network", 3);
    int m = to_int(head[2], "set count");
    if ((int)lines.size() - 1 != m) {
        throw ValidationError("network file declares " + std::to_string(m) + " sets but lists " +
                              std::to_string(lines.size() - 1));
    }
    AbstractNetwork net;
    for (int i = 1; i <= m; i++) {
        auto t = tokens(lines[i]);
        int k = to_int(t.at(0), "set size");
        if ((int)t.size() != k + 1) {
            throw ValidationError("network line " + std::to_string(i) + " size does not match its indices");
        }
        std::vector<int> values;
        for (int j = 1; j <= k; j++) {
            values.push_back(to_int(t[j], "index"));
        }
        net.sets.emplace_back(std::move(values));
    }
    return net;
}

std::string format_contraction_tree(const ContractionTree &tree) {
    std::ostringstream out;
    out << "d-ctree v1 " << tree.nodes.size() << ' ' << tree.root << '\n';
    for (size_t u = 0; u < tree.nodes.size(); u++) {
        const auto &node = tree.nodes[u];
        out << u;
        if (node.is_leaf()) {
            out << " leaf " << node.position;
        } else {
            out << " node " << node.left << ' ' << node.right;
        }
        out << " :";
        append_indices(out, node.label);
        out << '\n';
    }
    return out.str();
}

ContractionTree parse_contraction_tree(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) {
        throw ValidationError("contraction tree file is empty");
    }
    auto head = tokens(lines[0]);
    expect_header(head, "d-ctree", 4);
    int count = to_int(head[2], "node count");
    ContractionTree tree;
    tree.root = to_int(head[3], "root");
    if ((int)lines.size() - 1 != count) {
        throw ValidationError("contraction tree declares " + std::to_string(count) + " nodes but lists " +
                              std::to_string(lines.size() - 1));
    }
    tree.nodes.resize(count);
    for (int u = 0; u < count; u++) {
        auto t = tokens(lines[u + 1]);
        if (t.size() < 4 || to_int(t[0], "node id") != u) {
            throw ValidationError("contraction tree line for node " + std::to_string(u) + " is malformed");
        }
        auto &node = tree.nodes[u];
        size_t colon;
        if (t[1] == "leaf") {
            node.position = to_int(t[2], "position");
            colon = 3;
        } else if (t[1] == "node") {
            node.left = to_int(t[2], "left child");
            node.right = to_int(t[3], "right child");
            colon = 4;
        } else {
            throw ValidationError("contraction tree node kind must be 'leaf' or 'node'");
        }
        if (colon >= t.size() || t[colon] != ":") {
            throw ValidationError("contraction tree line for node " + std::to_string(u) + " lacks ':'");
        }
        std::vector<int> values;
        for (size_t j = colon + 1; j < t.size(); j++) {
            values.push_back(to_int(t[j], "index"));
        }
        node.label = IndexSet(std::move(values));
    }
    for (int u = 0; u < count; u++) {
        const auto &node = tree.nodes[u];
        if (!node.is_leaf()) {
            for (int c : {node.left, node.right}) {
                if (c < 0 || c >= count) {
                    throw ValidationError("contraction tree child id out of range");
                }
                tree.nodes[c].parent = u;
            }
        }
    }
    return tree;
}

std::string format_carving(const RootedCarving &carving) {
    const auto &t = carving.tree();
    std::ostringstream out;
    out << "d-carving v1 " << t.nodes.size() << ' ' << t.root << '\n';
    out << "# width " << carving.width() << " height " << carving.height() << " contractive "
        << (carving.contractive() ? 1 : 0) << '\n';
    for (size_t u = 0; u < t.nodes.size(); u++) {
        const auto &node = t.nodes[u];
        out << u;
        if (node.is_leaf()) {
            out << " leaf " << node.vertex;
        } else {
            out << " node " << node.left << ' ' << node.right;
        }
        out << " cut " << carving.cut_sizes()[u] << '\n';
    }
    return out.str();
}

std::string format_tree_decomposition(const TreeDecomposition &td) {
    std::ostringstream out;
    out << "d-treedec v1 " << td.bags.size() << ' ' << td.root << " width " << td.width << '\n';
    for (size_t u = 0; u < td.bags.size(); u++) {
        out << "bag " << u << " :";
        for (int v : td.bags[u]) {
            out << ' ' << v;
        }
        out << '\n';
    }
    for (auto [a, b] : td.arcs) {
        out << "arc " << a << ' ' << b << '\n';
    }
    return out.str();
}

}  // namespace twsat
