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

#include "twsat/circuit.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"
#include "twsat/errors.h"

namespace twsat {

namespace {

constexpr double kTraceTolerance = 1e-9;

bool same_matrix(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Eigen::Index i = 0; i < a.size(); i++) {
        if (a.data()[i] != b.data()[i]) {
            return false;
        }
    }
    return true;
}

int int_pow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

/// Exponent k with d^k == n, or -1.
int log_exact(int d, Eigen::Index n) {
    int k = 0;
    Eigen::Index p = 1;
    while (p < n) {
        p *= d;
        k++;
    }
    return p == n ? k : -1;
}

const char *kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::input:
            return "input";
        case VertexKind::gate:
            return "gate";
        case VertexKind::output:
            return "output";
    }
    return "?";
}

int out_ports(const QuantumCircuit &c, const CircuitVertex &v) {
    switch (v.kind) {
        case VertexKind::input:
            return 1;
        case VertexKind::output:
            return 0;
        case VertexKind::gate: {
            auto it = c.gates.find(v.gate);
            return it == c.gates.end() ? -1 : it->second.outputs;
        }
    }
    return 0;
}

int in_ports(const QuantumCircuit &c, const CircuitVertex &v) {
    switch (v.kind) {
        case VertexKind::input:
            return 0;
        case VertexKind::output:
            return 1;
        case VertexKind::gate: {
            auto it = c.gates.find(v.gate);
            return it == c.gates.end() ? -1 : it->second.inputs;
        }
    }
    return 0;
}

double max_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double min_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void check_measurement(const Matrix &m, int d, std::vector<std::string> &issues, const std::string &where) {
    if (m.rows() != d || m.cols() != d) {
        issues.push_back(where + ": measurement must be " + std::to_string(d) + "x" + std::to_string(d));
        return;
    }
    if (!m.allFinite()) {
        issues.push_back(where + ": measurement has non-finite entries");
        return;
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTraceTolerance) {
        issues.push_back(where + ": measurement is not Hermitian");
        return;
    }
    Matrix h = (m + m.adjoint()) / 2.0;
    if (min_eigenvalue(h) < -kTraceTolerance) {
        issues.push_back(where + ": measurement is not positive semidefinite");
    }
    if (max_eigenvalue(h) > 1 + kTraceTolerance) {
        issues.push_back(where + ": measurement exceeds the identity");
    }
}

}  // namespace

bool Gate::operator==(const Gate &other) const {
    if (name != other.name || inputs != other.inputs || outputs != other.outputs ||
        kraus.size() != other.kraus.size()) {
        return false;
    }
    for (size_t i = 0; i < kraus.size(); i++) {
        if (!same_matrix(kraus[i], other.kraus[i])) {
            return false;
        }
    }
    return true;
}

bool CircuitVertex::operator==(const CircuitVertex &other) const {
    return kind == other.kind && init == other.init && gate == other.gate &&
           same_matrix(measurement, other.measurement);
}

Gate make_gate(std::string name, int d, std::vector<Matrix> kraus) {
    if (kraus.empty()) {
        throw ValidationError("gate '" + name + "' has no Kraus operators");
    }
    Gate g;
    g.name = std::move(name);
    g.outputs = log_exact(d, kraus[0].rows());
    g.inputs = log_exact(d, kraus[0].cols());
    if (g.inputs < 1 || g.outputs < 1) {
        throw ValidationError("gate '" + g.name + "' Kraus shape is not d^r x d^q with q, r >= 1");
    }
    for (const auto &k : kraus) {
        if (k.rows() != kraus[0].rows() || k.cols() != kraus[0].cols()) {
            throw ValidationError("gate '" + g.name + "' Kraus operators differ in shape");
        }
    }
    g.kraus = std::move(kraus);
    return g;
}

int QuantumCircuit::num_uninitialized() const {
    return (int)uninitialized_inputs().size();
}

std::vector<int> QuantumCircuit::uninitialized_inputs() const {
    std::vector<int> out;
    for (int v = 0; v < (int)vertices.size(); v++) {
        if (vertices[v].kind == VertexKind::input && vertices[v].init == kUninitialized) {
            out.push_back(v);
        }
    }
    return out;
}

std::string CircuitReport::message() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    for (size_t i = 0; i < issues.size(); i++) {
        out << (i ? "\n" : "") << issues[i];
    }
    return out.str();
}

CircuitReport validate_circuit(const QuantumCircuit &c) {
    CircuitReport r;
    auto &issues = r.issues;
    if (c.d < 2) {
        issues.push_back("dimension d must be at least 2");
        return r;
    }
    for (const auto &[name, g] : c.gates) {
        std::string where = "gate '" + name + "'";
        if (g.name != name) {
            issues.push_back(where + ": name does not match its key");
        }
        if (g.kraus.empty()) {
            issues.push_back(where + ": no Kraus operators");
            continue;
        }
        if (g.inputs < 1 || g.outputs < 1) {
            issues.push_back(where + ": arity must be at least one input and one output");
            continue;
        }
        Eigen::Index rows = int_pow(c.d, g.outputs);
        Eigen::Index cols = int_pow(c.d, g.inputs);
        bool shapes = true;
        for (const auto &k : g.kraus) {
            if (k.rows() != rows || k.cols() != cols || !k.allFinite()) {
                shapes = false;
            }
        }
        if (!shapes) {
            issues.push_back(where + ": Kraus operators must be finite " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " matrices");
            continue;
        }
        Matrix sum = Matrix::Zero(cols, cols);
        for (const auto &k : g.kraus) {
            sum += k.adjoint() * k;
        }
        double top = max_eigenvalue((sum + sum.adjoint()) / 2.0);
        if (top > 1 + kTraceTolerance) {
            std::ostringstream msg;
            msg << where << ": trace condition violated, sum of K^dagger K has eigenvalue " << top;
            issues.push_back(msg.str());
        }
    }
    int n = (int)c.vertices.size();
    if (n == 0) {
        issues.push_back("circuit has no vertices");
        return r;
    }
    for (int v = 0; v < n; v++) {
        const auto &vx = c.vertices[v];
        std::string where = "vertex " + std::to_string(v);
        if (vx.kind == VertexKind::input) {
            if (vx.init != kUninitialized && (vx.init < 0 || vx.init >= c.d)) {
                issues.push_back(where + ": input initialization must be in 0..d-1 or '*'");
            }
        } else if (vx.kind == VertexKind::gate) {
            if (!c.gates.contains(vx.gate)) {
                issues.push_back(where + ": unknown gate '" + vx.gate + "'");
            }
        } else {
            check_measurement(vx.measurement, c.d, issues, where);
        }
    }

    std::set<int> labels;
    std::set<Port> used_out;
    std::set<Port> used_in;
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    bool edges_ok = true;
    for (const auto &e : c.edges) {
        std::string where = "edge " + std::to_string(e.label);
        if (e.label <= 0) {
            issues.push_back(where + ": label must be a positive integer");
        }
        if (!labels.insert(e.label).second) {
            issues.push_back(where + ": label used twice, edge numbering must be injective");
        }
        if (e.from.vertex < 0 || e.from.vertex >= n || e.to.vertex < 0 || e.to.vertex >= n) {
            issues.push_back(where + ": endpoint names an unknown vertex");
            edges_ok = false;
            continue;
        }
        int fo = out_ports(c, c.vertices[e.from.vertex]);
        int ti = in_ports(c, c.vertices[e.to.vertex]);
        if (e.from.port < 0 || e.from.port >= fo) {
            issues.push_back(where + ": vertex " + std::to_string(e.from.vertex) + " (" +
                             kind_name(c.vertices[e.from.vertex].kind) + ") has no output port " +
                             std::to_string(e.from.port));
            edges_ok = false;
        } else if (!used_out.insert(e.from).second) {
            issues.push_back(where + ": output port " + std::to_string(e.from.port) + " of vertex " +
                             std::to_string(e.from.vertex) + " is used twice");
        }
        if (e.to.port < 0 || e.to.port >= ti) {
            issues.push_back(where + ": vertex " + std::to_string(e.to.vertex) + " (" +
                             kind_name(c.vertices[e.to.vertex].kind) + ") has no input port " +
                             std::to_string(e.to.port));
            edges_ok = false;
        } else if (!used_in.insert(e.to).second) {
            issues.push_back(where + ": input port " + std::to_string(e.to.port) + " of vertex " +
                             std::to_string(e.to.vertex) + " is used twice");
        }
        succ[e.from.vertex].push_back(e.to.vertex);
        indeg[e.to.vertex]++;
    }
    for (int v = 0; v < n; v++) {
        int fo = out_ports(c, c.vertices[v]);
        int ti = in_ports(c, c.vertices[v]);
        for (int p = 0; p < fo; p++) {
            if (!used_out.contains(Port{v, p})) {
                issues.push_back("vertex " + std::to_string(v) + ": output port " + std::to_string(p) +
                                 " is not connected");
            }
        }
        for (int p = 0; p < ti; p++) {
            if (!used_in.contains(Port{v, p})) {
                issues.push_back("vertex " + std::to_string(v) + ": input port " + std::to_string(p) +
                                 " is not connected");
            }
        }
    }
    if (!edges_ok) {
        return r;
    }
    // Acyclicity.
    std::vector<int> deg = indeg;
    std::vector<int> queue;
    for (int v = 0; v < n; v++) {
        if (deg[v] == 0) {
            queue.push_back(v);
        }
    }
    for (size_t i = 0; i < queue.size(); i++) {
        for (int w : succ[queue[i]]) {
            if (--deg[w] == 0) {
                queue.push_back(w);
            }
        }
    }
    if ((int)queue.size() != n) {
        for (int v = 0; v < n; v++) {
            if (deg[v] > 0) {
                issues.push_back("vertex " + std::to_string(v) + ": lies on a directed cycle");
                break;
            }
        }
    }
    // Connectivity of the underlying undirected graph.
    std::vector<std::vector<int>> adj(n);
    for (const auto &e : c.edges) {
        adj[e.from.vertex].push_back(e.to.vertex);
        adj[e.to.vertex].push_back(e.from.vertex);
    }
    std::vector<int> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int count = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                count++;
                st.push_back(w);
            }
        }
    }
    if (count != n) {
        for (int v = 0; v < n; v++) {
            if (!seen[v]) {
                issues.push_back("vertex " + std::to_string(v) + ": not connected to vertex 0, circuit is disconnected");
                break;
            }
        }
    }
    return r;
}

void require_valid(const QuantumCircuit &c) {
    auto r = validate_circuit(c);
    if (!r.ok()) {
        throw ValidationError("invalid circuit: " + r.message());
    }
}

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double json_number(const Json &j, const std::string &where) {
    if (!j.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    return j.get<double>();
}

Matrix matrix_from_json(const Json &j, const std::string &where) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ValidationError(where + ": expected a non-empty matrix of [re, im] pairs");
    }
    Eigen::Index rows = (Eigen::Index)j.size();
    Eigen::Index cols = (Eigen::Index)j[0].size();
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        if (!j[i].is_array() || (Eigen::Index)j[i].size() != cols) {
            throw ValidationError(where + ": matrix rows differ in length");
        }
        for (Eigen::Index k = 0; k < cols; k++) {
            const auto &z = j[i][k];
            if (!z.is_array() || z.size() != 2) {
                throw ValidationError(where + ": complex entries must be [re, im] pairs");
            }
            m(i, k) = Complex(json_number(z[0], where), json_number(z[1], where));
        }
    }
    return m;
}

int json_int(const Json &j, const std::string &where) {
    if (!j.is_number_integer()) {
        throw ValidationError(where + ": expected an integer");
    }
    return j.get<int>();
}

Port port_from_json(const Json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError(where + ": endpoint must be [vertex, port]");
    }
    return Port{json_int(j[0], where), json_int(j[1], where)};
}

}  // namespace

std::string format_circuit(const QuantumCircuit &c) {
    Json root;
    root["format"] = "twsat-circuit";
    root["version"] = 1;
    root["d"] = c.d;
    Json gates = Json::object();
    for (const auto &[name, g] : c.gates) {
        Json kraus = Json::array();
        for (const auto &k : g.kraus) {
            kraus.push_back(matrix_to_json(k));
        }
        gates[name] = Json{{"kraus", std::move(kraus)}};
    }
    root["gates"] = std::move(gates);
    Json vertices = Json::array();
    for (size_t v = 0; v < c.vertices.size(); v++) {
        const auto &vx = c.vertices[v];
        Json j;
        j["id"] = v;
        j["kind"] = kind_name(vx.kind);
        if (vx.kind == VertexKind::input) {
            if (vx.init == kUninitialized) {
                j["init"] = "*";
            } else {
                j["init"] = vx.init;
            }
        } else if (vx.kind == VertexKind::gate) {
            j["gate"] = vx.gate;
        } else {
            j["measure"] = matrix_to_json(vx.measurement);
        }
        vertices.push_back(std::move(j));
    }
    root["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const auto &e : c.edges) {
        edges.push_back(Json{{"label", e.label},
                             {"from", Json::array({e.from.vertex, e.from.port})},
                             {"to", Json::array({e.to.vertex, e.to.port})}});
    }
    root["edges"] = std::move(edges);
    return root.dump(1) + "\n";
}

QuantumCircuit parse_circuit(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("circuit file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ValidationError("circuit file must hold a JSON object");
    }
    if (root.contains("format") && root["format"] != "twsat-circuit") {
        throw ValidationError("circuit file format tag must be 'twsat-circuit'");
    }
    if (root.contains("version") && root["version"] != 1) {
        throw ValidationError("unsupported circuit file version");
    }
    for (const char *key : {"d", "gates", "vertices", "edges"}) {
        if (!root.contains(key)) {
            throw ValidationError(std::string("circuit file lacks field '") + key + "'");
        }
    }
    QuantumCircuit c;
    c.d = json_int(root["d"], "d");
    if (c.d < 2 || c.d > 16) {
        throw ValidationError("circuit dimension d must be in 2..16");
    }
    if (!root["gates"].is_object()) {
        throw ValidationError("'gates' must map names to gate objects");
    }
    for (const auto &[name, j] : root["gates"].items()) {
        std::string where = "gate '" + name + "'";
        if (!j.is_object() || !j.contains("kraus") || !j["kraus"].is_array()) {
            throw ValidationError(where + ": expected {\"kraus\": [...]}");
        }
        std::vector<Matrix> kraus;
        for (const auto &k : j["kraus"]) {
            kraus.push_back(matrix_from_json(k, where));
        }
        c.gates.emplace(name, make_gate(name, c.d, std::move(kraus)));
    }
    if (!root["vertices"].is_array()) {
        throw ValidationError("'vertices' must be an array");
    }
    int expected = 0;
    for (const auto &j : root["vertices"]) {
        std::string where = "vertex " + std::to_string(expected);
        if (!j.is_object() || !j.contains("id") || !j.contains("kind")) {
            throw ValidationError(where + ": needs 'id' and 'kind'");
        }
        if (json_int(j["id"], where) != expected) {
            throw ValidationError(where + ": vertex ids must be 0, 1, 2, ... in order");
        }
        CircuitVertex v;
        std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
        if (kind == "input") {
            v.kind = VertexKind::input;
            if (!j.contains("init")) {
                throw ValidationError(where + ": input needs 'init'");
            }
            if (j["init"].is_string()) {
                if (j["init"] != "*") {
                    throw ValidationError(where + ": 'init' must be a basis index or \"*\"");
                }
                v.init = kUninitialized;
            } else {
                v.init = json_int(j["init"], where);
                if (v.init < 0) {
                    throw ValidationError(where + ": 'init' must be a basis index or \"*\"");
                }
            }
        } else if (kind == "gate") {
            v.kind = VertexKind::gate;
            if (!j.contains("gate") || !j["gate"].is_string()) {
                throw ValidationError(where + ": gate vertex needs a 'gate' name");
            }
            v.gate = j["gate"].get<std::string>();
        } else if (kind == "output") {
            v.kind = VertexKind::output;
            if (!j.contains("measure")) {
                throw ValidationError(where + ": output needs 'measure'");
            }
            v.measurement = matrix_from_json(j["measure"], where);
        } else {
            throw ValidationError(where + ": kind must be input, gate or output");
        }
        c.vertices.push_back(std::move(v));
        expected++;
    }
    if (!root["edges"].is_array()) {
        throw ValidationError("'edges' must be an array");
    }
    for (const auto &j : root["edges"]) {
        if (!j.is_object() || !j.contains("label") || !j.contains("from") || !j.contains("to")) {
            throw ValidationError("edge entries need 'label', 'from' and 'to'");
        }
        CircuitEdge e;
        e.label = json_int(j["label"], "edge label");
        std::string where = "edge " + std::to_string(e.label);
        e.from = port_from_json(j["from"], where);
        e.to = port_from_json(j["to"], where);
        c.edges.push_back(e);
    }
    return c;
}

QuantumCircuit initialize(const QuantumCircuit &c, std::string_view y) {
    auto free = c.uninitialized_inputs();
    if (y.size() != free.size()) {
        throw ValidationError("assignment has " + std::to_string(y.size()) + " digits but the circuit has " +
                              std::to_string(free.size()) + " uninitialized inputs");
    }
    QuantumCircuit out = c;
    for (size_t i = 0; i < free.size(); i++) {
        int digit = y[i] >= '0' && y[i] <= '9' ? y[i] - '0' : (y[i] >= 'a' && y[i] <= 'f' ? 10 + y[i] - 'a' : -1);
        if (digit < 0 || digit >= c.d) {
            throw ValidationError(std::string("assignment digit '") + y[i] + "' is outside 0..d-1");
        }
        out.vertices[free[i]].init = digit;
    }
    return out;
}

Tensor density_tensor(const Matrix &rho, int index, int d) {
    if (rho.rows() != d || rho.cols() != d) {
        throw ValidationError("density matrix must be d x d");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTraceTolerance ||
        min_eigenvalue((rho + rho.adjoint()) / 2.0) < -kTraceTolerance) {
        throw ValidationError("density matrix is not positive semidefinite");
    }
    if (std::abs(rho.trace() - Complex(1, 0)) > kTraceTolerance) {
        throw ValidationError("density matrix does not have trace 1");
    }
    Tensor t(d, IndexSet{index});
    for (int b1 = 0; b1 < d; b1++) {
        for (int b2 = 0; b2 < d; b2++) {
            t[sigma_code(d, b1, b2)] = rho(b1, b2);
        }
    }
    return t;
}

Tensor measurement_tensor(const Matrix &m, int index, int d) {
    if (m.rows() != d || m.cols() != d) {
        throw ValidationError("measurement matrix must be d x d");
    }
    Tensor t(d, IndexSet{index});
    for (int b1 = 0; b1 < d; b1++) {
        for (int b2 = 0; b2 < d; b2++) {
            t[sigma_code(d, b1, b2)] = m(b2, b1);
        }
    }
    return t;
}

Tensor gate_tensor(const Gate &g, int d, const std::vector<int> &in_indices, const std::vector<int> &out_indices) {
    if ((int)in_indices.size() != g.inputs || (int)out_indices.size() != g.outputs) {
        throw ValidationError("gate '" + g.name + "' arity mismatch: expects " + std::to_string(g.inputs) + " in, " +
                              std::to_string(g.outputs) + " out");
    }
    std::vector<int> all = in_indices;
    all.insert(all.end(), out_indices.begin(), out_indices.end());
    IndexSet idx(all);
    const int k = (int)idx.size();
    // For each sorted position: port number, and whether it is an input.
    std::vector<int> port(k);
    std::vector<char> is_in(k);
    for (int p = 0; p < g.inputs; p++) {
        int pos = idx.position(in_indices[p]);
        port[pos] = p;
        is_in[pos] = 1;
    }
    for (int p = 0; p < g.outputs; p++) {
        int pos = idx.position(out_indices[p]);
        port[pos] = p;
        is_in[pos] = 0;
    }
    std::vector<int> in_weight(g.inputs);
    std::vector<int> out_weight(g.outputs);
    for (int p = g.inputs - 1, w = 1; p >= 0; p--, w *= d) {
        in_weight[p] = w;
    }
    for (int p = g.outputs - 1, w = 1; p >= 0; p--, w *= d) {
        out_weight[p] = w;
    }
    Tensor t(d, idx);
    const size_t per = (size_t)d * d;
    for (size_t flat = 0; flat < t.size(); flat++) {
        size_t rem = flat;
        int b1 = 0, b2 = 0, c1 = 0, c2 = 0;
        for (int j = k - 1; j >= 0; j--) {
            int sigma = (int)(rem % per);
            rem /= per;
            int hi = sigma / d;
            int lo = sigma % d;
            if (is_in[j]) {
                b1 += hi * in_weight[port[j]];
                b2 += lo * in_weight[port[j]];
            } else {
                c1 += hi * out_weight[port[j]];
                c2 += lo * out_weight[port[j]];
            }
        }
        Complex acc{0, 0};
        for (const auto &kr : g.kraus) {
            acc += kr(c1, b1) * std::conj(kr(c2, b2));
        }
        t[flat] = acc;
    }
    return t;
}

namespace {

/// Per vertex: labels on its input ports and output ports, by port number.
struct Wiring {
    std::vector<std::vector<int>> in_labels;
    std::vector<std::vector<int>> out_labels;
};

Wiring wiring_of(const QuantumCircuit &c) {
    Wiring w;
    int n = (int)c.vertices.size();
    w.in_labels.resize(n);
    w.out_labels.resize(n);
    for (int v = 0; v < n; v++) {
        w.in_labels[v].assign(std::max(0, in_ports(c, c.vertices[v])), 0);
        w.out_labels[v].assign(std::max(0, out_ports(c, c.vertices[v])), 0);
    }
    for (const auto &e : c.edges) {
        w.out_labels[e.from.vertex][e.from.port] = e.label;
        w.in_labels[e.to.vertex][e.to.port] = e.label;
    }
    return w;
}

}  // namespace

AbstractNetwork circuit_network(const QuantumCircuit &c) {
    require_valid(c);
    auto w = wiring_of(c);
    AbstractNetwork net;
    for (size_t v = 0; v < c.vertices.size(); v++) {
        std::vector<int> labels = w.in_labels[v];
        labels.insert(labels.end(), w.out_labels[v].begin(), w.out_labels[v].end());
        net.sets.emplace_back(std::move(labels));
    }
    return net;
}

namespace {

Tensor vertex_tensor(const QuantumCircuit &c, const Wiring &w, int v) {
    const auto &vx = c.vertices[v];
    switch (vx.kind) {
        case VertexKind::input:
            return density_tensor(basis_projector(c.d, vx.init), w.out_labels[v][0], c.d);
        case VertexKind::output:
            return measurement_tensor(vx.measurement, w.in_labels[v][0], c.d);
        case VertexKind::gate:
            return gate_tensor(c.gates.at(vx.gate), c.d, w.in_labels[v], w.out_labels[v]);
    }
    throw InternalError("unknown vertex kind");
}

}  // namespace

TensorNetwork to_tensor_network(const QuantumCircuit &c) {
    TensorNetwork out;
    out.net = circuit_network(c);
    if (c.num_uninitialized() > 0) {
        throw ValidationError("circuit has uninitialized inputs; use the feasibility network instead");
    }
    auto w = wiring_of(c);
    for (int v = 0; v < (int)c.vertices.size(); v++) {
        out.tensors.push_back(vertex_tensor(c, w, v));
    }
    return out;
}

FeasibilityNetwork to_feasibility_network(const QuantumCircuit &c) {
    FeasibilityNetwork out;
    out.net = circuit_network(c);
    out.d = c.d;
    auto w = wiring_of(c);
    for (int v = 0; v < (int)c.vertices.size(); v++) {
        const auto &vx = c.vertices[v];
        if (vx.kind == VertexKind::input && vx.init == kUninitialized) {
            std::vector<Tensor> options;
            for (int k = 0; k < c.d; k++) {
                options.push_back(density_tensor(basis_projector(c.d, k), w.out_labels[v][0], c.d));
            }
            out.candidates.push_back(std::move(options));
            out.input_positions.push_back(v);
        } else {
            out.candidates.push_back({vertex_tensor(c, w, v)});
        }
    }
    return out;
}

std::string decode_assignment(const FeasibilityNetwork &f, const std::vector<int> &choice) {
    if (choice.size() != f.candidates.size()) {
        throw ValidationError("decode_assignment: one choice per position required");
    }
    std::string y;
    for (int p : f.input_positions) {
        int k = choice[p];
        if (k < 0 || k >= f.d) {
            throw InternalError("decode_assignment: choice outside the candidate list");
        }
        y.push_back(k < 10 ? (char)('0' + k) : (char)('a' + k - 10));
    }
    return y;
}

OrderingWidth cutwidth_of_ordering(const QuantumCircuit &c, const std::vector<int> &ordering) {
    int n = (int)c.vertices.size();
    std::vector<int> pos(n, -1);
    if ((int)ordering.size() != n) {
        throw ValidationError("ordering must list every vertex exactly once");
    }
    for (int i = 0; i < n; i++) {
        int v = ordering[i];
        if (v < 0 || v >= n || pos[v] >= 0) {
            throw ValidationError("ordering is not a permutation of the vertices");
        }
        pos[v] = i;
    }
    OrderingWidth out;
    std::vector<std::vector<int>> other(n);
    for (const auto &e : c.edges) {
        other[e.from.vertex].push_back(e.to.vertex);
        other[e.to.vertex].push_back(e.from.vertex);
        if (pos[e.from.vertex] > pos[e.to.vertex]) {
            out.topological = false;
        }
    }
    int cut = 0;
    for (int i = 0; i < n; i++) {
        int v = ordering[i];
        for (int w : other[v]) {
            cut += pos[w] < i ? -1 : 1;
        }
        out.width = std::max(out.width, cut);
    }
    return out;
}

std::vector<int> lazy_topological_order(const QuantumCircuit &c) {
    require_valid(c);
    int n = (int)c.vertices.size();
    std::vector<std::vector<CircuitEdge>> in_edges(n);
    std::vector<std::vector<CircuitEdge>> out_edges(n);
    for (const auto &e : c.edges) {
        in_edges[e.to.vertex].push_back(e);
        out_edges[e.from.vertex].push_back(e);
    }
    for (int v = 0; v < n; v++) {
        std::sort(in_edges[v].begin(), in_edges[v].end(),
                  [](const CircuitEdge &a, const CircuitEdge &b) { return a.to.port < b.to.port; });
        std::sort(out_edges[v].begin(), out_edges[v].end(),
                  [](const CircuitEdge &a, const CircuitEdge &b) { return a.from.port < b.from.port; });
    }
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    auto place = [&](int v) {
        if (!placed[v]) {
            placed[v] = 1;
            order.push_back(v);
        }
    };
    // Gate readiness counts only gate predecessors; inputs are placed on demand.
    std::vector<int> waiting(n, 0);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; v++) {
        if (c.vertices[v].kind != VertexKind::gate) {
            continue;
        }
        for (const auto &e : in_edges[v]) {
            waiting[v] += c.vertices[e.from.vertex].kind == VertexKind::gate;
        }
        if (waiting[v] == 0) {
            ready.push(v);
        }
    }
    while (!ready.empty()) {
        int g = ready.top();
        ready.pop();
        for (const auto &e : in_edges[g]) {
            place(e.from.vertex);
        }
        place(g);
        for (const auto &e : out_edges[g]) {
            int w = e.to.vertex;
            if (c.vertices[w].kind == VertexKind::output) {
                place(w);
            } else if (--waiting[w] == 0) {
                ready.push(w);
            }
        }
    }
    for (int v = 0; v < n; v++) {
        if (c.vertices[v].kind == VertexKind::input && !placed[v]) {
            place(v);
            for (const auto &e : out_edges[v]) {
                place(e.to.vertex);
            }
        }
    }
    if ((int)order.size() != n) {
        throw InternalError("lazy_topological_order: not every vertex was placed");
    }
    return order;
}

CircuitBuilder::CircuitBuilder(int d) {
    if (d < 2) {
        throw ValidationError("circuit dimension must be at least 2");
    }
    c_.d = d;
}

void CircuitBuilder::define_gate(Gate g) {
    std::string name = g.name;
    c_.gates[name] = std::move(g);
}

bool CircuitBuilder::has_gate(const std::string &name) const {
    return c_.gates.contains(name);
}

int CircuitBuilder::add_vertex(CircuitVertex v) {
    c_.vertices.push_back(std::move(v));
    return (int)c_.vertices.size() - 1;
}

void CircuitBuilder::consume(int wire, Port to) {
    if (wire < 0 || wire >= (int)pending_.size() || !open_[wire]) {
        throw InternalError("CircuitBuilder: wire handle is closed or unknown");
    }
    open_[wire] = 0;
    c_.edges.push_back(CircuitEdge{next_label_++, pending_[wire], to});
}

int CircuitBuilder::input(int init) {
    CircuitVertex v;
    v.kind = VertexKind::input;
    v.init = init;
    int id = add_vertex(std::move(v));
    pending_.push_back(Port{id, 0});
    open_.push_back(1);
    return (int)pending_.size() - 1;
}

std::vector<int> CircuitBuilder::apply(const std::string &gate, const std::vector<int> &wires) {
    auto it = c_.gates.find(gate);
    if (it == c_.gates.end()) {
        throw InternalError("CircuitBuilder: gate '" + gate + "' is not defined");
    }
    if ((int)wires.size() != it->second.inputs) {
        throw InternalError("CircuitBuilder: gate '" + gate + "' applied to the wrong number of wires");
    }
    CircuitVertex v;
    v.kind = VertexKind::gate;
    v.gate = gate;
    int id = add_vertex(std::move(v));
    for (size_t p = 0; p < wires.size(); p++) {
        consume(wires[p], Port{id, (int)p});
    }
    std::vector<int> out;
    for (int p = 0; p < it->second.outputs; p++) {
        pending_.push_back(Port{id, p});
        open_.push_back(1);
        out.push_back((int)pending_.size() - 1);
    }
    return out;
}

void CircuitBuilder::output(int wire, const Matrix &measurement) {
    CircuitVertex v;
    v.kind = VertexKind::output;
    v.measurement = measurement;
    int id = add_vertex(std::move(v));
    consume(wire, Port{id, 0});
}

QuantumCircuit CircuitBuilder::finish() {
    for (size_t w = 0; w < open_.size(); w++) {
        if (open_[w]) {
            throw InternalError("CircuitBuilder: wire " + std::to_string(w) + " was never consumed");
        }
    }
    return std::move(c_);
}

Matrix basis_projector(int d, int k) {
    Matrix m = Matrix::Zero(d, d);
    m(k, k) = 1;
    return m;
}

Matrix identity_matrix(int n) {
    return Matrix::Identity(n, n);
}

std::vector<Matrix> classical_kraus(int d, int in_wires, int out_wires, const std::vector<int> &f) {
    int nin = int_pow(d, in_wires);
    int nout = int_pow(d, out_wires);
    if ((int)f.size() != nin) {
        throw InternalError("classical_kraus: table size mismatch");
    }
    // Layer t holds the t-th preimage of every image point, so each layer is injective and the
    // layers together satisfy sum K^dagger K = I.
    std::vector<int> seen(nout, 0);
    std::vector<Matrix> layers;
    for (int x = 0; x < nin; x++) {
        int y = f[x];
        if (y < 0 || y >= nout) {
            throw InternalError("classical_kraus: image out of range");
        }
        int t = seen[y]++;
        if (t == (int)layers.size()) {
            layers.push_back(Matrix::Zero(nout, nin));
        }
        layers[t](y, x) = 1;
    }
    return layers;
}

}  // namespace twsat
