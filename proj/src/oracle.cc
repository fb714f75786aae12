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

#include "twsat/oracle.h"

#include <algorithm>
#include <cmath>
#include <queue>

#include "twsat/errors.h"

namespace twsat {

namespace {

/// Density matrix over an ordered list of live wires (edge labels); wire 0 is most significant.
struct DenseState {
    int d;
    std::vector<int> wires;
    Matrix rho = Matrix::Ones(1, 1);
};

/// State index for every (rest, local) pair. local enumerates the digits of the wires at the
/// given positions, first position most significant; rest enumerates the other wires in order.
std::vector<long> split_index(const DenseState &s, const std::vector<int> &positions, long &rest, long &local) {
    const int w = (int)s.wires.size();
    std::vector<long> weight(w, 1);
    for (int i = w - 2; i >= 0; i--) {
        weight[i] = weight[i + 1] * s.d;
    }
    std::vector<char> picked(w, 0);
    for (int p : positions) {
        picked[p] = 1;
    }
    std::vector<long> rest_weights, local_weights;
    for (int i = 0; i < w; i++) {
        if (!picked[i]) {
            rest_weights.push_back(weight[i]);
        }
    }
    for (int p : positions) {
        local_weights.push_back(weight[p]);
    }
    auto offsets = [&](const std::vector<long> &ws) {
        std::vector<long> out{0};
        for (long wgt : ws) {
            std::vector<long> next;
            for (long o : out) {
                for (int digit = 0; digit < s.d; digit++) {
                    next.push_back(o + digit * wgt);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    auto ro = offsets(rest_weights);
    auto lo = offsets(local_weights);
    rest = (long)ro.size();
    local = (long)lo.size();
    std::vector<long> map(rest * local);
    for (long a = 0; a < rest; a++) {
        for (long b = 0; b < local; b++) {
            map[a * local + b] = ro[a] + lo[b];
        }
    }
    return map;
}

std::vector<int> positions_of(const DenseState &s, const std::vector<int> &labels) {
    std::vector<int> positions;
    for (int label : labels) {
        auto it = std::find(s.wires.begin(), s.wires.end(), label);
        if (it == s.wires.end()) {
            throw InternalError("oracle: wire " + std::to_string(label) + " is not live");
        }
        positions.push_back((int)(it - s.wires.begin()));
    }
    return positions;
}

void check_cap(int d, size_t wires, const OracleOptions &options) {
    double qubits = (double)wires * std::log2((double)d);
    if (qubits > options.max_wires + 1e-9) {
        throw ResourceError("oracle needs " + std::to_string(wires) + " live wires of dimension " + std::to_string(d) +
                            ", above the cap of " + std::to_string(options.max_wires) + " qubits");
    }
}

void add_input(DenseState &s, int label, int init, const OracleOptions &options) {
    check_cap(s.d, s.wires.size() + 1, options);
    Matrix ket = Matrix::Zero(s.d, s.d);
    ket(init, init) = 1;
    const long dim = s.rho.rows();
    Matrix out = Matrix::Zero(dim * s.d, dim * s.d);
    for (long i = 0; i < dim; i++) {
        for (long j = 0; j < dim; j++) {
            out.block(i * s.d, j * s.d, s.d, s.d) = s.rho(i, j) * ket;
        }
    }
    s.rho = std::move(out);
    s.wires.push_back(label);
}

void apply_gate(DenseState &s, const Gate &g, const std::vector<int> &in_labels, const std::vector<int> &out_labels,
                const OracleOptions &options) {
    auto positions = positions_of(s, in_labels);
    check_cap(s.d, s.wires.size() - in_labels.size() + out_labels.size(), options);
    long rest = 0, dq = 0;
    auto map = split_index(s, positions, rest, dq);
    const long dr = g.kraus[0].rows();
    const long dim = s.rho.rows();
    struct Entry {
        long row, col;
        Complex value;
    };
    Matrix out = Matrix::Zero(rest * dr, rest * dr);
    Matrix half(rest * dr, dim);
    for (const auto &k : g.kraus) {
        std::vector<Entry> nz;
        for (long c = 0; c < dr; c++) {
            for (long b = 0; b < dq; b++) {
                if (k(c, b) != Complex(0, 0)) {
                    nz.push_back({c, b, k(c, b)});
                }
            }
        }
        // Row side: K on the gate digits, rows regrouped as (rest, output digits).
        half.setZero();
        for (long col = 0; col < dim; col++) {
            for (long a = 0; a < rest; a++) {
                for (const auto &e : nz) {
                    half(a * dr + e.row, col) += e.value * s.rho(map[a * dq + e.col], col);
                }
            }
        }
        // Column side: K^dagger.
        for (long a = 0; a < rest; a++) {
            for (const auto &e : nz) {
                out.col(a * dr + e.row) += std::conj(e.value) * half.col(map[a * dq + e.col]);
            }
        }
    }
    s.rho = std::move(out);
    std::vector<int> wires;
    for (int i = 0; i < (int)s.wires.size(); i++) {
        if (std::find(positions.begin(), positions.end(), i) == positions.end()) {
            wires.push_back(s.wires[i]);
        }
    }
    wires.insert(wires.end(), out_labels.begin(), out_labels.end());
    s.wires = std::move(wires);
}

void measure(DenseState &s, int label, const Matrix &m) {
    auto positions = positions_of(s, {label});
    long rest = 0, local = 0;
    auto map = split_index(s, positions, rest, local);
    Matrix out(rest, rest);
    for (long b = 0; b < rest; b++) {
        for (long a = 0; a < rest; a++) {
            Complex acc{0, 0};
            for (long x = 0; x < local; x++) {
                for (long y = 0; y < local; y++) {
                    acc += s.rho(map[a * local + x], map[b * local + y]) * m(y, x);
                }
            }
            out(a, b) = acc;
        }
    }
    s.rho = std::move(out);
    s.wires.erase(s.wires.begin() + positions[0]);
}

}  // namespace

double dm_simulate(const QuantumCircuit &circuit, std::string_view y, const OracleOptions &options) {
    QuantumCircuit c = y.empty() ? circuit : initialize(circuit, y);
    require_valid(c);
    if (c.num_uninitialized() > 0) {
        throw ValidationError("dm_simulate: circuit has uninitialized inputs and no assignment was given");
    }
    const int n = (int)c.vertices.size();
    std::vector<std::vector<CircuitEdge>> ins(n), outs(n);
    for (const auto &e : c.edges) {
        ins[e.to.vertex].push_back(e);
        outs[e.from.vertex].push_back(e);
    }
    auto by_to = [](const CircuitEdge &a, const CircuitEdge &b) { return a.to.port < b.to.port; };
    auto by_from = [](const CircuitEdge &a, const CircuitEdge &b) { return a.from.port < b.from.port; };
    for (int v = 0; v < n; v++) {
        std::sort(ins[v].begin(), ins[v].end(), by_to);
        std::sort(outs[v].begin(), outs[v].end(), by_from);
    }

    DenseState s{c.d, {}};
    std::vector<char> done(n, 0);
    auto feed = [&](int v) {
        if (c.vertices[v].kind == VertexKind::input && !done[v]) {
            done[v] = 1;
            add_input(s, outs[v][0].label, c.vertices[v].init, options);
        }
    };
    auto drain = [&](int v) {
        for (const auto &e : outs[v]) {
            int w = e.to.vertex;
            if (c.vertices[w].kind == VertexKind::output && !done[w]) {
                done[w] = 1;
                measure(s, e.label, c.vertices[w].measurement);
            }
        }
    };

    std::vector<int> blocked(n, 0);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; v++) {
        if (c.vertices[v].kind != VertexKind::gate) {
            continue;
        }
        for (const auto &e : ins[v]) {
            blocked[v] += c.vertices[e.from.vertex].kind == VertexKind::gate ? 1 : 0;
        }
        if (blocked[v] == 0) {
            ready.push(v);
        }
    }
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        std::vector<int> in_labels, out_labels;
        for (const auto &e : ins[v]) {
            feed(e.from.vertex);
            in_labels.push_back(e.label);
        }
        for (const auto &e : outs[v]) {
            out_labels.push_back(e.label);
        }
        apply_gate(s, c.gates.at(c.vertices[v].gate), in_labels, out_labels, options);
        done[v] = 1;
        drain(v);
        for (const auto &e : outs[v]) {
            int w = e.to.vertex;
            if (c.vertices[w].kind == VertexKind::gate && --blocked[w] == 0) {
                ready.push(w);
            }
        }
    }
    for (int v = 0; v < n; v++) {
        if (c.vertices[v].kind == VertexKind::input && !done[v]) {
            feed(v);
            drain(v);
        }
    }
    if (!s.wires.empty() || s.rho.rows() != 1) {
        throw InternalError("oracle: wires left live after the sweep");
    }
    return s.rho(0, 0).real();
}

std::vector<std::string> all_assignments(int d, int n) {
    std::vector<std::string> out;
    std::string y(n, '0');
    while (true) {
        out.push_back(y);
        int i = n - 1;
        while (i >= 0) {
            int digit = (y[i] <= '9' ? y[i] - '0' : y[i] - 'a' + 10) + 1;
            if (digit < d) {
                y[i] = digit < 10 ? (char)('0' + digit) : (char)('a' + digit - 10);
                break;
            }
            y[i] = '0';
            i--;
        }
        if (i < 0) {
            break;
        }
    }
    return out;
}

OracleMax brute_force_max(const QuantumCircuit &c, const OracleOptions &options) {
    require_valid(c);
    const int n = c.num_uninitialized();
    double total = std::pow((double)c.d, n);
    if (total > (double)options.max_assignments) {
        throw ResourceError("brute force over " + std::to_string(c.d) + "^" + std::to_string(n) +
                            " assignments exceeds the cap of " + std::to_string(options.max_assignments));
    }
    OracleMax best;
    best.probability = -1;
    for (const auto &y : all_assignments(c.d, n)) {
        double p = dm_simulate(c, y, options);
        best.all.push_back(p);
        if (p > best.probability + 1e-12) {
            best.probability = p;
            best.y = y;
        }
    }
    return best;
}

}  // namespace twsat
