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

#include "twsat/generators.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "twsat/errors.h"

namespace twsat {

bool CnfFormula::satisfied_by(std::string_view y) const {
    if ((int)y.size() != num_vars) {
        throw ValidationError("assignment length does not match the variable count");
    }
    for (const auto &clause : clauses) {
        bool ok = false;
        for (int lit : clause) {
            char want = lit > 0 ? '1' : '0';
            ok = ok || y[std::abs(lit) - 1] == want;
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    CnfFormula f;
    int declared = -1;
    std::vector<int> pending;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == '%') {
            continue;
        }
        if (tok == "p") {
            std::string kind;
            if (!(ls >> kind >> f.num_vars >> declared) || kind != "cnf" || f.num_vars < 1 || declared < 1) {
                throw ValidationError("DIMACS header must read 'p cnf <vars> <clauses>' with positive counts");
            }
            continue;
        }
        if (declared < 0) {
            throw ValidationError("DIMACS clause before the 'p cnf' header");
        }
        ls.clear();
        ls.str(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3) {
                    throw ValidationError("clause " + std::to_string(f.clauses.size() + 1) +
                                          " has " + std::to_string(pending.size()) + " literals, expected 3");
                }
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                if (std::abs(lit) > f.num_vars) {
                    throw ValidationError("literal " + std::to_string(lit) + " names an undeclared variable");
                }
                pending.push_back((int)lit);
            }
        }
        if (!ls.eof()) {
            throw ValidationError("DIMACS clause line holds a non-integer token");
        }
    }
    if (declared < 0) {
        throw ValidationError("DIMACS text lacks the 'p cnf' header");
    }
    if (!pending.empty()) {
        throw ValidationError("last DIMACS clause is not terminated by 0");
    }
    if ((int)f.clauses.size() != declared) {
        throw ValidationError("DIMACS header declares " + std::to_string(declared) + " clauses but " +
                              std::to_string(f.clauses.size()) + " are listed");
    }
    return f;
}

std::string format_dimacs(const CnfFormula &f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto &c : f.clauses) {
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    }
    return out.str();
}

CnfFormula random_3cnf(int num_vars, int num_clauses, uint64_t seed, bool planted) {
    if (num_vars < 1 || num_clauses < 1) {
        throw ValidationError("random 3-CNF needs at least one variable and one clause");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> var(1, num_vars);
    std::bernoulli_distribution coin(0.5);
    std::string hidden(num_vars, '0');
    for (auto &ch : hidden) {
        ch = coin(rng) ? '1' : '0';
    }
    CnfFormula f;
    f.num_vars = num_vars;
    while ((int)f.clauses.size() < num_clauses) {
        std::array<int, 3> c{};
        bool sat = false;
        for (int &lit : c) {
            int v = var(rng);
            lit = coin(rng) ? v : -v;
            sat = sat || hidden[v - 1] == (lit > 0 ? '1' : '0');
        }
        if (!planted || sat) {
            f.clauses.push_back(c);
        }
    }
    return f;
}

Structure parse_structure(std::string_view name) {
    if (name == "path") {
        return Structure::path;
    }
    if (name == "tree") {
        return Structure::tree;
    }
    if (name == "ladder") {
        return Structure::ladder;
    }
    throw ValidationError("structure must be path, tree or ladder, got '" + std::string(name) + "'");
}

const char *structure_name(Structure s) {
    switch (s) {
        case Structure::path:
            return "path";
        case Structure::tree:
            return "tree";
        case Structure::ladder:
            return "ladder";
    }
    return "?";
}

namespace {

Matrix haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            z(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; j++) {
        Complex diag = r(j, j);
        double mod = std::abs(diag);
        q.col(j) *= mod > 0 ? diag / mod : Complex(1, 0);
    }
    return q;
}

std::vector<Matrix> random_channel(int n, std::mt19937_64 &rng) {
    std::bernoulli_distribution mixture(0.2);
    if (!mixture(rng)) {
        return {haar_unitary(n, rng)};
    }
    std::uniform_real_distribution<double> weight(0.05, 0.95);
    double p = weight(rng);
    Matrix u1 = haar_unitary(n, rng);
    Matrix u2 = haar_unitary(n, rng);
    return {std::sqrt(p) * u1, std::sqrt(1 - p) * u2};
}

}  // namespace

QuantumCircuit gen_random_circuit(const RandomCircuitParams &params) {
    const int n = params.inputs;
    const int d = params.d;
    if (n < 1 || params.gates < 0 || d < 2 || d > 16) {
        throw ValidationError("random circuit needs inputs >= 1, gates >= 0 and d in 2..16");
    }
    if (params.uninitialized < 0 || params.uninitialized > n) {
        throw ValidationError("uninitialized input count must lie in 0..inputs");
    }
    if (params.gates < n - 1) {
        throw ValidationError("a connected circuit on " + std::to_string(n) + " wires needs at least " +
                              std::to_string(n - 1) + " gates");
    }
    std::mt19937_64 rng(params.seed);

    std::vector<std::pair<int, int>> pairs;
    if (params.structure == Structure::tree) {
        for (int i = 1; i < n; i++) {
            pairs.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
        }
    } else if (params.structure == Structure::ladder) {
        for (int start : {0, 1}) {
            for (int i = start; i + 1 < n; i += 2) {
                pairs.emplace_back(i, i + 1);
            }
        }
    } else {
        for (int i = 0; i + 1 < n; i++) {
            pairs.emplace_back(i, i + 1);
        }
    }

    std::vector<int> free(n);
    std::iota(free.begin(), free.end(), 0);
    std::shuffle(free.begin(), free.end(), rng);
    free.resize(params.uninitialized);
    std::uniform_int_distribution<int> basis(0, d - 1);

    CircuitBuilder b(d);
    std::vector<int> wire(n);
    for (int i = 0; i < n; i++) {
        bool open = std::find(free.begin(), free.end(), i) != free.end();
        int init = basis(rng);
        wire[i] = b.input(open ? kUninitialized : init);
    }
    std::bernoulli_distribution single(0.3);
    std::uniform_int_distribution<int> any_wire(0, n - 1);
    size_t cursor = 0;
    for (int g = 0; g < params.gates; g++) {
        std::string name = "G" + std::to_string(g);
        bool two = n > 1 && (g < n - 1 || !single(rng));
        if (two) {
            std::pair<int, int> p;
            if (g < n - 1 || params.structure != Structure::tree) {
                p = pairs[cursor % pairs.size()];
                cursor++;
            } else {
                p = pairs[std::uniform_int_distribution<size_t>(0, pairs.size() - 1)(rng)];
            }
            b.define_gate(make_gate(name, d, random_channel(d * d, rng)));
            auto out = b.apply(name, {wire[p.first], wire[p.second]});
            wire[p.first] = out[0];
            wire[p.second] = out[1];
        } else {
            int w = any_wire(rng);
            b.define_gate(make_gate(name, d, random_channel(d, rng)));
            wire[w] = b.apply(name, {wire[w]})[0];
        }
    }
    std::bernoulli_distribution keep_all(0.25);
    for (int i = 0; i < n; i++) {
        int k = basis(rng);
        b.output(wire[i], keep_all(rng) ? identity_matrix(d) : basis_projector(d, k));
    }
    return b.finish();
}

namespace {

int bits_for(int values) {
    return values <= 1 ? 0 : std::bit_width((unsigned)(values - 1));
}

void define_classical(CircuitBuilder &b, const std::string &name, int in_wires, int out_wires,
                      const std::vector<int> &table) {
    if (!b.has_gate(name)) {
        b.define_gate(make_gate(name, 2, classical_kraus(2, in_wires, out_wires, table)));
    }
}

}  // namespace

QuantumCircuit gen_3sat_verifier(const CnfFormula &f, int amplify) {
    const int n = f.num_vars;
    const int m = (int)f.clauses.size();
    if (n < 1 || m < 1) {
        throw ValidationError("verifier needs a formula with variables and clauses");
    }
    for (const auto &c : f.clauses) {
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > n) {
                throw ValidationError("formula literal " + std::to_string(lit) + " is out of range");
            }
        }
    }
    if (amplify < 0) {
        throw ValidationError("amplification count must be non-negative");
    }
    const int c = bits_for(m);
    const bool power_of_two = std::has_single_bit((unsigned)m);
    const int rounds = std::max(1, amplify);
    const Matrix keep = identity_matrix(2);
    const Matrix accept = basis_projector(2, 1);

    CircuitBuilder b(2);
    if (c > 0 && power_of_two) {
        std::vector<Matrix> kraus;
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                Matrix k = Matrix::Zero(2, 2);
                k(i, j) = std::sqrt(0.5);
                kraus.push_back(k);
            }
        }
        b.define_gate(make_gate("COIN", 2, std::move(kraus)));
    } else if (c > 0) {
        std::vector<Matrix> kraus;
        int dim = 1 << c;
        for (int r = 0; r < m; r++) {
            for (int x = 0; x < dim; x++) {
                Matrix k = Matrix::Zero(dim, dim);
                k(r, x) = 1.0 / std::sqrt((double)m);
                kraus.push_back(k);
            }
        }
        b.define_gate(make_gate("SELECT", 2, std::move(kraus)));
    }
    // (flag, r) -> (flag and r == bit, r)
    for (int bit = 0; bit < 2; bit++) {
        std::vector<int> t(4);
        for (int x = 0; x < 4; x++) {
            int flag = x >> 1, r = x & 1;
            t[x] = ((flag & (r == bit)) << 1) | r;
        }
        define_classical(b, "AND" + std::to_string(bit), 2, 2, t);
    }
    // (flag, x, sat) -> (flag, x, sat or (flag and x == s))
    for (int s = 0; s < 2; s++) {
        std::vector<int> t(8);
        for (int x = 0; x < 8; x++) {
            int flag = x >> 2, v = (x >> 1) & 1, sat = x & 1;
            t[x] = (x & 6) | (sat | (flag & (v == s)));
        }
        define_classical(b, "LIT" + std::to_string(s), 3, 3, t);
    }
    b.define_gate(make_gate("TOUCH", 2, {identity_matrix(4)}));

    std::vector<int> x(n);
    for (int v = 0; v < n; v++) {
        x[v] = b.input(kUninitialized);
    }
    std::vector<char> used(n, 0);
    for (const auto &cl : f.clauses) {
        for (int lit : cl) {
            used[std::abs(lit) - 1] = 1;
        }
    }

    const int k = bits_for(rounds + 1);
    const int threshold = (rounds + 1) / 2;
    std::vector<int> counter;
    if (amplify > 0) {
        std::vector<int> add((size_t)1 << (k + 1));
        for (int s = 0; s < 2; s++) {
            for (int cnt = 0; cnt < (1 << k); cnt++) {
                int code = (s << k) | cnt;
                add[code] = (s << k) | std::min(cnt + s, (1 << k) - 1);
            }
        }
        define_classical(b, "ADD", k + 1, k + 1, add);
        std::vector<int> comp(1 << k);
        for (int cnt = 0; cnt < (1 << k); cnt++) {
            comp[cnt] = cnt >= threshold ? 1 : 0;
        }
        define_classical(b, "COMP", k, 1, comp);
    }

    for (int round = 0; round < rounds; round++) {
        std::vector<int> r(c);
        if (c > 0 && power_of_two) {
            for (int i = 0; i < c; i++) {
                r[i] = b.apply("COIN", {b.input(0)})[0];
            }
        } else if (c > 0) {
            for (int i = 0; i < c; i++) {
                r[i] = b.input(0);
            }
            r = b.apply("SELECT", r);
        }
        int sat = b.input(0);
        if (round == 0) {
            for (int v = 0; v < n; v++) {
                if (!used[v]) {
                    auto out = b.apply("TOUCH", {x[v], sat});
                    x[v] = out[0];
                    sat = out[1];
                }
            }
        }
        for (int j = 0; j < m; j++) {
            int flag = b.input(1);
            for (int i = 0; i < c; i++) {
                int bit = (j >> (c - 1 - i)) & 1;
                auto out = b.apply("AND" + std::to_string(bit), {flag, r[i]});
                flag = out[0];
                r[i] = out[1];
            }
            for (int lit : f.clauses[j]) {
                int v = std::abs(lit) - 1;
                auto out = b.apply(lit > 0 ? "LIT1" : "LIT0", {flag, x[v], sat});
                flag = out[0];
                x[v] = out[1];
                sat = out[2];
            }
            b.output(flag, keep);
        }
        for (int w : r) {
            b.output(w, keep);
        }
        if (amplify == 0) {
            b.output(sat, accept);
            continue;
        }
        if (counter.empty()) {
            for (int i = 0; i < k; i++) {
                counter.push_back(b.input(0));
            }
        }
        std::vector<int> operands{sat};
        operands.insert(operands.end(), counter.begin(), counter.end());
        auto out = b.apply("ADD", operands);
        b.output(out[0], keep);
        counter.assign(out.begin() + 1, out.end());
    }
    if (amplify > 0) {
        b.output(b.apply("COMP", counter)[0], accept);
    }
    for (int v = 0; v < n; v++) {
        b.output(x[v], keep);
    }
    return b.finish();
}

}  // namespace twsat
