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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support/oracles.h"
#include "twsat/errors.h"
#include "twsat/exactsim.h"
#include "twsat/generators.h"
#include "twsat/oracle.h"

using namespace twsat;
using namespace twsat_test;

namespace {

Matrix pauli_x() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    m(1, 0) = 1;
    return m;
}

Matrix hadamard() {
    Matrix m(2, 2);
    double s = 1 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix unit(int d, int b1, int b2) {
    Matrix m = Matrix::Zero(d, d);
    m(b1, b2) = 1;
    return m;
}

/// input(init) -> single one-qudit gate -> output(m).
QuantumCircuit one_gate(const Matrix &u, int init, const Matrix &m) {
    CircuitBuilder b(2);
    b.define_gate(make_gate("U", 2, {u}));
    int w = b.input(init);
    w = b.apply("U", {w})[0];
    b.output(w, m);
    return b.finish();
}

QuantumCircuit bare(int init, const Matrix &m) {
    CircuitBuilder b(2);
    b.output(b.input(init), m);
    return b.finish();
}

bool has_issue(const CircuitReport &r, const std::string &needle) {
    for (const auto &s : r.issues) {
        if (s.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

/// tr(Q(sigma_in) sigma_out^dagger) with matrix units over the ports, port 0 most significant.
Complex reference_gate_entry(const Gate &g, int d, const std::vector<std::pair<int, int>> &in,
                             const std::vector<std::pair<int, int>> &out) {
    Matrix sin = Matrix::Ones(1, 1);
    for (auto [b1, b2] : in) {
        sin = kron(sin, unit(d, b1, b2));
    }
    Matrix sout = Matrix::Ones(1, 1);
    for (auto [c1, c2] : out) {
        sout = kron(sout, unit(d, c1, c2));
    }
    return (apply_channel(g.kraus, sin) * sout.adjoint()).trace();
}

TEST(density_tensor, basis_state) {
    Tensor t = density_tensor(basis_projector(2, 0), 5, 2);
    EXPECT_EQ(t.indices(), IndexSet{5});
    std::vector<Complex> want{1, 0, 0, 0};
    EXPECT_EQ(std::vector<Complex>(t.data().begin(), t.data().end()), want);
}

TEST(density_tensor, maximally_mixed) {
    Tensor t = density_tensor(identity_matrix(2) / 2.0, 1, 2);
    std::vector<Complex> want{0.5, 0, 0, 0.5};
    EXPECT_EQ(std::vector<Complex>(t.data().begin(), t.data().end()), want);
}

TEST(density_tensor, entry_is_trace_against_daggered_unit) {
    std::mt19937_64 rng(3);
    Matrix plus = Matrix::Constant(2, 2, 0.5);
    for (int trial = 0; trial < 20; trial++) {
        int d = 2 + trial % 3;
        Matrix rho = trial == 0 ? plus : random_density(d, rng);
        if (trial == 0) {
            d = 2;
        }
        Tensor t = density_tensor(rho, 1, d);
        for (int b1 = 0; b1 < d; b1++) {
            for (int b2 = 0; b2 < d; b2++) {
                Complex want = (rho * unit(d, b1, b2).adjoint()).trace();
                EXPECT_LT(std::abs(t[sigma_code(d, b1, b2)] - want), 1e-12);
            }
        }
    }
}

TEST(density_tensor, rejects_non_psd_and_wrong_trace) {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(density_tensor(bad, 1, 2), ValidationError);
    EXPECT_THROW(density_tensor(identity_matrix(2), 1, 2), ValidationError);
}

TEST(measurement_tensor, entry_is_trace_against_unit) {
    std::mt19937_64 rng(4);
    Matrix m = random_effect(3, rng);
    Tensor t = measurement_tensor(m, 2, 3);
    for (int b1 = 0; b1 < 3; b1++) {
        for (int b2 = 0; b2 < 3; b2++) {
            EXPECT_LT(std::abs(t[sigma_code(3, b1, b2)] - (m * unit(3, b1, b2)).trace()), 1e-12);
        }
    }
}

TEST(gate_tensor, identity_is_kronecker_delta) {
    Gate id = make_gate("I", 2, {identity_matrix(2)});
    Tensor t = gate_tensor(id, 2, {1}, {2});
    for (int s1 = 0; s1 < 4; s1++) {
        for (int s2 = 0; s2 < 4; s2++) {
            std::vector<int> sigma{s1, s2};
            EXPECT_EQ(t.at(sigma), Complex(s1 == s2 ? 1 : 0, 0));
        }
    }
}

TEST(gate_tensor, pauli_x_permutes_identity_entries) {
    Gate x = make_gate("X", 2, {pauli_x()});
    Tensor t = gate_tensor(x, 2, {1}, {2});
    for (int b1 = 0; b1 < 2; b1++) {
        for (int b2 = 0; b2 < 2; b2++) {
            for (int c1 = 0; c1 < 2; c1++) {
                for (int c2 = 0; c2 < 2; c2++) {
                    std::vector<int> sigma{sigma_code(2, b1, b2), sigma_code(2, c1, c2)};
                    bool hit = c1 == 1 - b1 && c2 == 1 - b2;
                    EXPECT_EQ(t.at(sigma), Complex(hit ? 1 : 0, 0));
                }
            }
        }
    }
}

TEST(gate_tensor, depolarizing_channel) {
    std::vector<Matrix> kraus;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            kraus.push_back(unit(2, i, j) * std::sqrt(0.5));
        }
    }
    Gate dep = make_gate("DEP", 2, kraus);
    Tensor t = gate_tensor(dep, 2, {3}, {1});
    for (int b1 = 0; b1 < 2; b1++) {
        for (int b2 = 0; b2 < 2; b2++) {
            for (int c1 = 0; c1 < 2; c1++) {
                for (int c2 = 0; c2 < 2; c2++) {
                    // Index 1 (output) is the more significant variable.
                    std::vector<int> sigma{sigma_code(2, c1, c2), sigma_code(2, b1, b2)};
                    double want = (c1 == c2 && b1 == b2) ? 0.5 : 0.0;
                    EXPECT_LT(std::abs(t.at(sigma) - want), 1e-15);
                }
            }
        }
    }
}

TEST(gate_tensor, matches_channel_trace_formula_for_any_index_placement) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; trial++) {
        int d = 2 + trial % 2;
        int q = 1 + trial % 2;
        int r = 1 + (trial / 2) % 2;
        int din = (int)std::pow(d, q);
        int dout = (int)std::pow(d, r);
        Gate g = make_gate("G", d, random_kraus(din, dout, 1 + trial % 3, rng));
        std::vector<int> labels(q + r);
        std::iota(labels.begin(), labels.end(), 1);
        std::shuffle(labels.begin(), labels.end(), rng);
        std::vector<int> in(labels.begin(), labels.begin() + q);
        std::vector<int> out(labels.begin() + q, labels.end());
        Tensor t = gate_tensor(g, d, in, out);
        for (size_t flat = 0; flat < t.size(); flat++) {
            std::vector<int> sigma(t.rank());
            size_t rem = flat;
            for (int j = t.rank() - 1; j >= 0; j--) {
                sigma[j] = (int)(rem % (d * d));
                rem /= d * d;
            }
            auto pair_of = [&](int label) {
                int s = sigma[t.indices().position(label)];
                return std::make_pair(s / d, s % d);
            };
            std::vector<std::pair<int, int>> pin, pout;
            for (int l : in) {
                pin.push_back(pair_of(l));
            }
            for (int l : out) {
                pout.push_back(pair_of(l));
            }
            EXPECT_LT(std::abs(t[flat] - reference_gate_entry(g, d, pin, pout)), 1e-12);
        }
    }
}

TEST(gate_tensor, arity_mismatch) {
    Gate x = make_gate("X", 2, {pauli_x()});
    EXPECT_THROW(gate_tensor(x, 2, {1, 2}, {3}), ValidationError);
}

// The dagger placement of the density, gate and measurement tensors must combine into
// tr[Q(rho) M]. This pins the conventions jointly, for one- and two-wire channels.
TEST(conventions, telescoped_contraction_is_acceptance_probability) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; trial++) {
        int d = 2 + trial % 2;
        if (trial % 3 == 0) {
            Matrix rho = random_density(d, rng);
            Matrix m = random_effect(d, rng);
            Gate g = make_gate("G", d, random_kraus(d, d, 1 + trial % 4, rng));
            Tensor t = contract(contract(density_tensor(rho, 1, d), gate_tensor(g, d, {1}, {2})),
                                measurement_tensor(m, 2, d));
            Complex want = (apply_channel(g.kraus, rho) * m).trace();
            EXPECT_LT(std::abs(t.value() - want), 1e-12);
        } else {
            Matrix r1 = random_density(d, rng);
            Matrix r2 = random_density(d, rng);
            Matrix m1 = random_effect(d, rng);
            Matrix m2 = random_effect(d, rng);
            Gate g = make_gate("G", d, random_kraus(d * d, d * d, 1 + trial % 3, rng));
            Tensor t = contract(density_tensor(r1, 4, d), gate_tensor(g, d, {4, 2}, {1, 3}));
            t = contract(t, density_tensor(r2, 2, d));
            t = contract(t, measurement_tensor(m1, 1, d));
            t = contract(t, measurement_tensor(m2, 3, d));
            Complex want = (apply_channel(g.kraus, kron(r1, r2)) * kron(m1, m2)).trace();
            EXPECT_LT(std::abs(t.value() - want), 1e-12);
        }
    }
}

TEST(conventions, identity_circuit) {
    std::mt19937_64 rng(5);
    for (int init = 0; init < 2; init++) {
        Matrix m = random_effect(2, rng);
        CircuitBuilder b(2);
        b.define_gate(make_gate("I", 2, {identity_matrix(2)}));
        b.output(b.apply("I", {b.input(init)})[0], m);
        QuantumCircuit c = b.finish();
        EXPECT_NEAR(acceptance_probability(c), m(init, init).real(), 1e-12);
        EXPECT_NEAR(dm_simulate(c), m(init, init).real(), 1e-12);
    }
}

TEST(to_tensor_network, examples) {
    EXPECT_NEAR(acceptance_probability(bare(0, basis_projector(2, 0))), 1.0, 1e-12);
    EXPECT_NEAR(acceptance_probability(one_gate(pauli_x(), 0, basis_projector(2, 1))), 1.0, 1e-12);
    EXPECT_NEAR(acceptance_probability(one_gate(hadamard(), 0, basis_projector(2, 1))), 0.5, 1e-12);
}

TEST(to_tensor_network, network_is_valid_and_indexed_by_edge_labels) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        RandomCircuitParams p{.inputs = 1 + (int)(seed % 4), .gates = 6, .structure = Structure::ladder, .seed = seed};
        auto c = gen_random_circuit(p);
        TensorNetwork tn = to_tensor_network(c);
        EXPECT_TRUE(validate_network(tn.net).ok());
        ASSERT_EQ(tn.net.size(), (int)c.vertices.size());
        for (int v = 0; v < tn.net.size(); v++) {
            EXPECT_EQ(tn.tensors[v].indices(), tn.net.sets[v]);
        }
        for (const auto &e : c.edges) {
            EXPECT_TRUE(tn.net.sets[e.from.vertex].contains(e.label));
            EXPECT_TRUE(tn.net.sets[e.to.vertex].contains(e.label));
        }
    }
}

TEST(to_tensor_network, rejects_uninitialized_inputs) {
    try {
        to_tensor_network(bare(kUninitialized, basis_projector(2, 1)));
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("feasibility"), std::string::npos);
    }
}

TEST(to_feasibility_network, candidate_sets) {
    RandomCircuitParams p{.inputs = 4, .gates = 5, .uninitialized = 2, .seed = 9};
    auto c = gen_random_circuit(p);
    auto f = to_feasibility_network(c);
    int pairs = 0, singles = 0;
    for (const auto &cand : f.candidates) {
        (cand.size() == 2 ? pairs : singles)++;
    }
    EXPECT_EQ(pairs, 2);
    EXPECT_EQ(singles, (int)c.vertices.size() - 2);
    EXPECT_EQ(f.input_positions, c.uninitialized_inputs());

    p.uninitialized = 0;
    auto g = to_feasibility_network(gen_random_circuit(p));
    for (const auto &cand : g.candidates) {
        EXPECT_EQ(cand.size(), 1u);
    }
}

TEST(to_feasibility_network, decoding_matches_oracle_for_every_assignment) {
    for (uint64_t seed = 0; seed < 12; seed++) {
        int d = 2 + (int)(seed % 2);
        RandomCircuitParams p{.inputs = 3, .gates = 4, .structure = Structure::tree, .d = d,
                              .uninitialized = 1 + (int)(seed % 3), .seed = seed};
        auto c = gen_random_circuit(p);
        auto f = to_feasibility_network(c);
        for (const auto &y : all_assignments(d, c.num_uninitialized())) {
            std::vector<int> choice(f.candidates.size(), 0);
            for (size_t i = 0; i < y.size(); i++) {
                choice[f.input_positions[i]] = y[i] - '0';
            }
            EXPECT_EQ(decode_assignment(f, choice), y);
            std::vector<Tensor> tensors;
            for (size_t pos = 0; pos < f.candidates.size(); pos++) {
                tensors.push_back(f.candidates[pos][choice[pos]]);
            }
            auto tree = build_good_contraction_tree(f.net).tree;
            double v = std::abs(simulate(f.net, tensors, tree).scalar);
            EXPECT_NEAR(v, dm_simulate(c, y), 1e-9);
        }
    }
}

TEST(validate, minimal_circuit_from_text) {
    const char *text = R"({"d": 2, "gates": {},
        "vertices": [{"id": 0, "kind": "input", "init": "*"},
                     {"id": 1, "kind": "output", "measure": [[[0,0],[0,0]],[[0,0],[1,0]]]}],
        "edges": [{"label": 1, "from": [0, 0], "to": [1, 0]}]})";
    auto c = parse_circuit(text);
    EXPECT_TRUE(validate_circuit(c).ok()) << validate_circuit(c).message();
    EXPECT_EQ(c.num_uninitialized(), 1);
}

TEST(validate, duplicate_edge_label) {
    auto c = one_gate(pauli_x(), 0, basis_projector(2, 1));
    c.edges[1].label = c.edges[0].label;
    auto r = validate_circuit(c);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(has_issue(r, "label used twice")) << r.message();
}

TEST(validate, trace_condition_violated) {
    Matrix k = Matrix::Zero(2, 2);
    k(0, 0) = std::sqrt(1.5);
    auto c = one_gate(k, 0, basis_projector(2, 1));
    auto r = validate_circuit(c);
    EXPECT_TRUE(has_issue(r, "trace condition")) << r.message();
    EXPECT_TRUE(has_issue(r, "1.5")) << r.message();
}

TEST(validate, structural_errors_name_their_vertex_or_edge) {
    auto base = one_gate(pauli_x(), 0, basis_projector(2, 1));

    auto c = base;
    c.vertices[0].init = 7;
    EXPECT_TRUE(has_issue(validate_circuit(c), "vertex 0: input initialization"));

    c = base;
    c.vertices[1].gate = "nope";
    EXPECT_TRUE(has_issue(validate_circuit(c), "vertex 1: unknown gate"));

    c = base;
    c.vertices[2].measurement(0, 1) = 0.5;
    EXPECT_TRUE(has_issue(validate_circuit(c), "vertex 2: measurement is not Hermitian"));

    c = base;
    c.vertices[2].measurement = 2.0 * identity_matrix(2);
    EXPECT_TRUE(has_issue(validate_circuit(c), "exceeds the identity"));

    c = base;
    c.edges.pop_back();
    EXPECT_TRUE(has_issue(validate_circuit(c), "vertex 2: input port 0 is not connected"));

    c = base;
    c.edges[0].to.port = 3;
    EXPECT_TRUE(has_issue(validate_circuit(c), "has no input port 3"));

    c = base;
    c.edges[0].label = 0;
    EXPECT_TRUE(has_issue(validate_circuit(c), "positive integer"));
}

TEST(validate, cycle_and_disconnection) {
    QuantumCircuit c;
    c.gates.emplace("I", make_gate("I", 2, {identity_matrix(2)}));
    c.vertices.resize(2);
    c.vertices[0].kind = VertexKind::gate;
    c.vertices[0].gate = "I";
    c.vertices[1].kind = VertexKind::gate;
    c.vertices[1].gate = "I";
    c.edges = {{1, {0, 0}, {1, 0}}, {2, {1, 0}, {0, 0}}};
    EXPECT_TRUE(has_issue(validate_circuit(c), "directed cycle"));

    auto a = bare(0, basis_projector(2, 0));
    auto b = bare(1, basis_projector(2, 1));
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    a.edges.push_back({2, {2, 0}, {3, 0}});
    EXPECT_TRUE(has_issue(validate_circuit(a), "disconnected"));
}

TEST(validate, kraus_shapes_must_be_powers_of_d) {
    EXPECT_THROW(make_gate("bad", 2, {Matrix::Identity(3, 3)}), ValidationError);
    EXPECT_THROW(make_gate("bad", 2, {Matrix::Identity(2, 2), Matrix::Identity(4, 4)}), ValidationError);
    Gate g = make_gate("iso", 2, {Matrix::Identity(4, 2)});
    EXPECT_EQ(g.inputs, 1);
    EXPECT_EQ(g.outputs, 2);
}

TEST(format, round_trip_is_bit_exact) {
    for (uint64_t seed = 0; seed < 25; seed++) {
        RandomCircuitParams p{.inputs = 1 + (int)(seed % 5), .gates = 7, .structure = (Structure)(seed % 3),
                              .d = 2 + (int)(seed % 2), .uninitialized = (int)(seed % 2), .seed = seed};
        auto c = gen_random_circuit(p);
        std::string text = format_circuit(c);
        auto back = parse_circuit(text);
        EXPECT_TRUE(back == c) << "seed " << seed;
        EXPECT_EQ(format_circuit(back), text);
    }
    auto v = gen_3sat_verifier(random_3cnf(3, 3, 1), 2);
    EXPECT_TRUE(parse_circuit(format_circuit(v)) == v);
}

TEST(format, negative_zero_and_tiny_values_survive) {
    auto c = bare(0, basis_projector(2, 0));
    c.vertices[1].measurement(1, 1) = Complex(-0.0, 1e-300);
    auto back = parse_circuit(format_circuit(c));
    EXPECT_TRUE(std::signbit(back.vertices[1].measurement(1, 1).real()));
    EXPECT_EQ(back.vertices[1].measurement(1, 1).imag(), 1e-300);
}

TEST(format, malformed_inputs) {
    EXPECT_THROW(parse_circuit("{"), ValidationError);
    EXPECT_THROW(parse_circuit("[]"), ValidationError);
    EXPECT_THROW(parse_circuit(R"({"d": 2, "gates": {}, "vertices": []})"), ValidationError);
    EXPECT_THROW(parse_circuit(R"({"d": 2, "gates": {}, "vertices": [{"id": 1, "kind": "input", "init": 0}],
        "edges": []})"),
                 ValidationError);
    EXPECT_THROW(parse_circuit(R"({"d": 2, "gates": {}, "vertices": [{"id": 0, "kind": "input", "init": "?"}],
        "edges": []})"),
                 ValidationError);
    EXPECT_THROW(parse_circuit(R"({"format": "other", "d": 2, "gates": {}, "vertices": [], "edges": []})"),
                 ValidationError);
}

TEST(initialize, sets_inputs_in_ascending_id_order) {
    RandomCircuitParams p{.inputs = 3, .gates = 3, .d = 3, .uninitialized = 3, .seed = 2};
    auto c = gen_random_circuit(p);
    auto i = initialize(c, "201");
    EXPECT_EQ(i.vertices[0].init, 2);
    EXPECT_EQ(i.vertices[1].init, 0);
    EXPECT_EQ(i.vertices[2].init, 1);
    EXPECT_THROW(initialize(c, "20"), ValidationError);
    EXPECT_THROW(initialize(c, "203"), ValidationError);
}

TEST(cutwidth, examples) {
    auto c = bare(0, basis_projector(2, 0));
    auto w = cutwidth_of_ordering(c, {0, 1});
    EXPECT_EQ(w.width, 1);
    EXPECT_TRUE(w.topological);
    EXPECT_FALSE(cutwidth_of_ordering(c, {1, 0}).topological);
    EXPECT_THROW(cutwidth_of_ordering(c, {0, 0}), ValidationError);
    EXPECT_THROW(cutwidth_of_ordering(c, {0}), ValidationError);

    CircuitBuilder b(2);
    b.define_gate(make_gate("X", 2, {pauli_x()}));
    int wire = b.input(0);
    for (int k = 0; k < 5; k++) {
        wire = b.apply("X", {wire})[0];
    }
    b.output(wire, identity_matrix(2));
    auto path = b.finish();
    std::vector<int> order(path.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    EXPECT_EQ(cutwidth_of_ordering(path, order).width, 1);
}

TEST(cutwidth, lazy_order_is_topological) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        RandomCircuitParams p{.inputs = 1 + (int)(seed % 6), .gates = 8, .structure = (Structure)(seed % 3),
                              .seed = seed};
        auto c = gen_random_circuit(p);
        auto order = lazy_topological_order(c);
        auto w = cutwidth_of_ordering(c, order);
        EXPECT_TRUE(w.topological);
        EXPECT_LE(w.width, p.inputs + 1);
    }
}

TEST(classical_kraus, completes_to_trace_one_and_acts_classically) {
    std::vector<int> f{0, 0, 0, 1};
    auto kraus = classical_kraus(2, 2, 1, f);
    EXPECT_EQ(kraus.size(), 3u);
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    EXPECT_LT((sum - identity_matrix(4)).cwiseAbs().maxCoeff(), 1e-15);
    for (int x = 0; x < 4; x++) {
        Matrix out = apply_channel(kraus, basis_projector(4, x));
        EXPECT_LT((out - basis_projector(2, f[x])).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(random_circuit, examples) {
    auto single = gen_random_circuit({.inputs = 1, .gates = 0});
    ASSERT_EQ(single.vertices.size(), 2u);
    EXPECT_EQ(single.edges.size(), 1u);
    EXPECT_EQ(single.vertices[0].kind, VertexKind::input);
    EXPECT_EQ(single.vertices[1].kind, VertexKind::output);

    auto ladder = gen_random_circuit({.inputs = 3, .gates = 5, .structure = Structure::ladder, .seed = 7});
    EXPECT_TRUE(validate_circuit(ladder).ok()) << validate_circuit(ladder).message();

    for (uint64_t seed = 0; seed < 20; seed++) {
        auto tree = gen_random_circuit({.inputs = 2, .gates = 4, .structure = Structure::tree, .seed = seed});
        EXPECT_EQ(tree.vertices.size(), 8u);
        EXPECT_LE(brute_force_treewidth(graph_of_network(circuit_network(tree))), 3);
    }
    EXPECT_THROW(gen_random_circuit({.inputs = 4, .gates = 2}), ValidationError);
    EXPECT_THROW(gen_random_circuit({.inputs = 2, .gates = 2, .uninitialized = 3}), ValidationError);
}

TEST(random_circuit, deterministic_per_seed) {
    RandomCircuitParams p{.inputs = 4, .gates = 9, .structure = Structure::tree, .uninitialized = 2, .seed = 41};
    EXPECT_TRUE(gen_random_circuit(p) == gen_random_circuit(p));
    auto q = p;
    q.seed = 42;
    EXPECT_FALSE(gen_random_circuit(p) == gen_random_circuit(q));
}

TEST(random_circuit, always_valid) {
    for (uint64_t seed = 0; seed < 60; seed++) {
        RandomCircuitParams p{.inputs = 1 + (int)(seed % 6), .gates = 5 + (int)(seed % 7),
                              .structure = (Structure)(seed % 3), .d = 2 + (int)(seed % 3 == 0),
                              .uninitialized = (int)(seed % 2), .seed = seed};
        auto c = gen_random_circuit(p);
        EXPECT_TRUE(validate_circuit(c).ok()) << validate_circuit(c).message();
    }
}

TEST(dimacs, round_trip_and_errors) {
    auto f = random_3cnf(5, 7, 3);
    EXPECT_EQ(parse_dimacs(format_dimacs(f)), f);
    EXPECT_EQ(parse_dimacs("c hi\np cnf 2 1\n1 -2\n2 0\n").clauses.size(), 1u);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 0\n"), ValidationError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ValidationError);
    EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 2 0\n"), ValidationError);
    EXPECT_THROW(parse_dimacs("1 2 2 0\n"), ValidationError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 x 0\n"), ValidationError);
}

TEST(dimacs, planted_formulas_are_satisfiable) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto f = random_3cnf(4, 12, seed, true);
        bool any = false;
        for (const auto &y : all_assignments(2, 4)) {
            any = any || f.satisfied_by(y);
        }
        EXPECT_TRUE(any);
    }
}

CnfFormula toy_unsat() {
    CnfFormula f;
    f.num_vars = 1;
    f.clauses = {{1, 1, 1}, {-1, -1, -1}};
    return f;
}

TEST(verifier, single_clause_accepts_satisfying_assignments) {
    CnfFormula f;
    f.num_vars = 3;
    f.clauses = {{1, 2, 3}};
    auto c = gen_3sat_verifier(f);
    EXPECT_TRUE(validate_circuit(c).ok()) << validate_circuit(c).message();
    EXPECT_EQ(c.num_uninitialized(), 3);
    for (const auto &y : all_assignments(2, 3)) {
        double want = f.satisfied_by(y) ? 1.0 : 0.0;
        EXPECT_NEAR(dm_simulate(c, y), want, 1e-12) << y;
        EXPECT_NEAR(acceptance_probability(initialize(c, y)), want, 1e-12) << y;
    }
}

TEST(verifier, unsatisfiable_toy) {
    auto c = gen_3sat_verifier(toy_unsat());
    auto best = brute_force_max(c);
    EXPECT_NEAR(best.probability, 0.5, 1e-12);
    EXPECT_EQ(best.y, "0");
    EXPECT_LE(best.probability, 1 - 1.0 / 2 + 1e-12);

    auto amplified = gen_3sat_verifier(toy_unsat(), 3);
    EXPECT_NEAR(brute_force_max(amplified).probability, 0.5, 1e-12);
}

TEST(verifier, amplification_sharpens_gap) {
    CnfFormula f;
    f.num_vars = 2;
    f.clauses = {{1, 1, 1}, {2, 2, 2}, {-1, -1, -1}, {-2, -2, -2}};
    for (int q : {0, 1, 3, 5}) {
        auto c = gen_3sat_verifier(f, q);
        EXPECT_TRUE(validate_circuit(c).ok());
        double p = brute_force_max(c).probability;
        // Each round accepts with probability 1/2; the vote needs ceil(q/2) successes.
        double want = 0;
        int rounds = std::max(1, q);
        for (int s = (rounds + 1) / 2; s <= rounds; s++) {
            want += std::tgamma(rounds + 1) / (std::tgamma(s + 1) * std::tgamma(rounds - s + 1)) /
                    std::pow(2.0, rounds);
        }
        EXPECT_NEAR(p, want, 1e-12) << q;
    }
}

TEST(verifier, completeness_and_soundness_on_random_formulas) {
    int unsat_seen = 0;
    for (uint64_t seed = 0; seed < 50; seed++) {
        int n = 1 + (int)(seed % 4);
        int m = 1 + (int)(seed % 7);
        auto f = random_3cnf(n, m, seed, seed % 2 == 0);
        auto c = gen_3sat_verifier(f);
        bool sat = false;
        for (const auto &y : all_assignments(2, n)) {
            sat = sat || f.satisfied_by(y);
        }
        auto best = brute_force_max(c);
        if (sat) {
            EXPECT_NEAR(best.probability, 1.0, 1e-12) << seed;
            EXPECT_TRUE(f.satisfied_by(best.y));
        } else {
            unsat_seen++;
            EXPECT_LE(best.probability, 1 - 1.0 / m + 1e-12) << seed;
        }
    }
    EXPECT_GT(unsat_seen, 0);
}

TEST(verifier, ordering_is_topological_with_small_width) {
    for (int q : {0, 2, 4, 8}) {
        auto f = random_3cnf(4, 6, 5, true);
        auto c = gen_3sat_verifier(f, q);
        std::vector<int> order(c.vertices.size());
        std::iota(order.begin(), order.end(), 0);
        auto w = cutwidth_of_ordering(c, order);
        EXPECT_TRUE(w.topological);
        // Witness wires, selector, flag, sat and the counter.
        EXPECT_LE(w.width, 4 + 3 + 2 + 4 + 1);
    }
}

}  // namespace
