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

#ifndef TWSAT_CIRCUIT_H
#define TWSAT_CIRCUIT_H

#include <Eigen/Dense>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twsat/network.h"
#include "twsat/tensor.h"

namespace twsat {

using Matrix = Eigen::MatrixXcd;

/// Completely positive map given by Kraus operators, each d^outputs x d^inputs. Wire 0 is the
/// most significant digit of the row and column index.
struct Gate {
    std::string name;
    int inputs = 1;
    int outputs = 1;
    std::vector<Matrix> kraus;

    bool operator==(const Gate &other) const;
};

/// Builds a gate, inferring the arity from the Kraus shapes. Throws ValidationError when the
/// shapes disagree or are not powers of d.
Gate make_gate(std::string name, int d, std::vector<Matrix> kraus);

enum class VertexKind { input, gate, output };

inline constexpr int kUninitialized = -1;

struct CircuitVertex {
    VertexKind kind = VertexKind::input;
    /// Input: basis index in 0..d-1, or kUninitialized.
    int init = kUninitialized;
    /// Gate: name into QuantumCircuit::gates.
    std::string gate;
    /// Output: measurement element, d x d.
    Matrix measurement;

    bool operator==(const CircuitVertex &other) const;
};

struct Port {
    int vertex = -1;
    int port = 0;

    bool operator==(const Port &other) const = default;
    auto operator<=>(const Port &other) const = default;
};

struct CircuitEdge {
    int label = 0;
    Port from;
    Port to;

    bool operator==(const CircuitEdge &other) const = default;
};

/// Directed acyclic circuit. Vertex ids are positions in the vertex list.
struct QuantumCircuit {
    int d = 2;
    std::map<std::string, Gate> gates;
    std::vector<CircuitVertex> vertices;
    std::vector<CircuitEdge> edges;

    int num_uninitialized() const;
    /// Ids of the uninitialized inputs, ascending. Assignment strings follow this order.
    std::vector<int> uninitialized_inputs() const;

    bool operator==(const QuantumCircuit &other) const = default;
};

struct CircuitReport {
    std::vector<std::string> issues;

    bool ok() const {
        return issues.empty();
    }
    std::string message() const;
};

CircuitReport validate_circuit(const QuantumCircuit &c);
/// Throws ValidationError carrying the report when the circuit is invalid.
void require_valid(const QuantumCircuit &c);

/// JSON circuit format, see README. parse_circuit(format_circuit(c)) == c bit for bit.
QuantumCircuit parse_circuit(std::string_view text);
std::string format_circuit(const QuantumCircuit &c);

/// Copy of c with the uninitialized inputs set from y, one digit per input in ascending id order.
QuantumCircuit initialize(const QuantumCircuit &c, std::string_view y);

Tensor density_tensor(const Matrix &rho, int index, int d);
Tensor gate_tensor(const Gate &g, int d, const std::vector<int> &in_indices, const std::vector<int> &out_indices);
Tensor measurement_tensor(const Matrix &m, int index, int d);

/// Index set of each vertex: the labels of its incident edges.
AbstractNetwork circuit_network(const QuantumCircuit &c);

struct TensorNetwork {
    AbstractNetwork net;
    std::vector<Tensor> tensors;
};

/// Requires every input to be initialized.
TensorNetwork to_tensor_network(const QuantumCircuit &c);

struct FeasibilityNetwork {
    AbstractNetwork net;
    /// Candidate tensors per position. Uninitialized input i offers density_tensor(|k><k|) at
    /// candidate k; everything else is a singleton.
    std::vector<std::vector<Tensor>> candidates;
    /// Positions of the uninitialized inputs, in assignment-string order.
    std::vector<int> input_positions;
    int d = 2;
};

FeasibilityNetwork to_feasibility_network(const QuantumCircuit &c);

/// Assignment string from one chosen candidate per position.
std::string decode_assignment(const FeasibilityNetwork &f, const std::vector<int> &choice);

struct OrderingWidth {
    int width = 0;
    bool topological = true;
};

/// Largest number of edges crossing a prefix of the ordering. Throws ValidationError if the
/// ordering is not a permutation of the vertices.
OrderingWidth cutwidth_of_ordering(const QuantumCircuit &c, const std::vector<int> &ordering);

/// Topological order that emits each input just before its consumer and each output right after
/// its producer, following gate id order otherwise.
std::vector<int> lazy_topological_order(const QuantumCircuit &c);

/// Incremental construction with labels assigned in wire-consumption order.
class CircuitBuilder {
   public:
    explicit CircuitBuilder(int d);

    void define_gate(Gate g);
    /// Returns a wire handle.
    int input(int init);
    /// Applies a defined gate and returns handles for its output wires.
    std::vector<int> apply(const std::string &gate, const std::vector<int> &wires);
    void output(int wire, const Matrix &measurement);
    bool has_gate(const std::string &name) const;
    QuantumCircuit finish();

   private:
    QuantumCircuit c_;
    std::vector<Port> pending_;
    std::vector<char> open_;
    int next_label_ = 1;

    int add_vertex(CircuitVertex v);
    void consume(int wire, Port to);
};

// Basic matrices.
Matrix basis_projector(int d, int k);
Matrix identity_matrix(int n);
/// Kraus operators of the deterministic map x -> f(x) between d-ary registers. Operator t sums
/// |f(x)><x| over the t-th preimage of every image point.
std::vector<Matrix> classical_kraus(int d, int in_wires, int out_wires, const std::vector<int> &f);

}  // namespace twsat

#endif
