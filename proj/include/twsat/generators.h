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

#ifndef TWSAT_GENERATORS_H
#define TWSAT_GENERATORS_H

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twsat/circuit.h"

namespace twsat {

/// 3-CNF formula. Literals are +v or -v for variables 1..num_vars.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    bool satisfied_by(std::string_view y) const;
    bool operator==(const CnfFormula &other) const = default;
};

/// DIMACS "p cnf" text. Every clause must have exactly three literals.
CnfFormula parse_dimacs(std::string_view text);
std::string format_dimacs(const CnfFormula &f);

/// Uniform random 3-CNF. With planted set, clauses falsified by a random hidden assignment are
/// redrawn, so the result is satisfiable.
CnfFormula random_3cnf(int num_vars, int num_clauses, uint64_t seed, bool planted = false);

enum class Structure { path, tree, ladder };

Structure parse_structure(std::string_view name);
const char *structure_name(Structure s);

struct RandomCircuitParams {
    int inputs = 2;
    int gates = 2;
    Structure structure = Structure::path;
    int d = 2;
    int uninitialized = 0;
    uint64_t seed = 0;
};

/// Random valid circuit on params.inputs wires. The first inputs-1 gates are two-qudit gates
/// on the pairs of the chosen structure (consecutive wires for path and ladder, the edges of a
/// random tree for tree), which makes the circuit connected. Later gates are one- or two-qudit
/// Haar unitaries or two-term unitary mixtures on structure pairs. Vertex ids: inputs, gates,
/// outputs.
QuantumCircuit gen_random_circuit(const RandomCircuitParams &params);

/// Classical verifier for a 3-CNF: the witness y is read from n uninitialized qubit inputs, a
/// clause index r is drawn uniformly from coins, and the circuit accepts when clause r holds.
/// With amplify = q > 0 the check runs q times on the same witness with fresh coins and a counter
/// accepts when at least ceil(q/2) rounds accepted. Vertex id order is a lazy topological order.
QuantumCircuit gen_3sat_verifier(const CnfFormula &f, int amplify = 0);

}  // namespace twsat

#endif
