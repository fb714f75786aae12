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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twsat/circuit.h"
#include "twsat/cli.h"
#include "twsat/errors.h"
#include "twsat/exactsim.h"
#include "twsat/generators.h"
#include "twsat/oracle.h"
#include "twsat/satsolve.h"

namespace py = pybind11;
using namespace twsat;

namespace {

py::dict report_dict(const SolveReport &r) {
    py::dict d;
    d["y"] = r.y;
    d["probability"] = r.probability;
    d["alpha"] = r.alpha;
    d["epsilon"] = r.epsilon;
    d["root_bound"] = r.root_bound;
    d["certified_bound"] = r.certified_bound;
    d["d"] = r.d;
    d["rank"] = r.rank;
    d["height"] = r.height;
    d["positions"] = r.positions;
    d["uninitialized"] = r.uninitialized;
    d["treewidth_bound"] = r.treewidth_bound;
    d["carving_width"] = r.carving_width;
    d["set_sizes"] = r.set_sizes;
    d["warnings"] = r.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_twsat, m) {
    m.doc() = "Classical satisfiability of bounded-treewidth quantum circuits";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);

    py::class_<QuantumCircuit>(m, "Circuit")
        .def_static("from_json", &parse_circuit, py::arg("text"))
        .def("to_json", &format_circuit)
        .def_readonly("d", &QuantumCircuit::d)
        .def_property_readonly("num_vertices", [](const QuantumCircuit &c) { return c.vertices.size(); })
        .def_property_readonly("num_edges", [](const QuantumCircuit &c) { return c.edges.size(); })
        .def_property_readonly("num_uninitialized", &QuantumCircuit::num_uninitialized)
        .def("issues", [](const QuantumCircuit &c) { return validate_circuit(c).issues; })
        .def("initialize", &initialize, py::arg("y"))
        .def("__eq__", [](const QuantumCircuit &a, const QuantumCircuit &b) { return a == b; });

    m.def("acceptance_probability", &acceptance_probability, py::arg("circuit"), py::arg("seed") = 0);

    m.def(
        "dm_simulate",
        [](const QuantumCircuit &c, const std::string &y, int max_wires) {
            OracleOptions opts;
            opts.max_wires = max_wires;
            return dm_simulate(c, y, opts);
        },
        py::arg("circuit"), py::arg("y") = "", py::arg("max_wires") = 12);

    m.def(
        "brute_force_max",
        [](const QuantumCircuit &c, int max_wires, size_t max_assignments) {
            OracleOptions opts;
            opts.max_wires = max_wires;
            opts.max_assignments = max_assignments;
            OracleMax r = brute_force_max(c, opts);
            return py::make_tuple(r.y, r.probability);
        },
        py::arg("circuit"), py::arg("max_wires") = 12, py::arg("max_assignments") = 4096);

    m.def(
        "solve",
        [](const QuantumCircuit &c, std::optional<double> delta, std::optional<double> epsilon, uint64_t seed,
           int threads, size_t max_set_size) {
            SolveOptions opts;
            opts.delta = delta;
            opts.epsilon = epsilon;
            opts.seed = seed;
            opts.threads = threads;
            opts.max_set_size = max_set_size;
            SolveReport r;
            {
                py::gil_scoped_release release;
                r = solve_classical_assignment(c, opts);
            }
            return report_dict(r);
        },
        py::arg("circuit"), py::kw_only(), py::arg("delta") = py::none(), py::arg("epsilon") = py::none(),
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("max_set_size") = 1000000);

    m.def("choose_epsilon", [](double delta, int d, int r, int h) { return choose_epsilon(delta, d, r, h).epsilon; },
          py::arg("delta"), py::arg("d"), py::arg("rank"), py::arg("height"));

    m.def(
        "random_circuit",
        [](int inputs, int gates, const std::string &structure, int d, int uninitialized, uint64_t seed) {
            RandomCircuitParams p;
            p.inputs = inputs;
            p.gates = gates;
            p.structure = parse_structure(structure);
            p.d = d;
            p.uninitialized = uninitialized;
            p.seed = seed;
            return gen_random_circuit(p);
        },
        py::arg("inputs") = 2, py::arg("gates") = 2, py::arg("structure") = "path", py::arg("d") = 2,
        py::arg("uninitialized") = 0, py::arg("seed") = 0);

    m.def(
        "verifier_circuit",
        [](int num_vars, const std::vector<std::array<int, 3>> &clauses, int amplify) {
            return gen_3sat_verifier(CnfFormula{num_vars, clauses}, amplify);
        },
        py::arg("num_vars"), py::arg("clauses"), py::arg("amplify") = 0);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
