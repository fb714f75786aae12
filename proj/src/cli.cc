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

#include "twsat/cli.h"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <utility>

#include "twsat/circuit.h"
#include "twsat/errors.h"
#include "twsat/exactsim.h"
#include "twsat/generators.h"
#include "twsat/network.h"
#include "twsat/oracle.h"
#include "twsat/satsolve.h"
#include "twsat/text_format.h"

namespace twsat {
namespace {

constexpr const char *kRecordsHeader = "twsat-report v1";

std::string fmt(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <typename T>
std::string join(const std::vector<T> &xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); i++) {
        s += (i ? "," : "") + std::to_string(xs[i]);
    }
    return s;
}

/// Ordered key/value report. Keys may repeat.
class Report {
   public:
    explicit Report(std::string command) {
        add("command", std::move(command));
    }

    void add(std::string key, std::string value) {
        entries_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, double value) {
        add(std::move(key), fmt(value));
    }
    void add(std::string key, int value) {
        add(std::move(key), std::to_string(value));
    }
    void add_block(std::string text) {
        block_ = std::move(text);
    }

    std::string render(bool records) const {
        std::ostringstream os;
        if (records) {
            os << kRecordsHeader << "\n";
        }
        for (const auto &[k, v] : entries_) {
            os << k << (records ? "=" : ": ") << v << "\n";
        }
        if (!block_.empty()) {
            std::istringstream lines(block_);
            std::string line;
            if (!records) {
                os << "\n";
            }
            while (std::getline(lines, line)) {
                os << (records ? "line=" : "") << line << "\n";
            }
        }
        return os.str();
    }

   private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::string block_;
};

struct Common {
    std::string path;
    std::string format = "human";
    std::string out_path;
    bool timing = false;
    uint64_t seed = 0;
};

std::string read_input(const std::string &path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

QuantumCircuit read_circuit(const std::string &path) {
    std::string text = read_input(path);
    if (sniff_format(text) != "{") {
        throw ValidationError(path + ": expected a JSON circuit");
    }
    return parse_circuit(text);
}

void emit(const Common &common, const std::string &text, std::ostream &out) {
    if (common.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) {
        throw ValidationError("cannot write " + common.out_path);
    }
    f << text;
}

int cmd_validate(const Common &common, std::ostream &out) {
    std::string text = read_input(common.path);
    std::string kind = sniff_format(text);
    Report r("validate");
    bool ok = true;
    if (kind == "{") {
        QuantumCircuit c = parse_circuit(text);
        CircuitReport rep = validate_circuit(c);
        r.add("kind", "circuit");
        r.add("d", c.d);
        r.add("vertices", (int)c.vertices.size());
        r.add("edges", (int)c.edges.size());
        r.add("gates", (int)c.gates.size());
        r.add("uninitialized", c.num_uninitialized());
        for (const auto &issue : rep.issues) {
            r.add("issue", issue);
        }
        ok = rep.ok();
    } else if (kind == "d-network") {
        AbstractNetwork net = parse_network(text);
        NetworkReport rep = validate_network(net);
        r.add("kind", "network");
        r.add("sets", net.size());
        r.add("rank", net.rank());
        if (!rep.ok()) {
            r.add("issue", rep.message());
        }
        ok = rep.ok();
    } else {
        throw ValidationError(common.path + ": unknown format '" + kind + "'");
    }
    r.add("status", ok ? "ok" : "invalid");
    out << r.render(common.format == "records");
    return ok ? kExitOk : kExitValidation;
}

int cmd_decompose(const Common &common, std::ostream &out) {
    std::string text = read_input(common.path);
    std::string kind = sniff_format(text);
    AbstractNetwork net;
    if (kind == "{") {
        QuantumCircuit c = parse_circuit(text);
        require_valid(c);
        net = circuit_network(c);
    } else if (kind == "d-network") {
        net = parse_network(text);
    } else {
        throw ValidationError(common.path + ": unknown format '" + kind + "'");
    }
    GoodContractionTree good = build_good_contraction_tree(net, common.seed);
    Report r("decompose");
    r.add("seed", std::to_string(common.seed));
    r.add("positions", net.size());
    r.add("max_degree", good.max_degree);
    r.add("treewidth_bound", good.treewidth_bound);
    r.add("initial_carving_width", good.initial_carving_width);
    r.add("initial_carving_height", good.initial_carving_height);
    r.add("carving_width", good.carving_width);
    r.add("rank", good.rank);
    r.add("height", good.height);
    r.add_block(format_contraction_tree(good.tree));
    out << r.render(common.format == "records");
    return kExitOk;
}

int cmd_simulate(const Common &common, const std::string &assign, std::ostream &out) {
    QuantumCircuit c = read_circuit(common.path);
    require_valid(c);
    if (!assign.empty()) {
        c = initialize(c, assign);
    }
    CircuitSimulation sim = simulate_circuit(c, common.seed);
    Report r("simulate");
    r.add("probability", sim.trace.value);
    r.add("scalar_re", sim.trace.scalar.real());
    r.add("scalar_im", sim.trace.scalar.imag());
    r.add("rank", sim.rank);
    r.add("height", sim.height);
    r.add("peak_rank", sim.trace.peak_rank);
    for (const auto &w : sim.trace.warnings) {
        r.add("warning", w);
    }
    out << r.render(common.format == "records");
    return kExitOk;
}

struct SatisfyFlags {
    std::optional<double> delta;
    std::optional<double> epsilon;
    int threads = 1;
    size_t max_set_size = 1000000;
    double epsilon_floor = 1e-12;
};

int cmd_satisfy(const Common &common, const SatisfyFlags &flags, std::ostream &out) {
    if (flags.delta.has_value() == flags.epsilon.has_value()) {
        throw ValidationError("give exactly one of --delta and --epsilon");
    }
    QuantumCircuit c = read_circuit(common.path);
    SolveOptions opts;
    opts.delta = flags.delta;
    opts.epsilon = flags.epsilon;
    opts.seed = common.seed;
    opts.threads = flags.threads;
    opts.max_set_size = flags.max_set_size;
    opts.epsilon_floor = flags.epsilon_floor;
    SolveReport s = solve_classical_assignment(c, opts);
    Report r("satisfy");
    r.add("y", s.y);
    r.add("probability", s.probability);
    r.add("certified_bound", s.certified_bound);
    r.add("root_bound", s.root_bound);
    if (flags.delta) {
        r.add("delta", *flags.delta);
    }
    r.add("epsilon", s.epsilon);
    r.add("alpha_re", s.alpha.real());
    r.add("alpha_im", s.alpha.imag());
    r.add("seed", std::to_string(common.seed));
    r.add("d", s.d);
    r.add("rank", s.rank);
    r.add("height", s.height);
    r.add("positions", s.positions);
    r.add("uninitialized", s.uninitialized);
    r.add("treewidth_bound", s.treewidth_bound);
    r.add("carving_width", s.carving_width);
    r.add("set_sizes", join(s.set_sizes));
    for (const auto &w : s.warnings) {
        r.add("warning", w);
    }
    out << r.render(common.format == "records");
    return kExitOk;
}

int cmd_oracle(const Common &common, const OracleOptions &opts, std::ostream &out) {
    QuantumCircuit c = read_circuit(common.path);
    OracleMax m = brute_force_max(c, opts);
    Report r("oracle");
    r.add("y", m.y);
    r.add("probability", m.probability);
    r.add("assignments", (int)m.all.size());
    out << r.render(common.format == "records");
    return kExitOk;
}

struct GenFlags {
    RandomCircuitParams random;
    std::string structure = "path";
    std::string dimacs;
    int vars = 3;
    int clauses = 3;
    bool planted = false;
    int amplify = 0;
};

int cmd_gen(const std::string &kind, const Common &common, GenFlags flags, std::ostream &out) {
    QuantumCircuit c;
    if (kind == "random") {
        flags.random.structure = parse_structure(flags.structure);
        flags.random.seed = common.seed;
        c = gen_random_circuit(flags.random);
    } else {
        CnfFormula f = flags.dimacs.empty() ? random_3cnf(flags.vars, flags.clauses, common.seed, flags.planted)
                                            : parse_dimacs(read_input(flags.dimacs));
        c = gen_3sat_verifier(f, flags.amplify);
    }
    out << format_circuit(c);
    return kExitOk;
}

void add_common(CLI::App *sub, Common &common, bool with_path = true) {
    if (with_path) {
        sub->add_option("path", common.path, "Input file, or - for stdin")->required();
    }
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"human", "records"}));
    sub->add_option("--out", common.out_path, "Write the output to this file");
    sub->add_flag("--timing", common.timing, "Append wall time to the report");
    sub->add_option("--seed", common.seed, "Seed for all randomness");
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app("Classical satisfiability of bounded-treewidth quantum circuits", "twsat");
    app.require_subcommand(1);
    Common common;

    auto *validate = app.add_subcommand("validate", "Parse and validate a circuit or network");
    add_common(validate, common);

    auto *decompose = app.add_subcommand("decompose", "Build a good contraction tree");
    add_common(decompose, common);

    std::string assign;
    auto *simulate = app.add_subcommand("simulate", "Exact acceptance probability");
    add_common(simulate, common);
    simulate->add_option("--assign", assign, "Values for the uninitialized inputs");

    SatisfyFlags sat;
    auto *satisfy = app.add_subcommand("satisfy", "Find a classical assignment of near-maximal acceptance");
    add_common(satisfy, common);
    auto *delta = satisfy->add_option("--delta", sat.delta, "Target additive error")->check(CLI::Range(0.0, 1.0));
    satisfy->add_option("--epsilon", sat.epsilon, "Fixed net spacing")->excludes(delta)->check(CLI::PositiveNumber);
    satisfy->add_option("--threads", sat.threads, "Worker threads")->check(CLI::Range(1, 1024));
    satisfy->add_option("--max-set-size", sat.max_set_size, "Per-node set size cap")->check(CLI::PositiveNumber);
    satisfy->add_option("--epsilon-floor", sat.epsilon_floor, "Smallest epsilon derived from --delta")
        ->check(CLI::PositiveNumber);

    OracleOptions oracle_opts;
    auto *oracle = app.add_subcommand("oracle", "Brute-force maximum over all assignments");
    add_common(oracle, common);
    oracle->add_option("--oracle-cap", oracle_opts.max_wires, "Live wire cap in qubits")->check(CLI::Range(1, 30));
    oracle->add_option("--max-assignments", oracle_opts.max_assignments, "Assignment count cap");

    GenFlags gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate benchmark circuits");
    gen_cmd->require_subcommand(1);
    auto *gen_random = gen_cmd->add_subcommand("random", "Random circuit");
    add_common(gen_random, common, false);
    gen_random->add_option("--inputs", gen.random.inputs, "Number of inputs");
    gen_random->add_option("--gates", gen.random.gates, "Number of gates");
    gen_random->add_option("--structure", gen.structure, "path, tree or ladder");
    gen_random->add_option("--d", gen.random.d, "Qudit dimension");
    gen_random->add_option("--uninitialized", gen.random.uninitialized, "Number of uninitialized inputs");
    auto *gen_3sat = gen_cmd->add_subcommand("3sat", "Verifier circuit for a 3-CNF formula");
    add_common(gen_3sat, common, false);
    gen_3sat->add_option("--dimacs", gen.dimacs, "Read the formula from a DIMACS file");
    gen_3sat->add_option("--vars", gen.vars, "Variables of a random formula");
    gen_3sat->add_option("--clauses", gen.clauses, "Clauses of a random formula");
    gen_3sat->add_flag("--planted", gen.planted, "Make the random formula satisfiable");
    gen_3sat->add_option("--amplify", gen.amplify, "Repetitions with a majority vote");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    auto start = std::chrono::steady_clock::now();
    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (validate->parsed()) {
            code = cmd_validate(common, buffer);
        } else if (decompose->parsed()) {
            code = cmd_decompose(common, buffer);
        } else if (simulate->parsed()) {
            code = cmd_simulate(common, assign, buffer);
        } else if (satisfy->parsed()) {
            code = cmd_satisfy(common, sat, buffer);
        } else if (oracle->parsed()) {
            code = cmd_oracle(common, oracle_opts, buffer);
        } else {
            code = cmd_gen(gen_random->parsed() ? "random" : "3sat", common, gen, buffer);
        }
    } catch (const ValidationError &e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ResourceError &e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    std::string text = buffer.str();
    if (common.timing && !gen_cmd->parsed()) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        text += (common.format == "records" ? "wall_seconds=" : "wall_seconds: ") + fmt(secs) + "\n";
    }
    try {
        emit(common, text, out);
    } catch (const ValidationError &e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
    return code;
}

}  // namespace twsat
