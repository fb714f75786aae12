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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "twsat/circuit.h"
#include "twsat/generators.h"
#include "twsat/oracle.h"
#include "twsat/text_format.h"

using namespace twsat;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::map<std::string, std::string> records(const std::string &text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "twsat-report v1");
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        kv.emplace(line.substr(0, eq), line.substr(eq + 1));
    }
    return kv;
}

class TempDir {
   public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("twsat_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() {
        fs::remove_all(path_);
    }
    std::string write(const std::string &name, const std::string &text) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string file(const std::string &name) const {
        return (path_ / name).string();
    }

   private:
    fs::path path_;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

QuantumCircuit one_gate(const Matrix &u, int init, const Matrix &m) {
    CircuitBuilder b(2);
    b.define_gate(make_gate("U", 2, {u}));
    int w = b.input(init);
    w = b.apply("U", {w})[0];
    b.output(w, m);
    return b.finish();
}

}  // namespace

TEST(cli, satisfy_toy) {
    TempDir dir;
    auto path = dir.write("toy.json", format_circuit(one_gate(identity_matrix(2), kUninitialized, basis_projector(2, 1))));
    auto r = run({"satisfy", path, "--delta", "0.1", "--format", "records"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto kv = records(r.out);
    EXPECT_EQ(kv["command"], "satisfy");
    EXPECT_EQ(kv["y"], "1");
    EXPECT_NEAR(std::stod(kv["probability"]), 1.0, 1e-12);
    EXPECT_LE(std::stod(kv["certified_bound"]), 0.1 * (1 + 1e-9));
    EXPECT_EQ(kv.count("wall_seconds"), 0u);
}

TEST(cli, simulate_hadamard) {
    TempDir dir;
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    auto path = dir.write("h.json", format_circuit(one_gate(h, 0, basis_projector(2, 0))));
    auto r = run({"simulate", path, "--format", "records"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(records(r.out)["probability"]), 0.5, 1e-12);
}

TEST(cli, simulate_with_assignment) {
    TempDir dir;
    auto path = dir.write("x.json", format_circuit(one_gate(identity_matrix(2), kUninitialized, basis_projector(2, 1))));
    EXPECT_EQ(run({"simulate", path}).code, 1);
    auto r = run({"simulate", path, "--assign", "1", "--format", "records"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(records(r.out)["probability"]), 1.0, 1e-12);
}

TEST(cli, satisfy_agrees_with_oracle) {
    TempDir dir;
    for (int seed = 0; seed < 20; seed++) {
        std::string path = dir.file("c" + std::to_string(seed) + ".json");
        std::vector<std::string> gen{"gen", "random", "--inputs", std::to_string(2 + seed % 3), "--gates",
                                     std::to_string(3 + seed % 3), "--uninitialized", std::to_string(1 + seed % 2),
                                     "--structure", seed % 2 ? "tree" : "ladder", "--seed", std::to_string(seed),
                                     "--out", path};
        ASSERT_EQ(run(gen).code, 0);
        auto s = run({"satisfy", path, "--delta", "0.05", "--format", "records"});
        auto o = run({"oracle", path, "--format", "records"});
        ASSERT_EQ(s.code, 0) << s.err;
        ASSERT_EQ(o.code, 0) << o.err;
        double ps = std::stod(records(s.out)["probability"]);
        double po = std::stod(records(o.out)["probability"]);
        EXPECT_LE(std::abs(ps - po), 0.05) << "seed " << seed;
    }
}

TEST(cli, generated_circuits_validate) {
    TempDir dir;
    for (int seed = 0; seed < 10; seed++) {
        for (std::string kind : {"random", "3sat"}) {
            std::vector<std::string> args{"gen", kind, "--seed", std::to_string(seed)};
            if (kind == "random") {
                args.insert(args.end(), {"--inputs", "4", "--gates", "6", "--d", std::to_string(2 + seed % 2)});
            } else {
                args.insert(args.end(), {"--vars", "3", "--clauses", "3", "--amplify", std::to_string(seed % 3)});
            }
            auto g = run(args);
            ASSERT_EQ(g.code, 0) << g.err;
            auto path = dir.write("g.json", g.out);
            auto v = run({"validate", path, "--format", "records"});
            EXPECT_EQ(v.code, 0) << v.out;
            EXPECT_EQ(records(v.out)["status"], "ok");
        }
    }
}

TEST(cli, gen_from_dimacs) {
    TempDir dir;
    auto cnf = dir.write("f.cnf", "p cnf 3 1\n1 2 3 0\n");
    auto g = run({"gen", "3sat", "--dimacs", cnf});
    ASSERT_EQ(g.code, 0) << g.err;
    QuantumCircuit c = parse_circuit(g.out);
    EXPECT_EQ(c.num_uninitialized(), 3);
    EXPECT_EQ(run({"gen", "3sat", "--dimacs", dir.file("missing.cnf")}).code, 1);
}

TEST(cli, reports_are_byte_identical_across_runs_and_threads) {
    TempDir dir;
    auto path = dir.write("v.json", format_circuit(gen_3sat_verifier(random_3cnf(3, 3, 4, true))));
    auto a = run({"satisfy", path, "--epsilon", "1e-3", "--format", "records", "--threads", "1"});
    auto b = run({"satisfy", path, "--epsilon", "1e-3", "--format", "records", "--threads", "8"});
    auto c = run({"satisfy", path, "--epsilon", "1e-3", "--format", "records", "--threads", "1"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(cli, validate_reports_issues) {
    TempDir dir;
    auto good = dir.write("net.txt", "d-network v1 2\n1 1\n1 1\n");
    auto r = run({"validate", good, "--format", "records"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(records(r.out)["kind"], "network");
    auto bad = dir.write("bad.txt", "d-network v1 3\n1 1\n1 1\n1 1\n");
    r = run({"validate", bad, "--format", "records"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(records(r.out)["status"], "invalid");
    EXPECT_EQ(run({"validate", dir.write("junk.txt", "hello")}).code, 1);
    EXPECT_EQ(run({"validate", dir.file("missing.json")}).code, 1);
}

TEST(cli, decompose_network) {
    TempDir dir;
    auto path = dir.write("net.txt", "d-network v1 3\n3 1 2 3\n2 1 4\n3 2 3 4\n");
    auto r = run({"decompose", path, "--format", "records"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto kv = records(r.out);
    EXPECT_EQ(kv["positions"], "3");
    EXPECT_EQ(kv["rank"], kv["carving_width"]);
    std::string tree;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("line=", 0) == 0) {
            tree += line.substr(5) + "\n";
        }
    }
    EXPECT_EQ(parse_contraction_tree(tree).nodes.size(), 5u);
}

TEST(cli, exit_codes) {
    TempDir dir;
    auto path = dir.write("toy.json", format_circuit(one_gate(identity_matrix(2), kUninitialized, basis_projector(2, 1))));
    EXPECT_EQ(run({"satisfy", path}).code, 1);
    EXPECT_EQ(run({"satisfy", path, "--delta", "0.1", "--epsilon", "0.1"}).code, 1);
    auto capped = run({"satisfy", path, "--epsilon", "0.01", "--max-set-size", "1"});
    EXPECT_EQ(capped.code, 2);
    EXPECT_NE(capped.err.find("node"), std::string::npos);
    auto oracle = run({"oracle", path, "--max-assignments", "1"});
    EXPECT_EQ(oracle.code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(cli, out_and_timing) {
    TempDir dir;
    auto path = dir.write("toy.json", format_circuit(one_gate(identity_matrix(2), kUninitialized, basis_projector(2, 1))));
    auto target = dir.file("report.txt");
    auto r = run({"oracle", path, "--format", "records", "--out", target, "--timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    auto kv = records(read_file(target));
    EXPECT_EQ(kv["y"], "1");
    EXPECT_GE(std::stod(kv["wall_seconds"]), 0.0);
}
