// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qre/pipeline.hpp"
#include "qre/verify.hpp"

using namespace qre;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(QRE_CLI_PATH) + " " + args;
  if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json hubbard_config(int lx, int ly, int anc, const std::string& step,
                    const std::string& basis) {
  json cfg;
  cfg["system"] = {{"kind", "hubbard"}, {"lx", lx},   {"ly", ly},
                   {"tau", 1.0},        {"u", 4.0},    {"periodic", true}};
  cfg["step"] = step;
  cfg["basis"] = basis;
  cfg["hwp_ancillae"] = anc;
  cfg["target"] = {{"mode", "relative"}, {"fraction", 0.005}};
  cfg["physical"] = {{"p", 1e-3}};
  cfg["workers"] = 1;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  SECTION("valid hubbard config round trips") {
    auto cfg = parse_config(hubbard_config(2, 2, 4, "fswap", "givens"));
    CHECK(cfg.system.kind == SystemKind::HUBBARD);
    CHECK(cfg.hwp_ancillae == 4);
  }
  SECTION("FFFT with a non-power-of-two side is rejected") {
    json cfg;
    cfg["system"] = {{"kind", "jellium"}, {"lengths", {5, 5}}, {"rs", 10.0}};
    cfg["step"] = "split";
    cfg["basis"] = "ffft";
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);
  }
  SECTION("negative ancilla budget rejected") {
    auto cfg = hubbard_config(2, 2, -1, "fswap", "givens");
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);
  }
  SECTION("eta above the orbital count rejected") {
    json cfg;
    cfg["system"] = {{"kind", "jellium"}, {"lengths", {2, 2}}, {"rs", 10.0}, {"eta", 99}};
    cfg["step"] = "split";
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);
  }
  SECTION("unknown keys rejected") {
    auto cfg = hubbard_config(2, 2, 0, "fswap", "givens");
    cfg["tpyo"] = 1;
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);
  }
  SECTION("missing volume information rejected") {
    json cfg;
    cfg["system"] = {{"kind", "jellium"}, {"lengths", {2, 2}}};
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);
  }
}

TEST_CASE("pipeline reports are deterministic") {
  auto cfg = parse_config(hubbard_config(2, 2, 2, "fswap", "givens"));
  auto a = run_pipeline(cfg).dump();
  auto b = run_pipeline(cfg).dump();
  CHECK(a == b);
}

TEST_CASE("pipeline report carries every stage") {
  auto cfg = parse_config(hubbard_config(2, 2, 2, "split", "givens"));
  auto report = run_pipeline(cfg);
  for (const char* key :
       {"config", "provenance", "hamiltonian", "trotter_norm", "gates", "budget", "cost",
        "estimate"})
    CHECK(report.contains(key));
  CHECK(report["trotter_norm"]["w"].get<double>() > 0.0);
  CHECK(report["cost"]["total_t"].get<long long>() > 0);
  CHECK(report["estimate"]["physical_qubits"].get<long long>() > 0);
  CHECK(report["provenance"]["version"].get<std::string>() == kVersion);
}

TEST_CASE("worker count invariance through the pipeline") {
  auto cfg1 = parse_config(hubbard_config(2, 2, 2, "fswap", "givens"));
  auto cfg8 = cfg1;
  cfg8.workers = 8;
  auto r1 = run_pipeline(cfg1);
  auto r8 = run_pipeline(cfg8);
  CHECK(r1["trotter_norm"]["w"].get<double>() == r8["trotter_norm"]["w"].get<double>());
}

TEST_CASE("csv row formatting") {
  auto cfg = parse_config(hubbard_config(2, 2, 2, "split", "givens"));
  auto report = run_pipeline(cfg);
  auto row = report_csv_row(report, "FH 2x2");
  CHECK(row.rfind("FH 2x2,2,10,", 0) == 0);  // system, anc, logical = 8+2
}

TEST_CASE("cli binary") {
  SECTION("hamiltonian dump") {
    CHECK(run_cli("hamiltonian --system hubbard --lx 2 --ly 1 --tau 1 --u 4",
                  "cli_ham.tmp") == 0);
    auto op = from_text(slurp("cli_ham.tmp"));
    CHECK(op.size() > 0);
    std::remove("cli_ham.tmp");
  }
  SECTION("run produces byte-identical reports") {
    std::ofstream("cli_cfg.tmp") << hubbard_config(2, 2, 2, "fswap", "givens").dump();
    REQUIRE(run_cli("run --config cli_cfg.tmp --out cli_r1.tmp", "/dev/null") == 0);
    REQUIRE(run_cli("run --config cli_cfg.tmp --out cli_r2.tmp", "/dev/null") == 0);
    CHECK(slurp("cli_r1.tmp") == slurp("cli_r2.tmp"));
    CHECK(!slurp("cli_r1.tmp").empty());
    for (const char* f : {"cli_cfg.tmp", "cli_r1.tmp", "cli_r2.tmp"}) std::remove(f);
  }
  SECTION("invalid config exits with code 2") {
    std::ofstream("cli_bad.tmp") << hubbard_config(2, 2, 2, "banana", "givens").dump();
    CHECK(run_cli("run --config cli_bad.tmp", "/dev/null") == 2);
    std::remove("cli_bad.tmp");
    CHECK(run_cli("hamiltonian --system jellium --lengths 2,2", "/dev/null") == 2);
  }
  SECTION("trotter-norm emits W") {
    CHECK(run_cli("trotter-norm --system hubbard --lx 2 --ly 1 --step split-tv",
                  "cli_norm.tmp") == 0);
    auto j = json::parse(slurp("cli_norm.tmp"));
    CHECK(j["w"].get<double>() > 0.0);
    CHECK(j["fragments"].get<int>() == 2);
    std::remove("cli_norm.tmp");
  }
  SECTION("gates subcommand") {
    CHECK(run_cli("gates --system hubbard --lx 2 --ly 2 --periodic --step fswap "
                  "--hwp-ancillae 4",
                  "cli_gates.tmp") == 0);
    auto j = json::parse(slurp("cli_gates.tmp"));
    CHECK(j["rotations"].get<long long>() > 0);
    CHECK(j["logical_qubits"].get<long long>() == 12);
    std::remove("cli_gates.tmp");
  }
  SECTION("estimate from explicit counts") {
    CHECK(run_cli("estimate --logical 132 --t 23000000 --toffoli 250000 --p 1e-3",
                  "cli_est.tmp") == 0);
    CHECK(slurp("cli_est.tmp").find("physical_qubits") != std::string::npos);
    std::remove("cli_est.tmp");
  }
  SECTION("optimize with explicit overrides") {
    CHECK(run_cli("optimize --system hubbard --lx 2 --ly 2 --w 10 --nr 100 --nd 50 "
                  "--target absolute --abs-value 0.01",
                  "cli_opt.tmp") == 0);
    auto j = json::parse(slurp("cli_opt.tmp"));
    CHECK(j["cost"]["total_t"].get<double>() > 0.0);
    std::remove("cli_opt.tmp");
  }
}

TEST_CASE("verify scopes") {
  auto pauli = verify_pauli();
  CHECK(pauli.passed);
  auto hwp = verify_hwp();
  CHECK(hwp.passed);

  SECTION("a perturbed multiply convention is caught") {
    auto bad = [](const QubitOperator& a, const QubitOperator& b) {
      QubitOperator out;
      for (const auto& [sa, ca] : a.terms())
        for (const auto& [sb, cb] : b.terms()) {
          auto [phase, s] = multiply(sa, sb);
          if (!commutes_trivially(sa, sb)) phase = -phase;  // wrong convention
          out.add_term(s, ca * cb * phase);
        }
      return out;
    };
    auto broken = verify_pauli(bad);
    CHECK_FALSE(broken.passed);
  }
  SECTION("cli verify exit codes") {
    CHECK(run_cli("verify --scope hwp", "/dev/null") == 0);
    CHECK(run_cli("verify --scope banana", "/dev/null") == 2);
  }
}
