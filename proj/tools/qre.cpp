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

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qre/dense.hpp"
#include "qre/pipeline.hpp"
#include "qre/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct SystemFlags {
  std::string system;
  std::vector<int> lengths;
  bool spinless = false;
  double rs = 0.0;
  double volume = 0.0;
  int eta = -1;
  int lx = 0, ly = 0;
  double tau = 1.0, u = 4.0;
  bool periodic = false;
  std::string nuclei_path;
};

void add_system_flags(CLI::App* cmd, SystemFlags& f) {
  cmd->add_option("--system", f.system, "jellium, material, or hubbard")->required();
  cmd->add_option("--lengths", f.lengths, "grid side lengths (jellium/material)")
      ->delimiter(',');
  cmd->add_flag("--spinless", f.spinless, "drop the spin degree of freedom");
  cmd->add_option("--rs", f.rs, "Wigner-Seitz radius in Bohr");
  cmd->add_option("--volume", f.volume, "explicit cell volume in Bohr^d");
  cmd->add_option("--eta", f.eta, "electron count (default: half filling)");
  cmd->add_option("--lx", f.lx, "Hubbard lattice width");
  cmd->add_option("--ly", f.ly, "Hubbard lattice height");
  cmd->add_option("--tau", f.tau, "Hubbard hopping integral");
  cmd->add_option("--u", f.u, "Hubbard on-site interaction");
  cmd->add_flag("--periodic", f.periodic, "periodic Hubbard boundary");
  cmd->add_option("--nuclei", f.nuclei_path, "nuclei file: one 'x y z charge' per line");
}

qre::json system_json(const SystemFlags& f) {
  qre::json s;
  s["kind"] = f.system;
  if (f.system == "hubbard") {
    s["lx"] = f.lx;
    s["ly"] = f.ly;
    s["tau"] = f.tau;
    s["u"] = f.u;
    s["periodic"] = f.periodic;
    if (f.eta >= 0) s["eta"] = f.eta;
    return s;
  }
  s["lengths"] = f.lengths;
  s["spinful"] = !f.spinless;
  if (f.rs > 0.0) s["rs"] = f.rs;
  if (f.volume > 0.0) s["volume"] = f.volume;
  if (f.eta >= 0) s["eta"] = f.eta;
  if (!f.nuclei_path.empty()) {
    std::ifstream in(f.nuclei_path);
    if (!in) throw qre::ConfigError("cannot open nuclei file: " + f.nuclei_path);
    qre::json rows = qre::json::array();
    double x, y, z, charge;
    while (in >> x >> y >> z >> charge) rows.push_back({x, y, z, charge});
    s["nuclei"] = rows;
  }
  return s;
}

qre::FermionHamiltonian build_system(const SystemFlags& f) {
  auto spec = qre::parse_system(system_json(f));
  qre::RunConfig cfg;
  cfg.system = spec;
  cfg.step = qre::StepKind::SPLIT;  // no fswap reordering for direct dumps
  return qre::build_hamiltonian(cfg);
}

qre::TrotterOrdering build_ordering(const qre::FermionHamiltonian& h, const std::string& step,
                                    bool per_layer) {
  if (step == "fswap") return qre::fswap_ordering(h, per_layer);
  if (step == "split-tv") return qre::split_operator_ordering(h, qre::SplitOrder::TV);
  if (step == "split-vt") return qre::split_operator_ordering(h, qre::SplitOrder::VT);
  if (step == "split")
    return qre::split_operator_ordering(h, qre::recommend_split_order(h));
  throw qre::ConfigError("step must be fswap, split, split-tv, or split-vt");
}

int env_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("QRE_WORKERS")) return std::max(1, std::atoi(env));
  return 1;
}

std::optional<std::string> env_checkpoint(const std::string& flag_value,
                                          const std::string& stem) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("QRE_CHECKPOINT_DIR"))
    return std::string(env) + "/" + stem + ".ckpt";
  return std::nullopt;
}

void emit(const qre::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trotterized phase-estimation resource estimator"};
  app.require_subcommand(1);

  SystemFlags sys;
  std::string step = "split", basis = "givens", format = "pauli", scope = "all";
  std::string config_path, out_path, in_path, checkpoint, target = "relative";
  std::string split_order = "auto";
  bool per_layer = false;
  int hwp_ancillae = 0, workers = 0;
  double w_override = 0.0, fraction = 0.005, abs_value = 0.0, proxy = 0.0, p_phys = 1e-3;
  long long nr_override = 0, nd_override = 0, logical = 0, t_gates = 0, toffoli = 0;

  auto* c_ham = app.add_subcommand("hamiltonian", "dump Hamiltonian coefficients");
  add_system_flags(c_ham, sys);
  c_ham->add_option("--format", format, "pauli (text) or json");
  c_ham->add_option("--out", out_path, "output path (default stdout)");

  auto* c_ord = app.add_subcommand("ordering", "dump Trotter fragment boundaries");
  add_system_flags(c_ord, sys);
  c_ord->add_option("--step", step, "fswap, split, split-tv, split-vt");
  c_ord->add_flag("--per-layer", per_layer, "merge fswap fragments per swap layer");
  c_ord->add_option("--out", out_path, "output path");

  auto* c_norm = app.add_subcommand("trotter-norm", "compute the Trotter error norm W");
  add_system_flags(c_norm, sys);
  c_norm->add_option("--step", step, "fswap, split, split-tv, split-vt");
  c_norm->add_flag("--per-layer", per_layer, "merge fswap fragments per swap layer");
  c_norm->add_option("--workers", workers, "worker threads (or QRE_WORKERS)");
  c_norm->add_option("--checkpoint", checkpoint, "checkpoint file for resumable runs");
  c_norm->add_option("--out", out_path, "output path");

  auto* c_gates = app.add_subcommand("gates", "per-step gate counts");
  add_system_flags(c_gates, sys);
  c_gates->add_option("--step", step, "fswap or split");
  c_gates->add_option("--basis", basis, "ffft or givens (split)");
  c_gates->add_option("--hwp-ancillae", hwp_ancillae, "ancilla budget for phasing");
  c_gates->add_option("--out", out_path, "output path");

  auto* c_opt = app.add_subcommand("optimize", "minimize the phase-estimation T count");
  add_system_flags(c_opt, sys);
  c_opt->add_option("--step", step, "fswap or split");
  c_opt->add_option("--basis", basis, "ffft or givens (split)");
  c_opt->add_option("--hwp-ancillae", hwp_ancillae, "ancilla budget for phasing");
  c_opt->add_option("--w", w_override, "use this W instead of computing it");
  c_opt->add_option("--nr", nr_override, "use this rotation count");
  c_opt->add_option("--nd", nd_override, "use this direct T-equivalent count");
  c_opt->add_option("--target", target, "relative or absolute");
  c_opt->add_option("--fraction", fraction, "relative precision fraction");
  c_opt->add_option("--abs-value", abs_value, "absolute precision target");
  c_opt->add_option("--proxy", proxy, "ground-state energy proxy override");
  c_opt->add_option("--workers", workers, "worker threads");
  c_opt->add_option("--out", out_path, "output path");

  auto* c_est = app.add_subcommand("estimate", "surface-code physical estimate");
  c_est->add_option("--in", in_path, "pipeline/optimize report JSON");
  c_est->add_option("--logical", logical, "logical qubit count");
  c_est->add_option("--t", t_gates, "total T gates");
  c_est->add_option("--toffoli", toffoli, "total Toffoli gates");
  c_est->add_option("--p", p_phys, "physical error rate");
  c_est->add_option("--out", out_path, "output path");

  auto* c_run = app.add_subcommand("run", "full pipeline from a config file");
  c_run->add_option("--config", config_path, "config JSON path")->required();
  c_run->add_option("--out", out_path, "report path (default stdout)");

  auto* c_verify = app.add_subcommand("verify", "run the oracle suites");
  c_verify->add_option("--scope", scope, "pauli, trotter, hwp, or all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_ham->parsed()) {
      auto h = build_system(sys);
      if (format == "pauli") {
        auto text = qre::to_text(qre::jordan_wigner(h));
        if (out_path.empty()) {
          std::cout << text;
        } else {
          std::ofstream(out_path) << text;
        }
      } else if (format == "json") {
        qre::json j;
        j["spin_orbitals"] = h.num_orbitals();
        j["kinetic"] = std::vector<std::vector<double>>();
        j["interaction"] = std::vector<std::vector<double>>();
        for (int p = 0; p < h.num_orbitals(); ++p) {
          std::vector<double> tr(h.num_orbitals()), vr(h.num_orbitals());
          for (int q = 0; q < h.num_orbitals(); ++q) {
            tr[q] = h.kinetic(p, q);
            vr[q] = h.interaction(p, q);
          }
          j["kinetic"].push_back(tr);
          j["interaction"].push_back(vr);
        }
        std::vector<double> u(h.num_orbitals());
        for (int p = 0; p < h.num_orbitals(); ++p) u[p] = h.external(p);
        j["external"] = u;
        emit(j, out_path);
      } else {
        throw qre::ConfigError("format must be pauli or json");
      }
    } else if (c_ord->parsed()) {
      auto h = build_system(sys);
      auto o = build_ordering(h, step, per_layer);
      qre::json j;
      j["step"] = qre::step_label_name(o.label);
      j["fragments"] = o.size();
      qre::json sizes = qre::json::array();
      for (const auto& f : o.fragments) sizes.push_back(f.size());
      j["fragment_term_counts"] = sizes;
      emit(j, out_path);
    } else if (c_norm->parsed()) {
      auto h = build_system(sys);
      auto o = build_ordering(h, step, per_layer);
      qre::TrotterNormOptions opts;
      opts.workers = env_workers(workers);
      opts.checkpoint_path = env_checkpoint(checkpoint, "trotter-norm");
      auto norm = qre::trotter_error_norm(o, opts);
      qre::json j;
      j["w"] = norm.w;
      j["fragments"] = norm.fragment_count;
      j["pruned"] = norm.pruned_pairs;
      qre::json per_qubit = qre::json::array();
      for (auto [q, v] : norm.per_qubit)
        per_qubit.push_back({{"qubit", q}, {"contribution", v}});
      j["per_qubit"] = per_qubit;
      emit(j, out_path);
    } else if (c_gates->parsed()) {
      auto h = build_system(sys);
      qre::HwpBudget budget{hwp_ancillae, qre::HwpScheme::LIMITED};
      qre::GateCounts gc;
      if (step == "fswap") {
        gc = qre::fswap_step_costs(h, budget);
      } else if (step == "split") {
        gc = qre::split_step_costs(
            h, budget, basis == "ffft" ? qre::BasisChange::FFFT : qre::BasisChange::GIVENS);
      } else {
        throw qre::ConfigError("step must be fswap or split");
      }
      qre::json j;
      j["rotations"] = gc.rotations;
      j["direct_t"] = gc.direct_t;
      j["direct_toffoli"] = gc.direct_toffoli;
      j["direct_t_equivalent"] = gc.direct_t_equivalent();
      j["hwp_ancillae"] = gc.hwp_ancillae;
      j["catalysis_seeds"] = gc.catalysis_seeds;
      j["logical_qubits"] = gc.logical_system_qubits;
      emit(j, out_path);
    } else if (c_opt->parsed()) {
      double w = w_override;
      long long nr = nr_override, nd = nd_override;
      double delta_e;
      if (w <= 0.0 || nr <= 0) {
        qre::json cfg_json;
        cfg_json["system"] = system_json(sys);
        cfg_json["step"] = step == "fswap" ? "fswap" : "split";
        cfg_json["basis"] = basis;
        cfg_json["hwp_ancillae"] = hwp_ancillae;
        cfg_json["target"] = {{"mode", target}, {"fraction", fraction}};
        if (abs_value > 0.0) cfg_json["target"]["value"] = abs_value;
        if (proxy != 0.0) cfg_json["target"]["proxy"] = proxy;
        cfg_json["workers"] = env_workers(workers);
        auto cfg = qre::parse_config(cfg_json);
        auto report = qre::run_pipeline(cfg);
        emit(report, out_path);
        std::cout << qre::report_csv_row(report, sys.system) << "\n";
        return 0;
      }
      if (target == "relative") {
        if (proxy == 0.0) throw qre::ConfigError("--proxy required with --w overrides");
        delta_e = fraction * std::abs(proxy);
      } else {
        if (abs_value <= 0.0) throw qre::ConfigError("--abs-value required");
        delta_e = abs_value;
      }
      auto res = qre::minimize(delta_e, w, double(nr), double(nd));
      qre::json j;
      j["budget"] = {{"total", delta_e},
                     {"trotter", res.budget.trotter},
                     {"phase_estimation", res.budget.phase_est},
                     {"synthesis", res.budget.synthesis}};
      j["cost"] = {{"n_pe", res.cost.reported_n_pe()},
                   {"n_ht", res.cost.reported_n_ht()},
                   {"step_time", res.cost.step_time},
                   {"total_t", res.cost.total_t},
                   {"wt3_valid", res.cost.wt3_valid}};
      emit(j, out_path);
    } else if (c_est->parsed()) {
      if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw qre::ConfigError("cannot open " + in_path);
        qre::json report = qre::json::parse(in);
        logical = report.at("gates").at("logical_qubits").get<long long>();
        t_gates = report.at("cost").at("total_t").get<long long>();
        toffoli = report.at("cost").at("total_toffoli").get<long long>();
      }
      if (logical <= 0) throw qre::ConfigError("need --logical/--t/--toffoli or --in report");
      qre::PhysicalAssumptions pa;
      pa.p = p_phys;
      pa.validate();
      auto est = qre::estimate(logical, t_gates, toffoli, pa);
      qre::json j;
      j["scheme"] = qre::scheme_name(est.scheme);
      j["level1_distance"] = est.level1_distance;
      j["level2_distance"] = est.level2_distance;
      j["data_distance"] = est.data_distance;
      j["physical_qubits"] = est.physical_qubits;
      j["hours"] = est.hours;
      j["failure_probability"] = est.failure_probability;
      emit(j, out_path);
      std::cout << logical << "," << toffoli << "," << t_gates << "," << est.physical_qubits
                << "," << est.hours << "\n";
    } else if (c_run->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw qre::ConfigError("cannot open config: " + config_path);
      qre::json cfg_json;
      try {
        cfg_json = qre::json::parse(in);
      } catch (const qre::json::exception& e) {
        throw qre::ConfigError(std::string("config parse error: ") + e.what());
      }
      auto cfg = qre::parse_config(cfg_json);
      if (const char* env = std::getenv("QRE_WORKERS")) cfg.workers = std::max(1, std::atoi(env));
      if (!cfg.checkpoint_path)
        cfg.checkpoint_path = env_checkpoint("", "run");
      auto start = std::chrono::steady_clock::now();
      auto report = qre::run_pipeline(cfg);
      auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
      emit(report, out_path);
      std::cerr << "wall time: " << secs.count() << " s\n";
    } else if (c_verify->parsed()) {
      qre::VerifyReport rep;
      if (scope == "pauli")
        rep = qre::verify_pauli();
      else if (scope == "trotter")
        rep = qre::verify_trotter();
      else if (scope == "hwp")
        rep = qre::verify_hwp();
      else if (scope == "all")
        rep = qre::verify_all();
      else
        throw qre::ConfigError("scope must be pauli, trotter, hwp, or all");
      for (const auto& line : rep.lines) std::cout << line << "\n";
      if (!rep.passed) return kExitInvariant;
    }
  } catch (const qre::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
