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

#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qre/gate_count.hpp"
#include "qre/hamiltonians.hpp"
#include "qre/optimizer.hpp"
#include "qre/orderings.hpp"
#include "qre/surface_code.hpp"
#include "qre/trotter_error.hpp"
#include "qre/version.hpp"

namespace qre {

using nlohmann::json;

/** Configuration errors carry CLI exit code 2. */
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class SystemKind { JELLIUM, MATERIAL, HUBBARD };
enum class StepKind { FSWAP, SPLIT };
enum class TargetMode { RELATIVE, ABSOLUTE };

struct SystemSpec {
  SystemKind kind = SystemKind::JELLIUM;
  // jellium / material
  GridSpec grid;
  NucleiSpec nuclei;
  // hubbard
  int lx = 0, ly = 0;
  double tau = 1.0, u = 4.0;
  bool periodic = true;
};

struct PrecisionTarget {
  TargetMode mode = TargetMode::RELATIVE;
  double fraction = 0.005;
  std::optional<double> absolute_value;
  std::optional<double> energy_proxy;  // overrides the built-in proxies
};

struct RunConfig {
  SystemSpec system;
  StepKind step = StepKind::SPLIT;
  std::optional<SplitOrder> split_order;  // empty = choose by Trotter error norm
  BasisChange basis = BasisChange::GIVENS;
  bool fswap_per_layer = false;
  int hwp_ancillae = 0;
  PrecisionTarget target;
  PhysicalAssumptions physical;
  int workers = 1;
  std::optional<std::string> checkpoint_path;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

}  // namespace detail

inline SystemSpec parse_system(const json& j) {
  SystemSpec s;
  std::string kind = detail::get_or<std::string>(j, "kind", "");
  if (kind == "jellium")
    s.kind = SystemKind::JELLIUM;
  else if (kind == "material")
    s.kind = SystemKind::MATERIAL;
  else if (kind == "hubbard")
    s.kind = SystemKind::HUBBARD;
  else
    throw ConfigError("system.kind must be jellium, material, or hubbard");

  if (s.kind == SystemKind::HUBBARD) {
    detail::require_keys(j, {"kind", "lx", "ly", "tau", "u", "periodic", "eta"}, "system");
    s.lx = detail::get_or<int>(j, "lx", 0);
    s.ly = detail::get_or<int>(j, "ly", 0);
    if (s.lx < 1 || s.ly < 1) throw ConfigError("hubbard lattice sides must be positive");
    s.tau = detail::get_or<double>(j, "tau", 1.0);
    s.u = detail::get_or<double>(j, "u", 4.0);
    s.periodic = detail::get_or<bool>(j, "periodic", true);
    s.grid.lengths = {s.lx, s.ly};
    s.grid.spinful = true;
    if (j.contains("eta")) s.grid.electron_count = j.at("eta").get<int>();
  } else {
    detail::require_keys(j, {"kind", "lengths", "spinful", "rs", "volume", "eta", "nuclei"},
                         "system");
    if (!j.contains("lengths")) throw ConfigError("system.lengths is required");
    s.grid.lengths = j.at("lengths").get<std::vector<int>>();
    s.grid.spinful = detail::get_or<bool>(j, "spinful", true);
    if (j.contains("rs")) s.grid.wigner_seitz_radius = j.at("rs").get<double>();
    if (j.contains("volume")) s.grid.volume_override = j.at("volume").get<double>();
    if (j.contains("eta")) s.grid.electron_count = j.at("eta").get<int>();
    if (!s.grid.wigner_seitz_radius && !s.grid.volume_override)
      throw ConfigError("jellium/material needs rs or volume");
    if (s.kind == SystemKind::MATERIAL) {
      if (!j.contains("nuclei")) throw ConfigError("material needs nuclei");
      for (const auto& row : j.at("nuclei")) {
        auto v = row.get<std::vector<double>>();
        if (v.size() != s.grid.lengths.size() + 1)
          throw ConfigError("each nucleus is [coords..., charge]");
        Nucleus n;
        n.position.assign(v.begin(), v.end() - 1);
        n.charge = v.back();
        if (n.charge < 0.0) throw ConfigError("nuclear charge must be non-negative");
        s.nuclei.push_back(std::move(n));
      }
    }
    try {
      s.grid.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return s;
}

inline RunConfig parse_config(const json& j) {
  detail::require_keys(j,
                       {"system", "step", "split_order", "basis", "fswap_per_layer",
                        "hwp_ancillae", "target", "physical", "workers", "checkpoint"},
                       "config");
  RunConfig c;
  if (!j.contains("system")) throw ConfigError("config.system is required");
  c.system = parse_system(j.at("system"));

  std::string step = detail::get_or<std::string>(j, "step", "split");
  if (step == "fswap")
    c.step = StepKind::FSWAP;
  else if (step == "split")
    c.step = StepKind::SPLIT;
  else
    throw ConfigError("step must be fswap or split");

  std::string so = detail::get_or<std::string>(j, "split_order", "auto");
  if (so == "tv")
    c.split_order = SplitOrder::TV;
  else if (so == "vt")
    c.split_order = SplitOrder::VT;
  else if (so != "auto")
    throw ConfigError("split_order must be auto, tv, or vt");

  std::string basis = detail::get_or<std::string>(j, "basis", "givens");
  if (basis == "ffft")
    c.basis = BasisChange::FFFT;
  else if (basis == "givens")
    c.basis = BasisChange::GIVENS;
  else
    throw ConfigError("basis must be ffft or givens");

  c.fswap_per_layer = detail::get_or<bool>(j, "fswap_per_layer", false);
  c.hwp_ancillae = detail::get_or<int>(j, "hwp_ancillae", 0);
  if (c.hwp_ancillae < 0) throw ConfigError("hwp_ancillae must be non-negative");

  if (j.contains("target")) {
    const auto& t = j.at("target");
    detail::require_keys(t, {"mode", "fraction", "value", "proxy"}, "target");
    std::string mode = detail::get_or<std::string>(t, "mode", "relative");
    if (mode == "relative")
      c.target.mode = TargetMode::RELATIVE;
    else if (mode == "absolute")
      c.target.mode = TargetMode::ABSOLUTE;
    else
      throw ConfigError("target.mode must be relative or absolute");
    c.target.fraction = detail::get_or<double>(t, "fraction", 0.005);
    if (c.target.fraction <= 0.0) throw ConfigError("target.fraction must be positive");
    if (t.contains("value")) c.target.absolute_value = t.at("value").get<double>();
    if (t.contains("proxy")) c.target.energy_proxy = t.at("proxy").get<double>();
  }

  if (j.contains("physical")) {
    const auto& p = j.at("physical");
    detail::require_keys(p, {"p", "routing_factor", "decoder_floor"}, "physical");
    c.physical.p = detail::get_or<double>(p, "p", 1e-3);
    c.physical.routing_factor = detail::get_or<double>(p, "routing_factor", 1.5);
    c.physical.decoder_floor = detail::get_or<bool>(p, "decoder_floor", true);
    try {
      c.physical.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  c.workers = detail::get_or<int>(j, "workers", 1);
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (j.contains("checkpoint")) c.checkpoint_path = j.at("checkpoint").get<std::string>();

  // Cross-field constraints surfaced before any work happens.
  if (c.step == StepKind::SPLIT && c.basis == BasisChange::FFFT) {
    for (int l : c.system.grid.lengths)
      if (l != 4 && l != 8 && l != 16)
        throw ConfigError("FFFT basis change requires every side length in {4, 8, 16}");
  }
  if (c.step == StepKind::SPLIT) {
    for (int l : c.system.grid.lengths)
      if (l < 2) throw ConfigError("split-operator basis change needs side lengths >= 2");
  }
  return c;
}

/** The Hamiltonian a config describes, with the fswap spin-ordering rule applied. */
inline FermionHamiltonian build_hamiltonian(const RunConfig& c) {
  switch (c.system.kind) {
    case SystemKind::HUBBARD:
      return hubbard(c.system.lx, c.system.ly, c.system.tau, c.system.u, c.system.periodic);
    case SystemKind::JELLIUM:
    case SystemKind::MATERIAL: {
      GridSpec g = c.system.grid;
      // The swap-network step merges its boundary layers; with spin that
      // bound needs the blocked sector order.
      if (c.step == StepKind::FSWAP && g.spinful) g.spin_blocked = true;
      return c.system.kind == SystemKind::JELLIUM ? jellium(g) : material(g, c.system.nuclei);
    }
  }
  throw ConfigError("unreachable system kind");
}

inline double resolve_energy_proxy(const RunConfig& c) {
  if (c.target.energy_proxy) return *c.target.energy_proxy;
  switch (c.system.kind) {
    case SystemKind::JELLIUM:
      if (!c.system.grid.wigner_seitz_radius)
        throw ConfigError("jellium proxy needs rs; supply target.proxy otherwise");
      return jellium_energy_proxy(*c.system.grid.wigner_seitz_radius, c.system.grid.eta());
    case SystemKind::HUBBARD:
      return hubbard_energy_proxy(c.system.u / c.system.tau, c.system.lx * c.system.ly) *
             c.system.tau;
    case SystemKind::MATERIAL:
      throw ConfigError("materials need a user-supplied energy proxy (target.proxy)");
  }
  throw ConfigError("unreachable system kind");
}

inline double resolve_error_target(const RunConfig& c) {
  if (c.target.mode == TargetMode::ABSOLUTE) {
    if (c.target.absolute_value) return *c.target.absolute_value;
    return c.system.kind == SystemKind::HUBBARD ? c.system.tau / 100.0 : 0.0016;
  }
  return c.target.fraction * std::abs(resolve_energy_proxy(c));
}

inline json config_to_json(const RunConfig& c);

/**
 * Full chain: Hamiltonian -> ordering -> Trotter error norm -> gate counts ->
 * budget minimization -> surface-code estimate. The report is deterministic
 * for a given config and version.
 */
inline json run_pipeline(const RunConfig& c) {
  FermionHamiltonian h = build_hamiltonian(c);
  const int n = h.num_orbitals();

  TrotterNormOptions norm_opts;
  norm_opts.workers = c.workers;
  norm_opts.checkpoint_path = c.checkpoint_path;

  TrotterOrdering ordering;
  TrotterNormResult norm;
  if (c.step == StepKind::FSWAP) {
    ordering = fswap_ordering(h, c.fswap_per_layer);
    norm = trotter_error_norm(ordering, norm_opts);
  } else {
    SplitOrder order;
    if (c.split_order) {
      order = *c.split_order;
      ordering = split_operator_ordering(h, order);
      norm = trotter_error_norm(ordering, norm_opts);
    } else {
      auto tv = split_operator_ordering(h, SplitOrder::TV);
      auto vt = split_operator_ordering(h, SplitOrder::VT);
      auto norm_tv = trotter_error_norm(tv, norm_opts);
      auto norm_vt = trotter_error_norm(vt, norm_opts);
      if (norm_tv.w <= norm_vt.w) {
        order = SplitOrder::TV;
        ordering = std::move(tv);
        norm = std::move(norm_tv);
      } else {
        order = SplitOrder::VT;
        ordering = std::move(vt);
        norm = std::move(norm_vt);
      }
    }
  }

  HwpBudget budget{c.hwp_ancillae, HwpScheme::LIMITED};
  GateCounts gates = c.step == StepKind::FSWAP
                         ? fswap_step_costs(h, budget)
                         : split_step_costs(h, budget, c.basis);

  double delta_e = resolve_error_target(c);
  auto opt = minimize(delta_e, norm.w, double(gates.rotations),
                      double(gates.direct_t_equivalent()));

  double n_pe = opt.cost.reported_n_pe();
  double n_ht = opt.cost.reported_n_ht();
  auto total_t =
      static_cast<long long>(n_pe * (double(gates.rotations) * n_ht + double(gates.direct_t)));
  auto total_toffoli = static_cast<long long>(n_pe * double(gates.direct_toffoli));
  long long logical = gates.logical_system_qubits;

  auto est = estimate(logical, total_t, total_toffoli, c.physical);

  json report;
  report["config"] = config_to_json(c);
  report["provenance"] = {{"config_hash", detail::fnv1a(config_to_json(c).dump())},
                          {"version", kVersion}};
  report["hamiltonian"] = {{"spin_orbitals", n},
                           {"jw_terms", jordan_wigner(h).size()}};
  json per_qubit = json::array();
  for (auto [q, v] : norm.per_qubit) per_qubit.push_back({{"qubit", q}, {"contribution", v}});
  report["trotter_norm"] = {{"w", norm.w},
                            {"fragments", norm.fragment_count},
                            {"pruned_pairs", norm.pruned_pairs},
                            {"per_qubit", per_qubit},
                            {"step", step_label_name(ordering.label)}};
  report["gates"] = {{"rotations", gates.rotations},
                     {"direct_t", gates.direct_t},
                     {"direct_toffoli", gates.direct_toffoli},
                     {"direct_t_equivalent", gates.direct_t_equivalent()},
                     {"hwp_ancillae", gates.hwp_ancillae},
                     {"catalysis_seeds", gates.catalysis_seeds},
                     {"logical_qubits", logical}};
  report["budget"] = {{"total", delta_e},
                      {"trotter", opt.budget.trotter},
                      {"phase_estimation", opt.budget.phase_est},
                      {"synthesis", opt.budget.synthesis},
                      {"typical_ordering", opt.typical_ordering()}};
  report["cost"] = {{"n_pe", n_pe},
                    {"n_ht", n_ht},
                    {"step_time", opt.cost.step_time},
                    {"total_t", total_t},
                    {"total_toffoli", total_toffoli},
                    {"wt3_valid", opt.cost.wt3_valid}};
  report["estimate"] = {{"scheme", scheme_name(est.scheme)},
                        {"level1_distance", est.level1_distance},
                        {"level2_distance", est.level2_distance},
                        {"data_distance", est.data_distance},
                        {"physical_qubits", est.physical_qubits},
                        {"hours", est.hours},
                        {"failure_probability", est.failure_probability}};
  return report;
}

inline json config_to_json(const RunConfig& c) {
  json j;
  json sys;
  switch (c.system.kind) {
    case SystemKind::HUBBARD:
      sys = {{"kind", "hubbard"}, {"lx", c.system.lx},     {"ly", c.system.ly},
             {"tau", c.system.tau}, {"u", c.system.u},       {"periodic", c.system.periodic}};
      break;
    case SystemKind::JELLIUM:
    case SystemKind::MATERIAL: {
      sys = {{"kind", c.system.kind == SystemKind::JELLIUM ? "jellium" : "material"},
             {"lengths", c.system.grid.lengths},
             {"spinful", c.system.grid.spinful}};
      if (c.system.grid.wigner_seitz_radius) sys["rs"] = *c.system.grid.wigner_seitz_radius;
      if (c.system.grid.volume_override) sys["volume"] = *c.system.grid.volume_override;
      if (c.system.grid.electron_count) sys["eta"] = *c.system.grid.electron_count;
      if (!c.system.nuclei.empty()) {
        json nuc = json::array();
        for (const auto& nx : c.system.nuclei) {
          json row = json::array();
          for (double v : nx.position) row.push_back(v);
          row.push_back(nx.charge);
          nuc.push_back(row);
        }
        sys["nuclei"] = nuc;
      }
      break;
    }
  }
  j["system"] = sys;
  j["step"] = c.step == StepKind::FSWAP ? "fswap" : "split";
  j["split_order"] =
      !c.split_order ? "auto" : (*c.split_order == SplitOrder::TV ? "tv" : "vt");
  j["basis"] = c.basis == BasisChange::FFFT ? "ffft" : "givens";
  j["fswap_per_layer"] = c.fswap_per_layer;
  j["hwp_ancillae"] = c.hwp_ancillae;
  j["target"] = {{"mode", c.target.mode == TargetMode::RELATIVE ? "relative" : "absolute"},
                 {"fraction", c.target.fraction}};
  if (c.target.absolute_value) j["target"]["value"] = *c.target.absolute_value;
  if (c.target.energy_proxy) j["target"]["proxy"] = *c.target.energy_proxy;
  j["physical"] = {{"p", c.physical.p},
                   {"routing_factor", c.physical.routing_factor},
                   {"decoder_floor", c.physical.decoder_floor}};
  j["workers"] = c.workers;
  return j;
}

/** One CSV row in published table column order. */
inline std::string report_csv_row(const json& report, const std::string& system_name) {
  std::ostringstream os;
  os.precision(3);
  os << system_name << "," << report.at("gates").at("hwp_ancillae").get<int>() << ","
     << report.at("gates").at("logical_qubits").get<long long>() << ","
     << report.at("cost").at("total_toffoli").get<long long>() << ","
     << report.at("cost").at("total_t").get<long long>() << ","
     << report.at("estimate").at("physical_qubits").get<long long>() << ","
     << report.at("estimate").at("hours").get<double>();
  return os.str();
}

}  // namespace qre
