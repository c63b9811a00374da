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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qre {

/** Three-way energy error split; all entries positive, summing to at most the target. */
struct ErrorBudget {
  double trotter = 0.0;     // Delta E_TS
  double phase_est = 0.0;   // Delta E_PE
  double synthesis = 0.0;   // Delta E_HT

  double total() const { return trotter + phase_est + synthesis; }
};

/** Optional variations of the phase-estimation constant; defaults are the baseline scheme. */
struct TCountConfig {
  double pe_constant = 0.76 * std::numbers::pi;
  double pe_divisor = 1.0;  // 1.52 multi-control, 1.45 median-performance variants
  double toffoli_t_factor = 2.0;
};

/**
 * Phase-estimation T cost for a given budget split:
 *   t     = sqrt(dTS / W)
 *   N_PE  = 0.76 pi / (dPE t)
 *   N_HT  = 1.15 log2(N_r / (dHT t)) + 9.2
 *   total = (N_r N_HT + N_d) N_PE
 * All values are kept real; reports ceil them (N_PE never below one step).
 */
struct CostBreakdown {
  double n_pe = 0.0;
  double n_ht = 0.0;
  double step_time = 0.0;  // t, inverse energy units
  double total_t = 0.0;
  bool wt3_valid = false;  // (dTS)^3 <= W

  double reported_n_pe() const { return std::max(1.0, std::ceil(n_pe)); }
  double reported_n_ht() const { return std::ceil(n_ht); }
};

inline CostBreakdown t_count(const ErrorBudget& budget, double w, double n_r, double n_d,
                             const TCountConfig& cfg = {}) {
  if (budget.trotter <= 0.0 || budget.phase_est <= 0.0 || budget.synthesis <= 0.0)
    throw std::invalid_argument("budget components must be positive");
  if (w <= 0.0) throw std::invalid_argument("Trotter error norm must be positive");
  if (n_r < 1.0) throw std::invalid_argument("need at least one rotation per step");
  CostBreakdown out;
  out.step_time = std::sqrt(budget.trotter / w);
  out.n_pe = cfg.pe_constant / (budget.phase_est * out.step_time) / cfg.pe_divisor;
  out.n_ht = 1.15 * std::log2(n_r / (budget.synthesis * out.step_time)) + 9.2;
  out.total_t = (n_r * out.n_ht + n_d) * out.n_pe;
  out.wt3_valid = budget.trotter * budget.trotter * budget.trotter <= w;
  return out;
}

/**
 * Jellium energy proxy: eta times the kinetic + exchange + correlation fit
 * per electron, with a = (ln 2 - 1)/(2 pi^2) and b = 20.4562557.
 */
inline double jellium_energy_proxy(double r_s, int eta) {
  if (r_s <= 0.0) throw std::invalid_argument("Wigner-Seitz radius must be positive");
  if (eta < 1) throw std::invalid_argument("need at least one electron");
  constexpr double b = 20.4562557;
  const double a = (std::log(2.0) - 1.0) / (2.0 * std::numbers::pi * std::numbers::pi);
  const double c = 9.0 * std::numbers::pi / 4.0;
  double per_electron = 0.6 * std::pow(c, 2.0 / 3.0) / (r_s * r_s) -
                        3.0 / (2.0 * std::numbers::pi) * std::cbrt(c) / r_s +
                        a * std::log(1.0 + b / r_s + b / (r_s * r_s));
  return eta * per_electron;
}

/**
 * Hubbard energy proxy in units of tau: published per-site bounds at
 * U/tau = 4 (1.02) and U/tau = 8 (0.74). Other ratios need a user value.
 */
inline double hubbard_energy_proxy(double u_over_tau, int sites) {
  if (sites < 1) throw std::invalid_argument("need at least one site");
  if (u_over_tau == 4.0) return sites * 1.02;
  if (u_over_tau == 8.0) return sites * 0.74;
  throw std::invalid_argument("no tabulated energy per site for this U/tau; supply one");
}

struct MinimizeResult {
  ErrorBudget budget;
  CostBreakdown cost;

  /** Report field: whether the split follows dTS > dPE >> dHT. */
  bool typical_ordering() const {
    return budget.trotter > budget.phase_est && budget.phase_est > 10.0 * budget.synthesis;
  }
};

namespace detail {

inline ErrorBudget budget_from_fractions(double total, double a, double b) {
  ErrorBudget e;
  e.trotter = a * total;
  double rest = (1.0 - a) * total;
  e.phase_est = b * rest;
  e.synthesis = (1.0 - b) * rest;
  return e;
}

}  // namespace detail

/**
 * Minimizes the phase-estimation T count over the error split with the
 * constraint dTS + dPE + dHT = dE held active (cost strictly falls as any
 * slack is given to dPE). Coarse log grid over the split fractions, then
 * multiplicative coordinate refinement to a relative change below 1e-6.
 */
inline MinimizeResult minimize(double delta_e, double w, double n_r, double n_d,
                               const TCountConfig& cfg = {}) {
  if (delta_e <= 0.0) throw std::invalid_argument("total error target must be positive");

  auto cost_at = [&](double a, double b) {
    return t_count(detail::budget_from_fractions(delta_e, a, b), w, n_r, n_d, cfg).total_t;
  };

  constexpr int kGrid = 48;
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  double best_a = 0.5, best_b = 0.5, best_cost = cost_at(0.5, 0.5);
  for (int i = 0; i < kGrid; ++i) {
    double a = lo * std::pow(hi / lo, double(i) / (kGrid - 1));
    for (int j = 0; j < kGrid; ++j) {
      double b = lo * std::pow(hi / lo, double(j) / (kGrid - 1));
      double c = cost_at(a, b);
      if (c < best_cost) {
        best_cost = c;
        best_a = a;
        best_b = b;
      }
    }
  }

  double step = 2.0;
  while (step > 1.0 + 1e-10) {
    bool improved = false;
    for (int dir = 0; dir < 4; ++dir) {
      double a = best_a, b = best_b;
      if (dir == 0) a = std::min(hi, a * step);
      if (dir == 1) a = std::max(lo, a / step);
      if (dir == 2) b = std::min(hi, b * step);
      if (dir == 3) b = std::max(lo, b / step);
      double c = cost_at(a, b);
      if (c < best_cost * (1.0 - 1e-12)) {
        double rel = (best_cost - c) / best_cost;
        best_cost = c;
        best_a = a;
        best_b = b;
        improved = rel > 1e-6;
      }
    }
    if (!improved) step = 1.0 + (step - 1.0) / 2.0;
  }

  MinimizeResult out;
  out.budget = detail::budget_from_fractions(delta_e, best_a, best_b);
  out.cost = t_count(out.budget, w, n_r, n_d, cfg);
  return out;
}

}  // namespace qre
