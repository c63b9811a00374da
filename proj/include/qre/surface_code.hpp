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
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qre {

/**
 * Hardware and factory model constants. The distillation factories are
 * parametric (footprint in logical tiles, cycles per output state, output
 * error coefficients); defaults are tuned to land published-scale estimates,
 * not derived from first principles, and every knob is configurable.
 */
struct PhysicalAssumptions {
  double p = 1e-3;                  // physical error rate per operation
  double cycle_us = 1.0;            // one round of surface-code error detection
  double decoder_latency_us = 10.0; // floor on logical measurement cadence
  int distill_d_min = 15;           // distillation code distance sweep, odd steps
  int distill_d_max = 51;
  int data_d_min = 7;               // data patch distance sweep, odd steps
  int data_d_max = 51;
  double fail_budget = 0.3;         // total logical failure probability
  double routing_factor = 1.5;      // data-block access lanes
  bool decoder_floor = true;        // include decoder stalls in the cadence

  // Logical error model: A (p / p_th)^{ceil(d/2)}.
  double log_err_prefactor = 0.1;
  double p_threshold = 1e-2;
  double injection_error_factor = 5.0;  // injected-state error = factor * p

  // 15-to-1 T factory.
  double f15_tiles = 12.0;
  double f15_cycles_per_d = 6.0;
  // CCZ + catalysis factory (level-1 15-to-1 pair feeding a CCZ stage).
  double ccz_tiles = 30.0;
  double ccz_cycles_per_d = 10.0;
  double ccz_l1_factories = 2.0;
  double ccz_quadratic_coeff = 28.0;
  // Two-round 15-to-1: six level-1 units feed the level-2 round, which still
  // waits on batches of fifteen inputs.
  double two_round_l1_factories = 6.0;

  void validate() const {
    if (p <= 0.0 || p >= p_threshold)
      throw std::invalid_argument("physical error rate must lie below threshold");
    if (fail_budget <= 0.0 || fail_budget >= 1.0)
      throw std::invalid_argument("failure budget must be in (0,1)");
  }
};

/** Logical error probability of a distance-d patch: A (p/p_th)^{ceil(d/2)}. */
inline double logical_error_rate(double p, int d, double prefactor = 0.1,
                                 double p_threshold = 1e-2) {
  if (p >= p_threshold) throw std::invalid_argument("error rate must lie below threshold");
  if (d < 1) throw std::invalid_argument("distance must be positive");
  return prefactor * std::pow(p / p_threshold, (d + 1) / 2);
}

enum class DistillScheme { ONE_ROUND_15TO1, CCZ_CATALYZED, TWO_ROUND_15TO1 };

inline const char* scheme_name(DistillScheme s) {
  switch (s) {
    case DistillScheme::ONE_ROUND_15TO1: return "15to1";
    case DistillScheme::CCZ_CATALYZED: return "ccz-catalyzed";
    case DistillScheme::TWO_ROUND_15TO1: return "15to1x2";
  }
  return "?";
}

struct ResourceEstimate {
  DistillScheme scheme = DistillScheme::ONE_ROUND_15TO1;
  int level1_distance = 0;
  int level2_distance = 0;  // 0 for single-level schemes
  int data_distance = 0;
  long long physical_qubits = 0;
  double hours = 0.0;
  double failure_probability = 0.0;
};

namespace detail {

struct FactoryEval {
  double qubits = 0.0;
  double latency_us = 0.0;   // per output state
  double out_error = 0.0;    // per output state
  double states = 0.0;       // states needed for the workload
};

inline double patch_qubits(int d) { return 2.0 * d * d; }

}  // namespace detail

/**
 * Minimum-physical-qubit surface-code configuration for a workload of T and
 * Toffoli gates on a set of logical data qubits: sweeps the three distillation
 * schemes over level-1/level-2 distillation distances and the data-patch
 * distance, keeping configurations whose total logical failure probability
 * stays within budget. A single serial factory sets the wall time.
 */
inline ResourceEstimate estimate(long long logical_qubits, long long t_gates,
                                 long long toffoli_gates, const PhysicalAssumptions& a = {}) {
  a.validate();
  if (logical_qubits <= 0 || t_gates + toffoli_gates <= 0)
    throw std::invalid_argument("workload must be non-trivial");

  auto p_l = [&](int d) { return logical_error_rate(a.p, d, a.log_err_prefactor, a.p_threshold); };
  const double inj = a.injection_error_factor * a.p;
  const double e_inj3 = 35.0 * inj * inj * inj;

  auto level1 = [&](int d1) {
    detail::FactoryEval f;
    f.qubits = a.f15_tiles * detail::patch_qubits(d1);
    f.latency_us = a.f15_cycles_per_d * d1 * a.cycle_us;
    f.out_error = e_inj3 + a.f15_tiles * a.f15_cycles_per_d * p_l(d1);
    return f;
  };

  bool found = false;
  ResourceEstimate best;

  auto consider = [&](DistillScheme scheme, int d1, int d2, const detail::FactoryEval& f) {
    double latency = f.latency_us;
    if (a.decoder_floor) latency = std::max(latency, a.decoder_latency_us);
    double runtime_us = f.states * latency;
    double rounds = runtime_us / a.cycle_us;
    double factory_fail = f.states * f.out_error;
    if (factory_fail >= a.fail_budget) return;

    // States are consumed through the data block; the factory's output stage
    // cannot run below the data distance.
    const int output_d = std::max(d1, d2);
    for (int dd = a.data_d_min | 1; dd <= a.data_d_max; dd += 2) {
      if (dd > output_d) break;
      double data_fail = double(logical_qubits) * rounds * p_l(dd);
      double total_fail = data_fail + factory_fail;
      if (total_fail > a.fail_budget) continue;
      double data_qubits = double(logical_qubits) * detail::patch_qubits(dd) * a.routing_factor;
      long long physical = static_cast<long long>(std::ceil(data_qubits + f.qubits));
      double hours = runtime_us / 1e6 / 3600.0;
      if (!found || physical < best.physical_qubits ||
          (physical == best.physical_qubits && hours < best.hours)) {
        found = true;
        best = {scheme, d1, d2, dd, physical, hours, total_fail};
      }
      break;  // larger data distances only add qubits
    }
  };

  const double t_equivalent_states = double(t_gates) + 2.0 * double(toffoli_gates);

  for (int d1 = a.distill_d_min | 1; d1 <= a.distill_d_max; d1 += 2) {
    auto l1 = level1(d1);

    // Single round of 15-to-1; Toffoli realized as two T states.
    detail::FactoryEval f = l1;
    f.states = t_equivalent_states;
    consider(DistillScheme::ONE_ROUND_15TO1, d1, 0, f);

    for (int d2 = a.distill_d_min | 1; d2 <= a.distill_d_max; d2 += 2) {
      // CCZ generation + catalysis on top of level-1 T states: one CCZ per
      // Toffoli, and one per two remaining T gates.
      detail::FactoryEval ccz;
      ccz.qubits = a.ccz_l1_factories * l1.qubits + a.ccz_tiles * detail::patch_qubits(d2);
      ccz.latency_us = a.ccz_cycles_per_d * d2 * a.cycle_us;
      ccz.out_error = a.ccz_quadratic_coeff * l1.out_error * l1.out_error +
                      a.ccz_tiles * a.ccz_cycles_per_d * p_l(d2);
      ccz.states = double(toffoli_gates) + std::ceil(double(t_gates) / 2.0);
      consider(DistillScheme::CCZ_CATALYZED, d1, d2, ccz);

      // Two rounds of 15-to-1: the second round consumes fifteen level-1
      // outputs, so its cadence is limited by the slower of the level-2
      // circuit and the level-1 farm.
      detail::FactoryEval two;
      two.qubits = a.two_round_l1_factories * l1.qubits + a.f15_tiles * detail::patch_qubits(d2);
      double farm_us = std::ceil(15.0 / a.two_round_l1_factories) * l1.latency_us;
      two.latency_us = std::max(a.f15_cycles_per_d * d2 * a.cycle_us, farm_us);
      two.out_error = 35.0 * std::pow(l1.out_error, 3) + a.f15_tiles * a.f15_cycles_per_d * p_l(d2);
      two.states = t_equivalent_states;
      consider(DistillScheme::TWO_ROUND_15TO1, d1, d2, two);
    }
  }

  if (!found)
    throw std::runtime_error("no surface-code configuration meets the failure budget in range");
  return best;
}

}  // namespace qre
