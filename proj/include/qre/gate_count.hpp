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

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "qre/orderings.hpp"

namespace qre {

using Count = long long;

/** Per-Trotter-step gate tallies before rotation synthesis. */
struct GateCounts {
  Count rotations = 0;        // N_r: arbitrary rotations needing synthesis
  Count direct_t = 0;         // T gates appearing directly
  Count direct_toffoli = 0;   // Toffoli gates appearing directly
  int hwp_ancillae = 0;
  int catalysis_seeds = 0;
  Count logical_system_qubits = 0;

  /** Effective direct T count with Toffoli distilled at twice the cost. */
  Count direct_t_equivalent() const { return direct_t + 2 * direct_toffoli; }
};

enum class HwpScheme { FULL, LIMITED, SQRT_GROUPING };

struct HwpBudget {
  int ancillae = 0;
  HwpScheme scheme = HwpScheme::LIMITED;
};

namespace detail {

inline int floor_log2(Count n) {
  if (n < 1) throw std::invalid_argument("floor_log2 needs n >= 1");
  return std::bit_width(static_cast<std::uint64_t>(n)) - 1;
}

inline Count ceil_div(Count a, Count b) { return (a + b - 1) / b; }

inline Count isqrt(Count n) {
  Count r = static_cast<Count>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

struct HwpFullCosts {
  Count rotations = 0;
  Count toffoli = 0;
  Count ancillae = 0;
};

/**
 * Full Hamming weight phasing of n parallel equiangular rotations:
 * floor(log2 n)+1 rotations via at most n-1 adders and n-1 ancillae.
 */
inline HwpFullCosts hwp_full(Count n) {
  if (n < 1) throw std::invalid_argument("hwp_full needs n >= 1");
  return {detail::floor_log2(n) + 1, n - 1, n - 1};
}

struct HwpLimitedCosts {
  Count rotations = 0;
  Count t_gates = 0;
};

/**
 * Hamming weight phasing with r ancillae: batches of r+1 rotations are
 * combined in turn. ceil(n/(r+1)) * (floor(log2(r+1))+1) rotations; the
 * adders total n minus the number of batches, 4 T gates each (192 T for the
 * n=50, r=30 case). Delegates to full phasing when r+1 >= n.
 */
inline HwpLimitedCosts hwp_limited(Count n, Count r) {
  if (n < 1 || r < 0) throw std::invalid_argument("hwp_limited needs n >= 1, r >= 0");
  if (r + 1 >= n) {
    auto full = hwp_full(n);
    return {full.rotations, 4 * full.toffoli};
  }
  Count batches = detail::ceil_div(n, r + 1);
  return {batches * (detail::floor_log2(r + 1) + 1), 4 * (n - batches)};
}

struct HwpSqrtCosts {
  Count rotations = 0;
  Count t_gates = 0;
  Count ancillae = 0;
};

/**
 * The sqrt(n)-grouping variant: group Hamming weights accumulated into a
 * shared register, floor(sqrt n)+floor(log2 n) ancillae.
 */
inline HwpSqrtCosts hwp_sqrt_grouping(Count n) {
  if (n < 2) throw std::invalid_argument("hwp_sqrt_grouping needs n >= 2");
  Count root = detail::isqrt(n);
  Count lg = detail::floor_log2(n);
  Count groups = detail::ceil_div(n, root);
  Count t = 8 * groups * (root - 1) - 4 * (root - 1) + 8 * lg * groups;
  HwpSqrtCosts out{lg + 1, t, root + lg};
  double loose = 8.0 * n + 8.0 * std::sqrt(double(n)) * std::log2(double(n)) +
                 12.0 * std::log2(double(n)) - 8.0;
  if (static_cast<double>(out.t_gates) > loose + 1e-9)
    throw std::logic_error("sqrt-grouping T count exceeded its loose bound");
  return out;
}

struct CatalysisCosts {
  Count t_gates = 0;
  Count toffoli = 0;
  int seeds = 0;
};

/**
 * Catalyzed sqrt(T)-class rotations, two per circuit use: each pair costs one
 * Toffoli plus one T (five T-equivalents). The two seed states are prepared
 * once per computation.
 */
inline CatalysisCosts catalysis_costs(Count sqrt_t_pairs) {
  if (sqrt_t_pairs < 0) throw std::invalid_argument("pair count must be non-negative");
  CatalysisCosts out;
  out.t_gates = sqrt_t_pairs;
  out.toffoli = sqrt_t_pairs;
  out.seeds = sqrt_t_pairs > 0 ? 2 : 0;
  return out;
}

struct BasisChangeCosts {
  Count t_gates = 0;
  Count toffoli = 0;
  Count synthesized_rotations = 0;
  Count catalysis_pairs = 0;
};

/**
 * One full d-dimensional fermionic fast Fourier transform on a grid of the
 * given side length. Side 16 carries four catalyzed sqrt(T)-class rotations
 * per 1D application; smaller sides are Clifford+T only.
 */
inline BasisChangeCosts ffft_costs(int side, int d, bool spinful) {
  Count per_app_t;
  switch (side) {
    case 4: per_app_t = 8; break;
    case 8: per_app_t = 26; break;
    case 16: per_app_t = 70; break;
    default: throw std::invalid_argument("FFFT side length must be 4, 8, or 16");
  }
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2, or 3");
  Count apps = d * (spinful ? 2 : 1);
  for (int i = 0; i < d - 1; ++i) apps *= side;
  BasisChangeCosts out;
  out.t_gates = per_app_t * apps;
  if (side == 16) {
    out.catalysis_pairs = 2 * apps;  // 4 catalyzed rotations per application
    auto cat = catalysis_costs(out.catalysis_pairs);
    out.t_gates += cat.t_gates;
    out.toffoli += cat.toffoli;
  }
  return out;
}

/**
 * One full d-dimensional Givens-rotation basis change with full Hamming
 * weight phasing across the parallel 1D circuits.
 */
inline BasisChangeCosts givens_costs(int side, int d, bool spinful) {
  if (side < 2) throw std::invalid_argument("Givens basis change needs side >= 2");
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2, or 3");
  Count m = side;
  Count pairs = m * (m - 1) / 2;
  Count planes = 1;
  for (int i = 0; i < d - 1; ++i) planes *= m;
  Count lg = planes > 1 ? detail::floor_log2(planes) : 0;  // floor((d-1) log2 M)
  BasisChangeCosts out;
  if (!spinful) {
    out.synthesized_rotations = d * pairs * (lg + 2);
    out.toffoli = d * pairs * (2 * planes + 2 * lg);
  } else {
    out.synthesized_rotations = d * pairs * (lg + 3);
    out.toffoli = d * pairs * (4 * planes + 2 * lg + 2);
  }
  return out;
}

struct PotentialLayeringCosts {
  Count t_gates = 0;
  Count synthesized_rotations = 0;
  Count layers = 0;
};

/**
 * Translation-invariant interaction layering: one displacement vector per
 * stage, each stage two (even N) or three (odd N) layers of equiangular
 * two-qubit rotations fully combined by Hamming weight phasing.
 */
inline PotentialLayeringCosts potential_layering_costs(Count n) {
  if (n < 2) throw std::invalid_argument("potential layering needs N >= 2");
  PotentialLayeringCosts out;
  if (n % 2 == 0) {
    out.t_gates = 4 * (n - 1) * (n - 2);
    out.synthesized_rotations = (2 * n - 2) * detail::floor_log2(n);
    out.layers = 2 * n - 2;
  } else {
    out.t_gates = 4 * (n - 1) * (n - 1);
    out.synthesized_rotations = (n - 1) * (2 * detail::floor_log2(n - 1) + 1);
    out.layers = 3 * (n - 1);  // 2N-2 equiangular layers plus N-1 lone rotations
  }
  return out;
}

/**
 * The two matching layers of pairs (p, p+s) for one displacement vector on a
 * periodic spatial grid (three layers when a cycle is odd). Test/diagnostic
 * support for the layering scheme.
 */
inline std::vector<std::vector<std::pair<int, int>>> displacement_layers(
    const GridSpec& grid, const std::vector<int>& shift) {
  const int m = grid.spatial_orbitals();
  std::vector<std::vector<std::pair<int, int>>> layers;
  auto fits = [&](const std::vector<std::pair<int, int>>& layer, int a, int b) {
    for (auto [x, y] : layer)
      if (x == a || y == a || x == b || y == b) return false;
    return true;
  };
  for (int p = 0; p < m; ++p) {
    auto c = grid.coords(p);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += shift[i];
    int q = grid.index(c);
    if (q == p) throw std::invalid_argument("zero displacement");
    bool placed = false;
    for (auto& layer : layers)
      if (fits(layer, p, q)) {
        layer.emplace_back(p, q);
        placed = true;
        break;
      }
    if (!placed) layers.push_back({{p, q}});
  }
  return layers;
}

struct PhaseTables {
  std::vector<double> direct;  // each rotated bit contributes +-theta/2
  std::vector<double> hwp;     // Hamming-weight bit k contributes +-2^k theta/2
};

/**
 * Phase applied to every n-bit basis state by n parallel R_z(theta) rotations
 * versus by phasing the binary digits of the Hamming weight. The two tables
 * agree exactly once each is referenced to its all-zeros entry (they differ
 * by the global phase (n - 2^m + 1) theta/2 otherwise).
 */
inline PhaseTables hwp_phase_table(int n, double theta) {
  if (n < 1 || n > 16) throw std::invalid_argument("phase table supports 1..16 bits");
  int hw_bits = detail::floor_log2(n) + 1;
  std::size_t dim = std::size_t(1) << n;
  PhaseTables t;
  t.direct.resize(dim);
  t.hwp.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int hw = std::popcount(x);
    t.direct[x] = (2.0 * hw - n) * theta / 2.0;
    double acc = 0.0;
    for (int k = 0; k < hw_bits; ++k) {
      double sign = (hw >> k) & 1 ? 1.0 : -1.0;
      acc += sign * (double(Count(1) << k)) * theta / 2.0;
    }
    t.hwp[x] = acc;
  }
  return t;
}

// --- per-step schedulers ----------------------------------------------------

namespace detail {

struct GroupCosts {
  Count rotations = 0;
  Count adders = 0;  // reported as direct Toffoli
};

// Best use of at most r ancillae on a group of n parallel equiangular
// rotations. A budget is an allowance: fewer ancillae are used when the
// batching formula would be worse (it is not monotone in r).
inline GroupCosts best_hwp(Count n, int r) {
  if (n <= 0) return {};
  GroupCosts best{n, 0};
  for (Count rr = 1; rr <= r; ++rr) {
    auto lim = hwp_limited(n, rr);
    Count adders = lim.t_gates / 4;
    if (lim.rotations < best.rotations ||
        (lim.rotations == best.rotations && adders < best.adders))
      best = {lim.rotations, adders};
    if (rr + 1 >= n) break;
  }
  return best;
}

inline double round_angle(double v) {
  if (v == 0.0) return 0.0;
  // 12 significant digits: identical analytic expressions collide, distinct
  // angles survive.
  double mag = std::pow(10.0, 11 - std::floor(std::log10(std::abs(v))));
  return std::round(v * mag) / mag;
}

// Equiangular groups within one parallel layer, keyed by slot and angle.
class LayerGroups {
 public:
  void add(int slot, double angle, Count count = 1) {
    if (angle == 0.0) return;  // zero rotations are not emitted
    sizes_[{slot, round_angle(std::abs(angle))}] += count;
  }

  GroupCosts schedule(int r) const {
    GroupCosts total;
    for (const auto& [key, n] : sizes_) {
      auto g = best_hwp(n, r);
      total.rotations += g.rotations;
      total.adders += g.adders;
    }
    return total;
  }

  bool empty() const { return sizes_.empty(); }

 private:
  std::map<std::pair<int, double>, Count> sizes_;
};

inline void apply_group(GateCounts& gc, const GroupCosts& g, Count multiplier = 1) {
  gc.rotations += multiplier * g.rotations;
  gc.direct_toffoli += multiplier * g.adders;
}

}  // namespace detail

/**
 * Gate counts of one symmetric fermionic-swap-network Trotter step.
 *
 * Jellium-class systems phase within each swap layer (first and last layers
 * merge across the symmetric junctions); Hubbard-class systems simulate all
 * on-site interactions in one leading layer and defer hopping rotations until
 * a qubit is about to be touched twice. Materials add their single-qubit
 * external-potential layer twice. Directional phase-estimation control does
 * not change any count.
 */
inline GateCounts fswap_step_costs(const FermionHamiltonian& h, const HwpBudget& budget,
                                   bool directional_control = false) {
  (void)directional_control;
  h.validate();
  const int n = h.num_orbitals();
  const int r = budget.ancillae;
  GateCounts gc;
  gc.hwp_ancillae = r;
  gc.logical_system_qubits = n + r;
  if (n < 2) return gc;

  const bool hubbard_style = detail::onsite_interaction_only(h);
  auto net = fswap_network(h);

  if (hubbard_style) {
    // One layer of all on-site interactions, two rotations each, counted once
    // per step (merged with the next step across the boundary).
    detail::LayerGroups onsite_a, onsite_b;
    for (int p = 0; p + 1 < n; p += 2)
      if (h.interaction(p, p + 1) != 0.0) {
        onsite_a.add(0, h.interaction(p, p + 1));
        onsite_b.add(1, h.interaction(p, p + 1));
      }
    detail::apply_group(gc, onsite_a.schedule(r));
    detail::apply_group(gc, onsite_b.schedule(r));

    // Deferred hopping accumulation.
    std::vector<detail::GroupCosts> flushes;
    detail::LayerGroups pending;
    std::set<int> touched;
    bool have_pending = false;
    auto flush = [&] {
      if (have_pending) flushes.push_back(pending.schedule(r));
      pending = {};
      touched.clear();
      have_pending = false;
    };
    for (const auto& layer : net.layers) {
      for (const auto& g : layer) {
        if (g.t_coeff == 0.0) continue;
        if (touched.count(g.pos) || touched.count(g.pos + 1)) flush();
        pending.add(0, g.t_coeff);  // XX rotation
        pending.add(1, g.t_coeff);  // YY rotation
        touched.insert(g.pos);
        touched.insert(g.pos + 1);
        have_pending = true;
      }
    }
    flush();
    // Forward and reversed passes, with the mid-step flush merged.
    detail::GroupCosts hop_total, last{};
    for (const auto& f : flushes) {
      hop_total.rotations += f.rotations;
      hop_total.adders += f.adders;
      last = f;
    }
    detail::apply_group(gc, hop_total, 2);
    gc.rotations -= last.rotations;
    gc.direct_toffoli -= last.adders;

    Count ceiling = 9LL * n;
    if (gc.rotations > ceiling)
      throw std::logic_error("Hubbard fswap rotations exceeded the 9N ceiling");
    return gc;
  }

  // Jellium / material: per-layer phasing, junction layers merged once.
  std::vector<detail::GroupCosts> layer_costs;
  for (const auto& layer : net.layers) {
    detail::LayerGroups groups;
    for (const auto& g : layer) {
      if (g.t_coeff != 0.0) {
        groups.add(0, g.t_coeff);
        groups.add(1, g.t_coeff);
      }
      if (g.v_coeff != 0.0) {
        groups.add(2, g.v_coeff);
        groups.add(3, g.v_coeff);
      }
    }
    layer_costs.push_back(groups.schedule(r));
  }
  for (const auto& lc : layer_costs) detail::apply_group(gc, lc, 2);
  if (!layer_costs.empty()) {
    detail::apply_group(gc, layer_costs.front(), -1);
    detail::apply_group(gc, layer_costs.back(), -1);
  }

  // External potential: one layer of single-qubit rotations repeated in the
  // middle of the step.
  bool has_external = false;
  detail::LayerGroups ext;
  for (int p = 0; p < n; ++p)
    if (h.external(p) != 0.0) {
      ext.add(0, h.external(p));
      has_external = true;
    }
  if (has_external) detail::apply_group(gc, ext.schedule(r), 2);

  Count ceiling;
  if (h.grid.spinful)
    ceiling = Count(n - 1) * (3LL * n - 4);
  else
    ceiling = 4LL * (n - 1) * (n - 1);
  if (has_external) ceiling += 2LL * n;
  if (gc.rotations > ceiling)
    throw std::logic_error("fswap rotations exceeded their closed-form ceiling");
  return gc;
}

enum class BasisChange { FFFT, GIVENS };

namespace detail {

inline int uniform_side(const GridSpec& g) {
  int side = g.lengths.at(0);
  for (int l : g.lengths)
    if (l != side) throw std::invalid_argument("basis change requires equal side lengths");
  return side;
}

// Givens basis change under an ancilla budget; reduces to givens_costs at
// full budget (the closed form's small fixed Toffoli overhead per slot is
// kept).
inline BasisChangeCosts budgeted_givens(const GridSpec& g, int r) {
  int side = uniform_side(g);
  if (side < 2) throw std::invalid_argument("Givens basis change needs side >= 2");
  int d = g.dims();
  Count m = side;
  Count pairs = m * (m - 1) / 2;
  Count planes = 1;
  for (int i = 0; i < d - 1; ++i) planes *= m;
  Count lg = planes > 1 ? floor_log2(planes) : 0;
  Count group = 2 * planes * (g.spinful ? 2 : 1);
  Count slots = d * pairs;
  Count overhead = g.spinful ? 2 * lg + 3 : 2 * lg + 1;  // beyond the adders at full budget
  auto per_slot = best_hwp(group, r);
  BasisChangeCosts out;
  out.synthesized_rotations = slots * per_slot.rotations;
  out.toffoli = slots * (per_slot.adders + overhead);
  return out;
}

}  // namespace detail

/**
 * Gate counts of one symmetric split-operator Trotter step: kinetic rotations
 * in the momentum basis (grouped by eigenvalue), the potential in the
 * position basis (translation-invariant layering when applicable and
 * favorable, otherwise plain per-pair rotations), and two basis changes.
 */
inline GateCounts split_step_costs(const FermionHamiltonian& h, const HwpBudget& budget,
                                   BasisChange basis, bool directional_control = false) {
  (void)directional_control;
  h.validate();
  const int n = h.num_orbitals();
  const int r = budget.ancillae;
  GateCounts gc;
  gc.hwp_ancillae = r;
  gc.logical_system_qubits = n + r;

  // Kinetic: one rotation per qubit per half-layer, angles are the one-body
  // eigenvalues, grouped by angle. Two half-layers per symmetric step.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.kinetic);
  detail::LayerGroups kin;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) kin.add(0, es.eigenvalues()(i));
  auto kin_costs = kin.schedule(r);
  detail::apply_group(gc, kin_costs, 2);
  if (2 * kin_costs.rotations > 2LL * n)
    throw std::logic_error("kinetic rotations exceeded 2N");

  // Potential: every equiangular class of two-qubit rotations (for
  // translation-invariant V these are the displacement classes; for Hubbard a
  // single on-site class) is packed into layers of disjoint pairs, each layer
  // phased under the budget. Each pair is simulated exactly once, so the
  // count never exceeds C(N,2) regardless of the budget.
  std::map<double, std::vector<std::pair<int, int>>> angle_classes;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (h.interaction(p, q) != 0.0)
        angle_classes[detail::round_angle(std::abs(h.interaction(p, q)))].emplace_back(p, q);

  Count potential_rotations = 0, potential_adders = 0;
  for (const auto& [angle, pairs] : angle_classes) {
    std::vector<std::vector<char>> used;  // per layer, which qubits are taken
    std::vector<Count> layer_sizes;
    for (auto [p, q] : pairs) {
      std::size_t layer = 0;
      for (; layer < used.size(); ++layer)
        if (!used[layer][p] && !used[layer][q]) break;
      if (layer == used.size()) {
        used.emplace_back(n, 0);
        layer_sizes.push_back(0);
      }
      used[layer][p] = used[layer][q] = 1;
      ++layer_sizes[layer];
    }
    for (Count size : layer_sizes) {
      auto g = detail::best_hwp(size, r);
      potential_rotations += g.rotations;
      potential_adders += g.adders;
    }
  }

  detail::LayerGroups singles;  // single-qubit Z rotations of the potential
  for (int p = 0; p < n; ++p) {
    double coeff = -h.external(p) / 2.0;
    for (int q = 0; q < n; ++q) coeff -= h.interaction(p, q) / 4.0;
    singles.add(0, coeff);
  }
  auto singles_costs = singles.schedule(r);
  potential_rotations += singles_costs.rotations;
  potential_adders += singles_costs.adders;

  if (detail::onsite_interaction_only(h) && potential_rotations > 3LL * n / 2)
    throw std::logic_error("Hubbard potential rotations exceeded 3N/2");
  if (potential_rotations > Count(n) * (n - 1) / 2 + n)
    throw std::logic_error("potential rotations exceeded C(N,2)+N");
  gc.rotations += potential_rotations;
  gc.direct_toffoli += potential_adders;

  // Basis change, applied twice per symmetric step.
  BasisChangeCosts bc;
  if (basis == BasisChange::FFFT) {
    int side = detail::uniform_side(h.grid);
    bc = ffft_costs(side, h.grid.dims(), h.grid.spinful);
    if (bc.catalysis_pairs > 0) gc.catalysis_seeds = 2;
  } else {
    bc = detail::budgeted_givens(h.grid, r);
  }
  gc.rotations += 2 * bc.synthesized_rotations;
  gc.direct_t += 2 * bc.t_gates;
  gc.direct_toffoli += 2 * bc.toffoli;
  return gc;
}

}  // namespace qre
