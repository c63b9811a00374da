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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qre {

/**
 * Real-space simulation cell: up to three periodic dimensions of integer side
 * lengths, with or without spin. Spatial orbitals are indexed row-major with
 * the first dimension fastest; with spin, site s carries its up/down orbitals
 * at 2s and 2s+1.
 */
struct GridSpec {
  std::vector<int> lengths;          // one entry per dimension, each >= 1
  bool spinful = true;
  bool spin_blocked = false;         // spin sectors blocked instead of interleaved
  std::optional<double> wigner_seitz_radius;  // Bohr radii
  std::optional<double> volume_override;      // Bohr^d
  std::optional<int> electron_count;          // defaults to floor(N/2)

  int dims() const { return static_cast<int>(lengths.size()); }

  int spatial_orbitals() const {
    int m = 1;
    for (int l : lengths) m *= l;
    return m;
  }

  int spin_orbitals() const { return spatial_orbitals() * (spinful ? 2 : 1); }

  /** Half filling unless the caller said otherwise. */
  int eta() const { return electron_count.value_or(spin_orbitals() / 2); }

  /**
   * Cell volume in Bohr^d. Explicit overrides win; otherwise derived from the
   * Wigner-Seitz radius as eta times the volume of a d-ball of radius r_s.
   */
  double cell_volume() const {
    if (volume_override) return *volume_override;
    if (!wigner_seitz_radius) throw std::invalid_argument("grid needs r_s or an explicit volume");
    double rs = *wigner_seitz_radius;
    double e = static_cast<double>(eta());
    switch (dims()) {
      case 1: return e * 2.0 * rs;
      case 2: return e * std::numbers::pi * rs * rs;
      case 3: return e * 4.0 * std::numbers::pi / 3.0 * rs * rs * rs;
      default: throw std::invalid_argument("grid dimension must be 1, 2, or 3");
    }
  }

  void validate() const {
    if (dims() < 1 || dims() > 3) throw std::invalid_argument("grid dimension must be 1, 2, or 3");
    for (int l : lengths)
      if (l < 1) throw std::invalid_argument("grid side lengths must be positive");
    if (eta() > spin_orbitals()) throw std::invalid_argument("electron count exceeds spin-orbitals");
    if (eta() < 0) throw std::invalid_argument("electron count must be non-negative");
  }

  /** Spatial coordinates of orbital index s (row-major, first dim fastest). */
  std::vector<int> coords(int s) const {
    std::vector<int> c(lengths.size());
    for (std::size_t d = 0; d < lengths.size(); ++d) {
      c[d] = s % lengths[d];
      s /= lengths[d];
    }
    return c;
  }

  int index(const std::vector<int>& c) const {
    int s = 0, stride = 1;
    for (std::size_t d = 0; d < lengths.size(); ++d) {
      int v = ((c[d] % lengths[d]) + lengths[d]) % lengths[d];
      s += v * stride;
      stride *= lengths[d];
    }
    return s;
  }

  /**
   * Integer momentum components for mode index, per dimension in the centered
   * window {-floor(m/2), ..., ceil(m/2)-1}. Exactly one mode per orbital.
   */
  std::vector<int> momentum_numbers(int nu) const {
    std::vector<int> k(lengths.size());
    for (std::size_t d = 0; d < lengths.size(); ++d) {
      int m = lengths[d];
      k[d] = nu % m - m / 2;
      nu /= m;
    }
    return k;
  }
};

/** Point charges inside the cell (positions wrapped periodically). */
struct Nucleus {
  std::vector<double> position;  // Bohr, length == dims
  double charge = 0.0;           // > 0
};

using NucleiSpec = std::vector<Nucleus>;

}  // namespace qre
