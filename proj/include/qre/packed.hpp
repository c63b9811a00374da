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
#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

#include "qre/pauli.hpp"

namespace qre::packed {

// Bitmask Pauli strings for the commutator expansion hot path. A string is
// (x, z) word arrays; Y sites are where both bits are set. Phases follow from
// Y = iXZ bookkeeping, so expansion results agree exactly with the sparse
// algebra in qre/pauli.hpp (tests pin this).
template <std::size_t Words>
struct PStr {
  std::array<std::uint64_t, Words> x{}, z{};

  friend bool operator==(const PStr& a, const PStr& b) { return a.x == b.x && a.z == b.z; }

  friend bool operator<(const PStr& a, const PStr& b) {
    for (std::size_t w = 0; w < Words; ++w) {
      if (a.x[w] != b.x[w]) return a.x[w] < b.x[w];
      if (a.z[w] != b.z[w]) return a.z[w] < b.z[w];
    }
    return false;
  }

  bool is_identity() const {
    for (std::size_t w = 0; w < Words; ++w)
      if (x[w] | z[w]) return false;
    return true;
  }

  int min_qubit() const {
    for (std::size_t w = 0; w < Words; ++w) {
      std::uint64_t m = x[w] | z[w];
      if (m) return static_cast<int>(w * 64 + std::countr_zero(m));
    }
    return -1;
  }

  bool overlaps(const PStr& o) const {
    for (std::size_t w = 0; w < Words; ++w)
      if ((x[w] | z[w]) & (o.x[w] | o.z[w])) return true;
    return false;
  }
};

template <std::size_t Words>
inline bool anticommutes(const PStr<Words>& a, const PStr<Words>& b) {
  int n = 0;
  for (std::size_t w = 0; w < Words; ++w)
    n += std::popcount(a.x[w] & b.z[w]) + std::popcount(a.z[w] & b.x[w]);
  return n & 1;
}

/** a*b = i^e * result; returns e mod 4. */
template <std::size_t Words>
inline int product(const PStr<Words>& a, const PStr<Words>& b, PStr<Words>& out) {
  int e = 0;
  for (std::size_t w = 0; w < Words; ++w) {
    out.x[w] = a.x[w] ^ b.x[w];
    out.z[w] = a.z[w] ^ b.z[w];
    e += std::popcount(a.x[w] & a.z[w]);           // |y1|
    e += std::popcount(b.x[w] & b.z[w]);           // |y2|
    e -= std::popcount(out.x[w] & out.z[w]);       // |y3|
    e += 2 * std::popcount(a.z[w] & b.x[w]);
  }
  return ((e % 4) + 4) % 4;
}

template <std::size_t Words>
inline PStr<Words> pack(const PauliString& s) {
  PStr<Words> p;
  for (const auto& [q, a] : s.factors()) {
    std::uint64_t bit = 1ULL << (q % 64);
    if (a == Axis::X || a == Axis::Y) p.x[q / 64] |= bit;
    if (a == Axis::Z || a == Axis::Y) p.z[q / 64] |= bit;
  }
  return p;
}

template <std::size_t Words>
struct Term {
  PStr<Words> str;
  std::complex<double> coeff;
};

/** Packed operator: term list plus a support mask for cheap disjointness tests. */
template <std::size_t Words>
struct POp {
  std::vector<Term<Words>> terms;
  std::array<std::uint64_t, Words> support{};

  void recompute_support() {
    support = {};
    for (const auto& t : terms)
      for (std::size_t w = 0; w < Words; ++w) support[w] |= t.str.x[w] | t.str.z[w];
  }

  bool support_disjoint(const POp& o) const {
    for (std::size_t w = 0; w < Words; ++w)
      if (support[w] & o.support[w]) return false;
    return true;
  }
};

template <std::size_t Words>
inline POp<Words> pack_operator(const QubitOperator& op) {
  POp<Words> p;
  p.terms.reserve(op.size());
  for (const auto& [s, c] : op.terms()) p.terms.push_back({pack<Words>(s), c});
  p.recompute_support();
  return p;
}

inline std::complex<double> phase_of(int e) {
  switch (e) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace qre::packed
