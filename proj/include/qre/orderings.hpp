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

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qre/hamiltonians.hpp"
#include "qre/pauli.hpp"

namespace qre {

enum class StepLabel { FSWAP, SPLIT_TV, SPLIT_VT };

inline const char* step_label_name(StepLabel l) {
  switch (l) {
    case StepLabel::FSWAP: return "fswap";
    case StepLabel::SPLIT_TV: return "split-tv";
    case StepLabel::SPLIT_VT: return "split-vt";
  }
  return "?";
}

/**
 * Ordered fragment list H_1..H_L of one forward Trotter pass. The symmetric
 * second-order step is the forward list at t/2 followed by its reverse; the
 * reversed half is never materialized. Fragments sum to the Jordan-Wigner
 * Hamiltonian minus its identity term.
 */
struct TrotterOrdering {
  std::vector<QubitOperator> fragments;
  StepLabel label = StepLabel::FSWAP;
  GridSpec grid;

  std::size_t size() const { return fragments.size(); }

  std::uint32_t num_qubits() const {
    std::uint32_t n = 0;
    for (const auto& f : fragments) n = std::max(n, f.num_qubits());
    return n;
  }
};

inline QubitOperator sum_fragments(const TrotterOrdering& o) {
  QubitOperator acc;
  for (const auto& f : o.fragments) acc += f;
  return acc;
}

// --- fermionic swap network -------------------------------------------------

/** One fermionic simulation gate: modes p,q meet at qubits (pos, pos+1). */
struct FswapGate {
  int mode_p = 0;
  int mode_q = 0;
  int pos = 0;
  double t_coeff = 0.0;  // T_pq
  double v_coeff = 0.0;  // V_pq
};

/**
 * The odd-even transposition network over the Jordan-Wigner line: N layers of
 * adjacent fermionic simulation gates after which the mode order is exactly
 * reversed. Every unordered mode pair meets at exactly one gate.
 */
struct FswapNetwork {
  std::vector<std::vector<FswapGate>> layers;
  int num_modes = 0;
};

inline FswapNetwork fswap_network(const FermionHamiltonian& h) {
  const int n = h.num_orbitals();
  FswapNetwork net;
  net.num_modes = n;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  for (int layer = 0; layer < n; ++layer) {
    std::vector<FswapGate> gates;
    for (int i = layer % 2; i + 1 < n; i += 2) {
      FswapGate g;
      g.mode_p = order[i];
      g.mode_q = order[i + 1];
      g.pos = i;
      g.t_coeff = h.kinetic(g.mode_p, g.mode_q);
      g.v_coeff = h.interaction(g.mode_p, g.mode_q);
      gates.push_back(g);
      std::swap(order[i], order[i + 1]);
    }
    net.layers.push_back(std::move(gates));
  }

  for (int i = 0; i < n; ++i)
    if (order[i] != n - 1 - i) throw std::logic_error("swap network failed to reverse ordering");
  return net;
}

namespace detail {

// Hubbard-style Hamiltonians get their on-site layer up front: interaction
// only between the two spins of a site and no diagonal number terms.
inline bool onsite_interaction_only(const FermionHamiltonian& h) {
  if (!h.grid.spinful) return false;
  const int n = h.num_orbitals();
  for (int p = 0; p < n; ++p) {
    if (h.kinetic(p, p) + h.external(p) != 0.0) return false;
    for (int q = p + 1; q < n; ++q)
      if (h.interaction(p, q) != 0.0 && !(q == p + 1 && p % 2 == 0)) return false;
  }
  return true;
}

// Jordan-Wigner image of T (a+_p a_q + a+_q a_p) in the fixed original frame
// (Z string between the endpoints).
inline void add_hopping_terms(QubitOperator& frag, int p, int q, double t) {
  if (p > q) std::swap(p, q);
  std::vector<PauliString::Factor> fx, fy;
  fx.emplace_back(p, Axis::X);
  fy.emplace_back(p, Axis::Y);
  for (int z = p + 1; z < q; ++z) {
    fx.emplace_back(z, Axis::Z);
    fy.emplace_back(z, Axis::Z);
  }
  fx.emplace_back(q, Axis::X);
  fy.emplace_back(q, Axis::Y);
  frag.add_term(PauliString(std::move(fx)), t / 2.0);
  frag.add_term(PauliString(std::move(fy)), t / 2.0);
}

inline void add_interaction_terms(QubitOperator& frag, int p, int q, double v) {
  if (p > q) std::swap(p, q);
  frag.add_term(PauliString({{static_cast<std::uint32_t>(p), Axis::Z},
                             {static_cast<std::uint32_t>(q), Axis::Z}}),
                v / 4.0);
  frag.add_term(PauliString::single(p, Axis::Z), -v / 4.0);
  frag.add_term(PauliString::single(q, Axis::Z), -v / 4.0);
}

}  // namespace detail

/**
 * Fragment list of the fermionic swap network step. Each gate emits the
 * Jordan-Wigner image, in the fixed original mode frame, of its hopping and
 * interaction terms plus the touched modes' diagonal number terms spread over
 * the N-1 gates each mode participates in; the gate's qubit position only
 * matters for scheduling, not for the fragment operators. Gates with nothing
 * to simulate emit no fragment. With per_layer=true, gates of one swap layer
 * merge into a single fragment.
 */
inline TrotterOrdering fswap_ordering(const FermionHamiltonian& h, bool per_layer = false) {
  h.validate();
  const int n = h.num_orbitals();
  TrotterOrdering out;
  out.label = StepLabel::FSWAP;
  out.grid = h.grid;
  if (n < 2) {
    QubitOperator frag;
    if (n == 1 && h.kinetic(0, 0) + h.external(0) != 0.0)
      frag.add_term(PauliString::single(0, Axis::Z), -(h.kinetic(0, 0) + h.external(0)) / 2.0);
    if (!frag.empty()) out.fragments.push_back(std::move(frag));
    return out;
  }

  const bool hubbard_style = detail::onsite_interaction_only(h);
  auto net = fswap_network(h);

  if (hubbard_style) {
    QubitOperator onsite;
    for (int p = 0; p + 1 < n; p += 2)
      if (h.interaction(p, p + 1) != 0.0)
        detail::add_interaction_terms(onsite, p, p + 1, h.interaction(p, p + 1));
    if (!onsite.empty()) out.fragments.push_back(std::move(onsite));
  }

  for (const auto& layer : net.layers) {
    QubitOperator merged;
    for (const auto& g : layer) {
      QubitOperator frag;
      if (g.t_coeff != 0.0) detail::add_hopping_terms(frag, g.mode_p, g.mode_q, g.t_coeff);
      if (!hubbard_style) {
        if (g.v_coeff != 0.0) detail::add_interaction_terms(frag, g.mode_p, g.mode_q, g.v_coeff);
        for (int mode : {g.mode_p, g.mode_q}) {
          double diag = (h.kinetic(mode, mode) + h.external(mode)) / (n - 1);
          if (diag != 0.0) frag.add_term(PauliString::single(mode, Axis::Z), -diag / 2.0);
        }
      }
      if (frag.empty()) continue;
      if (per_layer)
        merged += frag;
      else
        out.fragments.push_back(std::move(frag));
    }
    if (per_layer && !merged.empty()) out.fragments.push_back(std::move(merged));
  }
  return out;
}

enum class SplitOrder { TV, VT };

/**
 * Two-fragment split-operator ordering: the full kinetic sum and the full
 * potential sum (external + interaction), in the requested order.
 */
inline TrotterOrdering split_operator_ordering(const FermionHamiltonian& h, SplitOrder order) {
  h.validate();
  FermionHamiltonian kin = h;
  kin.external.setZero();
  kin.interaction.setZero();
  FermionHamiltonian pot = h;
  pot.kinetic.setZero();

  auto strip_identity = [](QubitOperator op) {
    QubitOperator res;
    for (const auto& [s, c] : op.terms())
      if (!s.is_identity()) res.add_term(s, c);
    return res;
  };

  TrotterOrdering out;
  out.grid = h.grid;
  out.label = order == SplitOrder::TV ? StepLabel::SPLIT_TV : StepLabel::SPLIT_VT;
  QubitOperator t_frag = strip_identity(jordan_wigner(kin));
  QubitOperator v_frag = strip_identity(jordan_wigner(pot));
  if (order == SplitOrder::TV) {
    out.fragments.push_back(std::move(t_frag));
    out.fragments.push_back(std::move(v_frag));
  } else {
    out.fragments.push_back(std::move(v_frag));
    out.fragments.push_back(std::move(t_frag));
  }
  return out;
}

// recommend_split_order lives with the Trotter-norm machinery; see
// qre/trotter_error.hpp.

}  // namespace qre
