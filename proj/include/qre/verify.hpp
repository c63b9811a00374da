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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qre/dense.hpp"
#include "qre/gate_count.hpp"
#include "qre/hamiltonians.hpp"
#include "qre/orderings.hpp"
#include "qre/trotter_error.hpp"

namespace qre {

/** Desk-scale oracle checks behind the CLI verify subcommand. */
struct VerifyReport {
  bool passed = true;
  std::vector<std::string> lines;

  void check(const std::string& name, bool ok, double residual) {
    std::ostringstream os;
    os.precision(3);
    os << (ok ? "[PASS] " : "[FAIL] ") << name << " (max residual " << residual << ")";
    lines.push_back(os.str());
    passed = passed && ok;
  }
};

namespace detail {

inline QubitOperator random_operator(std::mt19937& rng, int max_qubits, int max_terms) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> axis(1, 3);
  std::uniform_int_distribution<int> on(0, 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  QubitOperator op;
  int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<PauliString::Factor> factors;
    for (int q = 0; q < max_qubits; ++q)
      if (on(rng)) factors.emplace_back(q, static_cast<Axis>(axis(rng)));
    op.add_term(PauliString(std::move(factors)), coeff(rng));
  }
  return op;
}

using MultiplyFn = std::function<QubitOperator(const QubitOperator&, const QubitOperator&)>;

}  // namespace detail

/**
 * Pauli algebra against dense matrices: products, commutators, antisymmetry,
 * the 1-norm as a spectral-norm bound, and exhaustive pruning soundness on
 * up to three qubits. A replacement multiply can be injected to demonstrate
 * that convention errors are caught.
 */
inline VerifyReport verify_pauli(detail::MultiplyFn mul = {}) {
  if (!mul) mul = [](const QubitOperator& a, const QubitOperator& b) { return multiply(a, b); };
  VerifyReport rep;
  std::mt19937 rng(20260214);
  const int nq = 5;

  double worst_mul = 0.0, worst_comm = 0.0, worst_anti = 0.0, worst_norm = 0.0;
  for (int it = 0; it < 25; ++it) {
    auto a = detail::random_operator(rng, nq, 6);
    auto b = detail::random_operator(rng, nq, 6);
    auto da = dense_matrix(a, nq), db = dense_matrix(b, nq);

    worst_mul = std::max(worst_mul,
                         (dense_matrix(mul(a, b), nq) - da * db).cwiseAbs().maxCoeff());
    auto comm = mul(a, b) - mul(b, a);
    worst_comm = std::max(
        worst_comm, (dense_matrix(comm, nq) - (da * db - db * da)).cwiseAbs().maxCoeff());

    auto lhs = commutator(a, b), rhs = commutator(b, a);
    worst_anti =
        std::max(worst_anti, one_norm(lhs + rhs));

    worst_norm = std::max(worst_norm, detail::spectral_norm(da) - one_norm(a));
  }
  rep.check("multiply matches dense products", worst_mul < 1e-12, worst_mul);
  rep.check("commutator matches dense commutators", worst_comm < 1e-12, worst_comm);
  rep.check("commutator antisymmetry", worst_anti < 1e-12, worst_anti);
  rep.check("one_norm bounds the spectral norm", worst_norm < 1e-9, worst_norm);

  // commutes_trivially is exact for single strings: exhaust <= 3 qubits.
  bool prune_ok = true;
  std::vector<PauliString> all;
  for (int code = 0; code < 64; ++code) {
    std::vector<PauliString::Factor> f;
    int c = code;
    for (int q = 0; q < 3; ++q, c /= 4)
      if (c % 4) f.emplace_back(q, static_cast<Axis>(c % 4));
    all.emplace_back(std::move(f));
  }
  for (const auto& a : all)
    for (const auto& b : all) {
      bool empty = commutator(QubitOperator::from_term(a, 1.0),
                              QubitOperator::from_term(b, 1.0))
                       .empty();
      if (commutes_trivially(a, b) != empty) prune_ok = false;
    }
  rep.check("commutes_trivially exact on <= 3 qubits", prune_ok, prune_ok ? 0.0 : 1.0);
  return rep;
}

/** Trotter bound chain on small instances, printing the dense margins. */
inline VerifyReport verify_trotter() {
  VerifyReport rep;
  auto run_instance = [&](const TrotterOrdering& o, const std::string& name) {
    auto norm = trotter_error_norm(o);
    double worst_gap = -1.0, worst_shift = -1.0;
    for (double t : {0.01, 0.05, 0.2}) {
      if (!norm.wt3_valid(t)) continue;
      double bound = norm.w * t * t * t;
      double gap = dense_unitary_gap(o, t);
      worst_gap = std::max(worst_gap, gap - bound);
      double shift = dense_eigenphase_shift(o, t);
      worst_shift = std::max(worst_shift, shift - eigenphase_shift_bound(bound, t));
    }
    rep.check(name + ": dense gap within W t^3", worst_gap <= 1e-10, worst_gap);
    rep.check(name + ": eigenphase shift within arctan bound", worst_shift <= 1e-10,
              worst_shift);
  };

  auto h21 = hubbard(2, 1, 1.0, 4.0, false);
  run_instance(split_operator_ordering(h21, SplitOrder::TV), "hubbard 2x1 split");
  run_instance(fswap_ordering(h21), "hubbard 2x1 fswap");

  std::mt19937 rng(987654);
  double worst_random = -1.0;
  for (int it = 0; it < 10; ++it) {
    TrotterOrdering o;
    int frags = 2 + it % 3;
    for (int f = 0; f < frags; ++f) {
      auto op = detail::random_operator(rng, 4, 4);
      op += QubitOperator::from_term(PauliString::identity(), -op.coefficient(PauliString::identity()));
      if (!op.empty()) o.fragments.push_back(op);
    }
    if (o.fragments.empty()) continue;
    auto norm = trotter_error_norm(o);
    for (double t : {0.01, 0.05}) {
      if (!norm.wt3_valid(t)) continue;
      worst_random = std::max(worst_random, dense_unitary_gap(o, t) - norm.w * t * t * t);
    }
  }
  rep.check("random orderings: dense gap within W t^3", worst_random <= 1e-10, worst_random);

  // Sparse engine against a direct small-scale evaluation of the same sums.
  auto direct_w = [](const TrotterOrdering& o) {
    double w = 0.0;
    const auto& f = o.fragments;
    for (std::size_t b = 0; b + 1 < f.size(); ++b) {
      QubitOperator suffix;
      for (std::size_t c = b + 1; c < f.size(); ++c) suffix += f[c];
      auto inner = commutator(f[b], suffix);
      w += one_norm(commutator(inner, suffix)) + 0.5 * one_norm(commutator(inner, f[b]));
    }
    return w / 12.0;
  };
  auto o21 = split_operator_ordering(h21, SplitOrder::TV);
  double w_engine = trotter_error_norm(o21).w;
  double w_direct = direct_w(o21);
  double rel = std::abs(w_engine - w_direct) / std::max(1e-300, std::abs(w_direct));
  rep.check("packed engine matches sparse evaluation", rel < 1e-12, rel);
  return rep;
}

/** Hamming-weight phasing identities and the pinned closed-form counts. */
inline VerifyReport verify_hwp() {
  VerifyReport rep;
  std::mt19937 rng(13579);
  std::uniform_real_distribution<double> angle(-3.14, 3.14);
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    double theta = angle(rng);
    auto t = hwp_phase_table(n, theta);
    double base_d = t.direct[0], base_h = t.hwp[0];
    for (std::size_t x = 0; x < t.direct.size(); ++x)
      worst = std::max(worst, std::abs((t.direct[x] - base_d) - (t.hwp[x] - base_h)));
  }
  rep.check("phase tables identical (relative to |0..0>)", worst < 1e-12, worst);

  auto lim = hwp_limited(50, 30);
  bool pinned = lim.rotations == 10 && lim.t_gates == 192;
  rep.check("hwp_limited(50,30) = 10 rotations, 192 T", pinned, pinned ? 0.0 : 1.0);

  auto f16 = ffft_costs(16, 2, false);
  auto f16s = ffft_costs(16, 2, true);
  bool ffft_ok = f16.t_gates == 2304 && f16.toffoli == 64 && f16s.t_gates == 4608 &&
                 f16s.toffoli == 128;
  rep.check("16x16 FFFT basis-change totals", ffft_ok, ffft_ok ? 0.0 : 1.0);
  return rep;
}

inline VerifyReport verify_all() {
  VerifyReport rep;
  for (const auto& sub : {verify_pauli(), verify_trotter(), verify_hwp()}) {
    rep.passed = rep.passed && sub.passed;
    rep.lines.insert(rep.lines.end(), sub.lines.begin(), sub.lines.end());
  }
  return rep;
}

}  // namespace qre
