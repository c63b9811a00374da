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
#include <numbers>

#include "oracles.hpp"
#include "qre/dense.hpp"
#include "qre/hamiltonians.hpp"
#include "qre/trotter_error.hpp"

using namespace qre;

namespace {

TrotterOrdering ordering_from(std::vector<QubitOperator> fragments) {
  TrotterOrdering o;
  o.fragments = std::move(fragments);
  return o;
}

double dense_w(const TrotterOrdering& o) {
  const int nq = static_cast<int>(o.num_qubits());
  std::vector<oracle::Matrix> mats;
  for (const auto& f : o.fragments) mats.push_back(oracle::kron_dense(f, nq));
  return oracle::dense_trotter_norm(mats);
}

TrotterOrdering random_ordering(std::mt19937& rng, int max_qubits, int max_fragments) {
  std::uniform_int_distribution<int> nfrag(2, max_fragments);
  TrotterOrdering o;
  int l = nfrag(rng);
  for (int f = 0; f < l; ++f) {
    auto op = oracle::random_operator(rng, max_qubits, 4, /*traceless=*/true);
    if (!op.empty()) o.fragments.push_back(op);
  }
  if (o.fragments.size() < 2)
    o.fragments.push_back(QubitOperator::from_term(PauliString::single(0, Axis::X), 0.5));
  return o;
}

}  // namespace

TEST_CASE("commuting fragments give zero Trotter error") {
  QubitOperator a = QubitOperator::from_term(PauliString::single(0, Axis::Z), 0.7);
  QubitOperator b = QubitOperator::from_term(
      PauliString({{0, Axis::Z}, {1, Axis::Z}}), -0.4);
  QubitOperator c = QubitOperator::from_term(PauliString::single(1, Axis::Z), 1.1);
  auto norm = trotter_error_norm(ordering_from({a, b, c}));
  CHECK(norm.w == 0.0);
  CHECK(norm.per_qubit.empty());
}

TEST_CASE("two-fragment orderings specialize the closed form") {
  std::mt19937 rng(321);
  for (int it = 0; it < 10; ++it) {
    auto h1 = oracle::random_operator(rng, 4, 4, true);
    auto h2 = oracle::random_operator(rng, 4, 4, true);
    if (h1.empty() || h2.empty()) continue;
    auto norm = trotter_error_norm(ordering_from({h1, h2}));
    auto inner = commutator(h1, h2);
    double expected =
        (one_norm(commutator(inner, h2)) + 0.5 * one_norm(commutator(inner, h1))) / 12.0;
    CHECK(norm.w == Catch::Approx(expected).epsilon(1e-12).margin(1e-300));
  }
}

TEST_CASE("empty ordering is rejected") {
  CHECK_THROWS_AS(trotter_error_norm(TrotterOrdering{}), std::invalid_argument);
}

TEST_CASE("W matches the dense nested-commutator oracle") {
  auto h = hubbard(2, 1, 1.0, 4.0, false);

  SECTION("split TV on 2x1 Hubbard") {
    auto o = split_operator_ordering(h, SplitOrder::TV);
    double w = trotter_error_norm(o).w;
    double ref = dense_w(o);
    CHECK(std::abs(w - ref) / ref < 1e-9);
  }
  SECTION("fswap on 2x1 Hubbard") {
    auto o = fswap_ordering(h);
    double w = trotter_error_norm(o).w;
    double ref = dense_w(o);
    CHECK(std::abs(w - ref) / ref < 1e-9);
  }
  SECTION("random small orderings") {
    std::mt19937 rng(777);
    for (int it = 0; it < 12; ++it) {
      auto o = random_ordering(rng, 5, 5);
      double w = trotter_error_norm(o).w;
      double ref = dense_w(o);
      if (ref == 0.0)
        CHECK(w < 1e-12);
      else
        CHECK(std::abs(w - ref) / ref < 1e-9);
    }
  }
}

TEST_CASE("per-qubit partition sums to W") {
  auto h = hubbard(2, 2, 1.0, 4.0, true);
  auto norm = trotter_error_norm(fswap_ordering(h));
  double sum = 0.0;
  for (auto [q, v] : norm.per_qubit) sum += v;
  CHECK(sum == Catch::Approx(norm.w).epsilon(1e-9));
  CHECK(norm.w >= 0.0);
}

TEST_CASE("eigenphase shift bound") {
  CHECK(eigenphase_shift_bound(0.0, 1.0) == 0.0);
  // Closed form at delta = 1: arctan(sqrt(3)) = pi/3.
  CHECK(eigenphase_shift_bound(1.0, 1.0) == Catch::Approx(std::numbers::pi / 3.0));
  // Series head agrees to O(delta^5).
  double delta = 1e-2;
  double residual =
      std::abs(eigenphase_shift_bound(delta, 1.0) - eigenphase_shift_series(delta));
  CHECK(residual < 1e-9);
  CHECK_THROWS_AS(eigenphase_shift_bound(1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(eigenphase_shift_bound(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("dense unitary gap") {
  auto h = hubbard(2, 1, 1.0, 4.0, false);
  auto o = split_operator_ordering(h, SplitOrder::TV);

  SECTION("zero time, single fragment") {
    CHECK(dense_unitary_gap(o, 0.0) < 1e-13);
    auto single = ordering_from({jordan_wigner(h)});
    CHECK(dense_unitary_gap(single, 0.3) < 1e-12);
  }
  SECTION("gap within W t^3") {
    auto norm = trotter_error_norm(o);
    for (double t : {0.01, 0.05, 0.1, 0.2})
      CHECK(dense_unitary_gap(o, t) <= norm.w * t * t * t + 1e-12);
  }
}

TEST_CASE("dense eigenphase shift") {
  auto h = hubbard(2, 1, 1.0, 4.0, false);
  auto o = split_operator_ordering(h, SplitOrder::TV);

  SECTION("single fragment is exact") {
    auto single = ordering_from({jordan_wigner(h)});
    CHECK(dense_eigenphase_shift(single, 0.1) < 1e-10);
  }
  SECTION("cubic scaling of the phase shift in t") {
    // |E - E_eff| t grows as t^3; equivalently the energy shift goes as t^2.
    std::vector<double> ts, phase_shifts;
    for (double t = 0.2; t > 0.002; t /= 2.0) {
      ts.push_back(t);
      phase_shifts.push_back(dense_eigenphase_shift(o, t) * t);
    }
    double slope = oracle::power_law_exponent(ts, phase_shifts);
    CHECK(slope > 2.5);
    CHECK(slope < 3.5);
  }
  SECTION("inequality chain through the arctan bound") {
    double t = 0.1;
    double gap = dense_unitary_gap(o, t);
    double shift = dense_eigenphase_shift(o, t);
    CHECK(shift <= eigenphase_shift_bound(gap, t) + 1e-10);
  }
  SECTION("phase wrapping rejected") {
    CHECK_THROWS_AS(dense_eigenphase_shift(o, 5.0), std::domain_error);
  }
}

TEST_CASE("bound validity over random orderings") {
  std::mt19937 rng(2468);
  int checked = 0;
  for (int it = 0; it < 24; ++it) {
    auto o = random_ordering(rng, 6, 5);
    auto norm = trotter_error_norm(o);
    for (double t : {0.01, 0.05, 0.2}) {
      if (!norm.wt3_valid(t)) continue;
      double gap = dense_unitary_gap(o, t);
      CHECK(gap <= norm.w * t * t * t + 1e-10);
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("worker count does not change W") {
  auto h = hubbard(2, 2, 1.0, 4.0, true);
  auto o = fswap_ordering(h);
  TrotterNormOptions opts;
  opts.workers = 1;
  double w1 = trotter_error_norm(o, opts).w;
  opts.workers = 2;
  double w2 = trotter_error_norm(o, opts).w;
  opts.workers = 8;
  double w8 = trotter_error_norm(o, opts).w;
  CHECK(w1 == w2);
  CHECK(w1 == w8);
}

TEST_CASE("pruning soundness") {
  std::mt19937 rng(1122);
  for (int it = 0; it < 6; ++it) {
    auto o = random_ordering(rng, 8, 6);
    TrotterNormOptions with, without;
    with.prune = true;
    without.prune = false;
    double wp = trotter_error_norm(o, with).w;
    double wn = trotter_error_norm(o, without).w;
    if (wn == 0.0)
      CHECK(wp == 0.0);
    else
      CHECK(std::abs(wp - wn) / wn < 1e-12);
  }
  auto h = hubbard(2, 2, 1.0, 4.0, false);
  auto o = fswap_ordering(h);
  TrotterNormOptions with, without;
  without.prune = false;
  CHECK(trotter_error_norm(o, with).w ==
        Catch::Approx(trotter_error_norm(o, without).w).epsilon(1e-12));
  CHECK(trotter_error_norm(o, with).pruned_pairs > 0);
}

TEST_CASE("W scales cubically with the Hamiltonian scale") {
  auto h = hubbard(2, 2, 1.0, 4.0, false);
  auto o = fswap_ordering(h);
  double w1 = trotter_error_norm(o).w;
  double s = 1.7;
  TrotterOrdering scaled = o;
  for (auto& f : scaled.fragments) f *= Complex(s);
  double ws = trotter_error_norm(scaled).w;
  CHECK(ws == Catch::Approx(s * s * s * w1).epsilon(1e-12));
}

TEST_CASE("checkpoint restores partial runs") {
  auto h = hubbard(2, 2, 1.0, 4.0, true);
  auto o = fswap_ordering(h);
  std::string path = "checkpoint_test.tmp";
  std::remove(path.c_str());
  TrotterNormOptions opts;
  opts.checkpoint_path = path;
  double w_first = trotter_error_norm(o, opts).w;
  // Second run resumes from the finished checkpoint and must agree exactly.
  double w_second = trotter_error_norm(o, opts).w;
  CHECK(w_first == w_second);
  std::remove(path.c_str());
}

TEST_CASE("split W values match the closed Trotter-order expressions") {
  // For the two-fragment split ordering, Eq-style direct evaluation:
  // W_TV = (||[V,[V,T]]|| + 0.5 ||[T,[V,T]]||)/12 with the 1/12 included.
  auto h = hubbard(2, 1, 1.0, 4.0, false);
  auto tv = split_operator_ordering(h, SplitOrder::TV);
  const auto& t_frag = tv.fragments[0];
  const auto& v_frag = tv.fragments[1];
  auto tv_comm = commutator(t_frag, v_frag);
  double expected =
      (one_norm(commutator(tv_comm, v_frag)) + 0.5 * one_norm(commutator(tv_comm, t_frag))) /
      12.0;
  CHECK(trotter_error_norm(tv).w == Catch::Approx(expected).epsilon(1e-12));
}
