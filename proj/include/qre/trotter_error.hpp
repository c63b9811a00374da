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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qre/orderings.hpp"
#include "qre/packed.hpp"

namespace qre {

/**
 * Second-order Trotter error norm of a fragment ordering:
 *
 *   W = (1/12) sum_{b=1}^{L-1} ( || sum_{c>b} sum_{a>b} [[H_b,H_c],H_a] ||_1
 *                                + 1/2 || sum_{c>b} [[H_b,H_c],H_b] ||_1 )
 *
 * with every inner sum fully expanded in the Pauli basis before the
 * coefficient 1-norm is taken, so cancellations between commutators are
 * captured. The per-qubit partition splits each 1-norm by the smallest qubit
 * index of each surviving string.
 */
struct TrotterNormResult {
  double w = 0.0;
  std::vector<std::pair<std::uint32_t, double>> per_qubit;  // (qubit, contribution)
  std::size_t fragment_count = 0;
  std::uint64_t pruned_pairs = 0;

  bool wt3_valid(double t) const { return w * t * t * t <= 1.0; }
};

struct TrotterNormOptions {
  int workers = 1;
  bool prune = true;
  std::optional<std::string> checkpoint_path;
};

namespace detail {

inline double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

struct BTaskResult {
  std::vector<double> buckets;  // per smallest-qubit-index contribution, un-normalized
  std::uint64_t pruned = 0;
};

template <std::size_t Words>
class NormEngine {
 public:
  NormEngine(const TrotterOrdering& ordering, const TrotterNormOptions& opts)
      : opts_(opts), nq_(std::max<std::uint32_t>(ordering.num_qubits(), 1)) {
    frags_.reserve(ordering.fragments.size());
    for (const auto& f : ordering.fragments) frags_.push_back(packed::pack_operator<Words>(f));
  }

  TrotterNormResult run() {
    const std::size_t L = frags_.size();
    TrotterNormResult result;
    result.fragment_count = L;
    if (L == 0) throw std::invalid_argument("empty ordering");

    std::vector<BTaskResult> per_b(L > 0 ? L - 1 : 0);
    std::vector<char> done(per_b.size(), 0);
    load_checkpoint(per_b, done);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= per_b.size()) return;
        if (done[b]) continue;
        per_b[b] = run_b(b);
      }
    };
    int workers = std::max(1, opts_.workers);
    if (workers == 1 || per_b.size() <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < workers; ++i) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (opts_.checkpoint_path) save_checkpoint(per_b, done);

    // Fixed reduction order: ascending b within each bucket, then buckets in
    // ascending qubit order, pairwise. Independent of worker count.
    std::vector<double> bucket_totals(nq_, 0.0);
    for (std::uint32_t q = 0; q < nq_; ++q) {
      std::vector<double> column;
      column.reserve(per_b.size());
      for (const auto& r : per_b)
        column.push_back(q < r.buckets.size() ? r.buckets[q] : 0.0);
      bucket_totals[q] = pairwise_sum(column) / 12.0;
    }
    for (const auto& r : per_b) result.pruned_pairs += r.pruned;
    for (std::uint32_t q = 0; q < nq_; ++q)
      if (bucket_totals[q] != 0.0) result.per_qubit.emplace_back(q, bucket_totals[q]);
    result.w = pairwise_sum(bucket_totals);
    return result;
  }

 private:
  using Term = packed::Term<Words>;
  using POp = packed::POp<Words>;

  // [A, B] over term pairs; commuting string pairs are skipped so their
  // cancellation is exact. Output sorted and combined.
  static std::vector<Term> commutator_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    for (const auto& ta : a) {
      for (const auto& tb : b) {
        if (!packed::anticommutes(ta.str, tb.str)) continue;
        Term t;
        int e = packed::product(ta.str, tb.str, t.str);
        t.coeff = 2.0 * ta.coeff * tb.coeff * packed::phase_of(e);
        out.push_back(t);
      }
    }
    combine(out);
    return out;
  }

  static void combine(std::vector<Term>& v) {
    std::stable_sort(v.begin(), v.end(),
                     [](const Term& a, const Term& b) { return a.str < b.str; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size();) {
      Term acc = v[i];
      std::size_t j = i + 1;
      while (j < v.size() && v[j].str == v[i].str) acc.coeff += v[j++].coeff;
      if (acc.coeff != std::complex<double>(0.0)) v[w++] = acc;
      i = j;
    }
    v.resize(w);
  }

  static std::vector<Term> merge_combined(std::vector<Term>&& a, std::vector<Term>&& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].str < b[j].str) {
        out.push_back(a[i++]);
      } else if (b[j].str < a[i].str) {
        out.push_back(b[j++]);
      } else {
        Term t = a[i];
        t.coeff += b[j].coeff;
        if (t.coeff != std::complex<double>(0.0)) out.push_back(t);
        ++i;
        ++j;
      }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
  }

  // Expansion of [S, ops] in fixed chunks of S merged in a fixed tree, so the
  // result (including floating-point rounding) does not depend on threading.
  static std::vector<Term> expand_commutator(const std::vector<Term>& s,
                                             const std::vector<Term>& ops) {
    constexpr std::size_t kChunk = 512;
    std::vector<std::vector<Term>> pieces;
    for (std::size_t start = 0; start < s.size(); start += kChunk) {
      std::size_t stop = std::min(s.size(), start + kChunk);
      std::vector<Term> chunk(s.begin() + start, s.begin() + stop);
      pieces.push_back(commutator_terms(chunk, ops));
    }
    if (pieces.empty()) return {};
    while (pieces.size() > 1) {
      std::vector<std::vector<Term>> next;
      for (std::size_t i = 0; i + 1 < pieces.size(); i += 2)
        next.push_back(merge_combined(std::move(pieces[i]), std::move(pieces[i + 1])));
      if (pieces.size() % 2 == 1) next.push_back(std::move(pieces.back()));
      pieces = std::move(next);
    }
    return std::move(pieces.front());
  }

  void accumulate_buckets(const std::vector<Term>& terms, double weight,
                          std::vector<double>& buckets, std::vector<double>& comp) const {
    for (const auto& t : terms) {
      int q = t.str.min_qubit();
      if (q < 0) continue;  // commutators have no identity component
      double v = weight * std::abs(t.coeff);
      double& acc = buckets[q];
      double sum = acc + v;
      comp[q] += (std::abs(acc) >= v) ? (acc - sum) + v : (v - sum) + acc;
      acc = sum;
    }
  }

  BTaskResult run_b(std::size_t b) const {
    const std::size_t L = frags_.size();
    BTaskResult res;
    res.buckets.assign(nq_, 0.0);
    std::vector<double> comp(nq_, 0.0);

    // S = sum_{c>b} [H_b, H_c], pruned at the fragment level by support.
    std::vector<Term> s;
    for (std::size_t c = b + 1; c < L; ++c) {
      if (opts_.prune && frags_[b].support_disjoint(frags_[c])) {
        ++res.pruned;
        continue;
      }
      s = merge_combined(std::move(s), commutator_terms(frags_[b].terms, frags_[c].terms));
    }
    if (s.empty()) {
      for (std::uint32_t q = 0; q < nq_; ++q) res.buckets[q] += comp[q];
      return res;
    }

    std::array<std::uint64_t, Words> s_support{};
    for (const auto& t : s)
      for (std::size_t w = 0; w < Words; ++w) s_support[w] |= t.str.x[w] | t.str.z[w];
    auto disjoint_from_s = [&](const POp& f) {
      for (std::size_t w = 0; w < Words; ++w)
        if (s_support[w] & f.support[w]) return false;
      return true;
    };

    // B restricted to fragments that can touch S.
    std::vector<Term> b_terms;
    for (std::size_t a = b + 1; a < L; ++a) {
      if (opts_.prune && disjoint_from_s(frags_[a])) {
        ++res.pruned;
        continue;
      }
      b_terms.insert(b_terms.end(), frags_[a].terms.begin(), frags_[a].terms.end());
    }

    auto inner1 = expand_commutator(s, b_terms);
    accumulate_buckets(inner1, 1.0, res.buckets, comp);
    inner1.clear();
    inner1.shrink_to_fit();

    auto inner2 = expand_commutator(s, frags_[b].terms);
    accumulate_buckets(inner2, 0.5, res.buckets, comp);

    for (std::uint32_t q = 0; q < nq_; ++q) res.buckets[q] += comp[q];
    return res;
  }

  void load_checkpoint(std::vector<BTaskResult>& per_b, std::vector<char>& done) const {
    if (!opts_.checkpoint_path) return;
    std::ifstream in(*opts_.checkpoint_path);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::size_t b, nb;
      std::uint64_t pruned;
      if (!(ls >> b >> pruned >> nb) || b >= per_b.size()) continue;
      BTaskResult r;
      r.pruned = pruned;
      r.buckets.resize(nb);
      bool ok = true;
      for (std::size_t i = 0; i < nb; ++i)
        if (!(ls >> r.buckets[i])) ok = false;
      if (!ok) continue;
      per_b[b] = std::move(r);
      done[b] = 1;
    }
  }

  void save_checkpoint(const std::vector<BTaskResult>& per_b, const std::vector<char>&) const {
    std::ofstream out(*opts_.checkpoint_path, std::ios::trunc);
    out.precision(17);
    for (std::size_t b = 0; b < per_b.size(); ++b) {
      out << b << " " << per_b[b].pruned << " " << per_b[b].buckets.size();
      for (double v : per_b[b].buckets) out << " " << v;
      out << "\n";
    }
  }

  TrotterNormOptions opts_;
  std::uint32_t nq_;
  std::vector<POp> frags_;
};

}  // namespace detail

inline TrotterNormResult trotter_error_norm(const TrotterOrdering& ordering,
                                            const TrotterNormOptions& opts = {}) {
  if (ordering.fragments.empty()) throw std::invalid_argument("empty ordering");
  std::uint32_t nq = ordering.num_qubits();
  std::size_t words = (std::max<std::uint32_t>(nq, 1) + 63) / 64;
  if (words <= 1) return detail::NormEngine<1>(ordering, opts).run();
  if (words <= 2) return detail::NormEngine<2>(ordering, opts).run();
  if (words <= 4) return detail::NormEngine<4>(ordering, opts).run();
  if (words <= 8) return detail::NormEngine<8>(ordering, opts).run();
  throw std::invalid_argument("orderings beyond 512 qubits are not supported");
}

/**
 * Energy-shift bound from a unitary gap delta = ||U - U_TS||:
 * arctan(delta sqrt(4-delta^2) / (2-delta^2)) / t, valid for delta^2 <= 2.
 */
inline double eigenphase_shift_bound(double delta, double t) {
  if (delta < 0.0) throw std::invalid_argument("gap must be non-negative");
  if (delta * delta > 2.0) throw std::domain_error("bound only valid for delta^2 <= 2");
  if (t <= 0.0) throw std::invalid_argument("time must be positive");
  if (delta == 0.0) return 0.0;
  return std::atan(delta * std::sqrt(4.0 - delta * delta) / (2.0 - delta * delta)) / t;
}

/** Leading series of the arctan bound: delta + delta^3/24 (phase units). */
inline double eigenphase_shift_series(double delta) {
  return delta + delta * delta * delta / 24.0;
}

/**
 * Picks the split order with the smaller Trotter error norm; ties go to TV.
 */
inline SplitOrder recommend_split_order(const FermionHamiltonian& h,
                                        const TrotterNormOptions& opts = {}) {
  double w_tv = trotter_error_norm(split_operator_ordering(h, SplitOrder::TV), opts).w;
  double w_vt = trotter_error_norm(split_operator_ordering(h, SplitOrder::VT), opts).w;
  return w_tv <= w_vt ? SplitOrder::TV : SplitOrder::VT;
}

}  // namespace qre
