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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qre/orderings.hpp"
#include "qre/pauli.hpp"

namespace qre {

/** Dense 2^n x 2^n matrix of a qubit operator. Verification scale only. */
inline Eigen::MatrixXcd dense_matrix(const QubitOperator& op, int num_qubits) {
  if (num_qubits < 0 || num_qubits > 12)
    throw std::invalid_argument("dense matrices limited to 12 qubits");
  if (op.num_qubits() > static_cast<std::uint32_t>(num_qubits))
    throw std::invalid_argument("operator acts outside the requested register");
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : op.terms()) {
    std::uint64_t xmask = 0, zonly = 0, ymask = 0;
    for (const auto& [q, a] : s.factors()) {
      if (a == Axis::X || a == Axis::Y) xmask |= 1ULL << q;
      if (a == Axis::Z) zonly |= 1ULL << q;
      if (a == Axis::Y) ymask |= 1ULL << q;
    }
    for (Eigen::Index col = 0; col < dim; ++col) {
      std::uint64_t j = static_cast<std::uint64_t>(col);
      Eigen::Index row = static_cast<Eigen::Index>(j ^ xmask);
      // Z contributes (-1)^bit; Y maps |0> -> i|1> and |1> -> -i|0>.
      Complex val = c;
      if (std::popcount(j & zonly) & 1) val = -val;
      int ipow = (std::popcount(ymask & ~j) - std::popcount(ymask & j)) % 4;
      switch (((ipow % 4) + 4) % 4) {
        case 1: val *= Complex(0, 1); break;
        case 2: val *= -1.0; break;
        case 3: val *= Complex(0, -1); break;
        default: break;
      }
      m(row, col) += val;
    }
  }
  return m;
}

namespace detail {

inline Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline Eigen::MatrixXcd trotterized_unitary(const TrotterOrdering& o, double t, int nq) {
  const Eigen::Index dim = Eigen::Index(1) << nq;
  std::vector<Eigen::MatrixXcd> half;
  half.reserve(o.fragments.size());
  for (const auto& f : o.fragments) half.push_back(hermitian_exp(dense_matrix(f, nq), t / 2.0));
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& e : half) u = e * u;             // forward pass, l = 1..L
  for (auto it = half.rbegin(); it != half.rend(); ++it) u = (*it) * u;  // reversed
  return u;
}

}  // namespace detail

/**
 * Spectral-norm gap || e^{-iHt} - U_TS(t) || between the exact evolution and
 * the symmetric Trotter product, by dense matrices. Verification oracle.
 */
inline double dense_unitary_gap(const TrotterOrdering& o, double t) {
  const int nq = static_cast<int>(o.num_qubits());
  if (nq > 12) throw std::invalid_argument("dense gap limited to 12 qubits");
  QubitOperator h = sum_fragments(o);
  Eigen::MatrixXcd exact = detail::hermitian_exp(dense_matrix(h, nq), t);
  Eigen::MatrixXcd approx = detail::trotterized_unitary(o, t, nq);
  return detail::spectral_norm(exact - approx);
}

/**
 * Largest eigenphase shift |E_n - E_n^eff| between H and the effective
 * Hamiltonian (i/t) log U_TS, with both spectra sorted for matching. Rejects
 * phase wrapping: every |E_n t| must stay below pi.
 */
inline double dense_eigenphase_shift(const TrotterOrdering& o, double t) {
  const int nq = static_cast<int>(o.num_qubits());
  if (nq > 12) throw std::invalid_argument("dense shift limited to 12 qubits");
  if (t <= 0.0) throw std::invalid_argument("time must be positive");
  QubitOperator h = sum_fragments(o);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h, nq));
  Eigen::VectorXd exact = es.eigenvalues();
  for (Eigen::Index i = 0; i < exact.size(); ++i)
    if (std::abs(exact(i)) * t >= std::numbers::pi)
      throw std::domain_error("eigenphase wrapping: |E t| >= pi");

  Eigen::MatrixXcd u = detail::trotterized_unitary(o, t, nq);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ues(u);
  std::vector<double> eff(ues.eigenvalues().size());
  for (std::size_t i = 0; i < eff.size(); ++i)
    eff[i] = -std::arg(ues.eigenvalues()(static_cast<Eigen::Index>(i))) / t;
  std::sort(eff.begin(), eff.end());

  double shift = 0.0;
  for (Eigen::Index i = 0; i < exact.size(); ++i)
    shift = std::max(shift, std::abs(exact(i) - eff[static_cast<std::size_t>(i)]));
  return shift;
}

}  // namespace qre
