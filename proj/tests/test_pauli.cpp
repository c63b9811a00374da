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
#include <random>

#include "oracles.hpp"
#include "qre/pauli.hpp"

using namespace qre;
using oracle::kron_dense;

namespace {
PauliString ps(std::initializer_list<std::pair<std::uint32_t, Axis>> factors) {
  return PauliString(std::vector<PauliString::Factor>(factors));
}
}  // namespace

TEST_CASE("single-qubit products") {
  auto x0 = QubitOperator::from_term(PauliString::single(0, Axis::X), 1.0);
  auto y0 = QubitOperator::from_term(PauliString::single(0, Axis::Y), 1.0);

  auto prod = multiply(x0, y0);
  REQUIRE(prod.size() == 1);
  CHECK(prod.coefficient(PauliString::single(0, Axis::Z)) == Complex(0, 1));

  auto zz = QubitOperator::from_term(ps({{0, Axis::Z}, {1, Axis::Z}}), 1.0);
  auto square = multiply(zz, zz);
  REQUIRE(square.size() == 1);
  CHECK(square.coefficient(PauliString::identity()) == Complex(1.0));

  QubitOperator mixed;
  mixed.add_term(PauliString::single(0, Axis::X), 0.5);
  mixed.add_term(PauliString::single(1, Axis::Y), 0.5);
  auto same = multiply(mixed, QubitOperator::identity());
  CHECK(same.size() == 2);
  CHECK(same.coefficient(PauliString::single(0, Axis::X)) == Complex(0.5));
  CHECK(same.coefficient(PauliString::single(1, Axis::Y)) == Complex(0.5));
}

TEST_CASE("commutator basics") {
  auto x0 = QubitOperator::from_term(PauliString::single(0, Axis::X), 1.0);
  auto z0 = QubitOperator::from_term(PauliString::single(0, Axis::Z), 1.0);
  auto comm = commutator(x0, z0);
  REQUIRE(comm.size() == 1);
  CHECK(comm.coefficient(PauliString::single(0, Axis::Y)) == Complex(0, -2));

  auto z01 = QubitOperator::from_term(ps({{0, Axis::Z}, {1, Axis::Z}}), 1.0);
  auto z12 = QubitOperator::from_term(ps({{1, Axis::Z}, {2, Axis::Z}}), 1.0);
  CHECK(commutator(z01, z12).empty());
}

TEST_CASE("nested commutator phase fixed by the dense oracle") {
  auto z01 = QubitOperator::from_term(ps({{0, Axis::Z}, {1, Axis::Z}}), 1.0);
  auto x1 = QubitOperator::from_term(PauliString::single(1, Axis::X), 1.0);
  auto nested = commutator(commutator(z01, x1), z01);

  auto dense_z01 = kron_dense(z01, 2), dense_x1 = kron_dense(x1, 2);
  auto inner = dense_z01 * dense_x1 - dense_x1 * dense_z01;
  auto expected = inner * dense_z01 - dense_z01 * inner;
  CHECK(oracle::max_abs_diff(kron_dense(nested, 2), expected) < 1e-12);

  // The surviving term is -4 X1.
  REQUIRE(nested.size() == 1);
  CHECK(nested.coefficient(PauliString::single(1, Axis::X)) == Complex(-4.0));
}

TEST_CASE("one_norm") {
  QubitOperator op;
  op.add_term(PauliString::single(0, Axis::X), 0.5);
  op.add_term(PauliString::single(1, Axis::Z), -0.25);
  CHECK(one_norm(op) == Catch::Approx(0.75));
  CHECK(one_norm(QubitOperator::zero()) == 0.0);

  // Jordan-Wigner image of a two-site hopping term at tau = 1: two strings of
  // coefficient 1/2 each.
  QubitOperator hop;
  hop.add_term(ps({{0, Axis::X}, {1, Axis::X}}), 0.5);
  hop.add_term(ps({{0, Axis::Y}, {1, Axis::Y}}), 0.5);
  CHECK(one_norm(hop) == Catch::Approx(1.0));
  CHECK(oracle::max_abs_diff(
            kron_dense(hop, 2),
            oracle::dense_fermion_hamiltonian(
                (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished(),
                Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 2))) < 1e-12);

  QubitOperator with_identity;
  with_identity.add_term(PauliString::identity(), 2.0);
  with_identity.add_term(PauliString::single(0, Axis::X), 1.0);
  CHECK(one_norm(with_identity) == Catch::Approx(3.0));
  CHECK(one_norm(with_identity, /*traceless=*/true) == Catch::Approx(1.0));
}

TEST_CASE("commutes_trivially") {
  CHECK(commutes_trivially(PauliString::single(0, Axis::X), PauliString::single(1, Axis::Z)));
  CHECK_FALSE(
      commutes_trivially(PauliString::single(0, Axis::X), PauliString::single(0, Axis::Z)));
  CHECK(commutes_trivially(ps({{0, Axis::X}, {1, Axis::X}}), ps({{0, Axis::Z}, {1, Axis::Z}})));
}

TEST_CASE("commutes_trivially is exact for strings on <= 3 qubits") {
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
      bool empty =
          commutator(QubitOperator::from_term(a, 1.0), QubitOperator::from_term(b, 1.0)).empty();
      CHECK(commutes_trivially(a, b) == empty);
    }
}

TEST_CASE("random operators match dense algebra") {
  std::mt19937 rng(42);
  const int nq = 6;
  for (int it = 0; it < 30; ++it) {
    auto a = oracle::random_operator(rng, nq, 8);
    auto b = oracle::random_operator(rng, nq, 8);
    auto da = kron_dense(a, nq), db = kron_dense(b, nq);

    CHECK(oracle::max_abs_diff(kron_dense(multiply(a, b), nq), da * db) < 1e-12);
    CHECK(oracle::max_abs_diff(kron_dense(commutator(a, b), nq), da * db - db * da) < 1e-12);

    // Antisymmetry holds term by term.
    auto sum = commutator(a, b) + commutator(b, a);
    CHECK(sum.empty());

    CHECK(oracle::spectral_norm(da) <= one_norm(a) + 1e-9);
  }
}

TEST_CASE("exact cancellation leaves no residue") {
  QubitOperator op;
  op.add_term(PauliString::single(3, Axis::Y), 0.75);
  op.add_term(PauliString::single(3, Axis::Y), -0.75);
  CHECK(op.empty());
}

TEST_CASE("compress drops small terms only when asked") {
  QubitOperator op;
  op.add_term(PauliString::single(0, Axis::X), 1e-15);
  op.add_term(PauliString::single(1, Axis::X), 1.0);
  CHECK(op.size() == 2);
  op.compress(1e-12);
  CHECK(op.size() == 1);
}

TEST_CASE("text round trip") {
  std::mt19937 rng(7);
  auto op = oracle::random_operator(rng, 5, 10);
  op.add_term(PauliString::identity(), Complex(0.25, -0.5));
  auto back = from_text(to_text(op));
  REQUIRE(back.size() == op.size());
  for (const auto& [s, c] : op.terms()) CHECK(std::abs(back.coefficient(s) - c) < 1e-15);

  auto line = to_text(QubitOperator::identity(2.0));
  CHECK(line.find("I") != std::string::npos);
}

TEST_CASE("canonical ordering is deterministic") {
  QubitOperator op;
  op.add_term(PauliString::single(5, Axis::Z), 1.0);
  op.add_term(PauliString::single(1, Axis::X), 1.0);
  op.add_term(PauliString::single(1, Axis::Y), 1.0);
  std::vector<std::string> order;
  for (const auto& [s, c] : op.terms()) order.push_back(s.str());
  CHECK(order == std::vector<std::string>{"X1", "Y1", "Z5"});
}
