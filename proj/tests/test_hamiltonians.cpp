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

#include <Eigen/Eigenvalues>
#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qre/hamiltonians.hpp"

using namespace qre;

namespace {

GridSpec grid_2x2_spinless(double rs = 10.0) {
  GridSpec g;
  g.lengths = {2, 2};
  g.spinful = false;
  g.wigner_seitz_radius = rs;
  return g;
}

}  // namespace

TEST_CASE("jellium has no external potential") {
  auto h = jellium(grid_2x2_spinless());
  CHECK(h.external.cwiseAbs().maxCoeff() == 0.0);

  GridSpec g3;
  g3.lengths = {2, 2, 2};
  g3.spinful = true;
  g3.wigner_seitz_radius = 5.0;
  CHECK(jellium(g3).external.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jellium interaction is translation invariant") {
  for (bool spin : {false, true}) {
    GridSpec g;
    g.lengths = {3, 3};
    g.spinful = spin;
    g.wigner_seitz_radius = 10.0;
    auto h = jellium(g);
    CHECK(h.translation_invariant(1e-12));
  }
}

TEST_CASE("jellium tensors match the brute-force plane-wave sums") {
  auto g = grid_2x2_spinless();
  auto h = jellium(g);
  auto ref = oracle::brute_force_plane_wave(g, {});
  CHECK((h.kinetic - ref.kinetic).cwiseAbs().maxCoeff() < 1e-12);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      double expected = p == q ? 0.0 : ref.interaction(p, q);
      CHECK(std::abs(h.interaction(p, q) - expected) < 1e-12);
    }

  GridSpec g3;
  g3.lengths = {3};
  g3.spinful = true;
  g3.wigner_seitz_radius = 4.0;
  auto h3 = jellium(g3);
  auto ref3 = oracle::brute_force_plane_wave(g3, {});
  const int m = g3.spatial_orbitals();
  for (int sp = 0; sp < m; ++sp)
    for (int sq = 0; sq < m; ++sq)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          int p = 2 * sp + a, q = 2 * sq + b;
          double t_expected = a == b ? ref3.kinetic(sp, sq) : 0.0;
          CHECK(std::abs(h3.kinetic(p, q) - t_expected) < 1e-12);
          double v_expected = p == q ? 0.0 : ref3.interaction(sp, sq);
          if (sp == sq && a != b) v_expected = ref3.interaction(sp, sp);
          CHECK(std::abs(h3.interaction(p, q) - v_expected) < 1e-12);
        }
}

TEST_CASE("jellium rejects bad grids") {
  GridSpec g;
  g.lengths = {2, 2, 2, 2};
  g.wigner_seitz_radius = 1.0;
  CHECK_THROWS_AS(jellium(g), std::invalid_argument);

  GridSpec no_volume;
  no_volume.lengths = {2, 2};
  CHECK_THROWS_AS(jellium(no_volume), std::invalid_argument);

  GridSpec bad_volume = grid_2x2_spinless();
  bad_volume.wigner_seitz_radius.reset();
  bad_volume.volume_override = -3.0;
  CHECK_THROWS_AS(jellium(bad_volume), std::invalid_argument);
}

TEST_CASE("material potential") {
  auto g = grid_2x2_spinless();

  SECTION("zero charges reproduce jellium") {
    NucleiSpec nuclei{{{0.5, 0.5}, 0.0}};
    auto h = material(g, nuclei);
    CHECK(h.external.cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.kinetic - jellium(g).kinetic).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("single nucleus matches the brute-force evaluator") {
    NucleiSpec nuclei{{{1.25, 3.5}, 2.0}};
    auto h = material(g, nuclei);
    auto ref = oracle::brute_force_plane_wave(g, nuclei);
    CHECK((h.external - ref.external).cwiseAbs().maxCoeff() < 1e-12);
  }

  SECTION("rigid lattice translation leaves U unchanged") {
    // Shifting nuclei and orbitals by the same lattice vector is a relabeling
    // of the cosine sums.
    NucleiSpec nuclei{{{2.0, 1.0}, 3.0}};
    auto h = material(g, nuclei);
    double cell = std::pow(g.cell_volume(), 0.5) / 2.0;  // lattice spacing
    NucleiSpec shifted{{{2.0 + cell, 1.0}, 3.0}};
    auto h2 = material(g, shifted);
    // U values permute with the orbital shift x -> x+1.
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) {
        int p = y * 2 + x;
        int p_shift = y * 2 + (x + 1) % 2;
        CHECK(std::abs(h.external(p) - h2.external(p_shift)) < 1e-12);
      }
  }

  SECTION("material requires nuclei") {
    CHECK_THROWS_AS(material(g, {}), std::invalid_argument);
  }
}

TEST_CASE("hubbard construction") {
  SECTION("2x1 open lattice") {
    auto h = hubbard(2, 1, 1.0, 4.0, false);
    REQUIRE(h.num_orbitals() == 4);
    // One bond per spin: hopping pairs (0up,1up) and (0dn,1dn).
    int hopping_pairs = 0, onsite = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (h.kinetic(p, q) != 0.0) {
          ++hopping_pairs;
          CHECK(h.kinetic(p, q) == -1.0);
        }
        if (h.interaction(p, q) != 0.0) {
          ++onsite;
          CHECK(h.interaction(p, q) == 4.0);
        }
      }
    CHECK(hopping_pairs == 2);
    CHECK(onsite == 2);
  }

  SECTION("2x2 periodic bonds carry wraparound multiplicity") {
    auto h = hubbard(2, 2, 1.0, 4.0, true);
    const int n = h.num_orbitals();
    REQUIRE(n == 8);
    // 2N hopping terms counting multiplicity: sum |T| / tau = 2N.
    double total = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) total += std::abs(h.kinetic(p, q));
    CHECK(total == Catch::Approx(2.0 * n));
    // Every site sees four neighbor bonds counting multiplicity.
    for (int p = 0; p < n; ++p) {
      double row = 0.0;
      for (int q = 0; q < n; ++q)
        if (q != p) row += std::abs(h.kinetic(p, q));
      CHECK(row == Catch::Approx(4.0));
    }
  }

  SECTION("8x8 has 128 spin-orbitals") {
    auto h = hubbard(8, 8, 1.0, 4.0, true);
    CHECK(h.num_orbitals() == 128);
    CHECK(h.num_orbitals() + 4 == 132);  // published logical count at 4 ancillae
  }

  SECTION("degenerate lattice rejected") {
    CHECK_THROWS_AS(hubbard(0, 4, 1.0, 4.0, false), std::invalid_argument);
  }
}

TEST_CASE("jordan_wigner structure") {
  SECTION("diagonal Hamiltonian maps to Z and identity terms") {
    FermionHamiltonian h;
    h.grid = grid_2x2_spinless();
    h.kinetic = Eigen::MatrixXd::Zero(4, 4);
    h.kinetic.diagonal() << 1.0, 2.0, 3.0, 4.0;
    h.external = Eigen::VectorXd::Zero(4);
    h.interaction = Eigen::MatrixXd::Zero(4, 4);
    auto op = jordan_wigner(h);
    for (const auto& [s, c] : op.terms()) {
      if (s.is_identity()) continue;
      CHECK(s.weight() == 1);
      CHECK(s.factors()[0].second == Axis::Z);
    }
  }

  SECTION("two-site hopping toy") {
    FermionHamiltonian h;
    h.grid.lengths = {2};
    h.grid.spinful = false;
    h.kinetic = (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished();
    h.external = Eigen::VectorXd::Zero(2);
    h.interaction = Eigen::MatrixXd::Zero(2, 2);
    auto op = jordan_wigner(h);
    PauliString xx({{0, Axis::X}, {1, Axis::X}});
    PauliString yy({{0, Axis::Y}, {1, Axis::Y}});
    CHECK(op.coefficient(xx) == Complex(0.5));
    CHECK(op.coefficient(yy) == Complex(0.5));
    CHECK(op.size() == 2);
  }

  SECTION("2x1 Hubbard matches the dense fermionic oracle") {
    auto h = hubbard(2, 1, 1.0, 4.0, false);
    auto op = jordan_wigner(h);
    auto dense_jw = oracle::kron_dense(op, 4);
    auto dense_ferm =
        oracle::dense_fermion_hamiltonian(h.kinetic, h.external, h.interaction);
    CHECK(oracle::max_abs_diff(dense_jw, dense_ferm) < 1e-12);
  }
}

TEST_CASE("jordan_wigner coefficients are real") {
  auto h = jellium(grid_2x2_spinless());
  auto op = jordan_wigner(h);
  for (const auto& [s, c] : op.terms()) CHECK(std::abs(c.imag()) < 1e-12);
}

TEST_CASE("spectral equivalence on small systems") {
  auto check_spectrum = [](const FermionHamiltonian& h) {
    const int n = h.num_orbitals();
    REQUIRE(n <= 8);
    auto jw = oracle::kron_dense(jordan_wigner(h), n);
    auto ferm = oracle::dense_fermion_hamiltonian(h.kinetic, h.external, h.interaction);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(jw), b(ferm);
    CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
  };
  check_spectrum(hubbard(2, 2, 1.0, 4.0, false));
  check_spectrum(jellium(grid_2x2_spinless()));
  GridSpec g;
  g.lengths = {2, 2};
  g.spinful = true;
  g.wigner_seitz_radius = 6.0;
  check_spectrum(jellium(g));

  NucleiSpec nuclei{{{0.3, 0.9}, 1.0}};
  check_spectrum(material(grid_2x2_spinless(), nuclei));
}

TEST_CASE("half filling default") {
  GridSpec g;
  g.lengths = {3, 3, 3};
  g.spinful = true;
  CHECK(g.eta() == 27);  // floor(N/2) = floor(54/2)
  g.electron_count = 10;
  CHECK(g.eta() == 10);
}

TEST_CASE("spin-blocked ordering keeps the spectrum") {
  GridSpec g;
  g.lengths = {2};
  g.spinful = true;
  g.wigner_seitz_radius = 6.0;
  auto interleaved = jellium(g);
  g.spin_blocked = true;
  auto blocked = jellium(g);
  auto da = oracle::dense_fermion_hamiltonian(interleaved.kinetic, interleaved.external,
                                              interleaved.interaction);
  auto db =
      oracle::dense_fermion_hamiltonian(blocked.kinetic, blocked.external, blocked.interaction);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(da), b(db);
  CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
}
