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
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qre/grid.hpp"
#include "qre/pauli.hpp"

namespace qre {

/**
 * Coefficient tensors of H = sum_pq T_pq a+_p a_q + sum_p U_p n_p
 * + sum_{p<q} V_pq n_p n_q on a grid of spin-orbitals.
 *
 * T and V are real symmetric with V_pp = 0; the interaction sum runs over
 * unordered pairs, so V_pq is the full strength of the (p,q) interaction
 * (for Hubbard, V = U between the two on-site spins, counted once).
 */
struct FermionHamiltonian {
  Eigen::MatrixXd kinetic;       // T_pq, Hartree
  Eigen::VectorXd external;      // U_p, Hartree
  Eigen::MatrixXd interaction;   // V_pq, Hartree, zero diagonal
  GridSpec grid;

  int num_orbitals() const { return static_cast<int>(kinetic.rows()); }

  void validate() const {
    const auto n = kinetic.rows();
    if (kinetic.cols() != n || interaction.rows() != n || interaction.cols() != n ||
        external.size() != n)
      throw std::invalid_argument("inconsistent tensor shapes");
    if (!kinetic.isApprox(kinetic.transpose(), 1e-12))
      throw std::invalid_argument("kinetic tensor must be symmetric");
    if (!interaction.isApprox(interaction.transpose(), 1e-12))
      throw std::invalid_argument("interaction tensor must be symmetric");
    for (Eigen::Index p = 0; p < n; ++p)
      if (interaction(p, p) != 0.0) throw std::invalid_argument("interaction diagonal must be zero");
  }

  /** V is translation-invariant over the spatial grid (periodic index arithmetic). */
  bool translation_invariant(double tol = 1e-12) const;
};

namespace detail {

// Maps a (site, spin) pair to its Jordan-Wigner qubit. Interleaved by
// default; blocked puts the whole down sector after the up sector.
inline int orbital_index(const GridSpec& g, int site, int spin) {
  if (!g.spinful) return site;
  return g.spin_blocked ? spin * g.spatial_orbitals() + site : 2 * site + spin;
}

inline int spatial_site(const GridSpec& g, int orbital) {
  if (!g.spinful) return orbital;
  return g.spin_blocked ? orbital % g.spatial_orbitals() : orbital / 2;
}

inline int spin_of(const GridSpec& g, int orbital) {
  if (!g.spinful) return 0;
  return g.spin_blocked ? orbital / g.spatial_orbitals() : orbital % 2;
}

struct PlaneWaveTables {
  // One row per momentum mode: k vector (Bohr^-1) and |k|^2.
  std::vector<std::vector<double>> k;
  std::vector<double> k_sq;
  // Orbital centroids for the spatial sites.
  std::vector<std::vector<double>> r;
  double volume;
};

inline PlaneWaveTables plane_wave_tables(const GridSpec& g) {
  g.validate();
  const int d = g.dims();
  const int m_total = g.spatial_orbitals();
  const double volume = g.cell_volume();
  if (!(volume > 0.0)) throw std::invalid_argument("cell volume must be positive");
  const double cell_lin = std::pow(volume, 1.0 / d);

  PlaneWaveTables t;
  t.volume = volume;
  t.k.resize(m_total);
  t.k_sq.resize(m_total);
  t.r.resize(m_total);
  for (int nu = 0; nu < m_total; ++nu) {
    auto nums = g.momentum_numbers(nu);
    std::vector<double> kv(d);
    double ksq = 0.0;
    for (int i = 0; i < d; ++i) {
      kv[i] = 2.0 * std::numbers::pi * nums[i] / cell_lin;
      ksq += kv[i] * kv[i];
    }
    t.k[nu] = std::move(kv);
    t.k_sq[nu] = ksq;
  }
  for (int s = 0; s < m_total; ++s) {
    auto c = g.coords(s);
    std::vector<double> rv(d);
    for (int i = 0; i < d; ++i) rv[i] = c[i] * cell_lin / g.lengths[i];
    t.r[s] = std::move(rv);
  }
  return t;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

inline bool FermionHamiltonian::translation_invariant(double tol) const {
  const int m = grid.spatial_orbitals();
  const int nspin = grid.spinful ? 2 : 1;
  for (int shift = 1; shift < m; ++shift) {
    for (int sp = 0; sp < m; ++sp) {
      for (int sq = 0; sq < m; ++sq) {
        auto cp = grid.coords(sp), cq = grid.coords(sq);
        std::vector<int> cps(cp), cqs(cq);
        auto cs = grid.coords(shift);
        for (int i = 0; i < grid.dims(); ++i) {
          cps[i] += cs[i];
          cqs[i] += cs[i];
        }
        int tp = grid.index(cps), tq = grid.index(cqs);
        for (int a = 0; a < nspin; ++a)
          for (int b = 0; b < nspin; ++b) {
            int p = detail::orbital_index(grid, sp, a), q = detail::orbital_index(grid, sq, b);
            int pp = detail::orbital_index(grid, tp, a), qq = detail::orbital_index(grid, tq, b);
            if (std::abs(interaction(p, q) - interaction(pp, qq)) > tol) return false;
          }
      }
    }
  }
  return true;
}

/**
 * Plane-wave dual-basis uniform electron gas: U_p = 0, kinetic and
 * interaction tensors from the finite cosine sums over the momentum window.
 * All mode counts in the formulas are per spin sector.
 */
inline FermionHamiltonian jellium(const GridSpec& grid) {
  auto t = detail::plane_wave_tables(grid);
  const int m = grid.spatial_orbitals();
  const int n = grid.spin_orbitals();

  // Spatial blocks; T vanishes across spin sectors, V does not.
  Eigen::MatrixXd t_spatial = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd v_spatial = Eigen::MatrixXd::Zero(m, m);
  for (int sp = 0; sp < m; ++sp) {
    for (int sq = sp; sq < m; ++sq) {
      std::vector<double> diff(t.r[sq]);
      for (int i = 0; i < grid.dims(); ++i) diff[i] -= t.r[sp][i];
      double kin = 0.0, pot = 0.0;
      for (int nu = 0; nu < m; ++nu) {
        double phase = detail::dot(t.k[nu], diff);
        kin += t.k_sq[nu] * std::cos(phase);
        // Full strength of the unordered pair: the ordered double sum counts
        // each pair twice, so 4 pi / (Omega k^2) here reproduces the Coulomb
        // 1/r limit (the 2 pi form gives half of it).
        if (t.k_sq[nu] > 0.0)
          pot += 4.0 * std::numbers::pi * std::cos(phase) / (t.volume * t.k_sq[nu]);
      }
      t_spatial(sp, sq) = t_spatial(sq, sp) = kin / (2.0 * m);
      v_spatial(sp, sq) = v_spatial(sq, sp) = pot;
    }
  }

  FermionHamiltonian h;
  h.grid = grid;
  h.kinetic = Eigen::MatrixXd::Zero(n, n);
  h.interaction = Eigen::MatrixXd::Zero(n, n);
  h.external = Eigen::VectorXd::Zero(n);
  const int nspin = grid.spinful ? 2 : 1;
  for (int sp = 0; sp < m; ++sp)
    for (int sq = 0; sq < m; ++sq)
      for (int a = 0; a < nspin; ++a)
        for (int b = 0; b < nspin; ++b) {
          int p = detail::orbital_index(grid, sp, a), q = detail::orbital_index(grid, sq, b);
          if (a == b) h.kinetic(p, q) = t_spatial(sp, sq);
          if (p != q) h.interaction(p, q) = v_spatial(sp, sq);
        }
  return h;
}

/**
 * Periodic material: jellium plus the external potential of the given nuclei.
 */
inline FermionHamiltonian material(const GridSpec& grid, const NucleiSpec& nuclei) {
  if (nuclei.empty()) throw std::invalid_argument("material requires at least one nucleus");
  FermionHamiltonian h = jellium(grid);
  auto t = detail::plane_wave_tables(grid);
  const int m = grid.spatial_orbitals();
  for (const auto& nuc : nuclei)
    if (static_cast<int>(nuc.position.size()) != grid.dims())
      throw std::invalid_argument("nucleus position dimension mismatch");

  for (int sp = 0; sp < m; ++sp) {
    double u = 0.0;
    for (const auto& nuc : nuclei) {
      std::vector<double> diff(nuc.position);
      for (int i = 0; i < grid.dims(); ++i) diff[i] -= t.r[sp][i];
      for (int nu = 0; nu < m; ++nu) {
        if (t.k_sq[nu] <= 0.0) continue;
        u -= 4.0 * std::numbers::pi * nuc.charge * std::cos(detail::dot(t.k[nu], diff)) /
             (t.volume * t.k_sq[nu]);
      }
    }
    const int nspin = grid.spinful ? 2 : 1;
    for (int a = 0; a < nspin; ++a) h.external(detail::orbital_index(grid, sp, a)) = u;
  }
  return h;
}

/**
 * Fermi-Hubbard model on an lx-by-ly lattice, spinful, no chemical potential.
 * Nearest-neighbor hopping -tau (wraparound edges iff periodic; width-2
 * periodic directions double the bond), on-site interaction U between the two
 * spins of each site.
 */
inline FermionHamiltonian hubbard(int lx, int ly, double tau, double u, bool periodic) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("lattice sides must be positive");
  GridSpec grid;
  grid.lengths = {lx, ly};
  grid.spinful = true;

  const int sites = lx * ly;
  const int n = 2 * sites;
  FermionHamiltonian h;
  h.grid = grid;
  h.kinetic = Eigen::MatrixXd::Zero(n, n);
  h.interaction = Eigen::MatrixXd::Zero(n, n);
  h.external = Eigen::VectorXd::Zero(n);

  auto site_at = [&](int x, int y) { return ((y % ly + ly) % ly) * lx + ((x % lx + lx) % lx); };
  auto add_bond = [&](int s1, int s2) {
    for (int spin = 0; spin < 2; ++spin) {
      int p = 2 * s1 + spin, q = 2 * s2 + spin;
      h.kinetic(p, q) += -tau;
      h.kinetic(q, p) += -tau;
    }
  };

  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      int s = site_at(x, y);
      if (x + 1 < lx)
        add_bond(s, site_at(x + 1, y));
      else if (periodic && lx > 1)
        add_bond(s, site_at(0, y));
      if (y + 1 < ly)
        add_bond(s, site_at(x, y + 1));
      else if (periodic && ly > 1)
        add_bond(s, site_at(x, 0));
    }
  }
  for (int s = 0; s < sites; ++s) {
    h.interaction(2 * s, 2 * s + 1) = u;
    h.interaction(2 * s + 1, 2 * s) = u;
  }
  return h;
}

/**
 * Jordan-Wigner image of the Hamiltonian: hopping strings
 * (T_pq/2)(X Z..Z X + Y Z..Z Y), interaction (V_pq/4) Z_p Z_q per unordered
 * pair with the matching single-Z and identity parts, and diagonal number
 * terms from T_pp + U_p. All coefficients come out real.
 */
inline QubitOperator jordan_wigner(const FermionHamiltonian& h) {
  const int n = h.num_orbitals();
  QubitOperator op;

  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double t = h.kinetic(p, q);
      if (t != 0.0) {
        std::vector<PauliString::Factor> fx, fy;
        fx.emplace_back(p, Axis::X);
        fy.emplace_back(p, Axis::Y);
        for (int z = p + 1; z < q; ++z) {
          fx.emplace_back(z, Axis::Z);
          fy.emplace_back(z, Axis::Z);
        }
        fx.emplace_back(q, Axis::X);
        fy.emplace_back(q, Axis::Y);
        op.add_term(PauliString(std::move(fx)), t / 2.0);
        op.add_term(PauliString(std::move(fy)), t / 2.0);
      }
      double v = h.interaction(p, q);
      if (v != 0.0) {
        op.add_term(PauliString({{static_cast<std::uint32_t>(p), Axis::Z},
                                 {static_cast<std::uint32_t>(q), Axis::Z}}),
                    v / 4.0);
        op.add_term(PauliString::single(p, Axis::Z), -v / 4.0);
        op.add_term(PauliString::single(q, Axis::Z), -v / 4.0);
        op.add_term(PauliString::identity(), v / 4.0);
      }
    }
    double diag = h.kinetic(p, p) + h.external(p);
    if (diag != 0.0) {
      op.add_term(PauliString::single(p, Axis::Z), -diag / 2.0);
      op.add_term(PauliString::identity(), diag / 2.0);
    }
  }
  return op;
}

}  // namespace qre
