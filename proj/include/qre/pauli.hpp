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
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qre {

using Complex = std::complex<double>;

/** Single-qubit Pauli axis. Identity is represented by absence. */
enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  throw std::logic_error("invalid axis");
}

/**
 * A Pauli string: a sparse tensor product of X/Y/Z factors, stored as a
 * sorted (qubit, axis) list. The empty string is the identity. Strings are
 * value types ordered lexicographically by (qubit index, axis), which fixes
 * the canonical term order everywhere downstream.
 */
class PauliString {
 public:
  using Factor = std::pair<std::uint32_t, Axis>;

  PauliString() = default;

  explicit PauliString(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < factors_.size(); ++i) {
      if (factors_[i].first == factors_[i - 1].first)
        throw std::invalid_argument("duplicate qubit index in Pauli string");
    }
  }

  static PauliString identity() { return PauliString(); }

  static PauliString single(std::uint32_t qubit, Axis axis) {
    PauliString s;
    s.factors_.emplace_back(qubit, axis);
    return s;
  }

  bool is_identity() const { return factors_.empty(); }
  std::size_t weight() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }

  /** Smallest qubit index acted on; throws on identity. */
  std::uint32_t min_qubit() const {
    if (factors_.empty()) throw std::logic_error("identity string has no support");
    return factors_.front().first;
  }

  std::uint32_t max_qubit() const {
    if (factors_.empty()) throw std::logic_error("identity string has no support");
    return factors_.back().first;
  }

  bool operator==(const PauliString& o) const { return factors_ == o.factors_; }
  bool operator!=(const PauliString& o) const { return !(*this == o); }
  bool operator<(const PauliString& o) const { return factors_ < o.factors_; }

  std::string str() const {
    if (factors_.empty()) return "I";
    std::string out;
    for (const auto& [q, a] : factors_) {
      if (!out.empty()) out += ' ';
      out += axis_char(a);
      out += std::to_string(q);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
};

namespace detail {

// Single-qubit products: pauli_mul[a-1][b-1] = (phase index, result axis or 0
// for identity). Phase index k encodes i^k.
struct AxisProduct {
  int phase_pow4;
  std::uint8_t axis;  // 0 = identity
};

inline AxisProduct axis_product(Axis a, Axis b) {
  static constexpr AxisProduct table[3][3] = {
      // X*X      X*Y           X*Z
      {{0, 0}, {1, 3}, {3, 2}},
      // Y*X      Y*Y           Y*Z
      {{3, 3}, {0, 0}, {1, 1}},
      // Z*X      Z*Y           Z*Z
      {{1, 2}, {3, 1}, {0, 0}},
  };
  return table[static_cast<int>(a) - 1][static_cast<int>(b) - 1];
}

inline Complex phase_from_pow(int pow4) {
  switch (((pow4 % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

/** Product of two Pauli strings: returns the phase and the resulting string. */
inline std::pair<Complex, PauliString> multiply(const PauliString& a, const PauliString& b) {
  std::vector<PauliString::Factor> out;
  out.reserve(a.weight() + b.weight());
  int phase = 0;
  auto ia = a.factors().begin(), ea = a.factors().end();
  auto ib = b.factors().begin(), eb = b.factors().end();
  while (ia != ea && ib != eb) {
    if (ia->first < ib->first) {
      out.push_back(*ia++);
    } else if (ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      auto prod = detail::axis_product(ia->second, ib->second);
      phase += prod.phase_pow4;
      if (prod.axis != 0) out.emplace_back(ia->first, static_cast<Axis>(prod.axis));
      ++ia;
      ++ib;
    }
  }
  out.insert(out.end(), ia, ea);
  out.insert(out.end(), ib, eb);
  PauliString s;
  // Already sorted by construction.
  s = PauliString(std::move(out));
  return {detail::phase_from_pow(phase), std::move(s)};
}

/**
 * True when [a, b] = 0 can be decided without expansion: strings commute
 * exactly when the number of anticommuting single-qubit overlaps is even
 * (disjoint supports give zero overlaps). Used to prune commutator sums.
 */
inline bool commutes_trivially(const PauliString& a, const PauliString& b) {
  int anti = 0;
  auto ia = a.factors().begin(), ea = a.factors().end();
  auto ib = b.factors().begin(), eb = b.factors().end();
  while (ia != ea && ib != eb) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      if (ia->second != ib->second) ++anti;
      ++ia;
      ++ib;
    }
  }
  return (anti % 2) == 0;
}

/**
 * Sparse sum of Pauli strings with complex coefficients. Terms are held in a
 * map keyed by the canonical string order, so iteration is deterministic.
 * Exact zero coefficients are dropped on insertion; an optional epsilon prune
 * exists for memory control but nothing is dropped by default.
 */
class QubitOperator {
 public:
  using TermMap = std::map<PauliString, Complex>;

  QubitOperator() = default;

  static QubitOperator zero() { return QubitOperator(); }

  static QubitOperator from_term(PauliString s, Complex c) {
    QubitOperator op;
    op.add_term(std::move(s), c);
    return op;
  }

  static QubitOperator identity(Complex c = 1.0) {
    return from_term(PauliString::identity(), c);
  }

  void add_term(const PauliString& s, Complex c) {
    if (c == Complex(0.0, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
    }
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const PauliString& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Complex(0.0) : it->second;
  }

  /** Number of qubits spanned: 1 + largest acted index (0 if only identity). */
  std::uint32_t num_qubits() const {
    std::uint32_t n = 0;
    for (const auto& [s, c] : terms_)
      if (!s.is_identity()) n = std::max(n, s.max_qubit() + 1);
    return n;
  }

  QubitOperator& operator+=(const QubitOperator& o) {
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }

  QubitOperator& operator-=(const QubitOperator& o) {
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
  }

  QubitOperator& operator*=(Complex scale) {
    if (scale == Complex(0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [s, c] : terms_) c *= scale;
    return *this;
  }

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }

  /** Drops terms with |coeff| < epsilon. */
  void compress(double epsilon) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) < epsilon)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

 private:
  TermMap terms_;
};

/** Operator product, fully expanded and recombined in canonical form. */
inline QubitOperator multiply(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, s] = multiply(sa, sb);
      out.add_term(s, ca * cb * phase);
    }
  }
  return out;
}

/**
 * Commutator ab - ba. Pairs of strings that commute are skipped outright, so
 * their contributions cancel exactly; anticommuting pairs contribute 2*ab.
 */
inline QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (commutes_trivially(sa, sb)) continue;
      auto [phase, s] = multiply(sa, sb);
      out.add_term(s, 2.0 * ca * cb * phase);
    }
  }
  return out;
}

/**
 * Coefficient 1-norm: sum of |c_i| over stored terms. With traceless=true the
 * identity term is excluded.
 */
inline double one_norm(const QubitOperator& a, bool traceless = false) {
  double acc = 0.0, comp = 0.0;  // Neumaier compensation
  for (const auto& [s, c] : a.terms()) {
    if (traceless && s.is_identity()) continue;
    double v = std::abs(c);
    double t = acc + v;
    comp += (std::abs(acc) >= v) ? (acc - t) + v : (v - t) + acc;
    acc = t;
  }
  return acc + comp;
}

// --- line-oriented text serialization -------------------------------------
//
// One term per line: "coeff_re coeff_im X3 Y7 Z9"; the identity string is
// spelled "I".

inline std::string to_text(const QubitOperator& op) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [s, c] : op.terms())
    os << c.real() << " " << c.imag() << " " << s.str() << "\n";
  return os.str();
}

inline QubitOperator from_text(const std::string& text) {
  QubitOperator op;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re, im;
    if (!(ls >> re >> im)) throw std::invalid_argument("bad operator line: " + line);
    std::vector<PauliString::Factor> factors;
    std::string tok;
    bool identity = false;
    while (ls >> tok) {
      if (tok == "I") {
        identity = true;
        continue;
      }
      if (tok.size() < 2) throw std::invalid_argument("bad Pauli token: " + tok);
      Axis a;
      switch (tok[0]) {
        case 'X': a = Axis::X; break;
        case 'Y': a = Axis::Y; break;
        case 'Z': a = Axis::Z; break;
        default: throw std::invalid_argument("bad Pauli token: " + tok);
      }
      factors.emplace_back(static_cast<std::uint32_t>(std::stoul(tok.substr(1))), a);
    }
    if (!identity && factors.empty() && !(re == 0.0 && im == 0.0))
      throw std::invalid_argument("term line without Pauli factors: " + line);
    op.add_term(PauliString(std::move(factors)), Complex(re, im));
  }
  return op;
}

}  // namespace qre
