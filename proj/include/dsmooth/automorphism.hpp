#ifndef DSMOOTH_AUTOMORPHISM_HPP
#define DSMOOTH_AUTOMORPHISM_HPP

#include "dsmooth/algebra_element.hpp"
#include "dsmooth/linear_solve.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

/// Raised by operations that need an invertible (or diagonal) table.
class NonInvertibleAutomorphism : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One degree-preserving linear map per generator:
/// nu_i(g_a) = sum_k matrix(i)[a][k] g_k, extended multiplicatively.
template <ExactField K>
class AutomorphismTable {
 public:
  AutomorphismTable() = default;
  explicit AutomorphismTable(std::size_t generators)
      : gens_(generators), maps_(generators, identity_matrix(generators)) {}

  static AutomorphismTable identity(std::size_t generators) { return AutomorphismTable(generators); }

  /// Table with nu_i(g_j) = c[i][j] g_j.
  static AutomorphismTable diagonal(const std::vector<std::vector<K>>& c) {
    AutomorphismTable t(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) t.maps_[i][j][j] = c[i][j];
    }
    return t;
  }

  std::size_t generators() const { return gens_; }
  const Matrix<K>& matrix(std::size_t i) const { return maps_.at(i); }
  Matrix<K>& matrix(std::size_t i) { return maps_.at(i); }
  const K& entry(std::size_t i, std::size_t a, std::size_t k) const { return maps_.at(i).at(a).at(k); }
  void set_entry(std::size_t i, std::size_t a, std::size_t k, const K& v) { maps_.at(i).at(a).at(k) = v; }

  bool is_diagonal() const {
    for (const auto& m : maps_) {
      for (std::size_t a = 0; a < gens_; ++a) {
        for (std::size_t k = 0; k < gens_; ++k) {
          if (a != k && !m[a][k].is_zero()) return false;
        }
      }
    }
    return true;
  }

  /// c_{ij} of a diagonal table.
  const K& scalar(std::size_t i, std::size_t j) const { return maps_.at(i).at(j).at(j); }

  /// Every nu_i has nonzero determinant.
  bool invertible() const {
    for (const auto& m : maps_) {
      if (matrix_rank(m) != gens_) return false;
    }
    return true;
  }

  /// nu_i(g_a) as a degree-1 element.
  Element<K> image(std::size_t i, std::uint8_t a) const {
    Element<K> out;
    for (std::size_t k = 0; k < gens_; ++k) out.add_term(Word{static_cast<std::uint8_t>(k)}, maps_[i][a][k]);
    return out;
  }

  /// nu_i applied to an element of the free algebra.
  Element<K> apply(std::size_t i, const Element<K>& e) const {
    Element<K> out;
    const bool diag = is_diagonal();
    for (const auto& [w, c] : e.terms()) {
      if (diag) {
        K s = c;
        for (auto l : w.letters()) s = s * maps_[i][l][l];
        out.add_term(w, s);
        continue;
      }
      Element<K> img = Element<K>(Word(), c);
      for (auto l : w.letters()) img = img * image(i, l);
      out += img;
    }
    return out;
  }

  /// Inverse table; only diagonal tables are supported.
  AutomorphismTable inverse() const {
    if (!is_diagonal()) throw NonInvertibleAutomorphism("inverse requires a diagonal table");
    AutomorphismTable t(gens_);
    for (std::size_t i = 0; i < gens_; ++i) {
      for (std::size_t j = 0; j < gens_; ++j) {
        if (scalar(i, j).is_zero()) throw NonInvertibleAutomorphism("zero diagonal scalar in automorphism table");
        t.maps_[i][j][j] = scalar(i, j).inverse();
      }
    }
    return t;
  }

  friend bool operator==(const AutomorphismTable& a, const AutomorphismTable& b) = default;

  /// "nu[x]: x -> -x; y -> -p/(q)*y; ..." one line per generator.
  std::vector<std::string> describe(const std::vector<std::string>& names) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < gens_; ++i) {
      std::string line = "nu[" + names.at(i) + "]: ";
      for (std::size_t a = 0; a < gens_; ++a) {
        if (a != 0) line += "; ";
        line += names[a] + " -> " + image(i, static_cast<std::uint8_t>(a)).to_string(names);
      }
      out.push_back(line);
    }
    return out;
  }

 private:
  static Matrix<K> identity_matrix(std::size_t n) {
    Matrix<K> m(n, std::vector<K>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = K::from_int(1);
    return m;
  }

  std::size_t gens_ = 0;
  std::vector<Matrix<K>> maps_;
};

/// The published diagonal table for S(p, q, r) on x, y, z:
/// nu_x = (-1, -p/q, -q/p), nu_y = (-q/p, -1, -p/q), nu_z = (-p/q, -q/p, -1).
template <ExactField K>
AutomorphismTable<K> sklyanin3_table(const K& p, const K& q) {
  if (p.is_zero() || q.is_zero()) throw DivisionByZero("the published table needs p*q != 0");
  const K m1 = K::from_int(-1);
  const K a = -(p / q);
  const K b = -(q / p);
  return AutomorphismTable<K>::diagonal({{m1, a, b}, {b, m1, a}, {a, b, m1}});
}

}  // namespace dsmooth

#endif  // DSMOOTH_AUTOMORPHISM_HPP
