#ifndef DSMOOTH_LINEAR_SOLVE_HPP
#define DSMOOTH_LINEAR_SOLVE_HPP

#include "dsmooth/field.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

template <ExactField K>
using Matrix = std::vector<std::vector<K>>;

/// Certificate that M x = v has no solution: the row combination
/// sum_i combination[i] * row_i of [M | v] reduces to (0, ..., 0 | constant)
/// with constant != 0.
template <ExactField K>
struct InconsistencyWitness {
  std::vector<K> combination;
  K constant;
};

template <ExactField K>
struct LinearSolution {
  std::size_t rank = 0;
  /// pivot_columns[k] is the column of the k-th pivot (row k of the RREF).
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  /// Solution with all free variables set to zero (meaningful when consistent).
  std::vector<K> particular;
  /// One vector per free column: 1 at that column, 0 at the other free columns.
  std::vector<std::vector<K>> nullspace;
  std::optional<InconsistencyWitness<K>> witness;
  /// Pivot values divided by during elimination; for symbolic systems these
  /// are the generic nonvanishing assumptions the answer depends on.
  std::vector<K> pivot_values;

  bool consistent() const { return !witness.has_value(); }
  bool unique() const { return consistent() && free_columns.empty(); }

  /// particular + sum_j values[j] * nullspace[j].
  std::vector<K> solution_with(const std::vector<K>& free_values) const {
    std::vector<K> x = particular;
    for (std::size_t j = 0; j < nullspace.size(); ++j) {
      if (free_values[j].is_zero()) continue;
      for (std::size_t c = 0; c < x.size(); ++c) {
        if (!nullspace[j][c].is_zero()) x[c] = x[c] + free_values[j] * nullspace[j][c];
      }
    }
    return x;
  }
};

/// Exact Gauss-Jordan elimination of M x = v. Pivots are taken column by
/// column from the first row holding a nonzero entry.
template <ExactField K>
LinearSolution<K> solve_linear(const Matrix<K>& m, const std::vector<K>& v) {
  const std::size_t rows = m.size();
  if (v.size() != rows) throw std::invalid_argument("solve_linear: right-hand side length mismatch");
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");
  }

  // Augmented rows [M | v | e_i]; the identity block tracks row combinations.
  const std::size_t width = cols + 1 + rows;
  std::vector<std::vector<K>> a(rows, std::vector<K>(width));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    a[i][cols] = v[i];
    a[i][cols + 1 + i] = K::from_int(1);
  }

  LinearSolution<K> out;
  std::size_t next_row = 0;
  for (std::size_t col = 0; col < cols && next_row < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = next_row; i < rows; ++i) {
      if (!a[i][col].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[pivot], a[next_row]);
    K pv = a[next_row][col];
    out.pivot_values.push_back(pv);
    K inv = pv.inverse();
    for (std::size_t j = col; j < width; ++j) {
      if (!a[next_row][j].is_zero()) a[next_row][j] = a[next_row][j] * inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == next_row || a[i][col].is_zero()) continue;
      K f = a[i][col];
      for (std::size_t j = col; j < width; ++j) {
        if (!a[next_row][j].is_zero()) a[i][j] = a[i][j] - f * a[next_row][j];
      }
    }
    out.pivot_columns.push_back(col);
    ++next_row;
  }
  out.rank = out.pivot_columns.size();

  for (std::size_t i = out.rank; i < rows; ++i) {
    if (!a[i][cols].is_zero()) {
      InconsistencyWitness<K> w;
      w.constant = a[i][cols];
      w.combination.assign(a[i].begin() + static_cast<std::ptrdiff_t>(cols + 1), a[i].end());
      out.witness = std::move(w);
      break;
    }
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) out.free_columns.push_back(c);
  }

  out.particular.assign(cols, K());
  if (out.consistent()) {
    for (std::size_t k = 0; k < out.rank; ++k) out.particular[out.pivot_columns[k]] = a[k][cols];
  }
  for (auto fc : out.free_columns) {
    std::vector<K> n(cols);
    n[fc] = K::from_int(1);
    for (std::size_t k = 0; k < out.rank; ++k) n[out.pivot_columns[k]] = -a[k][fc];
    out.nullspace.push_back(std::move(n));
  }
  return out;
}

/// Rank of M (no right-hand side).
template <ExactField K>
std::size_t matrix_rank(const Matrix<K>& m) {
  return solve_linear(m, std::vector<K>(m.size())).rank;
}

/// M x, for checking solutions by substitution.
template <ExactField K>
std::vector<K> multiply(const Matrix<K>& m, const std::vector<K>& x) {
  std::vector<K> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    K s;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!m[i][j].is_zero() && !x[j].is_zero()) s = s + m[i][j] * x[j];
    }
    out[i] = s;
  }
  return out;
}

}  // namespace dsmooth

#endif  // DSMOOTH_LINEAR_SOLVE_HPP
