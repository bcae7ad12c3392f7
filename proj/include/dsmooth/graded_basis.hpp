#ifndef DSMOOTH_GRADED_BASIS_HPP
#define DSMOOTH_GRADED_BASIS_HPP

#include "dsmooth/algebra_element.hpp"
#include "dsmooth/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

/// Raised when an element exceeds the truncation degree of a GradedBasis.
class TruncationExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Sparse vector over the words of one degree, indexed by Word::index.
/// Entries are sorted by decreasing column; the first entry is the leading
/// (largest) word.
template <ExactField K>
using SparseRow = std::vector<std::pair<std::uint32_t, K>>;

/// Truncated quotient of the free algebra by a quadratic ideal.
///
/// For every degree n <= N the ideal slice I_n = I_{n-1} V + V^{n-2} R is
/// row-reduced over the word basis with the largest word of each row as its
/// pivot. Rows are fully interreduced, so each row is its pivot word minus a
/// combination of normal words. Normal words (non-pivot columns) form the
/// basis of the quotient in that degree.
template <ExactField K>
class GradedBasis {
 public:
  GradedBasis(std::size_t generators, const std::vector<Element<K>>& relations, std::size_t max_degree)
      : gens_(generators), max_degree_(max_degree), relations_(relations) {
    if (gens_ == 0) throw std::invalid_argument("graded basis needs at least one generator");
    std::uint64_t words = 1;
    for (std::size_t n = 0; n <= max_degree_; ++n) {
      if (words > (std::uint64_t{1} << 31)) throw std::invalid_argument("truncation degree too large for this alphabet");
      words *= gens_;
    }
    degrees_.resize(max_degree_ + 1);
    for (std::size_t n = 0; n <= max_degree_; ++n) build_degree(n);
  }

  /// Builds the basis for a presentation, converting coefficients into K.
  static GradedBasis from(const Presentation& p, std::size_t max_degree) {
    validate(p);
    return GradedBasis(p.num_generators(), p.relations_in<K>(), max_degree);
  }

  std::size_t generators() const { return gens_; }
  std::size_t max_degree() const { return max_degree_; }
  const std::vector<Element<K>>& relations() const { return relations_; }

  std::size_t num_words(std::size_t n) const { return degrees_.at(n).num_words; }
  std::size_t ideal_rank(std::size_t n) const { return degrees_.at(n).rows.size(); }
  std::size_t dimension(std::size_t n) const { return num_words(n) - ideal_rank(n); }

  std::vector<std::size_t> dimensions() const {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= max_degree_; ++n) out.push_back(dimension(n));
    return out;
  }

  /// Normal words of degree n, in increasing order.
  std::vector<Word> basis(std::size_t n) const {
    std::vector<Word> out;
    const auto& d = degrees_.at(n);
    for (std::uint32_t c = 0; c < d.num_words; ++c) {
      if (d.pivot_row[c] < 0) out.push_back(Word::from_index(c, n, gens_));
    }
    return out;
  }

  bool is_normal(const Word& w) const {
    if (w.degree() > max_degree_) throw TruncationExceeded("word degree exceeds truncation");
    return degrees_[w.degree()].pivot_row[w.index(gens_)] < 0;
  }

  /// Reduced rows of the ideal slice in degree n (pivot word first).
  std::vector<Element<K>> ideal_basis(std::size_t n) const {
    std::vector<Element<K>> out;
    for (const auto& row : degrees_.at(n).rows) out.push_back(to_element(row, n));
    return out;
  }

  /// Leading coefficients divided out while reducing; for symbolic
  /// coefficients these are the generic nonvanishing assumptions.
  const std::vector<K>& pivot_assumptions() const { return assumptions_; }

  /// Projection onto the span of normal words along the ideal.
  Element<K> normal_form(const Element<K>& a) const {
    if (a.max_degree() > max_degree_) {
      throw TruncationExceeded("normal_form: degree " + std::to_string(a.max_degree()) + " exceeds truncation " +
                               std::to_string(max_degree_));
    }
    Element<K> out;
    for (const auto& [w, c] : a.terms()) {
      const auto& d = degrees_[w.degree()];
      auto col = static_cast<std::uint32_t>(w.index(gens_));
      if (d.pivot_row[col] < 0) {
        out.add_term(w, c);
      } else {
        // Interreduced rows: subtracting c * row leaves only normal words.
        const auto& row = d.rows[static_cast<std::size_t>(d.pivot_row[col])];
        for (std::size_t k = 1; k < row.size(); ++k) {
          out.add_term(Word::from_index(row[k].first, w.degree(), gens_), -(c * row[k].second));
        }
      }
    }
    return out;
  }

  bool in_ideal(const Element<K>& a) const { return normal_form(a).is_zero(); }

  /// NF(a * b).
  Element<K> multiply(const Element<K>& a, const Element<K>& b) const { return normal_form(a * b); }

 private:
  struct Degree {
    std::uint32_t num_words = 0;
    std::vector<SparseRow<K>> rows;
    std::vector<std::int32_t> pivot_row;
  };

  Element<K> to_element(const SparseRow<K>& row, std::size_t n) const {
    Element<K> e;
    for (const auto& [c, v] : row) e.add_term(Word::from_index(c, n, gens_), v);
    return e;
  }

  static SparseRow<K> from_map(std::map<std::uint32_t, K, std::greater<>>& acc) {
    SparseRow<K> row;
    row.reserve(acc.size());
    for (auto& [c, v] : acc) {
      if (!v.is_zero()) row.emplace_back(c, std::move(v));
    }
    return row;
  }

  /// Reduces `acc` against the rows of `d` (all terms); returns the remainder.
  static void reduce(std::map<std::uint32_t, K, std::greater<>>& acc, const Degree& d) {
    for (auto it = acc.begin(); it != acc.end();) {
      if (it->second.is_zero()) {
        it = acc.erase(it);
        continue;
      }
      std::int32_t pr = d.pivot_row[it->first];
      if (pr < 0) {
        ++it;
        continue;
      }
      K f = it->second;
      const std::uint32_t col = it->first;
      const auto& row = d.rows[static_cast<std::size_t>(pr)];
      acc.erase(it);
      for (std::size_t k = 1; k < row.size(); ++k) {
        auto [pos, inserted] = acc.try_emplace(row[k].first, -(f * row[k].second));
        if (!inserted) pos->second = pos->second - f * row[k].second;
      }
      // Tail columns are all smaller than the eliminated one.
      it = acc.upper_bound(col);
    }
  }

  void insert_row(Degree& d, std::map<std::uint32_t, K, std::greater<>>& acc) {
    reduce(acc, d);
    SparseRow<K> row = from_map(acc);
    if (row.empty()) return;
    K lead = row.front().second;
    if (!(lead == K::from_int(1))) {
      if (is_parametric(lead)) assumptions_.push_back(lead);
      K inv = lead.inverse();
      for (auto& [c, v] : row) v = v * inv;
    }
    d.pivot_row[row.front().first] = static_cast<std::int32_t>(d.rows.size());
    d.rows.push_back(std::move(row));
  }

  /// Back-substitution so every row's tail consists of normal words only.
  void interreduce(Degree& d) {
    std::vector<std::size_t> order(d.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d.rows[a].front().first < d.rows[b].front().first; });
    for (std::size_t idx : order) {
      auto& row = d.rows[idx];
      bool clean = true;
      for (std::size_t k = 1; k < row.size() && clean; ++k) clean = d.pivot_row[row[k].first] < 0;
      if (clean) continue;
      std::map<std::uint32_t, K, std::greater<>> tail;
      for (std::size_t k = 1; k < row.size(); ++k) tail.emplace(row[k].first, row[k].second);
      // Rows with smaller pivots are already interreduced, so one pass of
      // reduction leaves only normal words.
      reduce(tail, d);
      SparseRow<K> fresh;
      fresh.reserve(tail.size() + 1);
      fresh.push_back(row.front());
      for (auto& [c, v] : tail) {
        if (!v.is_zero()) fresh.emplace_back(c, std::move(v));
      }
      row = std::move(fresh);
    }
  }

  void build_degree(std::size_t n) {
    Degree& d = degrees_[n];
    std::uint64_t words = 1;
    for (std::size_t i = 0; i < n; ++i) words *= gens_;
    d.num_words = static_cast<std::uint32_t>(words);
    d.pivot_row.assign(d.num_words, -1);
    if (n < 2) return;

    const auto g = static_cast<std::uint32_t>(gens_);
    // I_{n-1} * V
    for (const auto& prev : degrees_[n - 1].rows) {
      for (std::uint32_t k = 0; k < g; ++k) {
        std::map<std::uint32_t, K, std::greater<>> acc;
        for (const auto& [c, v] : prev) acc.emplace(c * g + k, v);
        insert_row(d, acc);
      }
    }
    // V^{n-2} * R
    const std::uint32_t prefixes = d.num_words / (g * g);
    for (std::uint32_t u = 0; u < prefixes; ++u) {
      for (const auto& rel : relations_) {
        std::map<std::uint32_t, K, std::greater<>> acc;
        for (const auto& [w, c] : rel.terms()) {
          auto col = static_cast<std::uint32_t>(u * g * g + w.index(gens_));
          auto [pos, inserted] = acc.try_emplace(col, c);
          if (!inserted) pos->second = pos->second + c;
        }
        insert_row(d, acc);
      }
    }
    interreduce(d);
  }

  std::size_t gens_;
  std::size_t max_degree_;
  std::vector<Element<K>> relations_;
  std::vector<Degree> degrees_;
  std::vector<K> assumptions_;
};

}  // namespace dsmooth

#endif  // DSMOOTH_GRADED_BASIS_HPP
