#ifndef DSMOOTH_FEASIBILITY_HPP
#define DSMOOTH_FEASIBILITY_HPP

#include "dsmooth/automorphism.hpp"
#include "dsmooth/linear_solve.hpp"
#include "dsmooth/presentation.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace dsmooth {

enum class Ansatz { diagonal, linear };

inline std::string to_string(Ansatz a) { return a == Ansatz::diagonal ? "diagonal" : "linear"; }

/// An image nu_i(g_a) forced by a single relation: the dg_i-part of d(r)
/// contains exactly one term involving nu_i.
template <ExactField K>
struct DeterminedImage {
  std::size_t relation = 0;
  std::size_t map = 0;        // i
  std::uint8_t argument = 0;  // a
  Element<K> image;
};

/// Replayable reason why no table exists. Either two relations force
/// different images for the same nu_i(g_a), or a combination of the linear
/// constraints reduces to 0 = constant.
template <ExactField K>
struct FeasibilityWitness {
  std::optional<std::pair<DeterminedImage<K>, DeterminedImage<K>>> conflict;
  std::optional<InconsistencyWitness<K>> combination;
  /// Human-readable description of each constraint row (for the combination).
  std::vector<std::string> constraint_labels;
};

template <ExactField K>
struct AutomorphismSolution {
  Ansatz ansatz = Ansatz::diagonal;
  bool feasible = false;
  bool unique = false;
  AutomorphismTable<K> table;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t rank = 0;
  /// Symbolic pivots divided by while solving (assumed nonzero).
  std::vector<K> assumptions;
  std::optional<FeasibilityWitness<K>> witness;
};

namespace detail {

/// Coefficient lists of a quadratic relation: c(a, b) for the word g_a g_b.
template <ExactField K>
std::map<std::pair<std::uint8_t, std::uint8_t>, K> quadratic_terms(const Element<K>& r) {
  std::map<std::pair<std::uint8_t, std::uint8_t>, K> out;
  for (const auto& [w, c] : r.terms()) out.emplace(std::pair(w[0], w[1]), c);
  return out;
}

/// Scans relations for images forced by a single term and returns the first
/// pair of contradictory ones.
template <ExactField K>
std::optional<std::pair<DeterminedImage<K>, DeterminedImage<K>>> find_conflict(const std::vector<Element<K>>& rels,
                                                                                std::size_t g) {
  std::map<std::pair<std::size_t, std::uint8_t>, DeterminedImage<K>> seen;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    auto terms = quadratic_terms(rels[r]);
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<std::uint8_t> args;
      for (const auto& [ab, c] : terms) {
        if (ab.second == i) args.push_back(ab.first);
      }
      if (args.size() != 1) continue;
      const std::uint8_t a = args[0];
      const K lead = terms.at({a, static_cast<std::uint8_t>(i)});
      // c_{a i} nu_i(g_a) + sum_b c_{i b} g_b = 0.
      Element<K> rhs;
      for (const auto& [ab, c] : terms) {
        if (ab.first == i) rhs.add_term(Word{ab.second}, c);
      }
      DeterminedImage<K> found{r, i, a, rhs.scaled(-lead.inverse())};
      auto key = std::pair(i, a);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, found);
      } else if (!(it->second.image == found.image)) {
        return std::pair(it->second, found);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Solves for nu_i(g_a) = sum_k lambda_{i,a,k} g_k making d(r) = 0 for every
/// relation r under the bimodule rule a dg_i = dg_i nu_i(a). The dg_i-part of
/// d(g_a g_b) is [a == i] g_b + [b == i] nu_i(g_a); its coefficient on g_k
/// gives one linear equation per (r, i, k). Free unknowns take identity
/// values.
template <ExactField K>
AutomorphismSolution<K> solve_automorphisms(const Presentation& p, Ansatz ansatz) {
  validate(p);
  const std::size_t g = p.num_generators();
  const auto rels = p.relations_in<K>();
  AutomorphismSolution<K> sol;
  sol.ansatz = ansatz;

  // Unknown (i, a, k) -> column.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> column;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> unknown;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t k = 0; k < g; ++k) {
        if (ansatz == Ansatz::diagonal && a != k) continue;
        column.emplace(std::tuple(i, a, k), unknown.size());
        unknown.emplace_back(i, a, k);
      }
    }
  }

  Matrix<K> m;
  std::vector<K> v;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    auto terms = detail::quadratic_terms(rels[r]);
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t k = 0; k < g; ++k) {
        std::vector<K> row(unknown.size());
        K constant;
        bool any = false;
        for (const auto& [ab, c] : terms) {
          if (ab.first == i && ab.second == k) {
            constant = constant + c;
            any = true;
          }
          if (ab.second == i) {
            auto it = column.find(std::tuple(i, static_cast<std::size_t>(ab.first), k));
            if (it != column.end()) row[it->second] = row[it->second] + c;
            any = true;
          }
        }
        if (!any) continue;
        m.push_back(std::move(row));
        v.push_back(-constant);
        labels.push_back("relation " + std::to_string(r + 1) + ", coefficient of d" + p.generators[i] + "*" +
                         p.generators[k]);
      }
    }
  }
  sol.unknowns = unknown.size();
  sol.constraints = m.size();

  LinearSolution<K> ls = solve_linear(m, v);
  sol.rank = ls.rank;
  for (const auto& pv : ls.pivot_values) {
    if (is_parametric(pv)) sol.assumptions.push_back(pv);
  }
  if (!ls.consistent()) {
    FeasibilityWitness<K> w;
    w.conflict = detail::find_conflict(rels, g);
    w.combination = ls.witness;
    w.constraint_labels = labels;
    sol.witness = std::move(w);
    return sol;
  }
  sol.feasible = true;
  sol.unique = ls.unique();
  std::vector<K> free_values;
  for (std::size_t c : ls.free_columns) {
    auto [i, a, k] = unknown[c];
    free_values.push_back(K::from_int(a == k ? 1 : 0));
  }
  std::vector<K> x = ls.solution_with(free_values);
  AutomorphismTable<K> table(g);
  for (std::size_t c = 0; c < unknown.size(); ++c) {
    auto [i, a, k] = unknown[c];
    table.set_entry(i, a, k, x[c]);
  }
  sol.table = std::move(table);
  return sol;
}

}  // namespace dsmooth

#endif  // DSMOOTH_FEASIBILITY_HPP
