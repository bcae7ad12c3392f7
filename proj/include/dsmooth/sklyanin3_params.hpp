#ifndef DSMOOTH_SKLYANIN3_PARAMS_HPP
#define DSMOOTH_SKLYANIN3_PARAMS_HPP

#include "dsmooth/graded_basis.hpp"
#include "dsmooth/presentation.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

/// Membership in the degenerate set: a coordinate point of P^2 or p^3 = q^3 = r^3.
inline bool is_degenerate3(const BaseScalar& p, const BaseScalar& q, const BaseScalar& r) {
  if (p.is_zero() && q.is_zero() && r.is_zero()) throw std::invalid_argument("zero parameter triple");
  int zeros = static_cast<int>(p.is_zero()) + static_cast<int>(q.is_zero()) + static_cast<int>(r.is_zero());
  if (zeros == 2) return true;
  BaseScalar p3 = p.pow(3);
  return p3 == q.pow(3) && p3 == r.pow(3);
}

struct PbwClassification {
  /// Clauses: pr = qr = 0; p^3 = q^3 = r^3; (p + q)^3 + r^3 = 0.
  std::array<bool, 3> clauses{};
  bool pbw_by_clauses = false;
  std::size_t dim3 = 0;
  bool dim3_is_10 = false;
  /// The degree-2 rewriting system is confluent for some generator order.
  bool confluent = false;
  bool concordant = false;
  /// Empty when both verdicts agree; otherwise names the disagreement.
  std::string incident;

  std::string reason() const {
    static const char* names[] = {"pr = qr = 0", "p^3 = q^3 = r^3", "(p + q)^3 + r^3 = 0"};
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
      if (clauses[i]) out += (out.empty() ? "" : "; ") + std::string("clause ") + std::to_string(i + 1) + " (" + names[i] + ")";
    }
    return out.empty() ? "no clause holds" : out;
  }
};

inline constexpr const char* kIncidentClauseWithoutDim3 = "pbw-clause-without-dim3-10";
inline constexpr const char* kIncidentDim3WithoutClause = "dim3-10-without-pbw-clause";

/// Whether, for some ordering of the generators, the words of degree 3 with
/// no degree-2 leading word as a factor are exactly as many as dim_3. This is
/// the diamond condition for the quadratic rewriting system.
inline bool confluent_in_some_order(const Presentation& pres) {
  const std::size_t g = pres.num_generators();
  std::vector<std::uint8_t> perm(g);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Presentation relabeled = pres;
    for (auto& rel : relabeled.relations) {
      Element<ParamScalar> e;
      for (const auto& [w, c] : rel.element.terms()) {
        std::vector<std::uint8_t> letters = w.letters();
        for (auto& l : letters) l = perm[l];
        e.add_term(Word(letters), c);
      }
      rel.element = e;
    }
    auto basis = GradedBasis<BaseScalar>::from(relabeled, 3);
    std::size_t normal = 0;
    for (std::uint8_t a = 0; a < g; ++a) {
      for (std::uint8_t b = 0; b < g; ++b) {
        if (!basis.is_normal(Word{a, b})) continue;
        for (std::uint8_t c = 0; c < g; ++c) normal += basis.is_normal(Word{b, c});
      }
    }
    if (normal == basis.dimension(3)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Evaluates the three PBW clauses and, independently, the degree-3
/// dimension of the quotient (dim_3 = 10 is the confluence oracle).
inline PbwClassification pbw_classify(const BaseScalar& p, const BaseScalar& q, const BaseScalar& r) {
  if (p.is_zero() && q.is_zero() && r.is_zero()) throw std::invalid_argument("zero parameter triple");
  PbwClassification c;
  c.clauses[0] = (p * r).is_zero() && (q * r).is_zero();
  BaseScalar p3 = p.pow(3);
  c.clauses[1] = p3 == q.pow(3) && p3 == r.pow(3);
  c.clauses[2] = ((p + q).pow(3) + r.pow(3)).is_zero();
  c.pbw_by_clauses = c.clauses[0] || c.clauses[1] || c.clauses[2];

  auto basis = GradedBasis<BaseScalar>::from(sklyanin3(ParamScalar(p), ParamScalar(q), ParamScalar(r)), 3);
  c.dim3 = basis.dimension(3);
  c.dim3_is_10 = c.dim3 == 10;
  c.confluent = confluent_in_some_order(sklyanin3(ParamScalar(p), ParamScalar(q), ParamScalar(r)));
  c.concordant = c.pbw_by_clauses == c.dim3_is_10;
  if (!c.concordant) c.incident = c.pbw_by_clauses ? kIncidentClauseWithoutDim3 : kIncidentDim3WithoutClause;
  return c;
}

/// Parameters (p', q', r') = (w^2 p + w q + r, w p + w^2 q + r, p + q + r).
inline std::array<BaseScalar, 3> lemma33_params(const BaseScalar& p, const BaseScalar& q, const BaseScalar& r) {
  const BaseScalar w = BaseScalar::omega();
  const BaseScalar w2 = w * w;
  return {w2 * p + w * q + r, w * p + w2 * q + r, p + q + r};
}

}  // namespace dsmooth

#endif  // DSMOOTH_SKLYANIN3_PARAMS_HPP
