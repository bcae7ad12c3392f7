#ifndef DSMOOTH_TESTS_SUPPORT_HPP
#define DSMOOTH_TESTS_SUPPORT_HPP

// Seeded generators and independent dense oracles shared by the test suites.
// The oracles deliberately avoid GradedBasis, Calculus and solve_linear.

#include "dsmooth/dsmooth.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace dsmooth {

// Readable gtest failure messages.
inline void PrintTo(const BaseScalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const ParamScalar& s, std::ostream* os) { *os << s.to_string(); }
template <ExactField K>
void PrintTo(const Element<K>& e, std::ostream* os) {
  *os << e.to_string({"x", "y", "z", "u", "v", "s"});
}
template <ExactField K>
void PrintTo(const FormElement<K>& f, std::ostream* os) {
  *os << f.to_string({"x", "y", "z", "u", "v", "s"});
}

}  // namespace dsmooth

namespace dsmooth::support {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline BaseScalar random_rational(Rng& rng, long range = 9) {
  long num = uniform(rng, -range, range);
  long den = uniform(rng, 1, range);
  return BaseScalar::rational(num, den);
}

inline BaseScalar random_base(Rng& rng, bool cyclotomic) {
  BaseScalar a = random_rational(rng);
  if (!cyclotomic || coin(rng)) return a;
  return a + random_rational(rng) * BaseScalar::omega();
}

/// Sparse polynomial in p, q, r with total degree <= 2.
inline ParamScalar random_polynomial(Rng& rng) {
  static const char* const names[] = {"p", "q", "r"};
  ParamScalar out;
  const long terms = uniform(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    ParamScalar m(random_rational(rng, 5));
    const long deg = uniform(rng, 0, 2);
    for (long k = 0; k < deg; ++k) m *= ParamScalar::parameter(names[uniform(rng, 0, 2)]);
    out += m;
  }
  return out;
}

/// Random element of Q(p, q, r): a quotient of two random polynomials.
inline ParamScalar random_param(Rng& rng) {
  ParamScalar num = random_polynomial(rng);
  ParamScalar den;
  while (den.is_zero()) den = random_polynomial(rng);
  return num / den;
}

template <ExactField K, class Scalar>
Element<K> random_homogeneous(Rng& rng, std::size_t gens, std::size_t degree, std::size_t max_terms, Scalar scalar) {
  Element<K> out;
  const long terms = uniform(rng, 1, static_cast<long>(max_terms));
  for (long t = 0; t < terms; ++t) {
    std::vector<std::uint8_t> letters(degree);
    for (auto& l : letters) l = static_cast<std::uint8_t>(uniform(rng, 0, static_cast<long>(gens) - 1));
    out.add_term(Word(letters), scalar());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense linear algebra over BaseScalar, written independently of linear_solve.

inline std::size_t dense_rank(std::vector<std::vector<BaseScalar>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const BaseScalar inv = m[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const BaseScalar f = m[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Coordinates of a homogeneous element of degree n in the g^n word basis.
inline std::vector<BaseScalar> dense_vector(const Element<BaseScalar>& e, std::size_t g, std::size_t n) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= g;
  std::vector<BaseScalar> v(size);
  for (const auto& [w, c] : e.terms()) v.at(w.index(g)) += c;
  return v;
}

/// Spanning set u * rel * v of the degree-n slice of the two-sided ideal.
inline std::vector<Element<BaseScalar>> ideal_span(const std::vector<Element<BaseScalar>>& rels, std::size_t g,
                                                   std::size_t n) {
  std::vector<Element<BaseScalar>> out;
  if (n < 2) return out;
  for (std::size_t left = 0; left + 2 <= n; ++left) {
    const std::size_t right = n - 2 - left;
    std::size_t nl = 1, nr = 1;
    for (std::size_t i = 0; i < left; ++i) nl *= g;
    for (std::size_t i = 0; i < right; ++i) nr *= g;
    for (std::size_t a = 0; a < nl; ++a) {
      for (std::size_t b = 0; b < nr; ++b) {
        for (const auto& r : rels) {
          out.push_back(Element<BaseScalar>::word(Word::from_index(a, left, g)) * r *
                        Element<BaseScalar>::word(Word::from_index(b, right, g)));
        }
      }
    }
  }
  return out;
}

/// dim of the degree-n quotient by counting: g^n - rank of the ideal span.
inline std::size_t dense_quotient_dim(const Presentation& p, std::size_t n) {
  const std::size_t g = p.num_generators();
  std::vector<std::vector<BaseScalar>> rows;
  for (const auto& e : ideal_span(p.relations_in<BaseScalar>(), g, n)) rows.push_back(dense_vector(e, g, n));
  std::size_t words = 1;
  for (std::size_t i = 0; i < n; ++i) words *= g;
  return words - dense_rank(rows);
}

/// The full matrix of d in one shot. Each free word w of degree n maps to
/// the tuple of dg_i coefficients computed from the bimodule rule in the free
/// algebra: d(g_1...g_m) = sum_t dg_t nu_t(g_1...g_{t-1}) g_{t+1}...g_m.
struct DenseKernel {
  std::size_t degree = 0;
  /// False when d(I_n) does not land in the submodule sum_i dg_i I_{n-1},
  /// i.e. d does not descend to the degree-n quotient.
  bool well_defined = true;
  std::size_t dimension = 0;
};

inline std::vector<Element<BaseScalar>> free_partials(const AutomorphismTable<BaseScalar>& t, const Word& w) {
  std::vector<Element<BaseScalar>> out(t.generators());
  for (std::size_t k = 0; k < w.degree(); ++k) {
    // nu_{w[k]} of the prefix, letter by letter.
    Element<BaseScalar> prefix = Element<BaseScalar>::unit();
    for (std::size_t j = 0; j < k; ++j) {
      Element<BaseScalar> img;
      for (std::size_t c = 0; c < t.generators(); ++c) {
        img.add_term(Word{static_cast<std::uint8_t>(c)}, t.entry(w[k], w[j], c));
      }
      prefix = prefix * img;
    }
    std::vector<std::uint8_t> tail(w.letters().begin() + static_cast<std::ptrdiff_t>(k) + 1, w.letters().end());
    out[w[k]] += prefix * Element<BaseScalar>::word(Word(tail));
  }
  return out;
}

inline DenseKernel dense_kernel(const Presentation& p, const AutomorphismTable<BaseScalar>& t, std::size_t n) {
  DenseKernel out;
  out.degree = n;
  const std::size_t g = p.num_generators();
  const auto rels = p.relations_in<BaseScalar>();
  std::size_t words = 1, below = 1;
  for (std::size_t i = 0; i < n; ++i) words *= g;
  for (std::size_t i = 0; i + 1 < n; ++i) below *= g;
  auto image = [&](const Element<BaseScalar>& e) {
    std::vector<BaseScalar> col(g * below);
    for (const auto& [w, c] : e.terms()) {
      auto parts = free_partials(t, w);
      for (std::size_t i = 0; i < g; ++i) {
        for (const auto& [u, a] : parts[i].terms()) col[i * below + u.index(g)] += c * a;
      }
    }
    return col;
  };
  // Columns stored as rows (rank is transpose invariant).
  std::vector<std::vector<BaseScalar>> sub;  // sum_i dg_i I_{n-1}
  for (const auto& e : ideal_span(rels, g, n - 1)) {
    auto v = dense_vector(e, g, n - 1);
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<BaseScalar> col(g * below);
      for (std::size_t k = 0; k < below; ++k) col[i * below + k] = v[k];
      sub.push_back(std::move(col));
    }
  }
  const std::size_t rank_sub = dense_rank(sub);
  auto with_ideal_images = sub;
  for (const auto& e : ideal_span(rels, g, n)) with_ideal_images.push_back(image(e));
  out.well_defined = dense_rank(with_ideal_images) == rank_sub;

  auto all = sub;
  for (std::size_t w = 0; w < words; ++w) all.push_back(image(Element<BaseScalar>::word(Word::from_index(w, n, g))));
  std::vector<std::vector<BaseScalar>> ideal_rows;
  for (const auto& e : ideal_span(rels, g, n)) ideal_rows.push_back(dense_vector(e, g, n));
  // {a : d(a) in sub} has dimension words - rank[D | sub] + rank(sub); the
  // ideal slice sits inside it when d is well defined.
  out.dimension = words - dense_rank(all) + rank_sub - dense_rank(ideal_rows);
  return out;
}

// ---------------------------------------------------------------------------
// Form helpers.

/// u * b for a form u and a degree-0 element b (right multiplication).
template <ExactField K>
FormElement<K> right_multiply(const Calculus<K>& calc, const FormElement<K>& u, const Element<K>& b) {
  FormElement<K> out(u.degree());
  for (const auto& [s, a] : u.terms()) out.add(s, calc.basis().normal_form(a * b));
  return out;
}

template <ExactField K>
FormElement<K> one_form(std::uint8_t g, const Element<K>& coeff) {
  return FormElement<K>(WedgeWord{g}, coeff);
}

// ---------------------------------------------------------------------------
// Random .alg documents.

inline std::string random_scalar_text(Rng& rng, const std::vector<std::string>& params, bool cyclotomic,
                                      ParamScalar& value) {
  long num = uniform(rng, 1, 7) * (coin(rng) ? 1 : -1);
  long den = coin(rng, 0.3) ? uniform(rng, 2, 5) : 1;
  value = ParamScalar(BaseScalar::rational(num, den));
  if (!params.empty() && coin(rng, 0.5)) value *= ParamScalar::parameter(params[uniform(rng, 0, params.size() - 1)]);
  if (!params.empty() && coin(rng, 0.2)) value /= ParamScalar::parameter(params[uniform(rng, 0, params.size() - 1)]);
  if (cyclotomic && coin(rng, 0.3)) value *= ParamScalar(coin(rng) ? BaseScalar::omega() : BaseScalar::omega().pow(2));
  return value.to_string();
}

inline AlgebraDecl random_algebra(Rng& rng, std::size_t index) {
  static const std::vector<std::string> gen_pool = {"x", "y", "z", "u", "v", "s"};
  static const std::vector<std::string> param_pool = {"a", "b", "c", "t"};
  AlgebraDecl decl;
  Presentation& p = decl.presentation;
  p.name = (coin(rng) ? "alg" : "case-") + std::to_string(index);
  p.base = coin(rng) ? BaseField::cyclotomic : BaseField::rational;
  const bool cyc = p.base == BaseField::cyclotomic;
  for (const auto& name : param_pool) {
    if (coin(rng, 0.4)) p.parameters.push_back(name);
  }
  std::vector<std::string> pool = gen_pool;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(uniform(rng, 2, 4)));
  p.generators = pool;
  const std::size_t g = p.generators.size();

  const long nrels = uniform(rng, 1, 4);
  while (p.relations.size() < static_cast<std::size_t>(nrels)) {
    Element<ParamScalar> rel;
    const long terms = uniform(rng, 1, 3);
    for (long k = 0; k < terms; ++k) {
      ParamScalar c;
      random_scalar_text(rng, p.parameters, cyc, c);
      rel.add_term(Word{static_cast<std::uint8_t>(uniform(rng, 0, g - 1)), static_cast<std::uint8_t>(uniform(rng, 0, g - 1))},
                   c);
    }
    if (rel.is_zero()) continue;
    p.relations.push_back({rel, rel.to_string(p.generators)});
  }

  if (coin(rng)) {
    AutomorphismTable<ParamScalar> table(g);
    const bool diagonal = coin(rng);
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t k = 0; k < g; ++k) {
          if (diagonal && a != k) continue;
          if (!diagonal && coin(rng, 0.6)) {
            table.set_entry(i, a, k, ParamScalar());
            continue;
          }
          ParamScalar c;
          random_scalar_text(rng, p.parameters, cyc, c);
          table.set_entry(i, a, k, c);
        }
      }
    }
    decl.table = std::move(table);
  }

  if (!p.parameters.empty() && coin(rng, 0.4)) {
    ParamScalar lhs, rhs;
    std::string l = random_scalar_text(rng, p.parameters, cyc, lhs);
    std::string r = random_scalar_text(rng, p.parameters, cyc, rhs);
    p.constraints.push_back({l + " = " + r, lhs - rhs});
  }
  return decl;
}

inline Document random_document(Rng& rng) {
  Document d;
  const long blocks = uniform(rng, 1, 3);
  for (long b = 0; b < blocks; ++b) d.algebras.push_back(random_algebra(rng, static_cast<std::size_t>(b)));
  return d;
}

}  // namespace dsmooth::support

#endif  // DSMOOTH_TESTS_SUPPORT_HPP
