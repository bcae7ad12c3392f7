#ifndef DSMOOTH_PRESENTATION_HPP
#define DSMOOTH_PRESENTATION_HPP

#include "dsmooth/algebra_element.hpp"
#include "dsmooth/param_scalar.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsmooth {

enum class BaseField { rational, cyclotomic };

inline std::string to_string(BaseField b) { return b == BaseField::rational ? "rational" : "cyclotomic"; }

struct Relation {
  Element<ParamScalar> element;
  /// Source text, kept verbatim so reports can quote it.
  std::string text;

  friend bool operator==(const Relation& a, const Relation& b) { return a.element == b.element; }
};

/// Polynomial side condition on the parameters, recorded as `text` and
/// evaluated as lhs - rhs.
struct Constraint {
  std::string text;
  ParamScalar residual;

  friend bool operator==(const Constraint& a, const Constraint& b) { return a.residual == b.residual; }
};

/// Quadratic algebra presentation: free algebra on `generators` modulo the
/// two-sided ideal of homogeneous degree-2 `relations`.
struct Presentation {
  std::string name;
  BaseField base = BaseField::rational;
  std::vector<std::string> parameters;
  std::vector<std::string> generators;
  std::vector<Relation> relations;
  std::vector<Constraint> constraints;

  std::size_t num_generators() const { return generators.size(); }
  bool is_symbolic() const {
    return std::any_of(relations.begin(), relations.end(), [](const Relation& r) {
      return std::any_of(r.element.terms().begin(), r.element.terms().end(),
                         [](const auto& t) { return !t.second.is_constant(); });
    });
  }

  /// Relations converted into the working field K.
  template <ExactField K>
  std::vector<Element<K>> relations_in() const {
    std::vector<Element<K>> out;
    out.reserve(relations.size());
    for (const auto& r : relations) out.push_back(convert_element<K>(r.element));
    return out;
  }

  /// Constraints whose residual is a nonzero constant.
  std::vector<const Constraint*> violated_constraints() const {
    std::vector<const Constraint*> out;
    for (const auto& c : constraints) {
      if (c.residual.is_constant() && !c.residual.is_zero()) out.push_back(&c);
    }
    return out;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.name == b.name && a.base == b.base && a.parameters == b.parameters && a.generators == b.generators &&
           a.relations == b.relations && a.constraints == b.constraints;
  }
};

/// Checks the structural invariants (nonempty, homogeneous of degree 2,
/// letters within the alphabet); throws std::invalid_argument on violation.
inline void validate(const Presentation& p) {
  if (p.generators.empty()) throw std::invalid_argument("presentation '" + p.name + "' has no generators");
  if (p.generators.size() > 16) throw std::invalid_argument("at most 16 generators are supported");
  if (p.relations.empty()) throw std::invalid_argument("relation list nonempty: presentation '" + p.name + "' has none");
  for (const auto& r : p.relations) {
    if (r.element.is_zero()) throw std::invalid_argument("relation '" + r.text + "' is zero");
    if (!r.element.is_homogeneous()) throw std::invalid_argument("relation '" + r.text + "' is not homogeneous");
    if (r.element.max_degree() != 2) throw std::invalid_argument("relation '" + r.text + "' does not have degree 2");
    for (const auto& [w, c] : r.element.terms()) {
      for (auto l : w.letters()) {
        if (l >= p.generators.size()) throw std::invalid_argument("relation uses an unknown generator");
      }
    }
  }
}

namespace detail {

/// Replaces each "{key}" in `pattern` with the given text.
inline std::string fill(std::string pattern, const std::map<std::string, std::string>& values) {
  for (const auto& [key, val] : values) {
    std::string token = "{" + key + "}";
    for (auto pos = pattern.find(token); pos != std::string::npos; pos = pattern.find(token, pos + val.size())) {
      pattern.replace(pos, token.size(), val);
    }
  }
  return pattern;
}

inline Element<ParamScalar> word2(std::uint8_t a, std::uint8_t b, const ParamScalar& c) {
  return Element<ParamScalar>(Word{a, b}, c);
}

/// Joins "coefficient*monomial" terms, dropping zero terms and unit
/// coefficients: {(1, "y*z"), (-2, "x^2")} gives "y*z - 2*x^2".
inline std::string join_terms(const std::vector<std::pair<ParamScalar, std::string>>& terms) {
  std::string out;
  for (const auto& [c, m] : terms) {
    if (c.is_zero()) continue;
    const bool negative = renders_negative(c);
    const ParamScalar shown = negative ? -c : c;
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    out += shown.is_one() ? m : factor_string(shown) + "*" + m;
  }
  return out.empty() ? "0" : out;
}

inline std::vector<std::string> parameter_names(const std::vector<ParamScalar>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) {
    for (const auto& n : v.parameters()) {
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
  }
  return out;
}

inline BaseField base_of(const std::vector<ParamScalar>& values) {
  for (const auto& v : values) {
    for (const auto& t : v.numerator().terms()) {
      if (!t.second.is_rational()) return BaseField::cyclotomic;
    }
    for (const auto& t : v.denominator().terms()) {
      if (!t.second.is_rational()) return BaseField::cyclotomic;
    }
  }
  return BaseField::rational;
}

}  // namespace detail

/// Three-dimensional Sklyanin algebra S(p,q,r) on x, y, z with relations
/// p yz + q zy + r x^2, p zx + q xz + r y^2, p xy + q yx + r z^2.
inline Presentation sklyanin3(const ParamScalar& p, const ParamScalar& q, const ParamScalar& r) {
  if (p.is_zero() && q.is_zero() && r.is_zero()) throw std::invalid_argument("sklyanin3: (p, q, r) must not all be zero");
  Presentation out;
  out.name = "sklyanin3";
  out.base = detail::base_of({p, q, r});
  out.parameters = detail::parameter_names({p, q, r});
  out.generators = {"x", "y", "z"};
  // (first, second) letters of the p-term; the q-term swaps them and the
  // r-term squares the remaining generator.
  const std::uint8_t x = 0, y = 1, z = 2;
  const std::uint8_t pattern[3][3] = {{y, z, x}, {z, x, y}, {x, y, z}};
  for (int i = 0; i < 3; ++i) {
    auto [a, b, s] = std::tuple(pattern[i][0], pattern[i][1], pattern[i][2]);
    Element<ParamScalar> rel = detail::word2(a, b, p) + detail::word2(b, a, q) + detail::word2(s, s, r);
    const auto& g = out.generators;
    std::string text = detail::join_terms(
        {{p, g[a] + "*" + g[b]}, {q, g[b] + "*" + g[a]}, {r, g[s] + "^2"}});
    out.relations.push_back({rel, text});
  }
  return out;
}

inline Presentation sklyanin3_symbolic() {
  return sklyanin3(ParamScalar::parameter("p"), ParamScalar::parameter("q"), ParamScalar::parameter("r"));
}

/// Four-generator algebra A(alpha, beta, gamma) on x0..x3 with the six
/// relations x0 xi - xi x0 = c (xj xk + xk xj), x0 xi + xi x0 = xj xk - xk xj
/// for (i, j, k) cyclic in (1, 2, 3). The Sklyanin condition
/// alpha + beta + gamma + alpha beta gamma = 0 is recorded as a constraint.
inline Presentation sklyanin4(const ParamScalar& alpha, const ParamScalar& beta, const ParamScalar& gamma) {
  Presentation out;
  out.name = "sklyanin4";
  out.base = detail::base_of({alpha, beta, gamma});
  out.parameters = detail::parameter_names({alpha, beta, gamma});
  out.generators = {"x0", "x1", "x2", "x3"};
  const std::map<std::string, std::string> vals{
      {"alpha", factor_string(alpha)}, {"beta", factor_string(beta)}, {"gamma", factor_string(gamma)}};
  const ParamScalar one = ParamScalar::one();
  const ParamScalar coeffs[3] = {alpha, beta, gamma};
  const std::uint8_t cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (int t = 0; t < 3; ++t) {
    auto [i, j, k] = std::tuple(cyc[t][0], cyc[t][1], cyc[t][2]);
    const std::string xi = "x" + std::to_string(i), xj = "x" + std::to_string(j), xk = "x" + std::to_string(k);
    Element<ParamScalar> a = detail::word2(0, i, one) - detail::word2(i, 0, one) -
                             (detail::word2(j, k, coeffs[t]) + detail::word2(k, j, coeffs[t]));
    Element<ParamScalar> b = detail::word2(0, i, one) + detail::word2(i, 0, one) - detail::word2(j, k, one) +
                             detail::word2(k, j, one);
    // Coefficient rendered as a factor; unit and zero coefficients are dropped.
    std::string ta = "x0*" + xi + " - " + xi + "*x0";
    const ParamScalar& c = coeffs[t];
    if (!c.is_zero()) {
      const bool neg = renders_negative(c);
      const ParamScalar shown = neg ? -c : c;
      ta += (neg ? " + " : " - ") + (shown.is_one() ? std::string() : factor_string(shown) + "*") + "(" + xj + "*" +
            xk + " + " + xk + "*" + xj + ")";
    }
    std::string tb = "x0*" + xi + " + " + xi + "*x0 - " + xj + "*" + xk + " + " + xk + "*" + xj;
    out.relations.push_back({a, ta});
    out.relations.push_back({b, tb});
  }
  out.constraints.push_back({detail::fill("{alpha} + {beta} + {gamma} + {alpha}*{beta}*{gamma} = 0", vals),
                             alpha + beta + gamma + alpha * beta * gamma});
  return out;
}

inline Presentation sklyanin4_symbolic() {
  return sklyanin4(ParamScalar::parameter("alpha"), ParamScalar::parameter("beta"), ParamScalar::parameter("gamma"));
}

/// Polynomial ring on `n` commuting generators (x, y, z, w for n <= 4, else
/// x0, x1, ...), relations g_i g_j - g_j g_i for i < j.
inline Presentation commutative(std::size_t n) {
  Presentation out;
  out.name = "commutative" + std::to_string(n);
  if (n == 0) throw std::invalid_argument("commutative: need at least one generator");
  if (n <= 3) {
    const char* names[3] = {"x", "y", "z"};
    out.generators.assign(names, names + n);
  } else {
    for (std::size_t i = 0; i < n; ++i) out.generators.push_back("x" + std::to_string(i));
  }
  const ParamScalar one = ParamScalar::one();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto a = static_cast<std::uint8_t>(i), b = static_cast<std::uint8_t>(j);
      Element<ParamScalar> rel = detail::word2(a, b, one) - detail::word2(b, a, one);
      out.relations.push_back({rel, out.generators[i] + "*" + out.generators[j] + " - " + out.generators[j] + "*" +
                                        out.generators[i]});
    }
  }
  if (out.relations.empty()) throw std::invalid_argument("commutative: a single generator has no quadratic relations");
  return out;
}

/// Monomial algebra on x, y, z modulo the given two-letter words.
inline Presentation monomial3(const std::string& name, const std::vector<std::pair<std::uint8_t, std::uint8_t>>& words) {
  Presentation out;
  out.name = name;
  out.generators = {"x", "y", "z"};
  for (auto [a, b] : words) {
    Word w{a, b};
    out.relations.push_back({Element<ParamScalar>::word(w), w.to_string(out.generators)});
  }
  return out;
}

/// k{x,y,z} / (x^2, y^2, z^2).
inline Presentation monomial_squares() { return monomial3("monomial-squares", {{0, 0}, {1, 1}, {2, 2}}); }
/// k{x,y,z} / (xy, yz, zx).
inline Presentation monomial_cyclic() { return monomial3("monomial-cyclic", {{0, 1}, {1, 2}, {2, 0}}); }

/// Substitutes parameter values into every relation and constraint.
inline Presentation specialize(const Presentation& p, const std::map<std::string, ParamScalar>& at) {
  Presentation out = p;
  out.parameters.clear();
  std::vector<ParamScalar> used;
  for (auto& r : out.relations) {
    Element<ParamScalar> e;
    for (const auto& [w, c] : r.element.terms()) {
      ParamScalar v = c.substitute(at);
      e.add_term(w, v);
      used.push_back(v);
    }
    if (!(e == r.element)) r.text = e.to_string(out.generators);
    r.element = e;
  }
  for (auto& c : out.constraints) {
    ParamScalar v = c.residual.substitute(at);
    if (!(v == c.residual)) c.text = v.to_string() + " = 0";
    c.residual = v;
  }
  for (const auto& name : p.parameters) {
    if (!at.contains(name)) out.parameters.push_back(name);
  }
  if (detail::base_of(used) == BaseField::cyclotomic) out.base = BaseField::cyclotomic;
  return out;
}

}  // namespace dsmooth

#endif  // DSMOOTH_PRESENTATION_HPP
