#ifndef DSMOOTH_POLYNOMIAL_HPP
#define DSMOOTH_POLYNOMIAL_HPP

#include "dsmooth/base_scalar.hpp"
#include "dsmooth/modp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dsmooth {

/// Process-wide table of parameter names. Ids are stable for the lifetime of
/// the process; the common parameter names are registered first so that the
/// monomial order (and hence every canonical form) does not depend on the
/// order in which inputs are read.
class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  unsigned intern(std::string_view name) {
    std::lock_guard<std::mutex> lock(mutex_);
    for (unsigned i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    names_.emplace_back(name);
    return static_cast<unsigned>(names_.size() - 1);
  }

  std::string name(unsigned id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (id >= names_.size()) throw std::out_of_range("unknown parameter id");
    return names_[id];
  }

 private:
  SymbolTable() : names_{"p", "q", "r", "alpha", "beta", "gamma"} {}

  mutable std::mutex mutex_;
  std::vector<std::string> names_;
};

inline unsigned symbol_id(std::string_view name) { return SymbolTable::instance().intern(name); }
inline std::string symbol_name(unsigned id) { return SymbolTable::instance().name(id); }

/// Exponent vector indexed by symbol id; trailing zeros are trimmed so that
/// equal monomials compare equal.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(unsigned id, unsigned exp = 1) {
    Monomial m;
    if (exp == 0) return m;
    m.exps_.assign(id + 1, 0);
    m.exps_[id] = exp;
    return m;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  unsigned exponent(unsigned id) const { return id < exps_.size() ? exps_[id] : 0; }
  std::size_t width() const { return exps_.size(); }
  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& o) const {
    Monomial m;
    m.exps_.resize(std::max(exps_.size(), o.exps_.size()), 0);
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] = exponent(i) + o.exponent(i);
    return m;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > o.exponent(i)) return false;
    }
    return true;
  }

  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial m;
    m.exps_.resize(o.exps_.size(), 0);
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] = o.exps_[i] - exponent(i);
    m.trim();
    return m;
  }

  Monomial without(unsigned id) const {
    Monomial m = *this;
    if (id < m.exps_.size()) m.exps_[id] = 0;
    m.trim();
    return m;
  }

  /// Graded order: total degree first, then lexicographic with symbol 0 largest.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree();
    unsigned db = b.degree();
    if (da != db) return da <=> db;
    std::size_t n = std::max(a.exps_.size(), b.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
      unsigned ea = a.exponent(i);
      unsigned eb = b.exponent(i);
      if (ea != eb) return ea <=> eb;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += symbol_name(static_cast<unsigned>(i));
      if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  std::vector<unsigned> exps_;
};

/// Sparse multivariate polynomial over BaseScalar. Terms are kept sorted by
/// strictly decreasing monomial with no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, BaseScalar>;

  Polynomial() = default;
  Polynomial(const BaseScalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
  }
  Polynomial(long c) : Polynomial(BaseScalar(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(unsigned id) {
    Polynomial p;
    p.terms_.emplace_back(Monomial::variable(id), BaseScalar::one());
    return p;
  }
  static Polynomial variable(std::string_view name) { return variable(symbol_id(name)); }
  static Polynomial term(Monomial m, BaseScalar c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  BaseScalar constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? BaseScalar() : terms_[0].second;
  }
  const BaseScalar& leading_coefficient() const { return terms_.front().second; }
  const Monomial& leading_monomial() const { return terms_.front().first; }
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

  bool uses(unsigned id) const {
    return std::any_of(terms_.begin(), terms_.end(), [id](const Term& t) { return t.first.exponent(id) > 0; });
  }
  /// Largest symbol id occurring, or -1 for constants.
  int main_variable() const {
    int v = -1;
    for (const auto& t : terms_) {
      for (std::size_t i = 0; i < t.first.width(); ++i) {
        if (t.first.exponent(static_cast<unsigned>(i)) > 0) v = std::max(v, static_cast<int>(i));
      }
    }
    return v;
  }
  unsigned degree_in(unsigned id) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.exponent(id));
    return d;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.constant_value());
    if (a.is_constant()) return b.scaled(a.constant_value());
    std::map<Monomial, BaseScalar, std::greater<>> acc;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    }
    Polynomial p;
    for (auto& [m, c] : acc) {
      if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
    }
    return p;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const BaseScalar& c) const {
    if (c.is_zero()) return {};
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second *= c;
    return p;
  }
  Polynomial times_monomial(const Monomial& m, const BaseScalar& c) const {
    Polynomial p;
    if (c.is_zero()) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_) p.terms_.emplace_back(tm * m, tc * c);
    return p;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return result;
  }

  /// Scales so the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return {};
    return scaled(leading_coefficient().inverse());
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    }
    return true;
  }

  /// Evaluates with every symbol replaced via `value(id)`.
  template <class F>
  BaseScalar evaluate(F&& value) const {
    BaseScalar sum;
    for (const auto& [m, c] : terms_) {
      BaseScalar t = c;
      for (std::size_t i = 0; i < m.width(); ++i) {
        unsigned e = m.exponent(static_cast<unsigned>(i));
        if (e > 0) t *= value(static_cast<unsigned>(i)).pow(e);
      }
      sum += t;
    }
    return sum;
  }

  /// Coefficients with respect to symbol `id`: exponent -> polynomial free of `id`.
  std::map<unsigned, Polynomial> coefficients_in(unsigned id) const {
    std::map<unsigned, std::map<Monomial, BaseScalar, std::greater<>>> buckets;
    for (const auto& [m, c] : terms_) buckets[m.exponent(id)][m.without(id)] += c;
    std::map<unsigned, Polynomial> out;
    for (auto& [e, bucket] : buckets) {
      Polynomial p;
      for (auto& [m, c] : bucket) {
        if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
      }
      if (!p.is_zero()) out.emplace(e, std::move(p));
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      BaseScalar coeff = c;
      bool negative = coeff.is_rational() && sgn(coeff.re()) < 0;
      if (negative) coeff = -coeff;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string ms = m.to_string();
      if (ms.empty()) {
        out += coeff.to_string();
      } else if (coeff.is_one()) {
        out += ms;
      } else {
        out += coeff.to_string() + "*" + ms;
      }
    }
    return out;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial p;
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
        p.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        BaseScalar c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!c.is_zero()) p.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> terms_;
};

/// Exact quotient a / b; throws if b does not divide a.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (b.is_constant()) return a.scaled(b.constant_value().inverse());
  Polynomial rem = a;
  Polynomial quot;
  const Monomial& lm = b.leading_monomial();
  BaseScalar lc_inv = b.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!lm.divides(rm)) throw std::logic_error("inexact polynomial division");
    Monomial qm = lm.quotient_of(rm);
    BaseScalar qc = rem.leading_coefficient() * lc_inv;
    quot += Polynomial::term(qm, qc);
    rem -= b.times_monomial(qm, qc);
  }
  return quot;
}

namespace detail {

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of `a` viewed as a polynomial in symbol `v`.
inline Polynomial content_in(const Polynomial& a, unsigned v) {
  Polynomial g;
  for (const auto& [e, c] : a.coefficients_in(v)) {
    g = gcd_impl(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(1);
  }
  return g;
}

inline Polynomial from_coefficients(const std::map<unsigned, Polynomial>& coeffs, unsigned v) {
  Polynomial out;
  for (const auto& [e, c] : coeffs) out += c.times_monomial(Monomial::variable(v, e), BaseScalar::one());
  return out;
}

/// Scalar multiple of `a` with small coefficients: integer and primitive when
/// every coefficient is rational, monic otherwise. Keeps the PRS from growing.
inline Polynomial shrink(const Polynomial& a) {
  if (a.is_zero()) return a;
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& [m, c] : a.terms()) {
    if (!c.is_rational()) return a.monic();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.re().get_num_mpz_t());
  }
  mpq_class factor(den, num);
  factor.canonicalize();
  return a.scaled(BaseScalar(factor));
}

/// Pseudo-remainder of f by g in symbol v.
inline Polynomial pseudo_remainder(Polynomial f, const Polynomial& g, unsigned v) {
  auto gc = g.coefficients_in(v);
  unsigned dg = gc.rbegin()->first;
  const Polynomial lcg = gc.rbegin()->second;
  while (!f.is_zero()) {
    auto fc = f.coefficients_in(v);
    unsigned df = fc.rbegin()->first;
    if (df < dg) break;
    Polynomial lcf = fc.rbegin()->second;
    f = f * lcg - (g * lcf).times_monomial(Monomial::variable(v, df - dg), BaseScalar::one());
  }
  return f;
}

/// Largest monomial dividing every term of a nonzero `a`.
inline Monomial monomial_content(const Polynomial& a) {
  unsigned width = 0;
  for (const auto& t : a.terms()) width = std::max(width, static_cast<unsigned>(t.first.width()));
  Monomial out;
  for (unsigned v = 0; v < width; ++v) {
    unsigned e = std::numeric_limits<unsigned>::max();
    for (const auto& t : a.terms()) e = std::min(e, t.first.exponent(v));
    if (e > 0) out = out * Monomial::variable(v, e);
  }
  return out;
}

/// Dense image of `a` mod P as a univariate polynomial in symbol v, the other
/// symbols sent to fixed residues. Empty on a denominator divisible by P.
inline std::optional<std::vector<std::uint64_t>> modular_image(const Polynomial& a, unsigned v, std::uint64_t seed) {
  std::vector<std::uint64_t> out(a.degree_in(v) + 1, 0);
  try {
    for (const auto& [m, c] : a.terms()) {
      std::uint64_t t = modp::reduce(c);
      for (unsigned i = 0; i < m.width(); ++i) {
        const unsigned e = m.exponent(i);
        if (e != 0 && i != v) t = modp::mul(t, modp::power(seed + 7919 * (i + 1), e));
      }
      out[m.exponent(v)] = modp::add(out[m.exponent(v)], t);
    }
  } catch (const DivisionByZero&) {
    return std::nullopt;
  }
  return out;
}

inline std::size_t modular_gcd_degree(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g) {
  auto trim = [](std::vector<std::uint64_t>& x) {
    while (!x.empty() && x.back() == 0) x.pop_back();
  };
  trim(f);
  trim(g);
  if (f.size() < g.size()) std::swap(f, g);
  while (!g.empty()) {
    const std::uint64_t inv = modp::inverse(g.back());
    while (f.size() >= g.size()) {
      const std::uint64_t q = modp::mul(f.back(), inv);
      const std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) f[i + shift] = modp::sub(f[i + shift], modp::mul(q, g[i]));
      trim(f);
    }
    std::swap(f, g);
  }
  return f.empty() ? 0 : f.size() - 1;
}

/// True when a and b are shown coprime by modular univariate images. An image
/// keeping the leading coefficient of a in v bounds deg_v of the gcd.
inline bool coprime_by_images(const Polynomial& a, const Polynomial& b) {
  const int top = std::max(a.main_variable(), b.main_variable());
  for (int vi = 0; vi <= top; ++vi) {
    const auto v = static_cast<unsigned>(vi);
    if (!a.uses(v) || !b.uses(v)) continue;
    bool bounded = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !bounded; ++attempt) {
      const std::uint64_t seed = 1000003 + 104729 * attempt;
      auto fa = modular_image(a, v, seed);
      auto fb = modular_image(b, v, seed);
      if (!fa || !fb || fa->back() == 0) continue;
      if (modular_gcd_degree(std::move(*fa), std::move(*fb)) > 0) return false;
      bounded = true;
    }
    if (!bounded) return false;
  }
  return true;
}

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  const Monomial ma = monomial_content(a);
  const Monomial mb = monomial_content(b);
  if (!ma.is_one() || !mb.is_one()) {
    // A polynomial with no monomial content is coprime to every monomial.
    Monomial common;
    for (unsigned v = 0; v < std::max(ma.width(), mb.width()); ++v) {
      const unsigned e = std::min(ma.exponent(v), mb.exponent(v));
      if (e > 0) common = common * Monomial::variable(v, e);
    }
    Polynomial rest = gcd_impl(divide_exact(a, Polynomial::term(ma, BaseScalar::one())),
                               divide_exact(b, Polynomial::term(mb, BaseScalar::one())));
    return rest.times_monomial(common, BaseScalar::one()).monic();
  }
  if (coprime_by_images(a, b)) return Polynomial(1);
  int va = a.main_variable();
  int vb = b.main_variable();
  int v = std::max(va, vb);
  auto uv = static_cast<unsigned>(v);
  if (!a.uses(uv)) return gcd_impl(a, content_in(b, uv));
  if (!b.uses(uv)) return gcd_impl(content_in(a, uv), b);

  Polynomial ca = content_in(a, uv);
  Polynomial cb = content_in(b, uv);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial f = shrink(divide_exact(a, ca));
  Polynomial g = shrink(divide_exact(b, cb));
  if (f.degree_in(uv) < g.degree_in(uv)) std::swap(f, g);
  while (!g.is_zero()) {
    Polynomial r = pseudo_remainder(f, g, uv);
    f = std::move(g);
    if (r.is_zero()) {
      g = Polynomial();
    } else if (r.degree_in(uv) == 0) {
      // Primitive parts are coprime in v.
      f = Polynomial(1);
      g = Polynomial();
    } else {
      g = shrink(divide_exact(r, content_in(r, uv)));
    }
  }
  if (f.degree_in(uv) == 0) f = Polynomial(1);
  return (c * f).monic();
}

}  // namespace detail

/// Monic greatest common divisor (gcd(0, 0) = 0).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) { return detail::gcd_impl(a, b); }

}  // namespace dsmooth

#endif  // DSMOOTH_POLYNOMIAL_HPP
