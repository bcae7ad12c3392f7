#ifndef DSMOOTH_PARAM_SCALAR_HPP
#define DSMOOTH_PARAM_SCALAR_HPP

#include "dsmooth/base_scalar.hpp"
#include "dsmooth/polynomial.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dsmooth {

/// Assignment of base-field values to parameter names.
using Assignment = std::map<std::string, BaseScalar>;

/// Raised when specialization makes a denominator vanish.
class DenominatorVanishes : public std::domain_error {
 public:
  DenominatorVanishes(const std::string& what, Assignment at)
      : std::domain_error(what), assignment(std::move(at)) {}
  Assignment assignment;
};

/// Element of the fraction field Q(w)(params).
///
/// Canonical form: numerator and denominator are coprime and the denominator
/// is monic under the graded-lex order, so two values are equal iff their
/// stored polynomials are equal.
class ParamScalar {
 public:
  ParamScalar() : den_(1) {}
  ParamScalar(long v) : num_(v), den_(1) {}                                  // NOLINT
  ParamScalar(const BaseScalar& v) : num_(v), den_(1) {}                     // NOLINT
  ParamScalar(Polynomial num) : num_(std::move(num)), den_(1) {}             // NOLINT
  ParamScalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static ParamScalar zero() { return {}; }
  static ParamScalar one() { return ParamScalar(1L); }
  static ParamScalar from_int(long v) { return ParamScalar(v); }
  static ParamScalar parameter(std::string_view name) { return ParamScalar(Polynomial::variable(name)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_ == den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  BaseScalar constant_value() const { return num_.constant_value() / den_.constant_value(); }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    collect(num_, out);
    collect(den_, out);
    return out;
  }

  ParamScalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero: " + to_string());
    return from_coprime(den_, num_);
  }

  ParamScalar operator-() const {
    ParamScalar s = *this;
    s.num_ = -s.num_;
    return s;
  }

  // Sums and products cancel against the operands' factors first, so the gcds
  // run on the smaller pieces.
  friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_constant() && b.den_.is_constant()) return from_coprime(a.num_ + b.num_, Polynomial(1));
    const Polynomial g = gcd(a.den_, b.den_);
    if (g.is_constant()) return from_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    const Polynomial ad = divide_exact(a.den_, g);
    const Polynomial bd = divide_exact(b.den_, g);
    Polynomial t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return {};
    const Polynomial h = gcd(t, g);
    if (h.is_constant()) return from_coprime(std::move(t), ad * b.den_);
    return from_coprime(divide_exact(t, h), ad * divide_exact(b.den_, h));
  }
  friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) { return a + (-b); }
  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Polynomial g1 = a.num_.is_constant() || b.den_.is_constant() ? Polynomial(1) : gcd(a.num_, b.den_);
    const Polynomial g2 = b.num_.is_constant() || a.den_.is_constant() ? Polynomial(1) : gcd(b.num_, a.den_);
    auto cut = [](const Polynomial& p, const Polynomial& g) { return g.is_constant() ? p : divide_exact(p, g); };
    return from_coprime(cut(a.num_, g1) * cut(b.num_, g2), cut(a.den_, g2) * cut(b.den_, g1));
  }
  friend ParamScalar operator/(const ParamScalar& a, const ParamScalar& b) {
    if (b.is_zero()) throw DivisionByZero("division by zero: (" + a.to_string() + ") / (" + b.to_string() + ")");
    return a * b.inverse();
  }
  ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
  ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
  ParamScalar& operator/=(const ParamScalar& o) { return *this = *this / o; }

  friend bool operator==(const ParamScalar& a, const ParamScalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  ParamScalar pow(unsigned e) const { return ParamScalar(num_.pow(e), den_.pow(e)); }

  /// Evaluation homomorphism into the base field.
  BaseScalar specialize(const Assignment& at) const {
    auto lookup = [&](unsigned id) -> BaseScalar {
      auto it = at.find(symbol_name(id));
      if (it == at.end()) {
        throw std::invalid_argument("assignment does not cover parameter '" + symbol_name(id) + "'");
      }
      return it->second;
    };
    BaseScalar d = den_.evaluate(lookup);
    if (d.is_zero()) {
      throw DenominatorVanishes("denominator " + den_.to_string() + " vanishes when specializing " + to_string(), at);
    }
    return num_.evaluate(lookup) / d;
  }

  /// Substitutes only the parameters named in `at`, leaving others symbolic.
  ParamScalar substitute(const std::map<std::string, ParamScalar>& at) const {
    return ParamScalar(substitute_poly(num_, at)) / ParamScalar(substitute_poly(den_, at));
  }

  /// Rendering in the presentation-file syntax.
  std::string to_string() const {
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
    std::string n = num_.terms().size() == 1 ? num_.to_string() : "(" + num_.to_string() + ")";
    const bool bare = den_.terms().size() == 1 && den_.terms()[0].second.is_one() && den_.terms()[0].first.degree() == 1;
    return n + (bare ? "/" + den_.to_string() : "/(" + den_.to_string() + ")");
  }

  /// True if the rendering can be used as a factor without parentheses.
  bool is_atomic_rendering() const {
    if (!den_.is_constant() || !den_.constant_value().is_one()) return false;
    if (num_.terms().size() > 1) return false;
    if (num_.is_zero()) return true;
    const BaseScalar& c = num_.terms()[0].second;
    bool negative = c.is_rational() && sgn(c.re()) < 0;
    return !negative && c.is_atomic_rendering() && (num_.terms()[0].first.is_one() || c.is_rational());
  }

 private:
  /// Numerator and denominator already coprime; only the scaling is fixed.
  static ParamScalar from_coprime(Polynomial num, Polynomial den) {
    ParamScalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    if (s.num_.is_zero()) {
      s.den_ = Polynomial(1);
      return s;
    }
    const BaseScalar lc = s.den_.leading_coefficient();
    if (!lc.is_one()) {
      const BaseScalar inv = lc.inverse();
      s.num_ = s.num_.scaled(inv);
      s.den_ = s.den_.scaled(inv);
    }
    return s;
  }

  void canonicalize() {
    if (den_.is_zero()) throw DivisionByZero("zero denominator in rational function");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (!den_.is_constant()) {
      Polynomial g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
      }
    }
    BaseScalar lc = den_.leading_coefficient();
    if (!lc.is_one()) {
      BaseScalar inv = lc.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  static void collect(const Polynomial& p, std::set<std::string>& out) {
    for (const auto& [m, c] : p.terms()) {
      for (std::size_t i = 0; i < m.width(); ++i) {
        if (m.exponent(static_cast<unsigned>(i)) > 0) out.insert(symbol_name(static_cast<unsigned>(i)));
      }
    }
  }

  static ParamScalar substitute_poly(const Polynomial& p, const std::map<std::string, ParamScalar>& at) {
    ParamScalar sum;
    for (const auto& [m, c] : p.terms()) {
      ParamScalar t(c);
      for (std::size_t i = 0; i < m.width(); ++i) {
        unsigned e = m.exponent(static_cast<unsigned>(i));
        if (e == 0) continue;
        auto it = at.find(symbol_name(static_cast<unsigned>(i)));
        ParamScalar base = it == at.end() ? ParamScalar(Polynomial::variable(static_cast<unsigned>(i))) : it->second;
        t *= base.pow(e);
      }
      sum += t;
    }
    return sum;
  }

  Polynomial num_;
  Polynomial den_;
};

inline std::string to_string(const ParamScalar& s) { return s.to_string(); }

}  // namespace dsmooth

#endif  // DSMOOTH_PARAM_SCALAR_HPP
