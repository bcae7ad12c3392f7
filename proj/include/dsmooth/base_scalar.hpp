#ifndef DSMOOTH_BASE_SCALAR_HPP
#define DSMOOTH_BASE_SCALAR_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace dsmooth {

/// Raised when an exact division has a zero divisor.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element a + b*w of Q(w), where w is a primitive cube root of unity
/// (w^2 + w + 1 = 0). Elements with b == 0 are plain rationals.
///
/// mpq_class keeps numerator/denominator in lowest terms with a positive
/// denominator, so equality is structural.
class BaseScalar {
 public:
  BaseScalar() = default;
  BaseScalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  BaseScalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  BaseScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static BaseScalar zero() { return BaseScalar(); }
  static BaseScalar one() { return BaseScalar(1); }
  static BaseScalar from_int(long v) { return BaseScalar(v); }
  /// The primitive cube root of unity w.
  static BaseScalar omega() { return BaseScalar(mpq_class(0), mpq_class(1)); }
  static BaseScalar rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational literal with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return BaseScalar(q);
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_rational() const { return sgn(im_) == 0; }

  /// Norm N(a + b w) = a^2 - a b + b^2, nonzero for nonzero elements.
  mpq_class norm() const { return re_ * re_ - re_ * im_ + im_ * im_; }
  /// Galois conjugate a + b w^2 = (a - b) - b w.
  BaseScalar conjugate() const { return BaseScalar(re_ - im_, -im_); }

  BaseScalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    mpq_class n = norm();
    BaseScalar c = conjugate();
    return BaseScalar(c.re_ / n, c.im_ / n);
  }

  BaseScalar operator-() const { return BaseScalar(-re_, -im_); }

  BaseScalar& operator+=(const BaseScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  BaseScalar& operator-=(const BaseScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  BaseScalar& operator*=(const BaseScalar& o) {
    // (a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w, using w^2 = -1 - w.
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class bd = im_ * o.im_;
    mpq_class re = re_ * o.re_ - bd;
    mpq_class im = re_ * o.im_ + im_ * o.re_ - bd;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  BaseScalar& operator/=(const BaseScalar& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero scalar");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend BaseScalar operator+(BaseScalar a, const BaseScalar& b) { return a += b; }
  friend BaseScalar operator-(BaseScalar a, const BaseScalar& b) { return a -= b; }
  friend BaseScalar operator*(BaseScalar a, const BaseScalar& b) { return a *= b; }
  friend BaseScalar operator/(BaseScalar a, const BaseScalar& b) { return a /= b; }

  friend bool operator==(const BaseScalar& a, const BaseScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Total order used only for deterministic tie-breaking (not a field order).
  friend std::strong_ordering compare(const BaseScalar& a, const BaseScalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BaseScalar pow(unsigned e) const {
    BaseScalar result = one();
    BaseScalar base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  /// Renders in the presentation-file syntax, e.g. "3/2", "-w", "(1 + 2*w)".
  std::string to_string() const {
    if (is_rational()) return re_.get_str();
    std::string w_part;
    if (im_ == 1) {
      w_part = "w";
    } else if (im_ == -1) {
      w_part = "-w";
    } else {
      w_part = im_.get_str() + "*w";
    }
    if (sgn(re_) == 0) {
      return im_ == 1 || im_ == -1 || im_.get_den() == 1 ? w_part : "(" + w_part + ")";
    }
    std::string out = "(" + re_.get_str();
    if (sgn(im_) < 0) {
      mpq_class m = -im_;
      out += " - " + (m == 1 ? std::string("w") : m.get_str() + "*w");
    } else {
      out += " + " + (im_ == 1 ? std::string("w") : im_.get_str() + "*w");
    }
    return out + ")";
  }

  /// True when the rendering needs no parentheses as a factor.
  bool is_atomic_rendering() const {
    if (!is_rational()) return sgn(re_) != 0 || (im_ == 1);
    return sgn(re_) >= 0;
  }

  std::size_t hash() const {
    return std::hash<std::string>()(re_.get_str()) * 31U + std::hash<std::string>()(im_.get_str());
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::string to_string(const BaseScalar& s) { return s.to_string(); }

}  // namespace dsmooth

#endif  // DSMOOTH_BASE_SCALAR_HPP
