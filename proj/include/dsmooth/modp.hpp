#ifndef DSMOOTH_MODP_HPP
#define DSMOOTH_MODP_HPP

#include "dsmooth/base_scalar.hpp"

#include <cstdint>

namespace dsmooth::modp {

/// Arithmetic modulo the Mersenne prime 2^61 - 1. Since 3 divides P - 1, the
/// field contains primitive cube roots of unity.
inline constexpr std::uint64_t P = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(t & P);
  std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
  return add(lo, hi);
}
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}
inline std::uint64_t inverse(std::uint64_t a) {
  if (a == 0) throw DivisionByZero("modular inverse of zero");
  return power(a, P - 2);
}

inline std::uint64_t cube_root_of_unity() {
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t t = power(g, (P - 1) / 3);
    if (t != 1) return t;
  }
}

inline std::uint64_t from_mpz(const mpz_class& z) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(P));
  if (r < 0) r += static_cast<unsigned long>(P);
  return r.get_ui();
}

inline std::uint64_t from_mpq(const mpq_class& q) {
  std::uint64_t den = from_mpz(q.get_den());
  if (den == 0) throw DivisionByZero("rational denominator divisible by the modulus");
  return mul(from_mpz(q.get_num()), inverse(den));
}

/// Image of a+bw with w sent to a fixed primitive cube root of unity.
inline std::uint64_t reduce(const BaseScalar& s) {
  static const std::uint64_t w = cube_root_of_unity();
  return add(from_mpq(s.re()), mul(from_mpq(s.im()), w));
}

}  // namespace dsmooth::modp

#endif  // DSMOOTH_MODP_HPP
