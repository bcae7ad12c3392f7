#ifndef DSMOOTH_FIELD_HPP
#define DSMOOTH_FIELD_HPP

#include "dsmooth/base_scalar.hpp"
#include "dsmooth/param_scalar.hpp"

#include <concepts>
#include <stdexcept>
#include <string>

namespace dsmooth {

/// Exact coefficient field usable by every algorithm in the library.
template <class K>
concept ExactField = std::regular<K> && requires(const K a, const K b, long n) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { a.is_atomic_rendering() } -> std::convertible_to<bool>;
  { K::from_int(n) } -> std::same_as<K>;
};

static_assert(ExactField<BaseScalar>);
static_assert(ExactField<ParamScalar>);

/// Converts a symbolic coefficient into K. Converting to BaseScalar requires
/// the value to be parameter-free.
template <ExactField K>
K field_cast(const ParamScalar& s);

template <>
inline ParamScalar field_cast<ParamScalar>(const ParamScalar& s) {
  return s;
}

template <>
inline BaseScalar field_cast<BaseScalar>(const ParamScalar& s) {
  if (!s.is_constant()) throw std::invalid_argument("coefficient '" + s.to_string() + "' still depends on parameters");
  return s.constant_value();
}

template <ExactField K>
inline ParamScalar to_param(const K& s) {
  if constexpr (std::same_as<K, ParamScalar>) {
    return s;
  } else {
    return ParamScalar(s);
  }
}

/// True when the value depends on symbolic parameters.
inline bool is_parametric(const BaseScalar&) { return false; }
inline bool is_parametric(const ParamScalar& s) { return !s.is_constant(); }

/// True when `s` prints as "-" followed by the rendering of -s.
template <ExactField K>
bool renders_negative(const K& s) {
  std::string text = s.to_string();
  return text.size() > 1 && text[0] == '-' && text.substr(1) == (-s).to_string();
}

/// Renders `s` as a factor in front of a product (parenthesized when needed).
template <ExactField K>
std::string factor_string(const K& s) {
  return s.is_atomic_rendering() ? s.to_string() : "(" + s.to_string() + ")";
}

}  // namespace dsmooth

#endif  // DSMOOTH_FIELD_HPP
