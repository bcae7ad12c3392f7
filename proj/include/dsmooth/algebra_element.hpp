#ifndef DSMOOTH_ALGEBRA_ELEMENT_HPP
#define DSMOOTH_ALGEBRA_ELEMENT_HPP

#include "dsmooth/field.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

/// Monomial in the free algebra: a sequence of generator indices. The empty
/// word is the unit. Words are ordered by length, then lexicographically.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<std::uint8_t> letters) : letters_(letters) {}
  explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}

  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<std::uint8_t>& letters() const { return letters_; }

  Word operator*(const Word& o) const {
    Word w = *this;
    w.letters_.insert(w.letters_.end(), o.letters_.begin(), o.letters_.end());
    return w;
  }

  Word slice(std::size_t begin, std::size_t end) const {
    return Word(std::vector<std::uint8_t>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                          letters_.begin() + static_cast<std::ptrdiff_t>(end)));
  }

  /// Position among all words of the same degree over `gens` letters
  /// (base-gens number, first letter most significant).
  std::uint64_t index(std::size_t gens) const {
    std::uint64_t idx = 0;
    for (auto l : letters_) idx = idx * gens + l;
    return idx;
  }
  static Word from_index(std::uint64_t idx, std::size_t degree, std::size_t gens) {
    std::vector<std::uint8_t> letters(degree);
    for (std::size_t i = degree; i-- > 0;) {
      letters[i] = static_cast<std::uint8_t>(idx % gens);
      idx /= gens;
    }
    return Word(std::move(letters));
  }

  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      if (a.letters_[i] != b.letters_[i]) return a.letters_[i] <=> b.letters_[i];
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Word& a, const Word& b) = default;

  /// "x*y*z", with runs written as powers ("x^2"); "1" for the unit.
  std::string to_string(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size();) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      if (!out.empty()) out += "*";
      out += names.at(letters_[i]);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

 private:
  std::vector<std::uint8_t> letters_;
};

/// Finite K-linear combination of words; zero coefficients are never stored.
template <ExactField K>
class Element {
 public:
  using Terms = std::map<Word, K>;

  Element() = default;
  explicit Element(const K& scalar) {
    if (!scalar.is_zero()) terms_.emplace(Word(), scalar);
  }
  Element(const Word& w, const K& c) {
    if (!c.is_zero()) terms_.emplace(w, c);
  }

  static Element unit() { return Element(K::from_int(1)); }
  static Element generator(std::uint8_t g) { return Element(Word{g}, K::from_int(1)); }
  static Element word(const Word& w) { return Element(w, K::from_int(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  K coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? K() : it->second;
  }

  void add_term(const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Largest word length present (0 for the zero element).
  std::size_t max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  std::size_t min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
  bool is_homogeneous() const { return terms_.empty() || min_degree() == max_degree(); }

  /// The degree-n slice.
  Element component(std::size_t n) const {
    Element out;
    for (const auto& [w, c] : terms_) {
      if (w.degree() == n) out.terms_.emplace(w, c);
    }
    return out;
  }

  Element operator-() const {
    Element out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }
  Element& operator+=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }

  Element scaled(const K& s) const {
    Element out;
    if (s.is_zero()) return out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * s);
    return out;
  }
  friend Element operator*(const K& s, const Element& a) { return a.scaled(s); }

  /// Bilinear extension of word concatenation.
  friend Element operator*(const Element& a, const Element& b) {
    Element out;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, ca * cb);
    }
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) = default;

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      bool negative = renders_negative(c);
      K shown = negative ? -c : c;
      if (!out.empty()) out += negative ? " - " : " + ";
      else if (negative) out += "-";
      if (w.empty()) {
        out += factor_string(shown);
      } else if (shown == K::from_int(1)) {
        out += w.to_string(names);
      } else {
        out += factor_string(shown) + "*" + w.to_string(names);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

template <ExactField To, ExactField From>
Element<To> convert_element(const Element<From>& e) {
  Element<To> out;
  for (const auto& [w, c] : e.terms()) {
    if constexpr (std::same_as<To, From>) {
      out.add_term(w, c);
    } else {
      out.add_term(w, field_cast<To>(to_param(c)));
    }
  }
  return out;
}

}  // namespace dsmooth

#endif  // DSMOOTH_ALGEBRA_ELEMENT_HPP
