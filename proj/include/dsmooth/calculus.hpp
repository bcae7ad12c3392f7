#ifndef DSMOOTH_CALCULUS_HPP
#define DSMOOTH_CALCULUS_HPP

#include "dsmooth/automorphism.hpp"
#include "dsmooth/graded_basis.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dsmooth {

/// Strictly increasing list of generator indices, dg_{i1} ^ ... ^ dg_{ik}.
using WedgeWord = std::vector<std::uint8_t>;

inline std::string wedge_to_string(const WedgeWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "/\\d" : "d") + names.at(w[i]);
  return out;
}

/// Lexicographic order on wedge words. Spelled out because GCC 11 warns
/// spuriously on the memcmp behind std::vector<uint8_t>::operator<.
struct WedgeOrder {
  bool operator()(const WedgeWord& a, const WedgeWord& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
  }
};

/// Element of Omega^k written as sum_S dg_S * a_S with right coefficients.
template <ExactField K>
class FormElement {
 public:
  using Terms = std::map<WedgeWord, Element<K>, WedgeOrder>;

  FormElement() = default;
  explicit FormElement(std::size_t degree) : degree_(degree) {}
  FormElement(const WedgeWord& w, const Element<K>& a) : degree_(w.size()) { add(w, a); }

  std::size_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Element<K> coefficient(const WedgeWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Element<K>() : it->second;
  }

  void add(const WedgeWord& w, const Element<K>& a) {
    if (a.is_zero()) return;
    if (w.size() != degree_) throw std::invalid_argument("form degree mismatch");
    auto [it, inserted] = terms_.try_emplace(w, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FormElement& operator+=(const FormElement& o) {
    if (!o.is_zero() && !is_zero() && o.degree_ != degree_) throw std::invalid_argument("form degree mismatch");
    if (is_zero()) degree_ = o.degree_;
    for (const auto& [w, a] : o.terms_) add(w, a);
    return *this;
  }
  FormElement operator-() const {
    FormElement out(degree_);
    for (const auto& [w, a] : terms_) out.terms_.emplace(w, -a);
    return out;
  }
  FormElement& operator-=(const FormElement& o) { return *this += -o; }
  friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
  friend FormElement operator-(FormElement a, const FormElement& b) { return a -= b; }

  FormElement scaled(const K& s) const {
    FormElement out(degree_);
    for (const auto& [w, a] : terms_) out.add(w, a.scaled(s));
    return out;
  }

  friend bool operator==(const FormElement& a, const FormElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, a] : terms_) {
      if (!out.empty()) out += " + ";
      std::string coeff = a.to_string(names);
      if (w.empty()) {
        out += "(" + coeff + ")";
      } else {
        out += wedge_to_string(w, names) + (coeff == "1" ? "" : "*(" + coeff + ")");
      }
    }
    return out;
  }

 private:
  std::size_t degree_ = 0;
  Terms terms_;
};

/// First-order calculus with Omega^1 free on dg_1..dg_n and bimodule rule
/// a dg_i = dg_i nu_i(a), extended to a graded algebra of forms. Wedge words
/// are normalized with dg_j ^ dg_i = -c_{ij} dg_i ^ dg_j (j > i) and
/// dg ^ dg = 0, which requires a diagonal table in degrees >= 2.
///
/// Coefficients are kept in normal form with respect to `basis`, which must
/// outlive the calculus.
template <ExactField K>
class Calculus {
 public:
  Calculus(const GradedBasis<K>& basis, AutomorphismTable<K> table) : basis_(&basis), table_(std::move(table)) {
    if (table_.generators() != basis.generators()) throw std::invalid_argument("automorphism table size mismatch");
  }

  const GradedBasis<K>& basis() const { return *basis_; }
  const AutomorphismTable<K>& table() const { return table_; }
  std::size_t dimension() const { return basis_->generators(); }

  /// nu_w(a): a * w = w * nu_w(a), applying the first letter's map first.
  Element<K> push(const Element<K>& a, const WedgeWord& letters) const {
    Element<K> out = a;
    for (auto l : letters) out = table_.apply(l, out);
    return basis_->normal_form(out);
  }

  /// d on Omega^0, by the Leibniz expansion of each word:
  /// d(g_1...g_m) = sum_t dg_t nu_t(g_1...g_{t-1}) g_{t+1}...g_m.
  FormElement<K> differential(const Element<K>& a) const {
    const std::size_t n = dimension();
    std::vector<Element<K>> parts(n);
    for (const auto& [w, c] : a.terms()) {
      for (std::size_t t = 0; t < w.degree(); ++t) {
        Element<K> prefix = table_.apply(w[t], Element<K>::word(w.slice(0, t)));
        parts[w[t]] += (prefix * Element<K>::word(w.slice(t + 1, w.degree()))).scaled(c);
      }
    }
    FormElement<K> out(1);
    for (std::size_t i = 0; i < n; ++i) out.add({static_cast<std::uint8_t>(i)}, basis_->normal_form(parts[i]));
    return out;
  }

  /// Right coefficients of d(a) on dg_1..dg_n.
  std::vector<Element<K>> partials(const Element<K>& a) const {
    FormElement<K> f = differential(a);
    std::vector<Element<K>> out;
    for (std::size_t i = 0; i < dimension(); ++i) out.push_back(f.coefficient({static_cast<std::uint8_t>(i)}));
    return out;
  }

  /// Scalar s with dg_j ^ dg_i = s dg_i ^ dg_j, derived from the bimodule
  /// rule by differentiating g_j dg_i = dg_i c_{ij} g_j.
  K wedge_scalar(std::size_t j, std::size_t i) const {
    require_diagonal();
    return -table_.scalar(i, j);
  }

  /// Sorts an arbitrary letter sequence into a wedge word; empty optional
  /// when a letter repeats.
  std::optional<std::pair<K, WedgeWord>> normalize_wedge(WedgeWord letters) const {
    K s = K::from_int(1);
    for (std::size_t pass = 0; pass < letters.size(); ++pass) {
      for (std::size_t t = 0; t + 1 < letters.size(); ++t) {
        if (letters[t] == letters[t + 1]) return std::nullopt;
        if (letters[t] > letters[t + 1]) {
          s = s * wedge_scalar(letters[t], letters[t + 1]);
          std::swap(letters[t], letters[t + 1]);
        }
      }
    }
    for (std::size_t t = 0; t + 1 < letters.size(); ++t) {
      if (letters[t] == letters[t + 1]) return std::nullopt;
    }
    return std::make_pair(s, letters);
  }

  /// (dg_S a) ^ (dg_T b) = dg_S ^ dg_T nu_T(a) b, then sorted.
  FormElement<K> wedge(const FormElement<K>& u, const FormElement<K>& v) const {
    if (u.degree() + v.degree() > 1) require_diagonal();
    FormElement<K> out(u.degree() + v.degree());
    for (const auto& [s, a] : u.terms()) {
      for (const auto& [t, b] : v.terms()) {
        WedgeWord letters = s;
        letters.insert(letters.end(), t.begin(), t.end());
        auto sorted = normalize_wedge(letters);
        if (!sorted) continue;
        Element<K> coeff = basis_->normal_form(push(a, t) * b);
        out.add(sorted->second, coeff.scaled(sorted->first));
      }
    }
    return out;
  }

  /// a * u for a in degree 0.
  FormElement<K> left_multiply(const Element<K>& a, const FormElement<K>& u) const {
    FormElement<K> out(u.degree());
    for (const auto& [s, b] : u.terms()) out.add(s, basis_->normal_form(push(a, s) * b));
    return out;
  }

  /// d(dg_S a) = (-1)^k dg_S ^ d(a) for dg_S of degree k.
  FormElement<K> d(const FormElement<K>& u) const {
    FormElement<K> out(u.degree() + 1);
    const K sign = K::from_int(u.degree() % 2 == 0 ? 1 : -1);
    for (const auto& [s, a] : u.terms()) {
      FormElement<K> da = differential(a);
      out += wedge(FormElement<K>(s, Element<K>::unit()), da).scaled(sign);
    }
    return out;
  }

  /// The wedge word dg_1 ^ ... ^ dg_n.
  WedgeWord volume_word() const {
    WedgeWord w(dimension());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<std::uint8_t>(i);
    return w;
  }

  FormElement<K> volume() const { return FormElement<K>(volume_word(), Element<K>::unit()); }

  /// pi_omega: the right coefficient of a top-degree form.
  Element<K> volume_pi(const FormElement<K>& top) const {
    if (!top.is_zero() && top.degree() != dimension()) throw std::invalid_argument("volume_pi needs a top-degree form");
    return top.coefficient(volume_word());
  }

  /// nu_omega = nu_1 o nu_2 o ... o nu_n (nu_n applied first).
  Element<K> nu_omega(const Element<K>& a) const {
    Element<K> out = a;
    for (std::size_t i = dimension(); i-- > 0;) out = table_.apply(i, out);
    return basis_->normal_form(out);
  }

  Element<K> nu_omega_inverse(const Element<K>& a) const {
    require_diagonal();
    AutomorphismTable<K> inv = table_.inverse();
    Element<K> out = a;
    for (std::size_t i = 0; i < dimension(); ++i) out = inv.apply(i, out);
    return basis_->normal_form(out);
  }

 private:
  void require_diagonal() const {
    if (!table_.is_diagonal()) throw NonInvertibleAutomorphism("higher forms require a diagonal automorphism table");
  }

  const GradedBasis<K>* basis_;
  AutomorphismTable<K> table_;
};

/// The printed closed forms for the partials of x^k y^l z^s in the
/// three-generator calculus, before normal-form reduction.
template <ExactField K>
std::vector<Element<K>> closed_form_partials3(unsigned k, unsigned l, unsigned s, const K& p, const K& q) {
  auto word = [](unsigned a, unsigned b, unsigned c) {
    std::vector<std::uint8_t> letters;
    letters.insert(letters.end(), a, 0);
    letters.insert(letters.end(), b, 1);
    letters.insert(letters.end(), c, 2);
    return Word(std::move(letters));
  };
  auto sign = [](unsigned e) { return K::from_int(e % 2 == 0 ? 1 : -1); };
  auto power = [](const K& base, long e) {
    K out = K::from_int(1);
    K b = e < 0 ? base.inverse() : base;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) out = out * b;
    return out;
  };
  std::vector<Element<K>> out(3);
  if (k > 0) out[0] = Element<K>(word(k - 1, l, s), sign(k) * K::from_int(k));
  if (l > 0) out[1] = Element<K>(word(k, l - 1, s), sign(k + l) * K::from_int(l) * power(p, -static_cast<long>(k)));
  if (s > 0) {
    K c = sign(k + l + s) * K::from_int(s) * power(p, static_cast<long>(k) - static_cast<long>(l)) *
          power(q, -static_cast<long>(k));
    out[2] = Element<K>(word(k, l, s - 1), c);
  }
  return out;
}

}  // namespace dsmooth

#endif  // DSMOOTH_CALCULUS_HPP
