#ifndef DSMOOTH_CHECKS_HPP
#define DSMOOTH_CHECKS_HPP

#include "dsmooth/calculus.hpp"
#include "dsmooth/feasibility.hpp"
#include "dsmooth/linear_solve.hpp"
#include "dsmooth/report.hpp"

#include <string>
#include <vector>

namespace dsmooth {

/// nu_i(r) reduces to zero in the quotient for every generator i and
/// relation r.
template <ExactField K>
CheckReport check_relation_compat(const Presentation& p, const GradedBasis<K>& basis, const AutomorphismTable<K>& t) {
  CheckReport rep;
  rep.id = "relation-compat";
  rep.summary = "every nu_g maps every relation into the ideal";
  const auto rels = p.relations_in<K>();
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.num_generators(); ++i) {
    for (std::size_t r = 0; r < rels.size(); ++r) {
      Element<K> img = t.apply(i, rels[r]);
      Element<K> nf = basis.normal_form(img);
      rows.push_back({{"map", "nu[" + p.generators[i] + "]"}, {"relation", p.relations[r].text},
                      {"image", img.to_string(p.generators)}, {"normal_form", nf.to_string(p.generators)}});
      if (!nf.is_zero() && rep.passed()) {
        rep.fail({"nu[" + p.generators[i] + "] of the relation does not reduce to zero", p.relations[r].text,
                  nf.to_string(p.generators), 2},
                 "nu[" + p.generators[i] + "] is not compatible with the relations");
      }
    }
  }
  rep.details["images"] = rows;
  rep.assumptions = nonzero_assumptions(basis.pivot_assumptions());
  return rep;
}

/// d(r) = 0 in Omega^1 for every relation r.
template <ExactField K>
CheckReport check_leibniz_compat(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "leibniz-compat";
  rep.summary = "d extends over the relations (d(r) = 0 for every relation)";
  const auto& names = p.generators;
  const auto rels = p.relations_in<K>();
  const auto& t = calc.table();
  Json rows = Json::array();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    // Unpushed expansion sum c (dg_a g_b + g_a dg_b), as displayed by hand.
    std::string expansion;
    std::vector<std::vector<std::string>> parts(p.num_generators());
    for (const auto& [w, c] : rels[r].terms()) {
      const std::string a = names[w[0]], b = names[w[1]];
      std::string cs = c == K::from_int(1) ? "" : factor_string(c) + "*";
      if (!expansion.empty()) expansion += " + ";
      expansion += cs + "d" + a + "*" + b + " + " + cs + a + "*d" + b;
      parts[w[0]].push_back(Element<K>(Word{w[1]}, c).to_string(names));
      parts[w[1]].push_back(t.apply(w[1], Element<K>(Word{w[0]}, c)).to_string(names));
    }
    FormElement<K> dr = calc.differential(rels[r]);
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < p.num_generators(); ++i) {
      std::string joined;
      for (const auto& s : parts[i]) joined += (joined.empty() ? "(" : " + (") + s + ")";
      Element<K> c = dr.coefficient({static_cast<std::uint8_t>(i)});
      coeffs["d" + names[i]] = {{"terms", joined.empty() ? "0" : joined}, {"value", c.to_string(names)}};
      if (!c.is_zero() && rep.passed()) {
        rep.fail({"coefficient of d" + names[i] + " in d(relation) is nonzero", p.relations[r].text, c.to_string(names), 1},
                 "d does not extend over the relations");
      }
    }
    rows.push_back({{"relation", p.relations[r].text}, {"expansion", expansion + " = 0"}, {"coefficients", coeffs}});
  }
  rep.details["relations"] = rows;
  return rep;
}

/// c_{ij} c_{ji} = 1 for i != j and all diagonal scalars nonzero; lists the
/// derived commutation scalars dg_j ^ dg_i = s dg_i ^ dg_j.
template <ExactField K>
CheckReport check_wedge_consistency(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "wedge-consistency";
  rep.summary = "wedge commutation scalars are mutually inverse";
  const auto& t = calc.table();
  if (!t.is_diagonal()) {
    rep.not_applicable("higher forms need a diagonal automorphism table");
    return rep;
  }
  const std::size_t n = p.num_generators();
  Json scalars = Json::object();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string key = "d" + p.generators[j] + "/\\d" + p.generators[i];
      scalars[key] = calc.wedge_scalar(j, i).to_string();
      K prod = t.scalar(i, j) * t.scalar(j, i);
      if (!(prod == K::from_int(1)) && rep.passed()) {
        rep.fail({"c_ij * c_ji != 1 for the pair (" + p.generators[i] + ", " + p.generators[j] + ")", "",
                  prod.to_string(), 2},
                 "wedge commutation scalars are inconsistent");
      }
    }
  }
  for (std::size_t i = 0; i < n && rep.passed(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.scalar(i, j).is_zero()) {
        rep.fail({"zero scalar in nu[" + p.generators[i] + "]", "", p.generators[j], 1}, "automorphism not invertible");
        break;
      }
    }
  }
  rep.details["scalars"] = scalars;
  return rep;
}

/// d(d(a)) = 0 for every normal word a up to degree N.
template <ExactField K>
CheckReport check_d_squared(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "d-squared";
  rep.summary = "d o d = 0 on normal words";
  if (!calc.table().is_diagonal()) {
    rep.not_applicable("higher forms need a diagonal automorphism table");
    return rep;
  }
  const auto& b = calc.basis();
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= b.max_degree() && rep.passed(); ++n) {
    for (const auto& w : b.basis(n)) {
      FormElement<K> dd = calc.d(calc.differential(Element<K>::word(w)));
      ++checked;
      if (!dd.is_zero()) {
        rep.fail({"d(d(a)) != 0", "", w.to_string(p.generators) + " -> " + dd.to_string(p.generators),
                  static_cast<int>(n)});
        break;
      }
    }
  }
  rep.details["words_checked"] = checked;
  rep.details["max_degree"] = b.max_degree();
  return rep;
}

/// pi_omega(omega a) = a, a omega = omega nu_omega(a) and nu_omega^{-1}
/// inverts nu_omega, for normal words a up to degree N.
template <ExactField K>
CheckReport check_volume_laws(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "volume-form";
  rep.summary = "omega = top wedge is a volume form: pi_omega(omega a) = a and a omega = omega nu_omega(a)";
  const auto& t = calc.table();
  if (!t.is_diagonal()) {
    rep.not_applicable("higher forms need a diagonal automorphism table");
    return rep;
  }
  const auto& b = calc.basis();
  const WedgeWord top = calc.volume_word();
  const FormElement<K> omega = calc.volume();
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= b.max_degree() && rep.passed(); ++n) {
    for (const auto& w : b.basis(n)) {
      const Element<K> a = Element<K>::word(w);
      ++checked;
      const std::string at = w.to_string(p.generators);
      if (!(calc.volume_pi(FormElement<K>(top, a)) == a)) {
        rep.fail({"pi_omega(omega a) != a", "", at, static_cast<int>(n)});
        break;
      }
      const Element<K> nu = calc.nu_omega(a);
      if (!(calc.left_multiply(a, omega) == FormElement<K>(top, nu))) {
        rep.fail({"a omega != omega nu_omega(a)", "", at, static_cast<int>(n)});
        break;
      }
      if (!(calc.nu_omega_inverse(nu) == a)) {
        rep.fail({"nu_omega^{-1}(nu_omega(a)) != a", "", at, static_cast<int>(n)});
        break;
      }
    }
  }
  rep.details["volume_form"] = wedge_to_string(top, p.generators);
  std::vector<std::string> nu;
  for (std::size_t i = 0; i < p.num_generators(); ++i) {
    nu.push_back(p.generators[i] + " -> " +
                 calc.nu_omega(Element<K>::generator(static_cast<std::uint8_t>(i))).to_string(p.generators));
  }
  rep.details["nu_omega"] = nu;
  rep.details["words_checked"] = checked;
  return rep;
}

/// All strictly increasing wedge words of length k over n letters.
inline std::vector<WedgeWord> wedge_basis(std::size_t n, std::size_t k) {
  std::vector<WedgeWord> out;
  WedgeWord cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(static_cast<std::uint8_t>(i));
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Families {omega_i^k}, {bar omega_i^k} indexed by k = 0..n.
template <ExactField K>
struct DualLists {
  std::vector<std::vector<FormElement<K>>> omega;
  std::vector<std::vector<FormElement<K>>> omega_bar;
};

/// sum_i omega_i^k pi_omega(bar omega_i^{n-k} ^ w).
template <ExactField K>
FormElement<K> integrability_left(const Calculus<K>& calc, const std::vector<FormElement<K>>& omega_k,
                                  const std::vector<FormElement<K>>& bar_nk, const FormElement<K>& w) {
  FormElement<K> out(w.degree());
  for (std::size_t i = 0; i < omega_k.size(); ++i) {
    Element<K> c = calc.volume_pi(calc.wedge(bar_nk[i], w));
    out += calc.wedge(omega_k[i], FormElement<K>(WedgeWord{}, c));
  }
  return out;
}

/// sum_i nu_omega^{-1}(pi_omega(w ^ omega_i^{n-k})) bar omega_i^k.
template <ExactField K>
FormElement<K> integrability_right(const Calculus<K>& calc, const std::vector<FormElement<K>>& omega_nk,
                                   const std::vector<FormElement<K>>& bar_k, const FormElement<K>& w) {
  FormElement<K> out(w.degree());
  for (std::size_t i = 0; i < omega_nk.size(); ++i) {
    Element<K> c = calc.nu_omega_inverse(calc.volume_pi(calc.wedge(w, omega_nk[i])));
    out += calc.left_multiply(c, bar_k[i]);
  }
  return out;
}

/// Takes omega_i^k as the wedge basis of Omega^k and solves the scalar
/// system sum_i omega_i^k pi_omega(bar omega_i^{n-k} ^ dg_S) = dg_S for the
/// bar lists. Returns std::nullopt when the system is inconsistent.
template <ExactField K>
std::optional<DualLists<K>> solve_dual_lists(const Calculus<K>& calc) {
  const std::size_t n = calc.dimension();
  DualLists<K> lists;
  lists.omega.resize(n + 1);
  lists.omega_bar.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    for (const auto& s : wedge_basis(n, k)) lists.omega[k].emplace_back(s, Element<K>::unit());
  }
  for (std::size_t k = 1; k < n; ++k) {
    const auto sk = wedge_basis(n, k);
    const auto snk = wedge_basis(n, n - k);
    // Unknown mu(i, T): coefficient of dg_T in bar omega_i^{n-k}.
    const std::size_t cols = sk.size() * snk.size();
    Matrix<K> m;
    std::vector<K> v;
    for (std::size_t j = 0; j < sk.size(); ++j) {
      for (std::size_t i = 0; i < sk.size(); ++i) {
        std::vector<K> row(cols);
        for (std::size_t t = 0; t < snk.size(); ++t) {
          Element<K> c = calc.volume_pi(calc.wedge(FormElement<K>(snk[t], Element<K>::unit()),
                                                   FormElement<K>(sk[j], Element<K>::unit())));
          row[i * snk.size() + t] = c.coefficient(Word());
        }
        m.push_back(std::move(row));
        v.push_back(K::from_int(i == j ? 1 : 0));
      }
    }
    LinearSolution<K> ls = solve_linear(m, v);
    if (!ls.consistent()) return std::nullopt;
    std::vector<K> x = ls.solution_with(std::vector<K>(ls.free_columns.size()));
    std::vector<FormElement<K>> bars;
    for (std::size_t i = 0; i < sk.size(); ++i) {
      FormElement<K> f(n - k);
      for (std::size_t t = 0; t < snk.size(); ++t) f.add(snk[t], Element<K>(x[i * snk.size() + t]));
      bars.push_back(f);
    }
    lists.omega_bar[n - k] = std::move(bars);
  }
  return lists;
}

struct IdentityOutcome {
  bool left = true;
  bool right = true;
  std::string first_failure;
};

/// Evaluates both dual-basis identities for degree k on every dg_S a with a a
/// normal word up to the basis truncation.
template <ExactField K>
IdentityOutcome evaluate_identities(const Presentation& p, const Calculus<K>& calc, std::size_t k,
                                    const std::vector<FormElement<K>>& omega_k,
                                    const std::vector<FormElement<K>>& bar_nk,
                                    const std::vector<FormElement<K>>& omega_nk,
                                    const std::vector<FormElement<K>>& bar_k) {
  IdentityOutcome out;
  const auto& b = calc.basis();
  for (const auto& s : wedge_basis(calc.dimension(), k)) {
    for (std::size_t deg = 0; deg <= b.max_degree(); ++deg) {
      for (const auto& w : b.basis(deg)) {
        FormElement<K> form(s, Element<K>::word(w));
        if (out.left && !(integrability_left(calc, omega_k, bar_nk, form) == form)) {
          out.left = false;
          if (out.first_failure.empty()) out.first_failure = "first identity fails at " + form.to_string(p.generators);
        }
        if (out.right && !(integrability_right(calc, omega_nk, bar_k, form) == form)) {
          out.right = false;
          if (out.first_failure.empty()) out.first_failure = "second identity fails at " + form.to_string(p.generators);
        }
        if (!out.left && !out.right) return out;
      }
    }
  }
  return out;
}

/// Solves for dual lists and checks both identities of the dual-basis
/// criterion for k = 1..n-1 on all coefficients up to the truncation degree.
template <ExactField K>
CheckReport check_integrability(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "integrability";
  rep.summary = "omega is an integrating form (both dual-basis identities, k = 1..n-1)";
  if (!calc.table().is_diagonal()) {
    rep.not_applicable("higher forms need a diagonal automorphism table");
    return rep;
  }
  const std::size_t n = calc.dimension();
  auto lists = solve_dual_lists(calc);
  if (!lists) {
    rep.fail({"no dual lists solve the scalar system", "", "", -1}, "no dual lists exist");
    return rep;
  }
  Json solved = Json::object();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::string> bars;
    for (const auto& f : lists->omega_bar[k]) bars.push_back(f.to_string(p.generators));
    solved["bar_omega^" + std::to_string(k)] = bars;
  }
  rep.details["omega"] = "wedge basis of each Omega^k";
  rep.details["solved"] = solved;
  Json per_k = Json::array();
  for (std::size_t k = 1; k < n; ++k) {
    IdentityOutcome o = evaluate_identities(p, calc, k, lists->omega[k], lists->omega_bar[n - k], lists->omega[n - k],
                                            lists->omega_bar[k]);
    per_k.push_back({{"k", k}, {"first_identity", o.left}, {"second_identity", o.right}});
    if ((!o.left || !o.right) && rep.passed()) {
      rep.fail({o.first_failure, "", "", static_cast<int>(k)}, "dual-basis identity fails");
    }
  }
  rep.details["identities"] = per_k;
  rep.details["coefficient_degree"] = calc.basis().max_degree();
  return rep;
}

/// Kernel of d restricted to the degree-n quotient, as combinations of
/// normal words.
template <ExactField K>
std::vector<Element<K>> kernel_of_d(const Calculus<K>& calc, std::size_t n) {
  const auto& b = calc.basis();
  const auto cols = b.basis(n);
  const auto targets = n == 0 ? std::vector<Word>{} : b.basis(n - 1);
  const std::size_t g = calc.dimension();
  Matrix<K> m(g * targets.size(), std::vector<K>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto parts = calc.partials(Element<K>::word(cols[c]));
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t t = 0; t < targets.size(); ++t) m[i * targets.size() + t][c] = parts[i].coefficient(targets[t]);
    }
  }
  std::vector<Element<K>> out;
  if (m.empty()) {
    for (const auto& w : cols) out.push_back(Element<K>::word(w));
    return out;
  }
  LinearSolution<K> ls = solve_linear(m, std::vector<K>(m.size()));
  for (const auto& vec : ls.nullspace) {
    Element<K> e;
    for (std::size_t c = 0; c < cols.size(); ++c) e.add_term(cols[c], vec[c]);
    out.push_back(e);
  }
  return out;
}

/// Connectedness: ker d in positive degrees is zero up to the truncation.
template <ExactField K>
CheckReport connectedness_kernel(const Presentation& p, const Calculus<K>& calc) {
  CheckReport rep;
  rep.id = "connectedness";
  rep.summary = "ker(d) on Omega^0 consists of scalars only";
  Json degrees = Json::array();
  for (std::size_t n = 1; n <= calc.basis().max_degree(); ++n) {
    auto ker = kernel_of_d(calc, n);
    std::vector<std::string> elems;
    for (const auto& e : ker) elems.push_back(e.to_string(p.generators));
    degrees.push_back({{"degree", n}, {"dimension", ker.size()}, {"basis", elems}});
    if (!ker.empty() && rep.passed()) {
      rep.fail({"nonconstant element with d(a) = 0", "", elems.front(), static_cast<int>(n)},
               "d has a nonscalar kernel");
    }
  }
  rep.details["kernel"] = degrees;
  return rep;
}

}  // namespace dsmooth

#endif  // DSMOOTH_CHECKS_HPP
