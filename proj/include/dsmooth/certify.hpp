#ifndef DSMOOTH_CERTIFY_HPP
#define DSMOOTH_CERTIFY_HPP

#include "dsmooth/checks.hpp"
#include "dsmooth/hilbert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsmooth {

enum class Verdict { candidate, obstruction, checks_failed, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::candidate: return "DIFFERENTIALLY-SMOOTH-CANDIDATE";
    case Verdict::obstruction: return "NOT-SMOOTH-BY-OBSTRUCTION";
    case Verdict::checks_failed: return "CHECKS-FAILED";
    default: return "INCONCLUSIVE";
  }
}

struct CertifyOptions {
  /// Coefficient degree bound for the calculus checks.
  std::size_t calc_degree = 4;
  /// Truncation for the growth estimate on parameter-free input.
  std::size_t growth_degree = 6;
  /// Truncation for the growth estimate on symbolic input.
  std::size_t symbolic_growth_degree = 5;
  /// Table from the input file; solved for when absent.
  std::optional<AutomorphismTable<ParamScalar>> table;
};

struct SmoothnessCertificate {
  std::string presentation;
  std::vector<CheckReport> reports;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

template <ExactField K>
AutomorphismTable<K> convert_table(const AutomorphismTable<ParamScalar>& t) {
  AutomorphismTable<K> out(t.generators());
  for (std::size_t i = 0; i < t.generators(); ++i) {
    for (std::size_t a = 0; a < t.generators(); ++a) {
      for (std::size_t k = 0; k < t.generators(); ++k) out.set_entry(i, a, k, field_cast<K>(t.entry(i, a, k)));
    }
  }
  return out;
}

/// Human-readable form of a feasibility witness.
template <ExactField K>
Witness describe_witness(const Presentation& p, const FeasibilityWitness<K>& w) {
  Witness out;
  if (w.conflict) {
    const auto& [a, b] = *w.conflict;
    const std::string lhs = "nu[" + p.generators[a.map] + "](" + p.generators[a.argument] + ")";
    out.description = lhs + " = " + a.image.to_string(p.generators) + " and " + lhs + " = " +
                      b.image.to_string(p.generators) + ": two distinct images";
    out.relation = p.relations[a.relation].text + " ; " + p.relations[b.relation].text;
    out.element = (a.image - b.image).to_string(p.generators) + " = 0 is required";
    out.degree = 1;
    return out;
  }
  if (w.combination) {
    std::string combo;
    for (std::size_t i = 0; i < w.combination->combination.size(); ++i) {
      const K& c = w.combination->combination[i];
      if (c.is_zero()) continue;
      if (!combo.empty()) combo += " + ";
      combo += factor_string(c) + " * [" + w.constraint_labels[i] + "]";
    }
    out.description = "a combination of the Leibniz constraints reduces to 0 = " + w.combination->constant.to_string();
    out.element = combo;
    out.degree = 1;
  }
  return out;
}

/// Feasibility report: diagonal ansatz first, the general linear ansatz as
/// fallback. The returned table is empty when both are infeasible.
template <ExactField K>
std::pair<CheckReport, std::optional<AutomorphismTable<K>>> automorphism_report(const Presentation& p) {
  CheckReport rep;
  rep.id = "automorphisms";
  rep.summary = "automorphisms nu_g compatible with d";
  AutomorphismSolution<K> sol = solve_automorphisms<K>(p, Ansatz::diagonal);
  if (!sol.feasible) sol = solve_automorphisms<K>(p, Ansatz::linear);
  rep.details["ansatz"] = to_string(sol.ansatz);
  rep.details["unknowns"] = sol.unknowns;
  rep.details["constraints"] = sol.constraints;
  rep.details["rank"] = sol.rank;
  rep.assumptions = nonzero_assumptions(sol.assumptions);
  if (!sol.feasible) {
    rep.fail(describe_witness(p, *sol.witness), "no linear automorphisms make d well defined");
    return {rep, std::nullopt};
  }
  rep.details["unique"] = sol.unique;
  rep.details["table"] = sol.table.describe(p.generators);
  if (!sol.unique) rep.notes.push_back("solution not unique; free unknowns set to identity values");
  return {rep, sol.table};
}

template <ExactField K>
CheckReport dimension_match(const Presentation& p, const CertifyOptions& opt) {
  CheckReport rep;
  rep.id = "dimension-match";
  rep.summary = "calculus dimension equals the GK-dimension estimate";
  const std::size_t n = p.num_generators();
  for (const auto& c : p.constraints) {
    if (!c.residual.is_constant()) {
      rep.not_applicable("parameters are subject to the unresolved constraint '" + c.text +
                         "'; growth is estimated only at specializations");
      return rep;
    }
  }
  const std::size_t degree = p.is_symbolic() ? opt.symbolic_growth_degree : opt.growth_degree;
  auto basis = GradedBasis<K>::from(p, degree);
  HilbertData h = hilbert(basis);
  GrowthReport g = growth_estimate(h);
  rep.details["calculus_dimension"] = n;
  rep.details["dims"] = h.dims;
  rep.details["growth"] = to_string(g.classification);
  if (g.classification == GrowthClass::polynomial) rep.details["gk_estimate"] = g.gk_estimate;
  if (g.classification == GrowthClass::exponential) rep.details["min_ratio"] = g.min_ratio;
  rep.assumptions = nonzero_assumptions(basis.pivot_assumptions());
  if (g.classification == GrowthClass::exponential) {
    rep.fail({"exponential growth: infinite GK-dimension", "", "", static_cast<int>(degree)},
             "growth is exponential, no finite calculus dimension can match");
  } else if (g.classification == GrowthClass::inconclusive) {
    rep.not_applicable("growth inconclusive up to degree " + std::to_string(degree));
  } else if (static_cast<std::size_t>(g.gk_estimate) != n) {
    rep.fail({"GK estimate " + std::to_string(g.gk_estimate) + " differs from calculus dimension " + std::to_string(n),
              "", "", static_cast<int>(degree)});
  }
  return rep;
}

inline Verdict aggregate(const std::vector<CheckReport>& reports) {
  bool any_fail = false, any_na = false;
  for (const auto& r : reports) {
    if ((r.id == "automorphisms" || r.id == "dimension-match") && r.status == Status::fail) {
      // Either no calculus of this shape exists or growth rules out a match.
      if (r.id == "automorphisms" || r.details.value("growth", "") == "exponential") return Verdict::obstruction;
    }
    any_fail = any_fail || r.status == Status::fail;
    any_na = any_na || r.status == Status::not_applicable;
  }
  if (any_fail) return Verdict::checks_failed;
  return any_na ? Verdict::inconclusive : Verdict::candidate;
}

template <ExactField K>
SmoothnessCertificate certify_in(const Presentation& p, const CertifyOptions& opt) {
  SmoothnessCertificate cert;
  cert.presentation = p.name;
  for (const auto* c : p.violated_constraints()) cert.notes.push_back("constraint violated: " + c->text);

  std::optional<AutomorphismTable<K>> table;
  cert.reports.push_back(timed([&] {
    auto [rep, t] = automorphism_report<K>(p);
    table = std::move(t);
    return rep;
  }));
  if (table && opt.table) {
    table = convert_table<K>(*opt.table);
    cert.reports.back().notes.push_back("checks below use the table given in the input");
  }

  const char* ids[] = {"relation-compat", "leibniz-compat", "wedge-consistency", "d-squared",
                       "volume-form",     "integrability",  "connectedness"};
  if (!table) {
    for (const char* id : ids) {
      CheckReport r;
      r.id = id;
      r.summary = "not evaluated";
      r.not_applicable("no automorphism table exists");
      cert.reports.push_back(r);
    }
  } else {
    GradedBasis<K> basis = GradedBasis<K>::from(p, opt.calc_degree);
    Calculus<K> calc(basis, *table);
    cert.reports.push_back(timed([&] { return check_relation_compat(p, basis, *table); }));
    cert.reports.push_back(timed([&] { return check_leibniz_compat(p, calc); }));
    cert.reports.push_back(timed([&] { return check_wedge_consistency(p, calc); }));
    cert.reports.push_back(timed([&] { return check_d_squared(p, calc); }));
    cert.reports.push_back(timed([&] { return check_volume_laws(p, calc); }));
    cert.reports.push_back(timed([&] { return check_integrability(p, calc); }));
    cert.reports.push_back(timed([&] { return connectedness_kernel(p, calc); }));
  }
  cert.reports.push_back(timed([&] { return dimension_match<K>(p, opt); }));
  cert.verdict = aggregate(cert.reports);
  return cert;
}

/// Runs the full battery, over the parameter field when the presentation
/// has symbolic coefficients and over the base field otherwise.
inline SmoothnessCertificate certify(const Presentation& p, const CertifyOptions& opt = {}) {
  validate(p);
  return p.is_symbolic() ? certify_in<ParamScalar>(p, opt) : certify_in<BaseScalar>(p, opt);
}

inline Json to_json(const SmoothnessCertificate& c, bool timings = false) {
  Json j;
  j["presentation"] = c.presentation;
  j["verdict"] = to_string(c.verdict);
  if (!c.notes.empty()) j["notes"] = c.notes;
  Json reps = Json::array();
  for (const auto& r : c.reports) reps.push_back(to_json(r, timings));
  j["checks"] = reps;
  return j;
}

}  // namespace dsmooth

#endif  // DSMOOTH_CERTIFY_HPP
