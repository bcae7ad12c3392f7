#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace dsmooth;
using dsmooth::support::Rng;

namespace {

ParamScalar P(const char* n) { return ParamScalar::parameter(n); }

Presentation s3(long p, long q, long r) { return sklyanin3(ParamScalar(p), ParamScalar(q), ParamScalar(r)); }

/// Image of g_b under nu_a forced by the d_a-coefficient of a relation with
/// terms c_ab g_a g_b + c_ba g_b g_a: c_ab g_b + c_ba nu_a(g_b) = 0.
template <ExactField K>
std::optional<K> forced_scalar(const Element<K>& rel, std::uint8_t a, std::uint8_t b) {
  const K cab = rel.coefficient(Word{a, b});
  const K cba = rel.coefficient(Word{b, a});
  if (a == b) {
    if (cab.is_zero()) return std::nullopt;
    return -K::from_int(1);
  }
  if (cab.is_zero() || cba.is_zero()) return std::nullopt;
  return -(cab / cba);
}

const CheckReport& find(const std::vector<CheckReport>& reps, const std::string& id) {
  for (const auto& r : reps) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("no report " + id);
}

}  // namespace

TEST(Automorphisms, SymbolicRecoveryMatchesPublishedTable) {
  Presentation s = sklyanin3_symbolic();
  auto sol = solve_automorphisms<ParamScalar>(s, Ansatz::diagonal);
  ASSERT_TRUE(sol.feasible);
  ASSERT_TRUE(sol.unique);
  EXPECT_EQ(sol.table, sklyanin3_table(P("p"), P("q")));
  // Entrywise, from the relation coefficients alone.
  for (const auto& rel : s.relations) {
    for (std::uint8_t a = 0; a < 3; ++a) {
      for (std::uint8_t b = 0; b < 3; ++b) {
        auto c = forced_scalar(rel.element, a, b);
        if (c) {
          EXPECT_EQ(sol.table.entry(a, b, b), *c) << int(a) << int(b);
        }
      }
    }
  }
  EXPECT_EQ(sol.table.entry(1, 2, 2), -(P("p") / P("q")));
  EXPECT_EQ(sol.table.entry(2, 1, 1), -(P("q") / P("p")));
}

TEST(Automorphisms, FourDimensionalIsInfeasible) {
  Presentation s = sklyanin4_symbolic();
  auto sol = solve_automorphisms<ParamScalar>(s, Ansatz::linear);
  ASSERT_FALSE(sol.feasible);
  ASSERT_TRUE(sol.witness && sol.witness->conflict);
  const auto& [first, second] = *sol.witness->conflict;
  EXPECT_EQ(first.map, 0u);
  EXPECT_EQ(first.argument, 1u);
  EXPECT_EQ(first.image, Element<ParamScalar>::generator(1));
  EXPECT_EQ(second.image, -Element<ParamScalar>::generator(1));
  // Oracle: the two relations on x0, x1 force opposite images.
  EXPECT_EQ(*forced_scalar(s.relations[0].element, 0, 1), ParamScalar(1L));
  EXPECT_EQ(*forced_scalar(s.relations[1].element, 0, 1), ParamScalar(-1L));
  Witness w = describe_witness(s, *sol.witness);
  EXPECT_NE(w.description.find("nu[x0](x1) = x1 and nu[x0](x1) = -x1"), std::string::npos) << w.description;
  EXPECT_EQ(w.element, "2*x1 = 0 is required");
}

TEST(Automorphisms, FourDimensionalStaysInfeasibleUnderPermutation) {
  Presentation permuted = sklyanin4(P("beta"), P("gamma"), P("alpha"));
  EXPECT_FALSE(solve_automorphisms<ParamScalar>(permuted, Ansatz::linear).feasible);
  for (auto [a, b] : {std::pair{2L, 3L}, std::pair{-2L, 5L}, std::pair{4L, 7L}}) {
    BaseScalar c = -(BaseScalar(a) + BaseScalar(b)) / (BaseScalar(1) + BaseScalar(a) * BaseScalar(b));
    for (const auto& pres : {sklyanin4(ParamScalar(a), ParamScalar(b), ParamScalar(c)),
                             sklyanin4(ParamScalar(b), ParamScalar(c), ParamScalar(a))}) {
      ASSERT_TRUE(pres.violated_constraints().empty());
      EXPECT_FALSE(solve_automorphisms<BaseScalar>(pres, Ansatz::linear).feasible);
    }
  }
}

TEST(Automorphisms, CommutativeSolutionContainsIdentity) {
  Presentation c = commutative(3);
  auto sol = solve_automorphisms<BaseScalar>(c, Ansatz::diagonal);
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.table, AutomorphismTable<BaseScalar>::identity(3));
  auto basis = GradedBasis<BaseScalar>::from(c, 2);
  Calculus<BaseScalar> calc(basis, AutomorphismTable<BaseScalar>::identity(3));
  EXPECT_TRUE(check_leibniz_compat(c, calc).passed());
}

TEST(Automorphisms, SolvedTablesSatisfyLeibnizOnRandomPoints) {
  Rng rng(606);
  for (int i = 0; i < 25; ++i) {
    BaseScalar p = support::random_rational(rng), q = support::random_rational(rng), r = support::random_rational(rng);
    if (p.is_zero() && q.is_zero() && r.is_zero()) continue;
    Presentation s = sklyanin3(p, q, r);
    auto sol = solve_automorphisms<BaseScalar>(s, Ansatz::diagonal);
    if (!sol.feasible) continue;
    auto basis = GradedBasis<BaseScalar>::from(s, 2);
    Calculus<BaseScalar> calc(basis, sol.table);
    EXPECT_TRUE(check_leibniz_compat(s, calc).passed()) << p.to_string() << "," << q.to_string() << "," << r.to_string();
  }
}

TEST(RelationCompat, PublishedTableFailsSymbolically) {
  Presentation s = sklyanin3_symbolic();
  auto basis = GradedBasis<ParamScalar>::from(s, 2);
  auto t = sklyanin3_table(P("p"), P("q"));
  // Oracle: nu_x(p zx + q xz + r y^2) = q zx + (q^2/p) xz + (p^2 r/q^2) y^2, a
  // multiple (q/p) of the relation only when p^3 = q^3.
  using E = Element<ParamScalar>;
  const E x = E::generator(0), y = E::generator(1), z = E::generator(2);
  const E image = P("q") * (z * x) + (P("q").pow(2) / P("p")) * (x * z) + (P("p").pow(2) * P("r") / P("q").pow(2)) * (y * y);
  EXPECT_EQ(t.apply(0, s.relations[1].element), image);
  const E rest = image - (P("q") / P("p")) * s.relations[1].element;
  EXPECT_EQ(rest, (P("r") * (P("p").pow(3) - P("q").pow(3)) / (P("p") * P("q").pow(2))) * (y * y));

  CheckReport rep = check_relation_compat(s, basis, t);
  ASSERT_TRUE(rep.status == Status::fail);
  EXPECT_EQ(rep.witness->relation, "p*z*x + q*x*z + r*y^2");
  EXPECT_EQ(rep.witness->element, basis.normal_form(rest).to_string(s.generators));
}

TEST(RelationCompat, PassesWherePEqualsQ) {
  for (auto [p, r] : {std::pair{1L, 0L}, std::pair{1L, 2L}, std::pair{3L, -1L}}) {
    Presentation s = s3(p, p, r);
    auto basis = GradedBasis<BaseScalar>::from(s, 2);
    EXPECT_TRUE(check_relation_compat(s, basis, sklyanin3_table(BaseScalar(p), BaseScalar(p))).passed());
  }
  Presentation c = commutative(3);
  auto basis = GradedBasis<BaseScalar>::from(c, 2);
  EXPECT_TRUE(check_relation_compat(c, basis, AutomorphismTable<BaseScalar>::identity(3)).passed());
}

TEST(RelationCompat, PerturbedEntryNamesTheRelation) {
  Presentation s = s3(1, 1, 1);
  auto basis = GradedBasis<BaseScalar>::from(s, 2);
  auto t = sklyanin3_table(BaseScalar(1), BaseScalar(1));
  t.set_entry(0, 1, 1, BaseScalar(2));
  CheckReport rep = check_relation_compat(s, basis, t);
  ASSERT_TRUE(rep.status == Status::fail);
  EXPECT_EQ(rep.witness->relation, "y*z + z*y + x^2");
  EXPECT_EQ(rep.witness->description, "nu[x] of the relation does not reduce to zero");
}

TEST(Leibniz, PublishedTablePasses) {
  Presentation s = sklyanin3_symbolic();
  auto basis = GradedBasis<ParamScalar>::from(s, 2);
  Calculus<ParamScalar> calc(basis, sklyanin3_table(P("p"), P("q")));
  CheckReport rep = check_leibniz_compat(s, calc);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.details["relations"].size(), 3u);
}

TEST(Leibniz, WrongDiagonalEntryFails) {
  Presentation s = sklyanin3_symbolic();
  auto basis = GradedBasis<ParamScalar>::from(s, 2);
  auto t = sklyanin3_table(P("p"), P("q"));
  t.set_entry(0, 0, 0, ParamScalar(1L));
  Calculus<ParamScalar> calc(basis, t);
  CheckReport rep = check_leibniz_compat(s, calc);
  ASSERT_TRUE(rep.status == Status::fail);
  // d_x coefficient of d(r x^2 + ...) is r (x + nu_x(x)) = 2 r x.
  EXPECT_EQ(rep.witness->element, "2*r*x");
  EXPECT_EQ(rep.witness->relation, "p*y*z + q*z*y + r*x^2");
}

TEST(Connectedness, CommutativePasses) {
  Presentation c = commutative(3);
  auto basis = GradedBasis<BaseScalar>::from(c, 4);
  Calculus<BaseScalar> calc(basis, AutomorphismTable<BaseScalar>::identity(3));
  EXPECT_TRUE(connectedness_kernel(c, calc).passed());
}

TEST(Connectedness, SymbolicKernelContainsXSquared) {
  Presentation s = sklyanin3_symbolic();
  auto basis = GradedBasis<ParamScalar>::from(s, 2);
  Calculus<ParamScalar> calc(basis, sklyanin3_table(P("p"), P("q")));
  CheckReport rep = connectedness_kernel(s, calc);
  ASSERT_TRUE(rep.status == Status::fail);
  EXPECT_EQ(rep.witness->degree, 2);
  const Json& deg2 = rep.details["kernel"][1];
  EXPECT_EQ(deg2["dimension"], 3);
  bool has_square = false;
  for (const auto& e : deg2["basis"]) has_square = has_square || e == "x^2";
  EXPECT_TRUE(has_square);

  // Re-verify the witness from its text alone.
  Element<ParamScalar> a = parse_expression(rep.witness->element, s);
  EXPECT_FALSE(basis.normal_form(a).is_zero());
  EXPECT_TRUE(calc.differential(a).is_zero());
}

TEST(Connectedness, KernelDimensionsMatchDenseOracle) {
  struct Case {
    Presentation pres;
    AutomorphismTable<BaseScalar> table;
    std::size_t degree;
  };
  const std::vector<Case> cases = {
      {s3(1, 1, 0), sklyanin3_table(BaseScalar(1), BaseScalar(1)), 4},
      {s3(1, 1, 2), sklyanin3_table(BaseScalar(1), BaseScalar(1)), 4},
      {s3(2, 2, -1), sklyanin3_table(BaseScalar(2), BaseScalar(2)), 3},
      {s3(1, 2, 3), sklyanin3_table(BaseScalar(1), BaseScalar(2)), 2},
      {commutative(3), AutomorphismTable<BaseScalar>::identity(3), 4},
  };
  for (const auto& c : cases) {
    auto basis = GradedBasis<BaseScalar>::from(c.pres, c.degree);
    Calculus<BaseScalar> calc(basis, c.table);
    for (std::size_t n = 1; n <= c.degree; ++n) {
      support::DenseKernel oracle = support::dense_kernel(c.pres, c.table, n);
      ASSERT_TRUE(oracle.well_defined) << c.pres.name << " degree " << n;
      EXPECT_EQ(kernel_of_d(calc, n).size(), oracle.dimension) << c.pres.name << " degree " << n;
    }
  }
}

TEST(Connectedness, DenseOracleSeesIllDefinedDegrees) {
  // With p^3 != q^3 the published nu_g do not preserve the ideal, so d is not
  // well defined on the quotient from degree 3 on.
  EXPECT_FALSE(support::dense_kernel(s3(1, 2, 3), sklyanin3_table(BaseScalar(1), BaseScalar(2)), 3).well_defined);
}

TEST(Integrability, SolvedListsPass) {
  for (const auto& s : {s3(1, 1, 0), s3(1, 2, 3)}) {
    const BaseScalar p = s.relations[0].element.coefficient(Word{1, 2}).constant_value();
    const BaseScalar q = s.relations[0].element.coefficient(Word{2, 1}).constant_value();
    auto basis = GradedBasis<BaseScalar>::from(s, 3);
    Calculus<BaseScalar> calc(basis, sklyanin3_table(p, q));
    EXPECT_TRUE(check_integrability(s, calc).passed()) << s.name;
    auto lists = solve_dual_lists(calc);
    ASSERT_TRUE(lists);
    using F = FormElement<BaseScalar>;
    using E = Element<BaseScalar>;
    const std::vector<F> bar1 = {F({2}, E::unit()), F({1}, E(q / p)), F({0}, E::unit())};
    EXPECT_EQ(lists->omega_bar[1], bar1);
  }
}

TEST(Integrability, PrintedListVariants) {
  Presentation s = sklyanin3_symbolic();
  auto basis = GradedBasis<ParamScalar>::from(s, 2);
  Calculus<ParamScalar> calc(basis, sklyanin3_table(P("p"), P("q")));
  CheckReport rep = compare_printed_lists3(s, calc, P("p"), P("q"));
  ASSERT_TRUE(rep.status == Status::fail);
  const Json& v = rep.details["variants"];
  ASSERT_EQ(v.size(), 3u);
  EXPECT_FALSE(v[0]["holds"].get<bool>());
  EXPECT_TRUE(v[1]["holds"].get<bool>());
  EXPECT_FALSE(v[2]["holds"].get<bool>());
}

TEST(Integrability, RepeatedLetterHasZeroProjection) {
  auto basis = GradedBasis<BaseScalar>::from(s3(1, 1, 0), 2);
  Calculus<BaseScalar> calc(basis, sklyanin3_table(BaseScalar(1), BaseScalar(1)));
  FormElement<BaseScalar> dx({0}, Element<BaseScalar>::unit());
  FormElement<BaseScalar> dxdy({0, 1}, Element<BaseScalar>::unit());
  EXPECT_TRUE(calc.wedge(dx, dx).is_zero());
  EXPECT_TRUE(calc.volume_pi(calc.wedge(dxdy, dx)).is_zero());
}

TEST(Certify, FourDimensionalIsObstructed) {
  SmoothnessCertificate c = certify(sklyanin4(ParamScalar(2L), ParamScalar(3L), ParamScalar(BaseScalar::rational(-5, 7))));
  EXPECT_EQ(c.verdict, Verdict::obstruction);
  EXPECT_TRUE(find(c.reports, "automorphisms").status == Status::fail);
  EXPECT_TRUE(find(c.reports, "relation-compat").status == Status::not_applicable);
  EXPECT_EQ(find(c.reports, "relation-compat").summary, "not evaluated");
}

TEST(Certify, CommutativeIsCandidate) {
  SmoothnessCertificate c = certify(commutative(3));
  EXPECT_EQ(c.verdict, Verdict::candidate);
  for (const auto& r : c.reports) EXPECT_TRUE(r.passed()) << r.id;
}

TEST(Certify, SkewPointOutcomeAsComputed) {
  // Without squares in the relations nu_x(x) is free and is set to x, which
  // makes d(x^2) nonzero; every check passes.
  SmoothnessCertificate c = certify(s3(1, 1, 0));
  EXPECT_EQ(c.verdict, Verdict::candidate);
  EXPECT_TRUE(find(c.reports, "connectedness").passed());
}

TEST(Certify, ExponentialGrowthWithFailureIsObstruction) {
  SmoothnessCertificate c = certify(monomial_squares());
  const CheckReport& dm = find(c.reports, "dimension-match");
  EXPECT_TRUE(dm.status == Status::fail);
  EXPECT_EQ(c.verdict, Verdict::obstruction);
}

TEST(Certify, AggregationRules) {
  auto rep = [](const std::string& id, Status s) {
    CheckReport r;
    r.id = id;
    r.status = s;
    return r;
  };
  EXPECT_EQ(aggregate({rep("a", Status::pass)}), Verdict::candidate);
  EXPECT_EQ(aggregate({rep("a", Status::pass), rep("b", Status::not_applicable)}), Verdict::inconclusive);
  EXPECT_EQ(aggregate({rep("a", Status::fail), rep("b", Status::not_applicable)}), Verdict::checks_failed);
  EXPECT_EQ(aggregate({rep("automorphisms", Status::fail)}), Verdict::obstruction);
}

TEST(Batteries, Check3dSymbolicStatuses) {
  BatteryResult b = check3d(std::nullopt);
  EXPECT_TRUE(find(b.reports, "automorphism-recovery").passed());
  EXPECT_TRUE(find(b.reports, "leibniz-compat").passed());
  EXPECT_TRUE(find(b.reports, "wedge-scalars").passed());
  EXPECT_TRUE(find(b.reports, "relation-compat").status == Status::fail);
  EXPECT_TRUE(find(b.reports, "connectedness").status == Status::fail);
  EXPECT_TRUE(find(b.reports, "closed-form-partials").status == Status::fail);
  EXPECT_TRUE(find(b.reports, "integrability").passed());
  EXPECT_TRUE(find(b.reports, "classification").status == Status::not_applicable);
  EXPECT_EQ(b.verdict, Verdict::checks_failed);
}

TEST(Batteries, Check3dWithVanishingProduct) {
  BatteryResult b = check3d(std::array<BaseScalar, 3>{BaseScalar(0), BaseScalar(1), BaseScalar(1)});
  EXPECT_TRUE(find(b.reports, "automorphism-recovery").status == Status::not_applicable);
  EXPECT_TRUE(find(b.reports, "classification").passed());
}

TEST(Batteries, Check4dSymbolic) {
  BatteryResult b = check4d(std::nullopt);
  EXPECT_EQ(b.verdict, Verdict::obstruction);
  const CheckReport& a = find(b.reports, "automorphisms");
  EXPECT_EQ(a.details["conflict"]["map"], "x0");
  EXPECT_EQ(a.details["conflict"]["argument"], "x1");
  EXPECT_EQ(a.details["conflict"]["first_image"], "x1");
  EXPECT_EQ(a.details["conflict"]["second_image"], "-x1");
  EXPECT_TRUE(find(b.reports, "hilbert").status == Status::not_applicable);
}

TEST(Batteries, Check4dViolatedConstraint) {
  BatteryResult b = check4d(std::array<BaseScalar, 3>{BaseScalar(1), BaseScalar(1), BaseScalar(1)});
  EXPECT_TRUE(b.constraint_violated);
  EXPECT_TRUE(find(b.reports, "sklyanin-condition").status == Status::fail);
}
