#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace dsmooth;
using dsmooth::support::Rng;

namespace {

using E = Element<ParamScalar>;

ParamScalar P(const char* n) { return ParamScalar::parameter(n); }
E gen(std::uint8_t g) { return E::generator(g); }

/// Applies a generator relabeling to every word of an element.
E relabel(const E& e, const std::vector<std::uint8_t>& perm) {
  E out;
  for (const auto& [w, c] : e.terms()) {
    std::vector<std::uint8_t> letters;
    for (auto l : w.letters()) letters.push_back(perm[l]);
    out.add_term(Word(letters), c);
  }
  return out;
}

}  // namespace

TEST(FreeAlgebra, MultiplyExamples) {
  const E x = gen(0), y = gen(1);
  EXPECT_EQ(E::unit() * x, x);
  EXPECT_EQ(x * y, E::word(Word{0, 1}));
  E expected = E::word(Word{0, 0}) + E::word(Word{0, 1}) + E::word(Word{1, 0}) + E::word(Word{1, 1});
  EXPECT_EQ((x + y) * (x + y), expected);
}

TEST(FreeAlgebra, ZeroCoefficientsAreNotStored) {
  E a = gen(0) - gen(0);
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(a.size(), 0u);
}

TEST(FreeAlgebra, DegreeIsAdditive) {
  Rng rng(8);
  auto scalar = [&] { return ParamScalar(support::random_rational(rng)); };
  for (int i = 0; i < 50; ++i) {
    auto a = support::random_homogeneous<ParamScalar>(rng, 3, 2, 4, scalar);
    auto b = support::random_homogeneous<ParamScalar>(rng, 3, 3, 4, scalar);
    E ab = a * b;
    if (ab.is_zero()) continue;
    EXPECT_TRUE(ab.is_homogeneous());
    EXPECT_EQ(ab.max_degree(), 5u);
  }
}

TEST(FreeAlgebra, AssociativityAndUnitOnRandomTriples) {
  Rng rng(42);
  auto scalar = [&] { return support::random_param(rng); };
  for (int i = 0; i < 60; ++i) {
    auto a = support::random_homogeneous<ParamScalar>(rng, 3, support::uniform(rng, 0, 4), 3, scalar);
    auto b = support::random_homogeneous<ParamScalar>(rng, 3, support::uniform(rng, 0, 4), 3, scalar);
    auto c = support::random_homogeneous<ParamScalar>(rng, 3, support::uniform(rng, 0, 4), 3, scalar);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(E::unit() * a, a);
    ASSERT_EQ(a * E::unit(), a);
  }
}

TEST(Sklyanin3, SymbolicRelations) {
  Presentation s = sklyanin3_symbolic();
  ASSERT_EQ(s.relations.size(), 3u);
  for (const auto& r : s.relations) EXPECT_EQ(r.element.size(), 3u);
  const E x = gen(0), y = gen(1), z = gen(2);
  EXPECT_EQ(s.relations[0].element, P("p") * (y * z) + P("q") * (z * y) + P("r") * (x * x));
  EXPECT_EQ(s.relations[1].element, P("p") * (z * x) + P("q") * (x * z) + P("r") * (y * y));
  EXPECT_EQ(s.relations[2].element, P("p") * (x * y) + P("q") * (y * x) + P("r") * (z * z));
  EXPECT_EQ(s.relations[0].text, "p*y*z + q*z*y + r*x^2");
  EXPECT_EQ(s.generators, (std::vector<std::string>{"x", "y", "z"}));
}

TEST(Sklyanin3, SkewPointRelations) {
  Presentation s = sklyanin3(ParamScalar(1L), ParamScalar(1L), ParamScalar());
  const E x = gen(0), y = gen(1), z = gen(2);
  EXPECT_EQ(s.relations[0].element, y * z + z * y);
  EXPECT_EQ(s.relations[1].element, z * x + x * z);
  EXPECT_EQ(s.relations[2].element, x * y + y * x);
  EXPECT_EQ(s.relations[0].text, "y*z + z*y");
}

TEST(Sklyanin3, AllOnesPoint) {
  Presentation s = sklyanin3(ParamScalar(1L), ParamScalar(1L), ParamScalar(1L));
  for (const auto& r : s.relations) {
    EXPECT_EQ(r.element.size(), 3u);
    for (const auto& [w, c] : r.element.terms()) EXPECT_TRUE(c.is_one());
  }
}

TEST(Sklyanin3, ZeroTripleRejected) {
  EXPECT_THROW(sklyanin3(ParamScalar(), ParamScalar(), ParamScalar()), std::invalid_argument);
}

TEST(Sklyanin3, CyclicRotationPermutesRelations) {
  Presentation s = sklyanin3_symbolic();
  // x -> y -> z -> x sends relation i to relation i + 1.
  const std::vector<std::uint8_t> rot{1, 2, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(relabel(s.relations[i].element, rot), s.relations[(i + 1) % 3].element) << i;
  }
}

TEST(Sklyanin4, SymbolicHasSixRelations) {
  Presentation s = sklyanin4_symbolic();
  ASSERT_EQ(s.relations.size(), 6u);
  EXPECT_EQ(s.generators.size(), 4u);
  const E x0 = gen(0), x1 = gen(1), x2 = gen(2), x3 = gen(3);
  EXPECT_EQ(s.relations[0].element, x0 * x1 - x1 * x0 - P("alpha") * (x2 * x3 + x3 * x2));
  EXPECT_EQ(s.relations[1].element, x0 * x1 + x1 * x0 - (x2 * x3 - x3 * x2));
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_EQ(s.constraints[0].text, "alpha + beta + gamma + alpha*beta*gamma = 0");
  EXPECT_TRUE(s.violated_constraints().empty());
}

TEST(Sklyanin4, GenericPointSatisfiesConstraint) {
  Presentation s = sklyanin4(ParamScalar(2L), ParamScalar(3L), ParamScalar(BaseScalar::rational(-5, 7)));
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_TRUE(s.constraints[0].residual.is_zero());
  EXPECT_TRUE(s.violated_constraints().empty());
  // Oracle: 2 + 3 - 5/7 - 30/7 = 0.
  EXPECT_TRUE((BaseScalar(5) - BaseScalar::rational(35, 7)).is_zero());
}

TEST(Sklyanin4, AllOnesViolatesConstraint) {
  Presentation s = sklyanin4(ParamScalar(1L), ParamScalar(1L), ParamScalar(1L));
  ASSERT_EQ(s.violated_constraints().size(), 1u);
  EXPECT_EQ(s.constraints[0].residual, ParamScalar(4L));
}

TEST(Presentations, BuiltinsValidate) {
  for (const auto& name : builtin_names()) EXPECT_NO_THROW(validate(builtin(name))) << name;
  EXPECT_THROW(builtin("nope"), std::invalid_argument);
  EXPECT_THROW(builtin("commutative3", {ParamScalar(1L)}), std::invalid_argument);
}

TEST(Presentations, ValidateRejectsBadRelations) {
  Presentation p = commutative(3);
  p.relations.push_back({E::generator(0), "x"});
  EXPECT_THROW(validate(p), std::invalid_argument);
  Presentation empty = commutative(3);
  empty.relations.clear();
  EXPECT_THROW(validate(empty), std::invalid_argument);
}

TEST(Presentations, BuiltinSpecParsesParameters) {
  Presentation s = builtin_from_spec("sklyanin3(1,2,3*w)");
  EXPECT_EQ(s.base, BaseField::cyclotomic);
  EXPECT_EQ(s.relations[0].element.coefficient(Word{0, 0}), ParamScalar(BaseScalar(3) * BaseScalar::omega()));
  Presentation t = builtin_from_spec("sklyanin4(2, 3, -5/7)");
  EXPECT_TRUE(t.violated_constraints().empty());
}
