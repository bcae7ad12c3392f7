#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace dsmooth;

namespace {

ParamScalar P(const char* n) { return ParamScalar::parameter(n); }

Presentation s3(const BaseScalar& p, const BaseScalar& q, const BaseScalar& r) { return sklyanin3(p, q, r); }

/// Dense oracle: every relation image lies in the span of the target's
/// degree-2 relations.
bool images_in_target_span(const GradedMap& m) {
  const std::size_t g = m.target.num_generators();
  std::vector<std::vector<BaseScalar>> rows;
  for (const auto& r : m.target.relations_in<BaseScalar>()) rows.push_back(support::dense_vector(r, g, 2));
  const std::size_t base = support::dense_rank(rows);
  for (const auto& rel : m.source.relations) {
    auto extended = rows;
    extended.push_back(support::dense_vector(convert_element<BaseScalar>(m.apply(rel.element)), g, 2));
    if (support::dense_rank(extended) != base) return false;
  }
  return true;
}

Matrix<ParamScalar> diagonal(std::initializer_list<ParamScalar> d) {
  Matrix<ParamScalar> m(d.size(), std::vector<ParamScalar>(d.size()));
  std::size_t i = 0;
  for (const auto& v : d) {
    m[i][i] = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Morphism, IdentityPasses) {
  Presentation s = s3(1, 2, 3);
  EXPECT_TRUE(verify_morphism(GradedMap::permutation(s, s, {0, 1, 2})).passed());
}

TEST(Morphism, SwapPassesSymbolically) {
  // y <-> z carries S(p, q, r) onto S(q, p, r).
  Presentation src = sklyanin3_symbolic();
  Presentation dst = sklyanin3(P("q"), P("p"), P("r"));
  GradedMap m = GradedMap::permutation(src, dst, {0, 2, 1});
  EXPECT_TRUE(verify_morphism(m).passed());
  // By hand: p*y*z + q*z*y + r*x^2 -> p*z*y + q*y*z + r*x^2, the first target relation.
  EXPECT_EQ(m.apply(src.relations[0].element), dst.relations[0].element);
}

TEST(Morphism, ScalingOneGeneratorFails) {
  Presentation s = s3(1, 2, 3);
  GradedMap m(s, s, diagonal({ParamScalar(1L), ParamScalar(1L), ParamScalar(2L)}));
  CheckReport rep = verify_morphism(m);
  EXPECT_EQ(rep.status, Status::fail);
  EXPECT_FALSE(images_in_target_span(m));
}

TEST(Morphism, SingularMatrixFails) {
  Presentation c = commutative(3);
  Matrix<ParamScalar> m(3, std::vector<ParamScalar>(3));
  m[0][0] = m[1][0] = m[2][2] = ParamScalar(1L);
  CheckReport rep = verify_morphism(GradedMap(c, c, m));
  EXPECT_EQ(rep.status, Status::fail);
  EXPECT_EQ(rep.witness->description, "generator matrix is singular");
}

TEST(Morphism, SizeMismatchThrows) {
  EXPECT_THROW(GradedMap(commutative(3), commutative(4), Matrix<ParamScalar>(3, std::vector<ParamScalar>(3))),
               std::invalid_argument);
  EXPECT_THROW(GradedMap(commutative(3), commutative(3), Matrix<ParamScalar>(2, std::vector<ParamScalar>(3))),
               std::invalid_argument);
}

TEST(Morphism, DiagonalRootOfUnityScaling) {
  // (x, y, z) -> (x, y, w^2 z) takes S(1, 2, 3) to S(1, 2, 3w): each relation
  // image is w^2 times, or equal to, a target relation.
  const BaseScalar w = BaseScalar::omega();
  GradedMap m(s3(1, 2, 3), s3(1, 2, BaseScalar(3) * w), diagonal({ParamScalar(1L), ParamScalar(1L), ParamScalar(w * w)}));
  EXPECT_TRUE(verify_morphism(m).passed());
  EXPECT_TRUE(images_in_target_span(m));
}

TEST(Search, FindsSymbolicSwap) {
  Presentation src = sklyanin3_symbolic();
  Presentation dst = sklyanin3(P("q"), P("p"), P("r"));
  SearchResult res = search_isomorphism(src, dst);
  ASSERT_TRUE(res.map);
  EXPECT_TRUE(verify_morphism(*res.map).passed());
  // The smallest index is x <-> z; y <-> z is also an isomorphism.
  EXPECT_EQ(res.map->describe(), (std::vector<std::string>{"x -> z", "y -> y", "z -> x"}));
}

TEST(Search, RootOfUnityTwist) {
  const BaseScalar w = BaseScalar::omega();
  Presentation src = s3(1, 2, 3), dst = s3(1, 2, BaseScalar(3) * w);
  SearchResult res = search_isomorphism(src, dst);
  ASSERT_TRUE(res.map);
  EXPECT_TRUE(verify_morphism(*res.map).passed());
  EXPECT_TRUE(images_in_target_span(*res.map));
  EXPECT_GE(res.verified, 1u);
}

TEST(Search, SkewPointIsNotCommutative) {
  SearchResult res = search_isomorphism(s3(1, 1, 0), commutative(3));
  EXPECT_FALSE(res.map);
  EXPECT_EQ(res.candidates, 40353607u);  // 7^9
}

TEST(Search, CyclotomicReparametrization) {
  Presentation src = s3(1, 2, 3);
  auto t = lemma33_params(BaseScalar(1), BaseScalar(2), BaseScalar(3));
  Presentation dst = s3(t[0], t[1], t[2]);
  SearchResult res = search_isomorphism(src, dst);
  ASSERT_TRUE(res.map);
  EXPECT_TRUE(verify_morphism(*res.map).passed());
  EXPECT_TRUE(images_in_target_span(*res.map));

  // The inverse is an isomorphism back, and the Hilbert functions agree.
  GradedMap inv = res.map->inverse();
  EXPECT_TRUE(verify_morphism(inv).passed());
  EXPECT_TRUE(images_in_target_span(inv));
  EXPECT_EQ(hilbert<BaseScalar>(src, 4).dims, hilbert<BaseScalar>(dst, 4).dims);
}

TEST(Search, CandidateLimitIsEnforced) {
  SearchOptions opt;
  opt.max_candidates = 1000;
  EXPECT_THROW(search_isomorphism(commutative(3), commutative(3), opt), std::invalid_argument);
}

TEST(CyclotomicParams, Examples) {
  const BaseScalar w = BaseScalar::omega();
  EXPECT_EQ(lemma33_params(1, 1, 1), (std::array<BaseScalar, 3>{0, 0, 3}));
  EXPECT_EQ(lemma33_params(1, 0, 0), (std::array<BaseScalar, 3>{w * w, w, 1}));
  EXPECT_EQ(lemma33_params(0, 0, 1), (std::array<BaseScalar, 3>{1, 1, 1}));
  // Oracle: 1 + w + w^2 = 0.
  EXPECT_TRUE((BaseScalar(1) + w + w * w).is_zero());
}
