#include "support/support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dsmooth;
using dsmooth::support::Rng;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> alg_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".alg") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParamScalar P(const char* n) { return ParamScalar::parameter(n); }

}  // namespace

TEST(Parse, MinimalFileIsSymbolicSklyanin) {
  AlgebraDecl a = parse_single(slurp(fs::path(DSMOOTH_FIXTURE_DIR) / "minimal.alg"));
  Presentation ref = sklyanin3_symbolic();
  EXPECT_EQ(a.presentation.generators, ref.generators);
  EXPECT_EQ(a.presentation.parameters, ref.parameters);
  ASSERT_EQ(a.presentation.relations.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.presentation.relations[i].element, ref.relations[i].element) << i;
  EXPECT_FALSE(a.table);
}

TEST(Parse, RelationWithRightHandSide) {
  AlgebraDecl a = parse_single("algebra t { params q; generators u, v; relations { u*v = q*v*u; } }");
  const auto u = Element<ParamScalar>::generator(0), v = Element<ParamScalar>::generator(1);
  EXPECT_EQ(a.presentation.relations[0].element, u * v - P("q") * (v * u));
}

TEST(Parse, CalculusEntriesAndDefaults) {
  AlgebraDecl a = parse_single(
      "algebra s { params p, q, r; generators x, y, z;\n"
      "  relations { p*y*z + q*z*y + r*x^2; p*z*x + q*x*z + r*y^2; p*x*y + q*y*x + r*z^2; }\n"
      "  calculus { nu[x]: y -> -(p/q)*y; } }");
  ASSERT_TRUE(a.table);
  EXPECT_EQ(a.table->entry(0, 1, 1), -(P("p") / P("q")));
  // Unlisted entries are the identity.
  EXPECT_TRUE(a.table->entry(0, 0, 0).is_one());
  EXPECT_TRUE(a.table->entry(2, 1, 1).is_one());
  EXPECT_TRUE(a.table->entry(0, 1, 0).is_zero());
}

TEST(Parse, ConstraintTextIsKept) {
  AlgebraDecl a = parse_single(slurp(fs::path(DSMOOTH_FIXTURE_DIR) / "constrained.alg"));
  ASSERT_EQ(a.presentation.constraints.size(), 1u);
  EXPECT_EQ(a.presentation.constraints[0].text, "a+b+c+a*b*c = 0");
  EXPECT_EQ(a.presentation.constraints[0].residual, P("a") + P("b") + P("c") + P("a") * P("b") * P("c"));
}

TEST(Parse, EmptyRelationsBlockIsAnError) {
  try {
    parse("algebra e {\n  generators x;\n  relations { }\n}\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.reason.find("relations block is empty"), std::string::npos) << e.reason;
  }
}

TEST(Parse, ParseSingleRejectsTwoBlocks) {
  EXPECT_THROW(parse_single(slurp(fs::path(DSMOOTH_FIXTURE_DIR) / "multi.alg")), ParseError);
}

TEST(Parse, ScalarHelper) {
  EXPECT_EQ(parse_scalar("-5/7"), ParamScalar(BaseScalar::rational(-5, 7)));
  EXPECT_EQ(parse_scalar("3*w"), ParamScalar(BaseScalar(3) * BaseScalar::omega()));
  EXPECT_EQ(parse_scalar("p/q"), P("p") / P("q"));
}

TEST(RoundTrip, Builtins) {
  for (const auto& name : builtin_names()) {
    AlgebraDecl a{builtin(name), std::nullopt};
    const std::string text = serialize(a);
    AlgebraDecl b = parse_single(text);
    EXPECT_EQ(b.presentation.generators, a.presentation.generators) << name;
    for (std::size_t i = 0; i < a.presentation.relations.size(); ++i) {
      EXPECT_EQ(b.presentation.relations[i].element, a.presentation.relations[i].element) << name;
    }
    EXPECT_EQ(serialize(b), text) << name;
  }
}

TEST(RoundTrip, GeneratorOrderIsPreserved) {
  AlgebraDecl a = parse_single("algebra o { generators z, x; relations { z*x - x*z; } }");
  EXPECT_EQ(a.presentation.generators, (std::vector<std::string>{"z", "x"}));
  EXPECT_NE(serialize(a).find("generators z, x;"), std::string::npos);
}

TEST(RoundTrip, RandomDocuments) {
  Rng rng(20261015);
  for (int i = 0; i < 100; ++i) {
    Document d = support::random_document(rng);
    const std::string text = serialize(d);
    Document back = parse(text);
    ASSERT_EQ(back.algebras.size(), d.algebras.size()) << text;
    for (std::size_t k = 0; k < d.algebras.size(); ++k) {
      const auto& x = d.algebras[k];
      const auto& y = back.algebras[k];
      ASSERT_EQ(y.presentation.generators, x.presentation.generators) << text;
      ASSERT_EQ(y.presentation.parameters, x.presentation.parameters) << text;
      ASSERT_EQ(y.presentation.base, x.presentation.base) << text;
      ASSERT_EQ(y.presentation.relations.size(), x.presentation.relations.size()) << text;
      for (std::size_t r = 0; r < x.presentation.relations.size(); ++r) {
        ASSERT_EQ(y.presentation.relations[r].element, x.presentation.relations[r].element) << text;
      }
      ASSERT_EQ(y.table, x.table) << text;
      ASSERT_EQ(y.presentation.constraints.size(), x.presentation.constraints.size()) << text;
      for (std::size_t c = 0; c < x.presentation.constraints.size(); ++c) {
        ASSERT_EQ(y.presentation.constraints[c].residual, x.presentation.constraints[c].residual) << text;
      }
    }
    ASSERT_EQ(serialize(back), text);
  }
}

TEST(RoundTrip, FixturesAndSamples) {
  std::vector<fs::path> files = alg_files(DSMOOTH_FIXTURE_DIR);
  for (const auto& f : alg_files(DSMOOTH_SAMPLE_DIR)) files.push_back(f);
  ASSERT_GE(files.size(), 8u);
  for (const auto& f : files) {
    Document d = parse(slurp(f));
    const std::string text = serialize(d);
    Document again = parse(text);
    EXPECT_EQ(again, parse(serialize(again))) << f;
    EXPECT_EQ(serialize(again), text) << f;
  }
}

TEST(Malformed, ReportsPosition) {
  const auto files = alg_files(fs::path(DSMOOTH_FIXTURE_DIR) / "malformed");
  ASSERT_EQ(files.size(), 12u);
  for (const auto& f : files) {
    const std::string text = slurp(f);
    // Header: "# expect L:C: reason"
    const std::string header = text.substr(0, text.find('\n'));
    ASSERT_EQ(header.rfind("# expect ", 0), 0u) << f;
    std::size_t line = 0, column = 0;
    char sep = 0;
    std::istringstream hs(header.substr(9));
    hs >> line >> sep >> column >> sep;
    std::string reason;
    std::getline(hs >> std::ws, reason);
    try {
      parse(text);
      ADD_FAILURE() << f << " parsed";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line, line) << f << ": " << e.what();
      EXPECT_EQ(e.column, column) << f << ": " << e.what();
      EXPECT_NE(e.reason.find(reason), std::string::npos) << f << ": " << e.what();
    }
  }
}
