#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "evencob/campaign.hpp"

namespace evencob {
namespace {

using S = RationalSubspace;
using M = RationalMatrix;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(EVENCOB_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename E, typename F>
std::size_t error_line(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.line();
  }
  ADD_FAILURE() << "no error thrown";
  return 0;
}

TEST(ParseScenario, GenusOneFixture) {
  const auto sc = parse_scenario(slurp("triple.ssf"));
  ASSERT_TRUE(sc.space);
  EXPECT_EQ(sc.space->gram(), standard_form(1));
  ASSERT_EQ(sc.subspaces.size(), 3u);
  EXPECT_EQ(*sc.find("L3"), S::span(M{{1, 1}}));
  ASSERT_EQ(sc.queries.size(), 1u);
  EXPECT_EQ(maslov_index(scenario_triple(sc, sc.queries[0])), -1);
}

TEST(ParseScenario, EmptyAndCommentOnlyFilesAreEmptyScenarios) {
  EXPECT_EQ(parse_scenario(""), Scenario{});
  EXPECT_EQ(parse_scenario("# nothing\n\n   # here\n"), Scenario{});
}

TEST(ParseScenario, AcceptsRationalEntriesAndTrailingComments) {
  const auto sc = parse_scenario("form 2 # the plane\n0 1/2\n-1/2 0\nsubspace A 1\n2/3 -4  # a line\n");
  EXPECT_EQ(sc.space->gram()(0, 1), Rational(1, 2));
  EXPECT_EQ(sc.find("A")->basis(), (M{{1, -6}}));
}

TEST(ParseScenario, NonSkewFormNamesTheEntry) {
  try {
    parse_scenario("form 2\n0 1\n1 0\n");
    FAIL();
  } catch (const NonSkewFormError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario("form 1\n1\n"), NonSkewFormError);
}

TEST(ParseScenario, DanglingName) {
  EXPECT_EQ(error_line<DanglingNameError>([] { parse_scenario("form 2\n0 1\n-1 0\ntriple A B C\n"); }), 4u);
}

TEST(ParseScenario, DimensionMismatch) {
  EXPECT_EQ(error_line<DimensionError>([] { parse_scenario("form 2\n0 1\n-1 0\nsubspace A 1\n1 0 0\n"); }), 5u);
  EXPECT_EQ(error_line<DimensionError>([] { parse_scenario("form 2\n0 1 0\n-1 0\n"); }), 2u);
}

TEST(ParseScenario, SyntaxErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("\n\nbogus 3\n"); }), 3u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form 2\n0 1\n-1 0.5\n"); }), 3u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form two\n"); }), 1u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form 2\n0 1\n"); }), 2u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("subspace A 0\n"); }), 1u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form 0\nsubspace A 0\nsubspace A 0\n"); }), 3u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form 0\nform 0\n"); }), 2u);
  EXPECT_EQ(error_line<SyntaxError>([] { parse_scenario("form 2\n0 1/0\n-1 0\n"); }), 2u);
}

TEST(ParseScenario, ErrorClassesAreDistinct) {
  EXPECT_THROW(parse_scenario("form 2\n0 1\n1 0\n"), NonSkewFormError);
  try {
    parse_scenario("form 2\n0 1\n1 0\n");
  } catch (const DimensionError&) {
    FAIL();
  } catch (const SyntaxError&) {
    FAIL();
  } catch (const ParseError&) {
  }
}

TEST(ParseScenario, ZeroDimensionalFormHasNoRows) {
  const auto sc = parse_scenario("form 0\nsubspace Z 0\ntriple Z Z Z\n");
  EXPECT_EQ(sc.space->dim(), 0u);
  EXPECT_EQ(maslov_index(scenario_triple(sc, sc.queries[0])), 0);
}

TEST(ScenarioRoundTrip, RandomScenarios) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto sc = triple_scenario(random_triple(seed, 4).triple);
    EXPECT_EQ(parse_scenario(serialize_scenario(sc)), sc);
  }
  const auto counter = degenerate_ann_counterexample();
  EXPECT_EQ(parse_scenario(serialize_scenario(counter)), counter);
}

TEST(ParsePipeline, GeneratorFixture) {
  const auto p = parse_pipeline(slurp("pipeline.cbf"));
  ASSERT_EQ(p.objects.size(), 2u);
  ASSERT_EQ(p.morphisms.size(), 2u);
  EXPECT_EQ(p.morphisms[0].morphism.weight, 1);
  EXPECT_EQ(p.morphisms[1].morphism.j_src_h1, (M{{1, 0}}));
  const auto closed = compose(p.morphisms[0].morphism, p.morphisms[1].morphism);
  EXPECT_EQ(closed.weight, 2);
  EXPECT_EQ(closed.h1_dim, 1u);
  EXPECT_TRUE(is_even(closed).is_even);
}

TEST(ParsePipeline, ExplicitRecordsMatchGenerators) {
  EXPECT_EQ(parse_pipeline(slurp("explicit.cbf")), parse_pipeline(slurp("pipeline.cbf")));
}

TEST(ParsePipeline, GeneratorsDependOnBaseSeed) {
  const std::string text = "object A genera 1\nlagrangian 1\n1 0\ngenerator T A A (twisted_cylinder 1)\n";
  EXPECT_EQ(parse_pipeline(text, 4), parse_pipeline(text, 4));
  bool differs = false;
  for (std::uint64_t s = 0; s < 8 && !differs; ++s) differs = !(parse_pipeline(text, s) == parse_pipeline(text, 4));
  EXPECT_TRUE(differs);
}

TEST(ParsePipeline, Errors) {
  const std::string objects = "object E genera\nlagrangian 0\nobject A genera 1\nlagrangian 1\n1 0\n";
  EXPECT_EQ(error_line<DanglingNameError>([&] { parse_pipeline(objects + "generator H E B (handlebody 1)\n"); }), 6u);
  EXPECT_EQ(error_line<DimensionError>([&] { parse_pipeline(objects + "generator H E A (handlebody 2)\n"); }), 6u);
  EXPECT_EQ(error_line<SyntaxError>([&] { parse_pipeline(objects + "generator H E A (handlebody 1\n"); }), 6u);
  EXPECT_EQ(error_line<InvalidValueError>([] { parse_pipeline("object A genera 1\nlagrangian 2\n1 0\n0 1\n"); }), 2u);
  EXPECT_EQ(error_line<DimensionError>([] { parse_pipeline("object A genera 1\nlagrangian 1\n1 0 0\n"); }), 3u);
  EXPECT_EQ(error_line<SyntaxError>([&] {
              parse_pipeline(objects + "morphism H E A weight 0 h1 1 h0 1\njtgt_h1\n1 0\n");
            }), 7u);
  EXPECT_EQ(error_line<SyntaxError>([&] { parse_pipeline(objects + "morphism H E A weight x h1 1 h0 1\n"); }), 6u);
  EXPECT_EQ(error_line<SyntaxError>([&] { parse_pipeline(objects + "object A genera\nlagrangian 0\n"); }), 6u);
  EXPECT_THROW(parse_pipeline(objects + "generator H E A (handlebody 1)\ngenerator K E A (handlebody 1)\n"),
               InvalidValueError);
}

TEST(ParsePipeline, EmptyFile) { EXPECT_EQ(parse_pipeline(""), Pipeline{}); }

TEST(PipelineRoundTrip, RandomChains) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pair = random_even_pair(seed, 4);
    const auto p = pipeline_of({pair.first, pair.second});
    EXPECT_EQ(parse_pipeline(serialize_pipeline(p)), p);
    const auto abstract = random_abstract_pair(seed, 4);
    const auto q = pipeline_of({abstract.first, abstract.second});
    EXPECT_EQ(parse_pipeline(serialize_pipeline(q)), q);
  }
}

TEST(PipelineRoundTrip, GeneratorsExpandToEquivalentRecords) {
  const auto p = parse_pipeline(slurp("pipeline.cbf"), 9);
  EXPECT_EQ(parse_pipeline(serialize_pipeline(p)), p);
}

}  // namespace
}  // namespace evencob
