#include <gtest/gtest.h>

#include "json.hpp"

#include "dqc/bench.hpp"
#include "dqc/plan_io.hpp"
#include "fixtures.hpp"

using namespace dqc;
using nlohmann::json;

namespace {

ErrorKind load_error(const std::string &text, const Circuit &c) {
  try {
    plan_from_json(text, c);
  } catch (const DqcError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted " << text;
  return ErrorKind::ParseError;
}

}  // namespace

// Property: plans survive a JSON round trip and still verify.
TEST(PlanIo, RoundTrip) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    RandomSpec s;
    s.n_qubits = 2 + seed % 4;
    s.depth = 3 + seed % 10;
    s.seed = 300 + seed;
    Circuit c = gen_random(s);
    Pipeline p = run_pipeline(c);
    std::string text = plan_to_json(p.plan, c);
    PackingPlan back = plan_from_json(text, c);
    EXPECT_EQ(plan_to_json(back, c), text);
    EXPECT_TRUE(verify_plan(c, back).pass()) << "seed " << seed;
  }
}

TEST(PlanIo, ReportIsEmbedded) {
  Circuit c = fixtures::cnot();
  Pipeline p = run_pipeline(c);
  auto rep = verify_plan(c, p.plan);
  json doc = json::parse(plan_to_json(p.plan, c, &rep));
  EXPECT_EQ(doc["verification"]["status"], "Pass");
  EXPECT_EQ(doc["ebits"], 1);
  EXPECT_EQ(doc["roots"][0]["q"], "a");
  EXPECT_EQ(doc["roots"][0]["aux_side"], "B");
}

TEST(PlanIo, BadPlansAreRejected) {
  Circuit c = fixtures::cnot();
  json doc = json::parse(plan_to_json(run_pipeline(c).plan, c));

  EXPECT_EQ(load_error("{not json", c), ErrorKind::ParseError);

  json unknown = doc;
  unknown["roots"][0]["q"] = "zz";
  EXPECT_EQ(load_error(unknown.dump(), c), ErrorKind::UnknownQubit);

  json kind = doc;
  kind["roots"][0]["kernels"][0]["kind"] = "teleport";
  EXPECT_EQ(load_error(kind.dump(), c), ErrorKind::InvalidPlan);

  json missing = doc;
  missing["roots"][0].erase("T");
  EXPECT_EQ(load_error(missing.dump(), c), ErrorKind::InvalidPlan);
}

TEST(PlanIo, CorruptedPlanFailsVerification) {
  Circuit c = fixtures::swap();
  json doc = json::parse(plan_to_json(run_pipeline(c).plan, c));
  doc["roots"].erase(doc["roots"].size() - 1);
  PackingPlan plan = plan_from_json(doc.dump(), c);
  EXPECT_FALSE(verify_plan(c, plan).pass());
}
