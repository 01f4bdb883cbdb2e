#include <gtest/gtest.h>

#include <cmath>

#include "orthokit/claims.hpp"
#include "orthokit/errors.hpp"
#include "orthokit/serialization.hpp"

using namespace orthokit;

namespace {

ClaimSpec spec_for(const std::string& id, std::size_t trials, std::uint64_t seed = 0) {
  const ClaimDefinition* def = find_claim(id);
  EXPECT_NE(def, nullptr) << id;
  ClaimSpec s = def->spec;
  s.trials = trials;
  s.seed = seed;
  return s;
}

Predicate pred(RelationId id, double eps_factor = 1.0) { return {id, std::nullopt, eps_factor}; }

Universe ip_universe() {
  Universe u;
  u.dim_min = 2;
  u.dim_max = 3;
  u.norm_families = {"lp:2", "ip:random"};
  u.eps_grid = {0.2};
  return u;
}

}  // namespace

TEST(Claims, RegistryHasEveryAuditedClaim) {
  for (const char* id : {"C1", "C2", "C2-lp", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11-forward",
                         "C11-converse", "C12-forward", "C12-reverse", "C13-scaled", "C13-linf"})
    EXPECT_NE(find_claim(id), nullptr) << id;
  EXPECT_EQ(find_claim("C99"), nullptr);
  for (const auto& def : claim_registry()) {
    EXPECT_FALSE(def.spec.statement.empty());
    EXPECT_GE(def.spec.trials, 1u);
  }
}

TEST(Claims, RejectsBadSpecs) {
  ClaimSpec s = spec_for("C1", 10);
  s.id = "C99";
  EXPECT_THROW(run_claim(s), InvalidArgument);
  s = spec_for("C1", 0);
  EXPECT_THROW(run_claim(s), InvalidArgument);
  s = spec_for("C1", 10);
  s.universe.eps_grid = {1.0};
  EXPECT_THROW(run_claim(s), InvalidArgument);
}

TEST(Claims, SymmetryIsConfirmed) {
  const auto r = run_claim(spec_for("C1", 2000));
  EXPECT_EQ(r.status, ClaimStatus::confirmed);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.trials_run, 2000u);
}

TEST(Claims, RunsAreDeterministic) {
  for (const char* id : {"C3", "C8"}) {
    auto a = run_claim(spec_for(id, 300, 7));
    auto b = run_claim(spec_for(id, 300, 7));
    a.elapsed_ms = b.elapsed_ms = 0.0;
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump()) << id;
    auto c = run_claim(spec_for(id, 300, 8));
    c.elapsed_ms = 0.0;
    EXPECT_NE(to_json(a).dump(), to_json(c).dump()) << id;
  }
}

TEST(Claims, CounterexamplesReverifyFromJson) {
  const auto r = run_claim(spec_for("C11-forward", 1000));
  ASSERT_EQ(r.status, ClaimStatus::counterexample);
  ASSERT_TRUE(r.worst_witness.has_value());
  EXPECT_TRUE(reverify(claim_report_from_json(parse_json(to_json(r).dump()))));
  const auto& m = r.worst_witness->margins;
  EXPECT_GE(m.at("premise"), 0.05);
  EXPECT_LE(m.at("conclusion"), -0.05);

  // A tampered witness no longer re-verifies.
  ClaimReport bad = r;
  bad.worst_witness->vectors["y"] = {0.0, 1.0};
  EXPECT_FALSE(reverify(bad));
}

TEST(Claims, FixedBoundaryPairViolatesTheDoubledInnerBound) {
  // ⟨x,y⟩ = 0.9, ‖x‖² + ‖y‖² = 5: the relative relation holds at 0.2 (0.9 ≤ 1.0)
  // while |⟨x,y⟩| ≤ 0.4·‖x‖‖y‖ = 0.8 fails.
  Witness w;
  w.vectors = {{"x", {2.0, 0.0}}, {"y", {0.45, std::sqrt(0.7975)}}};
  w.norms = {{"norm", LpNorm{2.0}}};
  w.eps = 0.2;
  const Outcome o = evaluate_witness("C11-forward", w);
  EXPECT_TRUE(o.applicable);
  EXPECT_TRUE(o.violated);
  EXPECT_NEAR(o.margins.at("conclusion"), -0.1, 1e-12);
  EXPECT_GT(o.margins.at("premise"), 0.05);
}

TEST(Claims, LargerBudgetsKeepCounterexamples) {
  for (const char* id : {"C3", "C5", "C6"}) {
    const auto small = run_claim(spec_for(id, 300));
    const auto large = run_claim(spec_for(id, 1200));
    if (small.status == ClaimStatus::counterexample) {
      EXPECT_EQ(large.status, ClaimStatus::counterexample) << id;
    }
    EXPECT_GE(large.violations, small.violations) << id;
  }
}

TEST(Claims, ReportsSurviveJsonRoundTrip) {
  const auto r = run_claim(spec_for("C6", 200));
  const auto back = claim_report_from_json(parse_json(to_json(r).dump()));
  EXPECT_EQ(back, r);
}

TEST(Search, TrueInclusionHasNoWitness) {
  const auto r = search_counterexample(pred(RelationId::eps_inner, 2.0), pred(RelationId::hh_relative),
                                       ip_universe(), 4000);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_GT(r.evaluations, 0u);
}

TEST(Search, FindsTheDoubledInnerCounterexample) {
  const auto r = search_counterexample(pred(RelationId::hh_relative), pred(RelationId::eps_inner, 2.0),
                                       ip_universe(), 4000);
  ASSERT_TRUE(r.witness.has_value());
  const auto& w = *r.witness;
  const Vector x(w.vectors.at("x")), y(w.vectors.at("y"));
  const NormSpec& spec = w.norms.at("norm");
  EXPECT_TRUE(evaluate(RelationId::hh_relative, spec, x, y, *w.eps).holds);
  EXPECT_FALSE(evaluate(RelationId::eps_inner, spec, x, y, 2.0 * *w.eps).holds);
}

TEST(Search, IdenticalPredicatesHaveNoWitness) {
  Universe u = ip_universe();
  u.norm_families = {"lp:1", "lp:inf", "lp:2"};
  const auto r = search_counterexample(pred(RelationId::hh_absolute), pred(RelationId::hh_absolute), u, 400);
  EXPECT_FALSE(r.witness.has_value());
}
