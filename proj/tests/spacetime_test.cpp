// Copyright 2026 The swapgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <string>

#include "swapgame/quantum.hpp"
#include "swapgame/spacetime.hpp"

namespace swapgame {
namespace {

SpacetimeConfig fixture() {
  return load_spacetime_config(read_text_file(std::string(SWAPGAME_FIXTURE_DIR) + "/paper-spacetime.cfg"));
}

// Two sites, one delay and the events in `taus`, all reaching across.
SpacetimeConfig pair_config(Measured distance, Measured delay, const std::map<std::string, Measured>& taus) {
  SpacetimeConfig cfg;
  cfg.graph.add_node("P");
  cfg.graph.add_node("Q");
  cfg.graph.add_distance("P", "Q", distance);
  cfg.delays["t"] = delay;
  SeparationCondition cond{"P-Q", "P", "Q", "t", {}};
  for (const auto& [label, tau] : taus) {
    cfg.events.push_back(TimedEvent{label, "P", tau, std::nullopt});
    cond.reach.push_back(label);
  }
  cfg.conditions.push_back(cond);
  return cfg;
}

TEST(Margin, SourcePairWithExactLightSpeed) {
  const SpacetimeConfig cfg = pair_config({195, 1}, {81.5, 0.7}, {{"e1", {160.2, 0.5}}, {"e2", {154.4, 0.5}}});
  const MarginReport r = margin(cfg.conditions[0], cfg);
  // Oracle: 195 m over c minus the slower branch.
  EXPECT_NEAR(r.margin, 195.0 / 0.299792458 - (81.5 + 160.2), 1e-9);
  EXPECT_NEAR(r.margin, 408.7, 0.1);
  EXPECT_NEAR(r.sigma, std::sqrt(std::pow(1.0 / 0.299792458, 2) + 0.49 + 0.25), 1e-12);
  EXPECT_NEAR(r.sigma, 3.5, 0.1);
  EXPECT_EQ(r.limiting_event, "e1");
  EXPECT_TRUE(r.pass);
}

TEST(Margin, SingleEventRow) {
  const SpacetimeConfig cfg = pair_config({104, 1}, {225.7, 0.7}, {{"q", {89, 2}}});
  const MarginReport r = margin(cfg.conditions[0], cfg);
  EXPECT_NEAR(r.margin, 32.2, 0.1);
  EXPECT_TRUE(r.pass);
}

TEST(Margin, ZeroEverythingDoesNotPass) {
  const SpacetimeConfig cfg = pair_config({0, 0}, {0, 0}, {{"q", {0, 0}}});
  const MarginReport r = margin(cfg.conditions[0], cfg);
  EXPECT_EQ(r.margin, 0.0);
  EXPECT_FALSE(r.pass);
}

TEST(Margin, TiedBranchesUseTheLargerSigma) {
  const SpacetimeConfig cfg = pair_config({300, 0}, {0, 0}, {{"a", {100, 0.5}}, {"b", {100.1, 3}}});
  const MarginReport r = margin(cfg.conditions[0], cfg);
  EXPECT_NEAR(r.sigma, 3.0, 1e-12);
}

TEST(Margin, MonotoneInInputs) {
  for (double l = 100; l <= 300; l += 50) {
    for (double t = 0; t <= 200; t += 50) {
      for (double tau = 0; tau <= 200; tau += 50) {
        const auto at = [](double L, double T, double Tau) {
          const SpacetimeConfig c = pair_config({L, 1}, {T, 0.7}, {{"q", {Tau, 2}}});
          return margin(c.conditions[0], c).margin;
        };
        const double m = at(l, t, tau);
        EXPECT_GT(at(l + 1, t, tau), m);
        EXPECT_LT(at(l, t + 1, tau), m);
        EXPECT_LT(at(l, t, tau + 1), m);
      }
    }
  }
}

TEST(Margin, SigmaThresholdIsConfigurable) {
  SpacetimeConfig cfg = pair_config({10, 1}, {20, 0.7}, {{"q", {1, 0.5}}});
  // margin ~ 12.3, sigma ~ 3.45
  cfg.k_sigma = 3.0;
  EXPECT_TRUE(margin(cfg.conditions[0], cfg).pass);
  cfg.k_sigma = 4.0;
  EXPECT_FALSE(margin(cfg.conditions[0], cfg).pass);
}

TEST(Fixture, ReproducesTheReferenceMargins) {
  const std::map<std::string, double> reference = {
      {"S1-S2", 408},         {"QRNG_A-S1", 32},      {"QRNG_A-S2", 690},   {"QRNG_B-S1", 26},
      {"QRNG_B-S2", 51},      {"QRNG_C-S1", 601},     {"QRNG_C-S2", 32},    {"QRNG_A-QRNG_C", 1090},
      {"QRNG_B-QRNG_A", 502}, {"QRNG_B-QRNG_C", 521}, {"QRNG_A-M_B", 42},   {"QRNG_A-M_C", 604},
      {"QRNG_B-M_A", 146},    {"QRNG_B-M_C", 36},     {"QRNG_C-M_A", 839},  {"QRNG_C-M_B", 166},
  };
  const auto reports = verify_all(fixture());
  ASSERT_EQ(reports.size(), reference.size());
  for (const MarginReport& r : reports) {
    ASSERT_TRUE(reference.count(r.label)) << r.label;
    EXPECT_NEAR(r.margin, reference.at(r.label), 1.0) << r.label;
    EXPECT_NEAR(r.sigma, 4.0, 1.0) << r.label;
    EXPECT_TRUE(r.pass) << r.label;
  }
  EXPECT_TRUE(all_pass(reports));
}

TEST(Fixture, SlowRandomNumbersBreakTheBobRow) {
  SpacetimeConfig cfg = fixture();
  for (TimedEvent& e : cfg.events) {
    if (e.label.rfind("QRNG_", 0) == 0) e.tau.value *= 10.0;
  }
  const auto reports = verify_all(cfg);
  EXPECT_FALSE(all_pass(reports));
  for (const MarginReport& r : reports) {
    if (r.label == "QRNG_B-S1") EXPECT_FALSE(r.pass);
  }
}

TEST(Fixture, SerializeRoundTrips) {
  const SpacetimeConfig cfg = fixture();
  const SpacetimeConfig back = load_spacetime_config(serialize(cfg));
  EXPECT_EQ(back, cfg);
  EXPECT_EQ(serialize(back), serialize(cfg));
}

TEST(Fixture, TableListsEveryRow) {
  const auto reports = verify_all(fixture());
  const std::string table = margins_table(reports);
  for (const MarginReport& r : reports) EXPECT_NE(table.find(r.label), std::string::npos);
  const Json j = margins_json(reports, fixture());
  EXPECT_TRUE(j.dump().find("QRNG_C-M_B") != std::string::npos);
}

TEST(Verify, EmptyConditionListPassesVacuously) {
  SpacetimeConfig cfg = fixture();
  cfg.conditions.clear();
  const auto reports = verify_all(cfg);
  EXPECT_TRUE(reports.empty());
  EXPECT_TRUE(all_pass(reports));
}

TEST(Graph, RejectsBadDistances) {
  SiteGraph g;
  g.add_node("A");
  g.add_node("B");
  EXPECT_THROW(g.add_distance("A", "Z", {1, 0}), InvalidInput);
  EXPECT_THROW(g.add_distance("A", "A", {1, 0}), InvalidInput);
  EXPECT_THROW(g.add_distance("A", "B", {-1, 0}), InvalidInput);
  EXPECT_THROW(g.add_distance("A", "B", {1, -1}), InvalidInput);
  g.add_distance("A", "B", {5, 1});
  EXPECT_THROW(g.add_distance("B", "A", {5, 1}), InvalidInput);
  EXPECT_EQ(g.distance("B", "A").value, 5.0);
  EXPECT_THROW(g.distance("A", "C"), InvalidInput);
}

TEST(Graph, TriangleCheck) {
  SiteGraph g;
  for (const char* n : {"A", "B", "C"}) g.add_node(n);
  g.add_distance("A", "B", {10, 0.1});
  g.add_distance("B", "C", {10, 0.1});
  g.add_distance("A", "C", {19, 0.1});
  EXPECT_TRUE(g.triangle_violations().empty());
  SiteGraph bad;
  for (const char* n : {"A", "B", "C"}) bad.add_node(n);
  bad.add_distance("A", "B", {10, 0.1});
  bad.add_distance("B", "C", {10, 0.1});
  bad.add_distance("A", "C", {30, 0.1});
  EXPECT_EQ(bad.triangle_violations().size(), 1u);
  EXPECT_THROW(fixture().graph.distance("S1", "Q"), InvalidInput);
}

TEST(Parse, MeasuredValues) {
  EXPECT_EQ(parse_measured("195 +- 1", 1), (Measured{195, 1}));
  EXPECT_EQ(parse_measured("81.5±.7", 1), (Measured{81.5, 0.7}));
  EXPECT_EQ(parse_measured("12", 1), (Measured{12, 0}));
  EXPECT_THROW(parse_measured("abc +- 1", 4), ConfigError);
}

TEST(Parse, EmptyFileIsAnError) { EXPECT_THROW(load_spacetime_config(""), ConfigError); }

TEST(Parse, MissingDistanceNamesTheLine) {
  const std::string text =
      "[nodes]\nnames = P Q R\n[distances]\nP Q = 10 +- 1\n[event e]\nnode = P\ntau = 1 +- 0\n"
      "[delays]\nt = 1 +- 0\n[condition P-R]\nbetween = P R\ndelay = t\nreach = e\n";
  try {
    load_spacetime_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 10);
    EXPECT_NE(std::string(e.what()).find("missing distance P-R"), std::string::npos) << e.what();
  }
}

TEST(Parse, UnknownEventIsReported) {
  const std::string text =
      "[nodes]\nnames = P Q\n[distances]\nP Q = 10 +- 1\n[delays]\nt = 1 +- 0\n"
      "[condition P-Q]\nbetween = P Q\ndelay = t\nreach = ghost\n";
  EXPECT_THROW(load_spacetime_config(text), ConfigError);
}

}  // namespace
}  // namespace swapgame
