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

// Space-like separation audit. Each condition compares the light travel time
// between two sites with the latest moment an event can still influence the
// other side:
//
//   margin = L / c - max_i (t + tau_i)
//
// where t is the measured relative delay between the two events' earliest
// times and tau_i are the durations of the events whose end matters. Units
// are metres and nanoseconds throughout.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapgame/config.hpp"
#include "swapgame/report.hpp"

namespace swapgame {

inline constexpr double kSpeedOfLight = 0.299792458;  // m/ns

struct Measured {
  double value = 0.0;
  double sigma = 0.0;
  friend bool operator==(const Measured&, const Measured&) = default;
};

class SiteGraph {
 public:
  void add_node(const std::string& name);
  /// Throws InvalidInput for unknown nodes, a repeated pair, negative
  /// distance or negative sigma.
  void add_distance(const std::string& a, const std::string& b, Measured d);

  bool has_node(const std::string& name) const;
  const std::vector<std::string>& nodes() const { return nodes_; }
  /// Throws InvalidInput when the pair has no recorded distance.
  const Measured& distance(const std::string& a, const std::string& b) const;
  bool has_distance(const std::string& a, const std::string& b) const;
  const std::map<std::pair<std::string, std::string>, Measured>& distances() const {
    return distances_;
  }

  /// Triangles whose inequality fails by more than `k` combined sigmas.
  std::vector<std::string> triangle_violations(double k = 3.0) const;

  friend bool operator==(const SiteGraph&, const SiteGraph&) = default;

 private:
  static std::pair<std::string, std::string> key(const std::string& a, const std::string& b);
  std::vector<std::string> nodes_;
  std::map<std::pair<std::string, std::string>, Measured> distances_;
};

struct TimedEvent {
  std::string label;
  std::string node;
  Measured tau;                        // duration
  std::optional<Measured> t_earliest;  // absolute start, when known
  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

struct SeparationCondition {
  std::string label;
  std::string site_a;
  std::string site_b;
  /// Relative delay between the two events' earliest times.
  std::string delay;
  /// Events whose durations extend the reach; two or more make a max.
  std::vector<std::string> reach;
  friend bool operator==(const SeparationCondition&, const SeparationCondition&) = default;
};

struct SpacetimeConfig {
  double light_speed = kSpeedOfLight;
  double k_sigma = 3.0;
  SiteGraph graph;
  std::vector<TimedEvent> events;
  std::map<std::string, Measured> delays;
  std::vector<SeparationCondition> conditions;

  const TimedEvent& event(const std::string& label) const;
  friend bool operator==(const SpacetimeConfig&, const SpacetimeConfig&) = default;
};

struct MarginReport {
  std::string label;
  double distance = 0.0;
  double reach = 0.0;  // max_i (t + tau_i)
  double margin = 0.0;
  double sigma = 0.0;
  std::string limiting_event;
  bool pass = false;
};

/// Margin and quadrature sigma sqrt((sigma_L / c)^2 + sigma_t^2 + sigma_tau^2)
/// using the branch that attains the max. If another branch lies within one
/// sigma of it, the larger sigma is reported. pass = margin > k * sigma.
MarginReport margin(const SeparationCondition& cond, const SpacetimeConfig& cfg);

/// Throws ConfigError listing every unresolved reference before evaluating.
std::vector<MarginReport> verify_all(const SpacetimeConfig& cfg);
bool all_pass(const std::vector<MarginReport>& reports);

/// Schema:
///   light_speed_m_per_ns = 0.3       (optional, default exact c)
///   k_sigma = 3                      (optional)
///   [nodes]        names = S1 S2 ...
///   [distances]    S1 S2 = 195 +- 1
///   [event NAME]   node = ..., tau = 160.2 +- 0.5, earliest = ... (optional)
///   [delays]       t12 = 81.5 +- 0.7
///   [condition LABEL]  between = S1 S2, delay = t12, reach = S1 S2
SpacetimeConfig load_spacetime_config(std::string_view text);
std::string serialize(const SpacetimeConfig& cfg);

/// "195 +- 1", "195 ± 1" or a bare number (sigma 0).
Measured parse_measured(std::string_view text, int line);

Json margins_json(const std::vector<MarginReport>& reports, const SpacetimeConfig& cfg);
std::string margins_table(const std::vector<MarginReport>& reports);

}  // namespace swapgame
