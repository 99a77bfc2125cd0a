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

#include "swapgame/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "swapgame/quantum.hpp"

namespace swapgame {

std::pair<std::string, std::string> SiteGraph::key(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void SiteGraph::add_node(const std::string& name) {
  if (name.empty()) throw InvalidInput("empty node name");
  if (has_node(name)) throw InvalidInput("node '" + name + "' declared twice");
  nodes_.push_back(name);
}

bool SiteGraph::has_node(const std::string& name) const {
  return std::find(nodes_.begin(), nodes_.end(), name) != nodes_.end();
}

void SiteGraph::add_distance(const std::string& a, const std::string& b, Measured d) {
  for (const std::string* n : {&a, &b}) {
    if (!has_node(*n)) throw InvalidInput("distance refers to unknown node '" + *n + "'");
  }
  if (a == b) throw InvalidInput("distance from '" + a + "' to itself");
  if (!(d.value >= 0.0)) throw InvalidInput("distance " + a + "-" + b + " must be non-negative");
  if (!(d.sigma >= 0.0)) throw InvalidInput("distance " + a + "-" + b + " has negative sigma");
  if (!distances_.emplace(key(a, b), d).second) {
    throw InvalidInput("distance " + a + "-" + b + " given twice");
  }
}

bool SiteGraph::has_distance(const std::string& a, const std::string& b) const {
  return distances_.count(key(a, b)) > 0;
}

const Measured& SiteGraph::distance(const std::string& a, const std::string& b) const {
  const auto it = distances_.find(key(a, b));
  if (it == distances_.end()) throw InvalidInput("no distance recorded for " + a + "-" + b);
  return it->second;
}

std::vector<std::string> SiteGraph::triangle_violations(double k) const {
  std::vector<std::string> out;
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t m = j + 1; m < n; ++m) {
        const std::string& a = nodes_[i];
        const std::string& b = nodes_[j];
        const std::string& c = nodes_[m];
        if (!has_distance(a, b) || !has_distance(b, c) || !has_distance(a, c)) continue;
        const Measured ab = distance(a, b);
        const Measured bc = distance(b, c);
        const Measured ac = distance(a, c);
        const double sigma = std::sqrt(ab.sigma * ab.sigma + bc.sigma * bc.sigma + ac.sigma * ac.sigma);
        const double sides[3] = {ab.value, bc.value, ac.value};
        const double longest = *std::max_element(sides, sides + 3);
        const double others = ab.value + bc.value + ac.value - longest;
        if (longest - others > k * sigma) out.push_back(a + "-" + b + "-" + c);
      }
    }
  }
  return out;
}

const TimedEvent& SpacetimeConfig::event(const std::string& label) const {
  for (const TimedEvent& e : events) {
    if (e.label == label) return e;
  }
  throw InvalidInput("unknown event '" + label + "'");
}

namespace {

std::vector<std::string> unresolved(const SeparationCondition& c, const SpacetimeConfig& cfg) {
  std::vector<std::string> missing;
  const std::string where = "condition '" + c.label + "': ";
  if (!cfg.graph.has_node(c.site_a)) missing.push_back(where + "unknown node '" + c.site_a + "'");
  if (!cfg.graph.has_node(c.site_b)) missing.push_back(where + "unknown node '" + c.site_b + "'");
  if (cfg.graph.has_node(c.site_a) && cfg.graph.has_node(c.site_b) &&
      !cfg.graph.has_distance(c.site_a, c.site_b)) {
    missing.push_back(where + "missing distance " + c.site_a + "-" + c.site_b);
  }
  if (!cfg.delays.count(c.delay)) missing.push_back(where + "unknown delay '" + c.delay + "'");
  if (c.reach.empty()) missing.push_back(where + "no reach events");
  for (const std::string& e : c.reach) {
    const bool found = std::any_of(cfg.events.begin(), cfg.events.end(),
                                   [&](const TimedEvent& ev) { return ev.label == e; });
    if (!found) missing.push_back(where + "unknown event '" + e + "'");
  }
  return missing;
}

}  // namespace

MarginReport margin(const SeparationCondition& cond, const SpacetimeConfig& cfg) {
  const auto missing = unresolved(cond, cfg);
  if (!missing.empty()) throw InvalidInput(missing.front());
  if (!(cfg.light_speed > 0.0)) throw InvalidInput("light speed must be positive");
  const Measured L = cfg.graph.distance(cond.site_a, cond.site_b);
  const Measured t = cfg.delays.at(cond.delay);

  struct Branch {
    double reach;
    double sigma;
    std::string event;
  };
  std::vector<Branch> branches;
  for (const std::string& label : cond.reach) {
    const TimedEvent& e = cfg.event(label);
    if (e.tau.value < 0.0) throw InvalidInput("event '" + label + "' has negative duration");
    const double sl = L.sigma / cfg.light_speed;
    branches.push_back(Branch{t.value + e.tau.value,
                              std::sqrt(sl * sl + t.sigma * t.sigma + e.tau.sigma * e.tau.sigma),
                              label});
  }
  const Branch* top = &branches.front();
  for (const Branch& b : branches) {
    if (b.reach > top->reach) top = &b;
  }
  double sigma = top->sigma;
  for (const Branch& b : branches) {
    if (top->reach - b.reach <= top->sigma) sigma = std::max(sigma, b.sigma);
  }

  MarginReport r;
  r.label = cond.label;
  r.distance = L.value;
  r.reach = top->reach;
  r.margin = L.value / cfg.light_speed - top->reach;
  r.sigma = sigma;
  r.limiting_event = top->event;
  r.pass = r.margin > cfg.k_sigma * r.sigma;
  return r;
}

std::vector<MarginReport> verify_all(const SpacetimeConfig& cfg) {
  std::vector<std::string> missing;
  for (const SeparationCondition& c : cfg.conditions) {
    const auto m = unresolved(c, cfg);
    missing.insert(missing.end(), m.begin(), m.end());
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << missing.size() << " unresolved reference(s):";
    for (const auto& m : missing) os << "\n  " << m;
    throw ConfigError(0, os.str());
  }
  std::vector<MarginReport> out;
  for (const SeparationCondition& c : cfg.conditions) out.push_back(margin(c, cfg));
  return out;
}

bool all_pass(const std::vector<MarginReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const MarginReport& r) { return r.pass; });
}

Measured parse_measured(std::string_view text, int line) {
  std::string t(text);
  const std::string pm = "\xC2\xB1";  // UTF-8 plus-minus sign
  if (const auto pos = t.find(pm); pos != std::string::npos) t.replace(pos, pm.size(), "+-");
  const auto pos = t.find("+-");
  if (pos == std::string::npos) return Measured{parse_double(t, line), 0.0};
  const Measured m{parse_double(t.substr(0, pos), line), parse_double(t.substr(pos + 2), line)};
  if (m.sigma < 0.0) throw ConfigError(line, "negative uncertainty");
  return m;
}

namespace {

std::pair<std::string, std::string> two_words(const ConfigEntry& e) {
  const auto w = split_whitespace(e.key == "between" ? e.value : e.key);
  if (w.size() != 2) throw ConfigError(e.line, "expected two node names, got '" + e.key + "'");
  return {w[0], w[1]};
}

std::string section_argument(const ConfigSection& s, const std::string& prefix) {
  return trim(std::string_view(s.name).substr(prefix.size()));
}

}  // namespace

SpacetimeConfig load_spacetime_config(std::string_view text) {
  const ConfigDocument doc = ConfigDocument::parse(text);
  SpacetimeConfig cfg;
  const ConfigSection& g = doc.globals();
  for (const ConfigEntry& e : g.entries) {
    if (e.key == "light_speed_m_per_ns") {
      cfg.light_speed = parse_double(e.value, e.line);
      if (!(cfg.light_speed > 0.0)) throw ConfigError(e.line, "light speed must be positive");
    } else if (e.key == "k_sigma") {
      cfg.k_sigma = parse_double(e.value, e.line);
    } else {
      throw ConfigError(e.line, "unknown top-level key '" + e.key + "'");
    }
  }

  const ConfigSection* nodes = doc.section("nodes");
  if (!nodes) throw ConfigError(0, "missing [nodes] section");
  const ConfigEntry& names = nodes->require("names");
  for (const std::string& n : split_whitespace(names.value)) {
    try {
      cfg.graph.add_node(n);
    } catch (const InvalidInput& err) {
      throw ConfigError(names.line, err.what());
    }
  }

  for (const ConfigSection& s : doc.sections) {
    if (s.name.empty() || s.name == "nodes") continue;
    if (s.name == "distances") {
      for (const ConfigEntry& e : s.entries) {
        const auto [a, b] = two_words(e);
        try {
          cfg.graph.add_distance(a, b, parse_measured(e.value, e.line));
        } catch (const InvalidInput& err) {
          throw ConfigError(e.line, err.what());
        }
      }
    } else if (s.name == "delays") {
      for (const ConfigEntry& e : s.entries) {
        if (!cfg.delays.emplace(e.key, parse_measured(e.value, e.line)).second) {
          throw ConfigError(e.line, "delay '" + e.key + "' given twice");
        }
      }
    } else if (s.name.rfind("event ", 0) == 0) {
      TimedEvent ev;
      ev.label = section_argument(s, "event ");
      const ConfigEntry& node = s.require("node");
      if (!cfg.graph.has_node(node.value)) {
        throw ConfigError(node.line, "event '" + ev.label + "' at unknown node '" + node.value + "'");
      }
      ev.node = node.value;
      const ConfigEntry& tau = s.require("tau");
      ev.tau = parse_measured(tau.value, tau.line);
      if (ev.tau.value < 0.0) throw ConfigError(tau.line, "negative duration");
      if (const ConfigEntry* e = s.find("earliest")) ev.t_earliest = parse_measured(e->value, e->line);
      for (const TimedEvent& other : cfg.events) {
        if (other.label == ev.label) throw ConfigError(s.line, "event '" + ev.label + "' declared twice");
      }
      cfg.events.push_back(std::move(ev));
    } else if (s.name.rfind("condition ", 0) == 0) {
      SeparationCondition c;
      c.label = section_argument(s, "condition ");
      const ConfigEntry& between = s.require("between");
      std::tie(c.site_a, c.site_b) = two_words(between);
      c.delay = s.require("delay").value;
      c.reach = split_whitespace(s.require("reach").value);
      cfg.conditions.push_back(std::move(c));
    } else {
      throw ConfigError(s.line, "unknown section [" + s.name + "]");
    }
  }
  for (const SeparationCondition& c : cfg.conditions) {
    const auto missing = unresolved(c, cfg);
    if (!missing.empty()) {
      std::ostringstream os;
      for (std::size_t i = 0; i < missing.size(); ++i) os << (i ? "; " : "") << missing[i];
      int line = 0;
      for (const ConfigSection& s : doc.sections) {
        if (s.name == "condition " + c.label) line = s.line;
      }
      throw ConfigError(line, os.str());
    }
  }
  const auto bad = cfg.graph.triangle_violations(3.0);
  if (!bad.empty()) throw ConfigError(0, "distances violate the triangle inequality: " + bad.front());
  return cfg;
}

namespace {

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string measured(const Measured& m) { return number(m.value) + " +- " + number(m.sigma); }

}  // namespace

std::string serialize(const SpacetimeConfig& cfg) {
  std::ostringstream os;
  os << "light_speed_m_per_ns = " << number(cfg.light_speed) << "\n";
  os << "k_sigma = " << number(cfg.k_sigma) << "\n\n[nodes]\nnames =";
  for (const std::string& n : cfg.graph.nodes()) os << " " << n;
  os << "\n\n[distances]\n";
  for (const auto& [k, d] : cfg.graph.distances()) {
    os << k.first << " " << k.second << " = " << measured(d) << "\n";
  }
  for (const TimedEvent& e : cfg.events) {
    os << "\n[event " << e.label << "]\nnode = " << e.node << "\ntau = " << measured(e.tau) << "\n";
    if (e.t_earliest) os << "earliest = " << measured(*e.t_earliest) << "\n";
  }
  os << "\n[delays]\n";
  for (const auto& [k, d] : cfg.delays) os << k << " = " << measured(d) << "\n";
  for (const SeparationCondition& c : cfg.conditions) {
    os << "\n[condition " << c.label << "]\nbetween = " << c.site_a << " " << c.site_b
       << "\ndelay = " << c.delay << "\nreach =";
    for (const std::string& r : c.reach) os << " " << r;
    os << "\n";
  }
  return os.str();
}

Json margins_json(const std::vector<MarginReport>& reports, const SpacetimeConfig& cfg) {
  Json rows = Json::array();
  for (const MarginReport& r : reports) {
    rows.push_back(Json{{"condition", r.label},
                        {"distance_m", json_number(r.distance, 3)},
                        {"reach_ns", json_number(r.reach, 3)},
                        {"margin_ns", json_number(r.margin, 3)},
                        {"sigma_ns", json_number(r.sigma, 3)},
                        {"limiting_event", r.limiting_event},
                        {"pass", r.pass}});
  }
  return Json{{"light_speed_m_per_ns", cfg.light_speed},
              {"k_sigma", cfg.k_sigma},
              {"all_pass", all_pass(reports)},
              {"conditions", std::move(rows)}};
}

std::string margins_table(const std::vector<MarginReport>& reports) {
  std::size_t width = 9;
  for (const MarginReport& r : reports) width = std::max(width, r.label.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "condition" << std::right
     << std::setw(12) << "L (m)" << std::setw(12) << "reach (ns)" << std::setw(12)
     << "margin (ns)" << std::setw(10) << "sigma" << "  result\n";
  for (const MarginReport& r : reports) {
    os << std::left << std::setw(static_cast<int>(width)) << r.label << std::right
       << std::setw(12) << fixed(r.distance, 1) << std::setw(12) << fixed(r.reach, 2)
       << std::setw(12) << fixed(r.margin, 2) << std::setw(10) << fixed(r.sigma, 2) << "  "
       << (r.pass ? "pass" : "FAIL") << "\n";
  }
  return os.str();
}

}  // namespace swapgame
