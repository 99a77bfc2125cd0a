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

// Acceptance run: one PASS/FAIL line per criterion, with the measured
// numbers and the wall time. Exits nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "swapgame/config.hpp"
#include "swapgame/game.hpp"
#include "swapgame/hom.hpp"
#include "swapgame/jones.hpp"
#include "swapgame/noise.hpp"
#include "swapgame/seesaw.hpp"
#include "swapgame/spacetime.hpp"
#include "swapgame/tomography.hpp"
#include "swapgame/trials.hpp"

namespace swapgame {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(SWAPGAME_FIXTURE_DIR) + "/" + name; }

std::string num(double v, int decimals = 6) { return fixed(v, decimals); }

Outcome ideal_score() {
  const QuantumState phi = bell_state(BellOutcome::PhiPlus);
  const SettingsSpec s = build_settings();
  const double total = score(probability_matrix(phi, phi, s), derive_sign_table(s)).total;
  return {std::abs(total - 6.0 * std::sqrt(2.0)) < 1e-9, "F = " + num(total, 10) + " (target 8.485281374 +- 1e-9)"};
}

Outcome classical_bound() {
  const double c = classical_max(derive_sign_table(build_settings()));
  return {c == 6.0, "deterministic max = " + num(c, 10) + " (target 6 exactly)"};
}

Outcome seesaw_bounds() {
  const SignTable signs = derive_sign_table(build_settings());
  OptimizerConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 1;
  const double complex_best = optimize(cfg, Field::Complex, {2, 2, 2, 2}, signs).best_value;

  double real_best = 0.0;
  std::string where;
  for (const StrategyDims& d : {StrategyDims{2, 2, 2, 2}, StrategyDims{4, 2, 2, 4}, StrategyDims{2, 4, 4, 2},
                                StrategyDims{3, 3, 3, 3}, StrategyDims{4, 4, 4, 4}}) {
    const double v = optimize(cfg, Field::Real, d, signs).best_value;
    if (v > real_best) {
      real_best = v;
      where = std::to_string(d.alice) + "," + std::to_string(d.bob_left) + "," + std::to_string(d.bob_right) +
              "," + std::to_string(d.claire);
    }
  }
  const bool complex_ok = complex_best >= 8.4852;
  const bool real_ok = real_best >= kClassicalBound - 1e-9 && real_best <= kRealBoundCeiling;
  return {complex_ok && real_ok, "complex best = " + num(complex_best, 6) + " (need >= 8.4852, 20 restarts); real best = " +
                                     num(real_best, 6) + " at dims " + where + " (need in [6, 7.6605])"};
}

Outcome noise_prediction() {
  const NoiseParams np = reference_noise_params();
  const double pipeline = predicted_score(np).total;
  const double closed = np.p1 * np.p2 * (4.0 + 8.0 * np.v_bsm) / std::sqrt(2.0);
  const bool pass = std::abs(pipeline - closed) < 1e-6 && pipeline >= 7.7 && pipeline <= 8.0;
  return {pass, "pipeline = " + num(pipeline, 8) + ", closed form = " + num(closed, 8) +
                    " (agree within 1e-6, band [7.7, 8.0])"};
}

Outcome statistics() {
  const SettingsSpec s = build_settings();
  const SignTable signs = derive_sign_table(s);
  const ProbabilityMatrix pm = noisy_probability_matrix(reference_noise_params(), s);
  const SettingDistribution dist = SettingDistribution::uniform(canonical_combos());
  const int runs = 100;
  double sigma_total = 0.0;
  std::array<double, 4> sigma_b{};
  std::vector<double> totals;
  for (int r = 0; r < runs; ++r) {
    const EstimateWithError e = estimate_f(tabulate(sample_trials(pm, 77326, dist, 1000 + r)), signs);
    totals.push_back(e.total.value);
    sigma_total += e.total.sigma / runs;
    for (int b = 0; b < 4; ++b) sigma_b[b] += e.per_b[b].sigma / runs;
  }
  const double mean = [&] {
    double m = 0.0;
    for (double t : totals) m += t / runs;
    return m;
  }();
  const double sb_lo = *std::min_element(sigma_b.begin(), sigma_b.end());
  const double sb_hi = *std::max_element(sigma_b.begin(), sigma_b.end());
  const double vs = violation_sigma(7.8275, 0.0316, kRealBound);
  const bool pass = sigma_total >= 0.02 && sigma_total <= 0.06 && sb_lo >= 0.04 && sb_hi <= 0.12 &&
                    std::abs(vs - 5.30) <= 0.02;
  return {pass, "mean F = " + num(mean, 4) + ", sigma_total = " + num(sigma_total, 4) + " (need [0.02, 0.06]), per-b sigma in [" +
                    num(sb_lo, 4) + ", " + num(sb_hi, 4) + "] (need [0.04, 0.12]), violation = " + num(vs, 3) +
                    " (need 5.30 +- 0.02)"};
}

Outcome spacetime() {
  const std::map<std::string, double> reference = {
      {"S1-S2", 408},         {"QRNG_A-S1", 32},      {"QRNG_A-S2", 690},  {"QRNG_B-S1", 26},
      {"QRNG_B-S2", 51},      {"QRNG_C-S1", 601},     {"QRNG_C-S2", 32},   {"QRNG_A-QRNG_C", 1090},
      {"QRNG_B-QRNG_A", 502}, {"QRNG_B-QRNG_C", 521}, {"QRNG_A-M_B", 42},  {"QRNG_A-M_C", 604},
      {"QRNG_B-M_A", 146},    {"QRNG_B-M_C", 36},     {"QRNG_C-M_A", 839}, {"QRNG_C-M_B", 166},
  };
  const auto reports = verify_all(load_spacetime_config(read_text_file(fixture("paper-spacetime.cfg"))));
  double worst_margin = 0.0;
  double worst_sigma = 0.0;
  bool pass = reports.size() == reference.size();
  for (const MarginReport& r : reports) {
    const auto it = reference.find(r.label);
    if (it == reference.end()) {
      pass = false;
      continue;
    }
    worst_margin = std::max(worst_margin, std::abs(r.margin - it->second));
    worst_sigma = std::max(worst_sigma, std::abs(r.sigma - 4.0));
    pass = pass && r.pass;
  }
  pass = pass && worst_margin <= 1.0 && worst_sigma <= 1.0;
  return {pass, std::to_string(reports.size()) + " rows, all pass: " + (all_pass(reports) ? "yes" : "no") +
                    "; max |margin - reference| = " + num(worst_margin, 2) + " ns, max |sigma - 4| = " +
                    num(worst_sigma, 2) + " ns (need <= 1 ns each)"};
}

Outcome probability_matrix_values() {
  const QuantumState phi = bell_state(BellOutcome::PhiPlus);
  const ProbabilityMatrix pm = probability_matrix(phi, phi, build_settings());
  const std::array<double, 3> allowed = {0.1066942, 0.0183058, 0.0};
  // The listed values are rounded to 7 places; compare against the exact
  // (1 +- 1/sqrt2) / 16 they stand for, and check the rounding separately.
  const std::array<double, 3> exact = {(1 + 1 / std::sqrt(2.0)) / 16, (1 - 1 / std::sqrt(2.0)) / 16, 0.0};
  bool pass = true;
  double worst_sum = 0.0;
  for (int i = 0; i < 3; ++i) pass = pass && std::abs(exact[i] - allowed[i]) < 5e-8;
  for (const auto& row : pm.rows) {
    double sum = 0.0;
    for (double p : row) {
      sum += p;
      bool hit = false;
      for (double e : exact) hit = hit || std::abs(p - e) < 1e-9;
      pass = pass && hit;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  pass = pass && worst_sum < 1e-9;
  std::ostringstream os;
  os << pm.rows.size() << " rows x 16 entries in {0.1066942, 0.0183058, 0}; max |row sum - 1| = "
     << std::scientific << std::setprecision(1) << worst_sum;
  return {pass, os.str()};
}

Outcome tomography() {
  const QuantumState rho = werner(0.980267);
  const Vector target = bell_vector(BellOutcome::PhiPlus);
  double lo = 1.0;
  double hi = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const double f = pure_fidelity(mle_reconstruct(simulate_counts(rho, 100000, s)).rho, target);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const bool fid_ok = lo >= 0.9852 - 0.005 && hi <= 0.9852 + 0.005;
  std::array<double, 3> sigma{};
  const std::array<long long, 3> ns = {1000, 10000, 100000};
  for (int i = 0; i < 3; ++i) sigma[i] = fidelity_with_error(simulate_counts(rho, ns[i], 21), target, 100, 7).sigma;
  bool scale_ok = true;
  std::ostringstream ratios;
  for (int i = 0; i < 2; ++i) {
    const double ratio = sigma[i] / sigma[i + 1];
    scale_ok = scale_ok && ratio >= std::sqrt(10.0) / 1.5 && ratio <= std::sqrt(10.0) * 1.5;
    ratios << (i ? ", " : "") << num(ratio, 3);
  }
  return {fid_ok && scale_ok, "MLE fidelity over 50 seeds in [" + num(lo, 5) + ", " + num(hi, 5) +
                                  "] (need 0.9852 +- 0.005); bootstrap sigma " + num(sigma[0], 5) + " / " +
                                  num(sigma[1], 5) + " / " + num(sigma[2], 5) + ", step ratios " + ratios.str() +
                                  " (need sqrt10 within x1.5)"};
}

Outcome hom() {
  const HomCurve truth = hom_curve(delay_grid(-600, 600, 61), 133.0, 0.943, 600.0);
  const HomFit exact = fit_visibility(truth);
  const bool exact_ok = exact.converged && std::abs(exact.v - 0.943) < 1e-6;
  const int seeds = 200;
  int within = 0;
  for (int s = 0; s < seeds; ++s) {
    const HomFit f = fit_visibility(poisson_sample(truth, static_cast<std::uint64_t>(s)));
    if (f.converged && std::abs(f.v - 0.943) <= 0.02) ++within;
  }
  const double frac = static_cast<double>(within) / seeds;
  return {exact_ok && frac >= 0.95, "noiseless v = " + num(exact.v, 9) + " (need 0.943 +- 1e-6); Poisson seeds within +-0.02: " +
                                        std::to_string(within) + "/" + std::to_string(seeds) + " (need >= 95%)"};
}

Outcome waveplates() {
  const auto rows = load_setting_rows(ConfigDocument::parse(read_text_file(fixture("paper-waveplates.cfg"))));
  int matched = 0;
  std::ostringstream unmatched;
  for (const SettingRow& r : rows) {
    const SettingMatch m = verify_setting(r.chain, r.target);
    if (m.matched) {
      ++matched;
    } else {
      unmatched << " " << r.party << " " << r.index << " (" << r.target_text << ", residual "
                << fixed(m.residual, 7) << ")";
    }
  }
  const bool pass = matched == static_cast<int>(rows.size());
  std::string detail = std::to_string(matched) + "/" + std::to_string(rows.size()) + " rows match under some convention";
  if (!pass) detail += "; unmatched:" + unmatched.str();
  return {pass, detail};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace swapgame

int main() {
  using namespace swapgame;
  const std::vector<Criterion> criteria = {
      {1, "ideal score", 1, ideal_score},
      {2, "classical bound", 1, classical_bound},
      {3, "see-saw bounds", 300, seesaw_bounds},
      {4, "noise-calibrated prediction", 10, noise_prediction},
      {5, "statistics reproduction", 300, statistics},
      {6, "space-time audit", 1, spacetime},
      {7, "probability matrix", 1, probability_matrix_values},
      {8, "tomography round trip", 300, tomography},
      {9, "HOM round trip", 60, hom},
      {10, "waveplate verification", 1, waveplates},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.3f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
