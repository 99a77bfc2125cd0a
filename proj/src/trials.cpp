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

#include "swapgame/trials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "swapgame/rng.hpp"

namespace swapgame {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int row_of(const ProbabilityMatrix& pm, const SettingCombo& c) {
  for (std::size_t r = 0; r < pm.combos.size(); ++r) {
    if (pm.combos[r] == c) return static_cast<int>(r);
  }
  return -1;
}

void check_index(int x, int z, int b, int a, int c) {
  if (x < 1 || x > kAliceSettings || z < 1 || z > kClaireSettings || b < 0 || b > 3 ||
      (a != 1 && a != -1) || (c != 1 && c != -1)) {
    std::ostringstream os;
    os << "count index (x=" << x << ", z=" << z << ", b=" << b << ", a=" << a
       << ", c=" << c << ") out of range";
    throw InvalidInput(os.str());
  }
}

std::string cell_name(const SettingCombo& combo, int b) {
  std::ostringstream os;
  os << "(x=" << combo.x << ", z=" << combo.z << ", b="
     << to_string(static_cast<BellOutcome>(b)) << ")";
  return os.str();
}

}  // namespace

SettingDistribution SettingDistribution::uniform(const std::vector<SettingCombo>& combos) {
  return SettingDistribution{combos, std::vector<double>(combos.size(), 1.0),
                             SettingSampling::UniformScored};
}

SettingDistribution SettingDistribution::uniform_all_discard(
    const std::vector<SettingCombo>& combos) {
  return SettingDistribution{combos, std::vector<double>(combos.size(), 1.0),
                             SettingSampling::UniformAllDiscard};
}

std::vector<TrialRecord> sample_trials(const ProbabilityMatrix& pm, std::int64_t n,
                                       const SettingDistribution& dist,
                                       std::uint64_t seed, int threads) {
  if (n < 0) throw InvalidInput("sample_trials: negative trial count");
  if (dist.support.empty() || dist.support.size() != dist.weights.size()) {
    throw InvalidInput("sample_trials: empty or malformed setting distribution");
  }
  std::vector<int> rows;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const int r = row_of(pm, dist.support[i]);
    if (r < 0) {
      throw InvalidInput("sample_trials: setting distribution names a combo that is not scored: " +
                         cell_name(dist.support[i], 0));
    }
    if (!(dist.weights[i] >= 0.0)) throw InvalidInput("sample_trials: negative weight");
    rows.push_back(r);
    acc += dist.weights[i];
    cumulative.push_back(acc);
  }
  if (!(acc > 0.0)) throw InvalidInput("sample_trials: weights sum to zero");

  // Row lookup for the discard mode: -1 marks an unscored pair.
  std::array<std::array<int, kClaireSettings>, kAliceSettings> scored{};
  for (auto& line : scored) line.fill(-1);
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    scored[dist.support[i].x - 1][dist.support[i].z - 1] = rows[i];
  }

  const std::int64_t blocks = (n + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::vector<TrialRecord>> out(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    const std::int64_t first = static_cast<std::int64_t>(k) * kTrialBlock;
    const std::int64_t last = std::min(n, first + kTrialBlock);
    auto& block = out[k];
    block.reserve(static_cast<std::size_t>(last - first));
    for (std::int64_t id = first; id < last; ++id) {
      int row = -1;
      SettingCombo combo;
      if (dist.mode == SettingSampling::UniformScored) {
        const double u = unit(rng) * acc;
        std::size_t i = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                        cumulative.begin();
        i = std::min(i, cumulative.size() - 1);
        row = rows[i];
        combo = dist.support[i];
      } else {
        const int cell = static_cast<int>(unit(rng) * kAliceSettings * kClaireSettings);
        combo = SettingCombo{cell / kClaireSettings + 1, cell % kClaireSettings + 1};
        row = scored[combo.x - 1][combo.z - 1];
      }
      // The outcome draw happens for every id so both modes consume the
      // stream identically per trial.
      const double u = unit(rng);
      if (row < 0) continue;
      const auto& probs = pm.rows[static_cast<std::size_t>(row)];
      double cum = 0.0;
      int col = -1;
      for (int j = 0; j < kNumColumns; ++j) {
        if (probs[j] <= 0.0) continue;
        cum += probs[j];
        col = j;
        if (u < cum) break;
      }
      if (col < 0) throw InvalidInput("sample_trials: probability row is all zero");
      block.push_back(TrialRecord{id, combo.x, combo.z, ProbabilityMatrix::column_b(col),
                                  ProbabilityMatrix::column_a(col),
                                  ProbabilityMatrix::column_c(col)});
    }
  });

  std::vector<TrialRecord> records;
  std::size_t size = 0;
  for (const auto& block : out) size += block.size();
  records.reserve(size);
  for (auto& block : out) records.insert(records.end(), block.begin(), block.end());
  return records;
}

void CountTable::add(int x, int z, int b, int a, int c, std::uint64_t weight) {
  check_index(x, z, b, a, c);
  counts_[x - 1][z - 1][b][slot(a)][slot(c)] += weight;
  total_ += weight;
}

void CountTable::add(const TrialRecord& r, std::uint64_t weight) {
  add(r.x, r.z, r.b, r.a, r.c, weight);
}

std::uint64_t CountTable::count(int x, int z, int b, int a, int c) const {
  check_index(x, z, b, a, c);
  return counts_[x - 1][z - 1][b][slot(a)][slot(c)];
}

std::uint64_t CountTable::cell_total(int x, int z, int b) const {
  check_index(x, z, b, 1, 1);
  const auto& cell = counts_[x - 1][z - 1][b];
  return cell[0][0] + cell[0][1] + cell[1][0] + cell[1][1];
}

std::uint64_t CountTable::setting_total(int x, int z) const {
  std::uint64_t sum = 0;
  for (int b = 0; b < 4; ++b) sum += cell_total(x, z, b);
  return sum;
}

CountTable tabulate(const std::vector<TrialRecord>& records) {
  CountTable ct;
  for (const TrialRecord& r : records) ct.add(r);
  return ct;
}

CountTable expected_counts(const ProbabilityMatrix& pm, std::uint64_t n_per_row) {
  CountTable ct;
  for (std::size_t r = 0; r < pm.rows.size(); ++r) {
    for (int col = 0; col < kNumColumns; ++col) {
      const auto k = static_cast<std::uint64_t>(
          std::llround(pm.rows[r][col] * static_cast<double>(n_per_row)));
      if (k == 0) continue;
      ct.add(pm.combos[r].x, pm.combos[r].z, ProbabilityMatrix::column_b(col),
             ProbabilityMatrix::column_a(col), ProbabilityMatrix::column_c(col), k);
    }
  }
  return ct;
}

namespace {

// Per-outcome sums with their variances.
std::array<ValueSigma, 4> per_outcome(const CountTable& ct, const SignTable& signs) {
  std::array<ValueSigma, 4> out{};
  const auto& combos = signs.combos();
  for (int b = 0; b < 4; ++b) {
    double value = 0.0;
    double variance = 0.0;
    for (std::size_t k = 0; k < combos.size(); ++k) {
      const int x = combos[k].x;
      const int z = combos[k].z;
      const std::uint64_t total = ct.cell_total(x, z, b);
      if (total == 0) {
        throw InsufficientData("no counts in cell " + cell_name(combos[k], b) +
                               "; its correlator is undefined");
      }
      const double n = static_cast<double>(total);
      const double same = static_cast<double>(ct.count(x, z, b, 1, 1) + ct.count(x, z, b, -1, -1));
      const double e = (2.0 * same - n) / n;
      value += signs.sign(b, k) * e;
      variance += (1.0 - e * e) / n;
    }
    out[b] = ValueSigma{value, std::sqrt(variance)};
  }
  return out;
}

}  // namespace

EstimateWithError estimate_f(const CountTable& ct, const SignTable& signs) {
  EstimateWithError est;
  est.per_b = per_outcome(ct, signs);
  double sum = 0.0;
  double var = 0.0;
  for (const ValueSigma& vs : est.per_b) {
    sum += vs.value;
    var += vs.sigma * vs.sigma;
  }
  est.total = ValueSigma{sum / 4.0, std::sqrt(var) / 4.0};
  return est;
}

EstimateWithError estimate_f_weighted(const CountTable& ct, const SignTable& signs) {
  EstimateWithError est;
  est.per_b = per_outcome(ct, signs);
  std::array<double, 4> nb{};
  double n = 0.0;
  for (const SettingCombo& c : signs.combos()) {
    for (int b = 0; b < 4; ++b) {
      const double k = static_cast<double>(ct.cell_total(c.x, c.z, b));
      nb[b] += k;
      n += k;
    }
  }
  double value = 0.0;
  double var = 0.0;
  for (int b = 0; b < 4; ++b) {
    const double w = nb[b] / n;
    value += w * est.per_b[b].value;
    var += w * w * est.per_b[b].sigma * est.per_b[b].sigma;
  }
  est.total = ValueSigma{value, std::sqrt(var)};
  return est;
}

BootstrapEstimate bootstrap_estimate(const CountTable& ct, const SignTable& signs,
                                     int resamples, std::uint64_t seed, int threads) {
  if (resamples < 2) throw InvalidInput("bootstrap_estimate: need at least two resamples");
  std::vector<double> values(static_cast<std::size_t>(resamples), std::nan(""));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, i);
    CountTable resampled;
    for (int x = 1; x <= kAliceSettings; ++x) {
      for (int z = 1; z <= kClaireSettings; ++z) {
        for (int b = 0; b < 4; ++b) {
          for (int a : {1, -1}) {
            for (int c : {1, -1}) {
              const std::uint64_t k = ct.count(x, z, b, a, c);
              if (k == 0) continue;
              std::poisson_distribution<std::uint64_t> draw(static_cast<double>(k));
              const std::uint64_t r = draw(rng);
              if (r > 0) resampled.add(x, z, b, a, c, r);
            }
          }
        }
      }
    }
    try {
      values[i] = estimate_f(resampled, signs).total.value;
    } catch (const InsufficientData&) {
      // left as NaN and counted below
    }
  });
  BootstrapEstimate out;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) {
      ++out.skipped;
      continue;
    }
    sum += v;
    ++out.resamples;
  }
  if (out.resamples < 2) throw InsufficientData("bootstrap_estimate: fewer than two usable resamples");
  out.mean = sum / out.resamples;
  double ss = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - out.mean) * (v - out.mean);
  }
  out.sigma = std::sqrt(ss / (out.resamples - 1));
  return out;
}

double violation_sigma(double value, double sigma, double bound) {
  if (!(sigma > 0.0)) throw InvalidInput("violation_sigma: sigma must be positive");
  return (value - bound) / sigma;
}

double violation_sigma(const EstimateWithError& est, double bound) {
  return violation_sigma(est.total.value, est.total.sigma, bound);
}

SettingFidelity setting_fidelity(std::uint64_t right, std::uint64_t wrong) {
  const std::uint64_t n = right + wrong;
  if (n == 0) throw InsufficientData("setting_fidelity: no calibration counts");
  SettingFidelity f{right, wrong, static_cast<double>(right) / static_cast<double>(n), 0.0};
  f.sigma = std::sqrt(f.value * (1.0 - f.value) / static_cast<double>(n));
  return f;
}

std::vector<SettingFidelity> alice_setting_fidelity(
    const CountTable& ct, const std::array<int, kAliceSettings>& expected_a) {
  std::vector<SettingFidelity> out;
  for (int x = 1; x <= kAliceSettings; ++x) {
    std::uint64_t right = 0;
    std::uint64_t wrong = 0;
    for (int z = 1; z <= kClaireSettings; ++z) {
      for (int b = 0; b < 4; ++b) {
        for (int c : {1, -1}) {
          right += ct.count(x, z, b, expected_a[x - 1], c);
          wrong += ct.count(x, z, b, -expected_a[x - 1], c);
        }
      }
    }
    out.push_back(setting_fidelity(right, wrong));
  }
  return out;
}

std::vector<SettingFidelity> claire_setting_fidelity(
    const CountTable& ct, const std::array<int, kClaireSettings>& expected_c) {
  std::vector<SettingFidelity> out;
  for (int z = 1; z <= kClaireSettings; ++z) {
    std::uint64_t right = 0;
    std::uint64_t wrong = 0;
    for (int x = 1; x <= kAliceSettings; ++x) {
      for (int b = 0; b < 4; ++b) {
        for (int a : {1, -1}) {
          right += ct.count(x, z, b, a, expected_c[z - 1]);
          wrong += ct.count(x, z, b, a, -expected_c[z - 1]);
        }
      }
    }
    out.push_back(setting_fidelity(right, wrong));
  }
  return out;
}

CountTable simulate_alice_calibration(std::uint64_t n_per_setting, double flip,
                                      std::uint64_t seed) {
  if (!(flip >= 0.0 && flip <= 1.0)) throw InvalidInput("calibration flip probability outside [0, 1]");
  CountTable ct;
  for (int x = 1; x <= kAliceSettings; ++x) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(x));
    std::binomial_distribution<std::uint64_t> draw(n_per_setting, flip);
    const std::uint64_t wrong = draw(rng);
    if (n_per_setting - wrong > 0) ct.add(x, 1, 0, 1, 1, n_per_setting - wrong);
    if (wrong > 0) ct.add(x, 1, 0, -1, 1, wrong);
  }
  return ct;
}

std::string trial_log_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "trial_id,x,z,b,a,c\n";
  for (const TrialRecord& r : records) {
    os << r.trial_id << "," << r.x << "," << r.z << ","
       << to_string(static_cast<BellOutcome>(r.b)) << "," << r.a << "," << r.c << "\n";
  }
  return os.str();
}

Json count_table_json(const CountTable& ct) {
  Json cells = Json::array();
  for (int x = 1; x <= kAliceSettings; ++x) {
    for (int z = 1; z <= kClaireSettings; ++z) {
      for (int b = 0; b < 4; ++b) {
        if (ct.cell_total(x, z, b) == 0) continue;
        cells.push_back(Json{{"x", x},
                             {"z", z},
                             {"b", std::string(to_string(static_cast<BellOutcome>(b)))},
                             {"n_pp", ct.count(x, z, b, 1, 1)},
                             {"n_pm", ct.count(x, z, b, 1, -1)},
                             {"n_mp", ct.count(x, z, b, -1, 1)},
                             {"n_mm", ct.count(x, z, b, -1, -1)}});
      }
    }
  }
  return Json{{"total", ct.total()}, {"cells", std::move(cells)}};
}

Json estimate_json(const EstimateWithError& est, double bound) {
  Json per_b = Json::object();
  for (BellOutcome b : kBellOutcomes) {
    const ValueSigma& vs = est.per_b[index_of(b)];
    per_b[std::string(to_string(b))] =
        Json{{"value", json_number(vs.value)}, {"sigma", json_number(vs.sigma)}};
  }
  Json out{{"per_b", std::move(per_b)},
           {"total", Json{{"value", json_number(est.total.value)},
                          {"sigma", json_number(est.total.sigma)}}},
           {"bound", json_number(bound)}};
  out["violation_sigma"] =
      est.total.sigma > 0.0 ? json_number(violation_sigma(est, bound)) : Json(nullptr);
  return out;
}

}  // namespace swapgame
