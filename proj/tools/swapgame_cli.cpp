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

// swapgame: command-line front end.
//
// Exit codes:
//   0  success / verification passed
//   1  internal error
//   2  usage or configuration error
//   3  I/O error
//   4  insufficient data
//   5  verification failed

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "swapgame/config.hpp"
#include "swapgame/game.hpp"
#include "swapgame/hom.hpp"
#include "swapgame/jones.hpp"
#include "swapgame/noise.hpp"
#include "swapgame/report.hpp"
#include "swapgame/seesaw.hpp"
#include "swapgame/spacetime.hpp"
#include "swapgame/tomography.hpp"
#include "swapgame/trials.hpp"

namespace fs = std::filesystem;
using namespace swapgame;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kInsufficient = 4,
  kVerificationFailed = 5,
};

// Writes `text` to out/name, or to stdout when no output directory is set.
void emit(const std::optional<fs::path>& out, const std::string& name, const std::string& text) {
  if (!out) {
    std::cout << text;
    return;
  }
  write_text_file(*out / name, text);
}

void prepare_out(const std::optional<fs::path>& out) {
  if (!out) return;
  std::error_code ec;
  fs::create_directories(*out, ec);
  if (ec || !fs::is_directory(*out)) {
    throw IoError("cannot create output directory " + out->string());
  }
}

ConfigDocument load_config(const std::string& path) {
  return ConfigDocument::parse(read_text_file(path));
}

struct Common {
  std::optional<std::string> out;
  std::optional<fs::path> out_dir() const {
    return out ? std::optional<fs::path>(*out) : std::nullopt;
  }
};

// ---------------------------------------------------------------- ideal-score

int run_ideal_score(bool mixed, const Common& common) {
  const SettingsSpec settings = build_settings();
  const SignTable signs = derive_sign_table(settings);
  const QuantumState src = mixed ? QuantumState::maximally_mixed(4) : bell_state(BellOutcome::PhiPlus);
  const ProbabilityMatrix pm = probability_matrix(src, src, settings);
  const GameScore s = score(pm, signs);
  const bool match = std::abs(s.total - kQuantumMax) <= 1e-9;

  std::cout << "bounds (classical | real | complex): " << fixed(kClassicalBound, 0) << " | "
            << fixed(kRealBound, 2) << " | " << fixed(kQuantumMax, 2) << "\n";
  std::cout << "sources: " << (mixed ? "maximally mixed" : "ideal EPR pairs") << "\n";
  for (BellOutcome b : kBellOutcomes) {
    const auto& v = s.per_b[index_of(b)];
    std::cout << "F[" << to_string(b) << "] = " << (v ? fixed(*v, 7) : std::string("n/a")) << "\n";
  }
  std::cout << "total = " << fixed(s.total, 7) << "\n";
  std::cout << (match ? "matches" : "differs from") << " 6*sqrt(2) = " << fixed(kQuantumMax, 9)
            << "\n";

  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    Json j{{"sources", mixed ? "maximally_mixed" : "ideal"},
           {"bounds",
            {{"classical", kClassicalBound}, {"real", kRealBound}, {"complex", json_number(kQuantumMax)}}},
           {"score", score_json(s)},
           {"matches_quantum_max", match}};
    emit(out, "ideal_score.json", dump(j));
    emit(out, "probability_matrix.csv", probability_matrix_csv(pm));
  }
  return match ? kOk : kVerificationFailed;
}

// ------------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::int64_t n = 77326;
  std::uint64_t seed = 0;
  int threads = 1;
  bool all_settings = false;
  int boots = 0;
};

int run_simulate(const SimulateArgs& a, const Common& common) {
  if (a.n < 0) throw InvalidInput("--n must be non-negative");
  const NoiseParams np = load_noise_params(load_config(a.config));
  const SettingsSpec settings = build_settings();
  const SignTable signs = derive_sign_table(settings);
  const ProbabilityMatrix pm = noisy_probability_matrix(np, settings);
  const SettingDistribution dist = a.all_settings ? SettingDistribution::uniform_all_discard(pm.combos)
                                                  : SettingDistribution::uniform(pm.combos);
  if (a.n == 0) throw InsufficientData("no trials requested (--n 0)");
  const auto records = sample_trials(pm, a.n, dist, a.seed, a.threads);
  const CountTable ct = tabulate(records);
  const EstimateWithError est = estimate_f(ct, signs);

  Json report = estimate_json(est, kRealBound);
  report["trials_requested"] = a.n;
  report["trials_recorded"] = records.size();
  report["seed"] = a.seed;
  report["predicted_total"] = json_number(score(pm, signs).total);
  if (a.boots > 0) {
    const BootstrapEstimate bs = bootstrap_estimate(ct, signs, a.boots, a.seed, a.threads);
    report["bootstrap"] = Json{{"mean", json_number(bs.mean)},
                               {"sigma", json_number(bs.sigma)},
                               {"resamples", bs.resamples},
                               {"skipped", bs.skipped}};
  }

  std::cout << "trials: " << records.size() << " recorded of " << a.n << "\n";
  for (BellOutcome b : kBellOutcomes) {
    const ValueSigma& v = est.per_b[index_of(b)];
    std::cout << "F[" << to_string(b) << "] = " << fixed(v.value, 4) << " +- " << fixed(v.sigma, 4)
              << "\n";
  }
  std::cout << "total = " << fixed(est.total.value, 4) << " +- " << fixed(est.total.sigma, 4)
            << "\n";
  std::cout << "violation of " << fixed(kRealBound, 2) << ": "
            << fixed(violation_sigma(est, kRealBound), 2) << " sigma\n";

  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    emit(out, "trials.csv", trial_log_csv(records));
    emit(out, "estimate.json", dump(report));
    emit(out, "counts.json", dump(count_table_json(ct)));
  }
  return kOk;
}

// ------------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string field = "complex";
  std::string dims = "2,2,2,2";
  int restarts = 50;
  int max_iters = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int threads = 1;
  bool traces = false;
};

int run_optimize(const OptimizeArgs& a, const Common& common) {
  OptimizerConfig cfg;
  cfg.restarts = a.restarts;
  cfg.max_iters = a.max_iters;
  cfg.tol = a.tol;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  const Field field = parse_field(a.field);
  const StrategyDims dims = parse_dims(a.dims);
  const SignTable signs = derive_sign_table(build_settings());
  const OptimizeResult r = optimize(cfg, field, dims, signs);

  std::cout << "field " << to_string(field) << ", dims " << dims.alice << "," << dims.bob_left << ","
            << dims.bob_right << "," << dims.claire << ", " << cfg.restarts << " restarts\n";
  std::cout << "best value = " << fixed(r.best_value, 7) << " (restart " << r.best_restart << ")\n";
  if (field == Field::Real) {
    std::cout << "real-number bound " << fixed(kRealBound, 2) << ": "
              << (r.best_value <= kRealBoundCeiling ? "respected" : "EXCEEDED") << "\n";
  }
  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    emit(out, "optimize.json", dump(optimize_json(r, a.traces)));
  }
  return kOk;
}

// ------------------------------------------------------------------ spacetime

int run_spacetime(const std::string& config, const Common& common) {
  const SpacetimeConfig cfg = load_spacetime_config(read_text_file(config));
  const auto reports = verify_all(cfg);
  std::cout << margins_table(reports);
  const bool ok = all_pass(reports);
  int passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << reports.size() << " conditions pass (margin > " << fixed(cfg.k_sigma, 1)
            << " sigma, c = " << cfg.light_speed << " m/ns)\n";
  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    emit(out, "spacetime.json", dump(margins_json(reports, cfg)));
  }
  return ok ? kOk : kVerificationFailed;
}

// ----------------------------------------------------------------- tomography

struct TomographyArgs {
  std::optional<std::string> config;
  std::optional<std::string> counts;
  long long n = 100000;
  std::uint64_t seed = 0;
  int boots = 100;
  int threads = 1;
};

int run_tomography(const TomographyArgs& a, const Common& common) {
  double werner_p = p_from_fidelity(0.9852);
  if (a.config) {
    const ConfigDocument doc = load_config(*a.config);
    const ConfigSection& g = doc.globals();
    const ConfigEntry* f = g.find("fidelity");
    const ConfigEntry* p = g.find("werner_p");
    if (f && p) throw ConfigError(p->line, "give either fidelity or werner_p, not both");
    if (f) werner_p = p_from_fidelity(parse_double(f->value, f->line));
    if (p) werner_p = parse_double(p->value, p->line);
  }
  CountsByBasis counts;
  if (a.counts) {
    counts = parse_counts_csv(read_text_file(*a.counts));
  } else {
    if (a.n <= 0) throw InsufficientData("--n must be positive to simulate counts");
    counts = simulate_counts(werner(werner_p), a.n, a.seed);
  }
  try {
    counts.require_complete();
  } catch (const InvalidInput& e) {
    throw InsufficientData(e.what());
  }
  const Vector target = bell_vector(BellOutcome::PhiPlus);
  const ReconstructedState lin = linear_inversion(counts);
  const ReconstructedState mle = mle_reconstruct(counts);
  const FidelityEstimate fe = fidelity_with_error(counts, target, a.boots, a.seed, a.threads);

  std::cout << "linear inversion: fidelity " << fixed(pure_fidelity(lin.rho, target), 5)
            << ", min eigenvalue " << fixed(lin.min_eigenvalue, 6)
            << (lin.nonpositive ? " (NONPOSITIVE)" : "") << "\n";
  std::cout << "maximum likelihood: fidelity " << fixed(fe.fidelity, 5) << " +- " << fixed(fe.sigma, 5)
            << " (" << fe.used << " resamples, " << mle.iterations << " iterations"
            << (mle.converged ? "" : ", not converged") << ")\n";

  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    Json j{{"source", a.counts ? Json(*a.counts) : Json{{"werner_p", json_number(werner_p)},
                                                          {"n_per_basis", a.n},
                                                          {"seed", a.seed}}},
           {"linear", reconstruction_json(lin)},
           {"mle", reconstruction_json(mle)},
           {"fidelity_phi_plus",
            {{"linear", json_number(pure_fidelity(lin.rho, target))},
             {"mle", json_number(fe.fidelity)},
             {"bootstrap_mean", json_number(fe.mean)},
             {"bootstrap_sigma", json_number(fe.sigma)},
             {"boots", fe.boots},
             {"used", fe.used},
             {"excluded", fe.excluded},
             {"unconverged", fe.unconverged}}}};
    emit(out, "tomography.json", dump(j));
    emit(out, "counts.csv", counts_csv(counts));
  }
  return kOk;
}

// ------------------------------------------------------------------------ hom

struct HomArgs {
  double v = 0.943;
  double tau_c = 133.0;
  double c0 = 600.0;
  double range = 600.0;
  int points = 61;
  std::optional<std::uint64_t> seed;
  std::string shape = "gaussian";
};

int run_hom(const HomArgs& a, const Common& common) {
  DipShape shape;
  if (a.shape == "gaussian") {
    shape = DipShape::Gaussian;
  } else if (a.shape == "exponential") {
    shape = DipShape::Exponential;
  } else {
    throw InvalidInput("--shape must be gaussian or exponential");
  }
  const HomCurve model = hom_curve(delay_grid(-a.range, a.range, a.points), a.tau_c, a.v, a.c0, shape);
  const HomCurve data = a.seed ? poisson_sample(model, *a.seed) : model;
  const HomFit fit = fit_visibility(data, shape);

  std::cout << "model: v = " << fixed(a.v, 4) << ", tau_c = " << fixed(a.tau_c, 1)
            << " ps, dip minimum " << fixed(hom_model(0.0, a.c0, a.v, a.tau_c, shape), 3) << " = "
            << fixed(1.0 - a.v, 3) << " * c0\n";
  std::cout << "fit (" << (a.seed ? "Poisson sample" : "noiseless") << "): v = " << fixed(fit.v, 6)
            << " +- " << fixed(fit.sigma_v, 6) << ", tau_c = " << fixed(fit.tau_c, 3) << " +- "
            << fixed(fit.sigma_tau_c, 3) << " ps, status " << fit.status << "\n";

  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    Json j{{"model", {{"v", a.v}, {"tau_c_ps", a.tau_c}, {"c0", a.c0}, {"shape", a.shape}}},
           {"seed", a.seed ? Json(*a.seed) : Json(nullptr)},
           {"fit",
            {{"converged", fit.converged},
             {"status", fit.status},
             {"v", json_number(fit.v)},
             {"sigma_v", json_number(fit.sigma_v)},
             {"tau_c_ps", json_number(fit.tau_c)},
             {"sigma_tau_c_ps", json_number(fit.sigma_tau_c)},
             {"c0", json_number(fit.c0)},
             {"sigma_c0", json_number(fit.sigma_c0)},
             {"chi2", json_number(fit.chi2)},
             {"iterations", fit.iterations}}}};
    emit(out, "hom_fit.json", dump(j));
    emit(out, "hom_curve.csv", hom_csv(data));
  }
  return fit.converged ? kOk : kVerificationFailed;
}

// -------------------------------------------------------------------- predict

int run_predict(const std::optional<std::string>& config, const Common& common) {
  const NoiseParams np = config ? load_noise_params(load_config(*config)) : reference_noise_params();
  const SettingsSpec settings = build_settings();
  const ProbabilityMatrix pm = noisy_probability_matrix(np, settings);
  const GameScore s = score(pm, derive_sign_table(settings));
  std::cout << "p1 = " << fixed(np.p1, 6) << ", p2 = " << fixed(np.p2, 6) << ", v = " << fixed(np.v_bsm, 4)
            << "\n";
  for (BellOutcome b : kBellOutcomes) {
    const auto& v = s.per_b[index_of(b)];
    std::cout << "F[" << to_string(b) << "] = " << (v ? fixed(*v, 6) : std::string("n/a")) << "\n";
  }
  std::cout << "predicted total = " << fixed(s.total, 6) << "\n";
  const bool uniform = !np.f_alice && !np.f_claire;
  std::optional<double> closed;
  if (uniform) {
    closed = closed_form_score(np.p1, np.p2, np.v_bsm, np.f_setting);
    std::cout << "closed form     = " << fixed(*closed, 6) << "\n";
  }
  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    Json j{{"p1", json_number(np.p1)},
           {"p2", json_number(np.p2)},
           {"v_bsm", json_number(np.v_bsm)},
           {"score", score_json(s)},
           {"closed_form", closed ? json_number(*closed) : Json(nullptr)}};
    emit(out, "prediction.json", dump(j));
    emit(out, "probability_matrix.csv", probability_matrix_csv(pm));
  }
  return kOk;
}

// ----------------------------------------------------------------- waveplates

int run_waveplates(const std::string& config, const Common& common) {
  const auto rows = load_setting_rows(load_config(config));
  if (rows.empty()) throw ConfigError(0, "no [setting <party> <index>] sections");
  Json arr = Json::array();
  int matched = 0;
  for (const SettingRow& row : rows) {
    const SettingMatch m = verify_setting(row.chain, row.target);
    matched += m.matched ? 1 : 0;
    std::cout << row.party << " " << row.index << "  " << row.target_text << "  "
              << (m.matched ? "match" : "NO MATCH") << "  residual " << std::scientific
              << m.residual << std::defaultfloat << "  [" << m.convention.describe()
              << (m.sign < 0 ? ", labels swapped" : "") << "]\n";
    Json chain = Json::array();
    for (const ChainElement& e : row.chain.elements) chain.push_back(format_element(e));
    arr.push_back(Json{{"party", row.party},
                       {"index", row.index},
                       {"target", row.target_text},
                       {"elements", std::move(chain)},
                       {"matched", m.matched},
                       {"residual", m.residual},
                       {"sign", m.sign},
                       {"convention", m.convention.describe()},
                       {"recorded_fidelity",
                        row.recorded_fidelity ? Json(*row.recorded_fidelity) : Json(nullptr)}});
  }
  std::cout << matched << "/" << rows.size() << " rows verified\n";
  const auto out = common.out_dir();
  if (out) {
    prepare_out(out);
    emit(out, "waveplates.json", dump(Json{{"rows", std::move(arr)}}));
  }
  return matched == static_cast<int>(rows.size()) ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-swapping game toolkit"};
  app.require_subcommand(1);
  Common common;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory for report files");
  };

  bool mixed = false;
  auto* ideal = app.add_subcommand("ideal-score", "Score of the ideal strategy and reference bounds");
  ideal->add_flag("--mixed", mixed, "Use maximally mixed sources instead of EPR pairs");
  add_out(ideal);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiment under a noise model");
  simulate->add_option("--config", sim.config, "Noise config file")->required();
  simulate->add_option("--seed", sim.seed, "Master seed")->required();
  simulate->add_option("--n", sim.n, "Number of trials");
  simulate->add_option("--threads", sim.threads, "Worker threads (results do not depend on it)");
  simulate->add_flag("--all-settings", sim.all_settings,
                     "Draw all 18 setting pairs and discard the unscored ones");
  simulate->add_option("--boots", sim.boots, "Poisson bootstrap resamples (0 disables)");
  add_out(simulate);

  OptimizeArgs opt;
  auto* optimize_cmd = app.add_subcommand("optimize", "See-saw search over quantum strategies");
  optimize_cmd->add_option("--field", opt.field, "complex or real");
  optimize_cmd->add_option("--dims", opt.dims, "Local dimensions alice,bob_left,bob_right,claire");
  optimize_cmd->add_option("--restarts", opt.restarts, "Random restarts");
  optimize_cmd->add_option("--max-iters", opt.max_iters, "Sweeps per restart");
  optimize_cmd->add_option("--tol", opt.tol, "Stop when a sweep gains less than this");
  optimize_cmd->add_option("--seed", opt.seed, "Master seed")->required();
  optimize_cmd->add_option("--threads", opt.threads, "Worker threads (results do not depend on it)");
  optimize_cmd->add_flag("--traces", opt.traces, "Include per-sweep values in the report");
  add_out(optimize_cmd);

  std::string st_config;
  auto* spacetime = app.add_subcommand("spacetime", "Space-like separation audit");
  spacetime->add_option("--config", st_config, "Layout config file")->required();
  add_out(spacetime);

  TomographyArgs tomo;
  auto* tomography = app.add_subcommand("tomography", "Two-qubit state tomography round trip");
  tomography->add_option("--config", tomo.config, "Source config (fidelity or werner_p)");
  tomography->add_option("--counts", tomo.counts, "Reconstruct from a counts CSV instead");
  tomography->add_option("--n", tomo.n, "Counts per basis when simulating");
  tomography->add_option("--seed", tomo.seed, "Master seed")->required();
  tomography->add_option("--boots", tomo.boots, "Bootstrap resamples");
  tomography->add_option("--threads", tomo.threads, "Worker threads (results do not depend on it)");
  add_out(tomography);

  HomArgs hom;
  auto* hom_cmd = app.add_subcommand("hom", "Two-photon interference dip model and fit");
  hom_cmd->add_option("--v", hom.v, "Visibility");
  hom_cmd->add_option("--tau-c", hom.tau_c, "Coherence time (ps)");
  hom_cmd->add_option("--c0", hom.c0, "Coincidences per point away from the dip");
  hom_cmd->add_option("--range", hom.range, "Delay scan half-width (ps)");
  hom_cmd->add_option("--points", hom.points, "Delay points");
  hom_cmd->add_option("--shape", hom.shape, "gaussian or exponential");
  hom_cmd->add_option("--seed", hom.seed, "Poisson-sample the curve with this seed");
  add_out(hom_cmd);

  std::optional<std::string> predict_config;
  auto* predict = app.add_subcommand("predict", "Noise-model prediction of the score");
  predict->add_option("--config", predict_config, "Noise config (defaults to the reference)");
  add_out(predict);

  std::string wp_config;
  auto* waveplates = app.add_subcommand("waveplates", "Verify waveplate chains against targets");
  waveplates->add_option("--config", wp_config, "Settings config")->required();
  add_out(waveplates);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ideal) return run_ideal_score(mixed, common);
    if (*simulate) return run_simulate(sim, common);
    if (*optimize_cmd) return run_optimize(opt, common);
    if (*spacetime) return run_spacetime(st_config, common);
    if (*tomography) return run_tomography(tomo, common);
    if (*hom_cmd) return run_hom(hom, common);
    if (*predict) return run_predict(predict_config, common);
    if (*waveplates) return run_waveplates(wp_config, common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const InsufficientData& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return kInsufficient;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
