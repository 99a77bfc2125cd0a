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

// Two-photon interference dip: coincidences versus relative delay,
//   c(t) = c0 (1 - v g(t / tau_c)),  g(u) = exp(-u^2)  (or exp(-|u|)).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace swapgame {

enum class DipShape { Gaussian, Exponential };

struct HomCurve {
  std::vector<double> delays_ps;
  std::vector<double> coincidences;
};

double hom_model(double delay_ps, double c0, double v, double tau_c,
                 DipShape shape = DipShape::Gaussian);

/// Throws InvalidInput for tau_c <= 0, v outside [0, 1] or c0 < 0.
HomCurve hom_curve(const std::vector<double>& delays_ps, double tau_c, double v,
                   double c0, DipShape shape = DipShape::Gaussian);

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> delay_grid(double lo, double hi, int n);

/// Replaces every coincidence value by a Poisson draw with that mean.
HomCurve poisson_sample(const HomCurve& curve, std::uint64_t seed);

struct HomFit {
  bool converged = false;
  std::string status;
  double v = 0.0;
  double tau_c = 0.0;
  double c0 = 0.0;
  double sigma_v = 0.0;
  double sigma_tau_c = 0.0;
  double sigma_c0 = 0.0;
  double chi2 = 0.0;
  int iterations = 0;
};

/// Weighted least squares (Levenberg-Marquardt) of the dip model, weights
/// 1 / max(count, 1) as for Poisson counts. Uncertainties come from the
/// covariance (J^T W J)^-1 scaled by the reduced chi^2. A fit that does not
/// converge is reported through `converged` and `status`, not thrown. The
/// reported v is clipped to [0, 1]; clipping is noted in `status`.
HomFit fit_visibility(const HomCurve& curve, DipShape shape = DipShape::Gaussian);

/// "delay_ps,coincidence" header then one line per point.
std::string hom_csv(const HomCurve& curve);

}  // namespace swapgame
