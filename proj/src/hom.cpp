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

#include "swapgame/hom.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "swapgame/quantum.hpp"
#include "swapgame/report.hpp"
#include "swapgame/rng.hpp"

namespace swapgame {

namespace {

double dip_profile(double u, DipShape shape) {
  return shape == DipShape::Gaussian ? std::exp(-u * u) : std::exp(-std::abs(u));
}

// d g / d tau_c for u = t / tau_c.
double dip_profile_dtau(double t, double tau_c, DipShape shape) {
  const double u = t / tau_c;
  if (shape == DipShape::Gaussian) return std::exp(-u * u) * 2.0 * u * u / tau_c;
  return std::exp(-std::abs(u)) * std::abs(u) / tau_c;
}

// Parameters x = (c0, v, tau_c).
struct DipResidual : Eigen::DenseFunctor<double> {
  DipResidual(const HomCurve& curve, DipShape shape)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(curve.delays_ps.size())),
        curve_(curve),
        shape_(shape) {
    weights_.resize(curve.coincidences.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      weights_[i] = 1.0 / std::sqrt(std::max(curve.coincidences[i], 1.0));
    }
  }

  int operator()(const InputType& x, ValueType& fvec) const {
    for (Eigen::Index i = 0; i < fvec.size(); ++i) {
      const double model =
          hom_model(curve_.delays_ps[i], x[0], x[1], std::abs(x[2]), shape_);
      fvec[i] = weights_[i] * (model - curve_.coincidences[i]);
    }
    return 0;
  }

  int df(const InputType& x, JacobianType& jac) const {
    const double tau = std::abs(x[2]);
    const double tau_sign = x[2] < 0 ? -1.0 : 1.0;
    for (Eigen::Index i = 0; i < jac.rows(); ++i) {
      const double t = curve_.delays_ps[i];
      const double g = dip_profile(t / tau, shape_);
      jac(i, 0) = weights_[i] * (1.0 - x[1] * g);
      jac(i, 1) = weights_[i] * (-x[0] * g);
      jac(i, 2) = weights_[i] * (-x[0] * x[1] * dip_profile_dtau(t, tau, shape_)) * tau_sign;
    }
    return 0;
  }

  const HomCurve& curve_;
  DipShape shape_;
  std::vector<double> weights_;
};

}  // namespace

double hom_model(double delay_ps, double c0, double v, double tau_c, DipShape shape) {
  return c0 * (1.0 - v * dip_profile(delay_ps / tau_c, shape));
}

HomCurve hom_curve(const std::vector<double>& delays_ps, double tau_c, double v,
                   double c0, DipShape shape) {
  if (!(tau_c > 0.0)) throw InvalidInput("hom_curve: coherence time must be positive");
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("hom_curve: visibility outside [0, 1]");
  if (!(c0 >= 0.0)) throw InvalidInput("hom_curve: baseline must be nonnegative");
  HomCurve out;
  out.delays_ps = delays_ps;
  for (double t : delays_ps) out.coincidences.push_back(hom_model(t, c0, v, tau_c, shape));
  return out;
}

std::vector<double> delay_grid(double lo, double hi, int n) {
  if (n < 2) throw InvalidInput("delay_grid: need at least two points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

HomCurve poisson_sample(const HomCurve& curve, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  HomCurve out = curve;
  for (double& y : out.coincidences) {
    std::poisson_distribution<long long> draw(std::max(y, 0.0));
    y = y > 0.0 ? static_cast<double>(draw(rng)) : 0.0;
  }
  return out;
}

HomFit fit_visibility(const HomCurve& curve, DipShape shape) {
  HomFit fit;
  const std::size_t n = curve.delays_ps.size();
  if (n != curve.coincidences.size()) {
    throw InvalidInput("fit_visibility: delays and coincidences differ in length");
  }
  if (n < 5) {
    fit.status = "need at least 5 points";
    return fit;
  }

  // Starting point: baseline from the largest counts, depth from the
  // smallest, width from the points below half depth.
  std::vector<double> sorted = curve.coincidences;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t top = std::max<std::size_t>(1, n / 5);
  double c0 = 0.0;
  for (std::size_t i = n - top; i < n; ++i) c0 += sorted[i];
  c0 /= static_cast<double>(top);
  if (!(c0 > 0.0)) {
    fit.status = "no counts";
    return fit;
  }
  const double ymin = sorted.front();
  const double v0 = std::clamp(1.0 - ymin / c0, 0.0, 1.0);
  double half_width = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (curve.coincidences[i] < c0 * (1.0 - v0 / 2.0)) {
      half_width = std::max(half_width, std::abs(curve.delays_ps[i]));
    }
  }
  const auto [tmin, tmax] = std::minmax_element(curve.delays_ps.begin(), curve.delays_ps.end());
  double tau0 = half_width > 0.0 ? half_width / std::sqrt(std::log(2.0))
                                  : (*tmax - *tmin) / 8.0;
  if (!(tau0 > 0.0)) tau0 = 1.0;

  DipResidual functor(curve, shape);
  Eigen::LevenbergMarquardt<DipResidual> lm(functor);
  lm.setMaxfev(2000);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  Eigen::VectorXd x(3);
  x << c0, v0, tau0;
  const Eigen::LevenbergMarquardtSpace::Status status = lm.minimize(x);
  fit.iterations = static_cast<int>(lm.iterations());
  fit.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::FtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::XtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::GtolTooSmall;
  std::ostringstream st;
  st << (fit.converged ? "converged" : "not converged") << " (status "
     << static_cast<int>(status) << ")";

  Eigen::VectorXd residual(n);
  functor(x, residual);
  fit.chi2 = residual.squaredNorm();
  fit.c0 = x[0];
  fit.tau_c = std::abs(x[2]);

  Eigen::MatrixXd jac(n, 3);
  functor.df(x, jac);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  const double dof = n > 3 ? static_cast<double>(n - 3) : 1.0;
  const double scale = std::max(fit.chi2 / dof, 1e-300);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (lu.isInvertible()) {
    const Eigen::MatrixXd cov = lu.inverse() * scale;
    fit.sigma_c0 = std::sqrt(std::max(cov(0, 0), 0.0));
    fit.sigma_v = std::sqrt(std::max(cov(1, 1), 0.0));
    fit.sigma_tau_c = std::sqrt(std::max(cov(2, 2), 0.0));
  } else {
    fit.sigma_c0 = fit.sigma_v = fit.sigma_tau_c = std::nan("");
    st << ", singular covariance";
  }

  fit.v = x[1];
  if (fit.v < 0.0 || fit.v > 1.0) {
    st << ", visibility " << fit.v << " clipped";
    fit.v = std::clamp(fit.v, 0.0, 1.0);
  }
  fit.status = st.str();
  return fit;
}

std::string hom_csv(const HomCurve& curve) {
  std::ostringstream os;
  os << "delay_ps,coincidence\n";
  for (std::size_t i = 0; i < curve.delays_ps.size(); ++i) {
    os << fixed(curve.delays_ps[i], 3) << "," << fixed(curve.coincidences[i], 6) << "\n";
  }
  return os.str();
}

}  // namespace swapgame
