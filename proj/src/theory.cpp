/*
 * Copyright 2026 The olbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "olbi/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <string>

namespace olbi::theory {
namespace {

void require_stable(double delta, double bound, const char* what) {
  if (!(delta > 0.0) || !(delta < bound)) {
    throw DomainError(std::string(what) + ": step size " + std::to_string(delta) +
                      " outside the mean-square stability range (0, " +
                      std::to_string(bound) + ")");
  }
}

double steady_state(double delta, double sigma_x2, double sigma_e2, double count) {
  return delta * sigma_e2 * count / (2.0 - delta * sigma_x2 * (count + 2.0));
}

}  // namespace

void SystemStats::validate() const {
  if (n < 1) throw ParameterError("n", "must be >= 1");
  if (k0 < 0 || k0 > n) throw ParameterError("k0", "must satisfy 0 <= k0 <= n");
  if (!std::isfinite(sigma_x2) || !(sigma_x2 > 0.0)) {
    throw ParameterError("sigma_x2", "must be finite and > 0");
  }
  if (!std::isfinite(sigma_e2) || !(sigma_e2 >= 0.0)) {
    throw ParameterError("sigma_e2", "must be finite and >= 0");
  }
}

double lms_mean_stability_bound(double lambda_max) {
  if (!std::isfinite(lambda_max) || !(lambda_max > 0.0)) {
    throw DomainError("lambda_max must be finite and > 0");
  }
  return 1.0 / lambda_max;
}

double white_input_mean_stability_bound(double sigma_x2) {
  return lms_mean_stability_bound(sigma_x2);
}

double olbi_ms_stability_bound(const SystemStats& stats) {
  stats.validate();
  return 2.0 / (static_cast<double>(stats.k0 + 2) * stats.sigma_x2);
}

double lms_ms_stability_bound(const SystemStats& stats) {
  stats.validate();
  return 2.0 / (static_cast<double>(stats.n + 2) * stats.sigma_x2);
}

double olbi_steady_state_msd(double delta, const SystemStats& stats) {
  require_stable(delta, olbi_ms_stability_bound(stats), "olbi_steady_state_msd");
  return steady_state(delta, stats.sigma_x2, stats.sigma_e2, static_cast<double>(stats.k0));
}

double lms_steady_state_msd(double delta, const SystemStats& stats) {
  require_stable(delta, lms_ms_stability_bound(stats), "lms_steady_state_msd");
  return steady_state(delta, stats.sigma_x2, stats.sigma_e2, static_cast<double>(stats.n));
}

double msd_ratio_small_delta(const SystemStats& stats) {
  stats.validate();
  return static_cast<double>(stats.k0) / static_cast<double>(stats.n);
}

double msd_recursion_gain(double delta, double sigma_x2, std::int64_t active) {
  return 1.0 - 2.0 * delta * sigma_x2 +
         static_cast<double>(active + 2) * delta * delta * sigma_x2 * sigma_x2;
}

std::vector<double> iterate_msd_recursion(double delta, const SystemStats& stats,
                                          std::int64_t k0_active, double d0,
                                          std::int64_t steps) {
  stats.validate();
  if (k0_active < 0) throw ParameterError("k0_active", "must be >= 0");
  if (steps < 1) throw ParameterError("steps", "must be >= 1");
  const double a = msd_recursion_gain(delta, stats.sigma_x2, k0_active);
  const double b = delta * delta * stats.sigma_x2 * stats.sigma_e2 *
                   static_cast<double>(k0_active);
  std::vector<double> d(static_cast<std::size_t>(steps) + 1);
  d[0] = d0;
  for (std::size_t k = 1; k < d.size(); ++k) d[k] = a * d[k - 1] + b;
  return d;
}

double PiecewiseMsdCurve::at(std::int64_t t) const {
  if (t < 0) throw ParameterError("t", "must be >= 0");
  // Last segment whose start is <= t; with tied starts this is the one with
  // the most active coefficients.
  const auto it = std::upper_bound(segment_starts.begin(), segment_starts.end(), t);
  const auto i = static_cast<std::size_t>(std::distance(segment_starts.begin(), it) - 1);
  const std::int64_t elapsed = t - segment_starts[i];
  if (elapsed == 0) return segment_start_values[i];
  const double a = segment_gains[i];
  const double fixed = segment_offsets[i] / (1.0 - a);
  return fixed + std::pow(a, static_cast<double>(elapsed)) * (segment_start_values[i] - fixed);
}

double PiecewiseMsdCurve::limit() const {
  return segment_offsets.back() / (1.0 - segment_gains.back());
}

PiecewiseMsdCurve instantaneous_msd_curve(const Eigen::Ref<const Eigen::VectorXd>& w_star,
                                          double delta, double gamma,
                                          const SystemStats& stats,
                                          std::int64_t horizon) {
  stats.validate();
  if (w_star.size() != stats.n) throw DimensionError(stats.n, w_star.size());
  if (!w_star.allFinite()) throw NumericError("instantaneous_msd_curve: non-finite w_star");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("instantaneous_msd_curve: requires gamma > 0 (use LMS theory for gamma = 0)");
  }
  if (horizon < 1) throw ParameterError("horizon", "must be >= 1");

  std::vector<double> mags;
  for (Eigen::Index i = 0; i < w_star.size(); ++i) {
    if (w_star[i] != 0.0) mags.push_back(std::abs(w_star[i]));
  }
  if (static_cast<std::int64_t>(mags.size()) != stats.k0) {
    throw ParameterError("k0", "must equal the nonzero count of w_star");
  }
  require_stable(delta, olbi_ms_stability_bound(stats), "instantaneous_msd_curve");
  std::sort(mags.begin(), mags.end(), std::greater<>());

  const auto k0 = mags.size();
  const double sx = stats.sigma_x2;
  // remaining[i]: deviation still held by the k0 - i un-crossed coefficients.
  std::vector<double> remaining(k0 + 1, 0.0);
  for (std::size_t j = k0; j-- > 0;) remaining[j] = remaining[j + 1] + mags[j] * mags[j];

  PiecewiseMsdCurve curve;
  curve.crossing_times.reserve(k0);
  for (double mag : mags) curve.crossing_times.push_back(gamma / (delta * mag * sx));

  for (std::size_t i = 0; i <= k0; ++i) {
    const auto active = static_cast<std::int64_t>(i);
    curve.segment_gains.push_back(msd_recursion_gain(delta, sx, active));
    curve.segment_offsets.push_back(2.0 * delta * sx * (1.0 - delta * sx) * remaining[i] +
                                    static_cast<double>(active) * delta * delta * sx *
                                        stats.sigma_e2);
  }

  curve.segment_starts.push_back(0);
  curve.segment_start_values.push_back(remaining[0]);
  for (std::size_t i = 1; i <= k0; ++i) {
    const auto start = static_cast<std::int64_t>(std::ceil(curve.crossing_times[i - 1]));
    curve.segment_starts.push_back(start);
    // Continuity: segment i starts from segment i-1's value at the same step.
    const double a = curve.segment_gains[i - 1];
    const double fixed = curve.segment_offsets[i - 1] / (1.0 - a);
    const std::int64_t elapsed = start - curve.segment_starts[i - 1];
    curve.segment_start_values.push_back(
        elapsed == 0 ? curve.segment_start_values[i - 1]
                     : fixed + std::pow(a, static_cast<double>(elapsed)) *
                                   (curve.segment_start_values[i - 1] - fixed));
  }

  curve.values.resize(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t t = 0; t <= horizon; ++t) {
    curve.values[static_cast<std::size_t>(t)] = curve.at(t);
  }
  return curve;
}

double noise_power_for_snr(const Eigen::Ref<const Eigen::VectorXd>& w_star,
                           double sigma_x2, double snr_db) {
  if (!std::isfinite(sigma_x2) || !(sigma_x2 > 0.0)) {
    throw ParameterError("sigma_x2", "must be finite and > 0");
  }
  if (!std::isfinite(snr_db)) throw ParameterError("snr_db", "must be finite");
  const double signal = w_star.squaredNorm() * sigma_x2;
  if (!(signal > 0.0)) throw DomainError("noise_power_for_snr: SNR undefined for an all-zero system");
  return signal / std::pow(10.0, snr_db / 10.0);
}

std::int64_t affine_settling_steps(double gain, double d0, double limit, double rel_tol) {
  if (!(limit > 0.0)) return 0;
  const double target = rel_tol * limit;
  const double gap = std::abs(d0 - limit);
  if (gap <= target) return 0;
  const double rate = std::abs(gain);
  if (rate == 0.0) return 1;
  if (!(rate < 1.0)) throw DomainError("affine_settling_steps: recursion does not contract");
  return static_cast<std::int64_t>(std::ceil(std::log(target / gap) / std::log(rate)));
}

std::int64_t lms_settling_steps(double delta, const SystemStats& stats, double d0,
                                double rel_tol) {
  const double limit = lms_steady_state_msd(delta, stats);
  return affine_settling_steps(msd_recursion_gain(delta, stats.sigma_x2, stats.n), d0, limit,
                               rel_tol);
}

}  // namespace olbi::theory
