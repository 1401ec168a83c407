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

#pragma once

// Closed-form mean and mean-square behaviour of OLBI and LMS for white input:
// stability bounds, steady-state MSD, the affine MSD recursion, and the
// piecewise instantaneous-MSD predictor driven by threshold crossing times.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "olbi/errors.hpp"

namespace olbi::theory {

struct SystemStats {
  std::int64_t n = 1;         // filter length
  std::int64_t k0 = 0;        // nonzero count of the true system
  double sigma_x2 = 1.0;      // input power
  double sigma_e2 = 0.0;      // noise power

  void validate() const;
};

// Exclusive bound on the step size for convergence in the mean: 1/lambda_max.
double lms_mean_stability_bound(double lambda_max);
// White input has covariance sigma_x2 * I.
double white_input_mean_stability_bound(double sigma_x2);

// 2 / ((k0 + 2) sigma_x2)
double olbi_ms_stability_bound(const SystemStats& stats);
// 2 / ((n + 2) sigma_x2)
double lms_ms_stability_bound(const SystemStats& stats);

// delta sigma_e2 k0 / (2 - delta sigma_x2 (k0 + 2)); DomainError outside
// 0 < delta < olbi_ms_stability_bound.
double olbi_steady_state_msd(double delta, const SystemStats& stats);
// Same form with n in place of k0.
double lms_steady_state_msd(double delta, const SystemStats& stats);

// Small step-size limit of the OLBI/LMS steady-state ratio: k0 / n.
double msd_ratio_small_delta(const SystemStats& stats);

// Gain a and offset b of D_{k+1} = a D_k + b with `active` coefficients
// adapting and the rest already at their targets.
double msd_recursion_gain(double delta, double sigma_x2, std::int64_t active);

// D_0 .. D_steps of D_{k+1} = (1 - 2 d sx + (k+2) d^2 sx^2) D_k + d^2 sx se k.
// Unstable parameters are iterated as-is.
std::vector<double> iterate_msd_recursion(double delta, const SystemStats& stats,
                                          std::int64_t k0_active, double d0,
                                          std::int64_t steps);

struct PiecewiseMsdCurve {
  // Real-valued crossing times, one per nonzero true weight, ascending.
  std::vector<double> crossing_times;
  // a_i and b_i for i = 0..k0 active coefficients.
  std::vector<double> segment_gains;
  std::vector<double> segment_offsets;
  // Integer step at which i coefficients are active (ceil of crossing time),
  // and D at that step, for i = 0..k0. Ties produce repeated starts.
  std::vector<std::int64_t> segment_starts;
  std::vector<double> segment_start_values;
  // D_t for t = 0..horizon.
  std::vector<double> values;

  // Evaluates the curve at any step t >= 0, including beyond the horizon.
  double at(std::int64_t t) const;
  // Limit as t -> infinity.
  double limit() const;
};

// Requires gamma > 0 and a stable delta. The nonzero count is taken from
// w_star; stats.n must match its length.
PiecewiseMsdCurve instantaneous_msd_curve(const Eigen::Ref<const Eigen::VectorXd>& w_star,
                                          double delta, double gamma,
                                          const SystemStats& stats,
                                          std::int64_t horizon);

// Noise power giving the requested output SNR for i.i.d. zero-mean input:
// ||w_star||^2 sigma_x2 / 10^(snr_db / 10).
double noise_power_for_snr(const Eigen::Ref<const Eigen::VectorXd>& w_star,
                           double sigma_x2, double snr_db);

// Steps for the contraction D_{k+1} - L = a (D_k - L) started at d0 to come
// within rel_tol * L of its limit L. Returns 0 when already there or L == 0.
std::int64_t affine_settling_steps(double gain, double d0, double limit, double rel_tol);

// Settling time of the LMS MSD recursion started at d0.
std::int64_t lms_settling_steps(double delta, const SystemStats& stats, double d0,
                                double rel_tol);

}  // namespace olbi::theory
