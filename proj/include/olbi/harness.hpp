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

// Monte Carlo driver: runs seeded trials of one algorithm on one scenario,
// averages squared misalignment into an MSD trajectory, estimates the steady
// state, and sweeps a parameter against the closed-form predictions.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "olbi/filters.hpp"
#include "olbi/synth.hpp"

namespace olbi {

struct RunSpec {
  ScenarioConfig scenario;
  // Explicit true system; when set, scenario.n and scenario.k0 are ignored.
  std::optional<Eigen::VectorXd> w_star;
  AlgoParams algo = AlgoParams::olbi(8e-4, 0.5);
  std::int64_t steps = 0;          // 0 selects the automatic length
  std::int64_t trials = 100;
  std::int64_t sample_every = 10;
  std::int64_t steady_window = 0;  // in sampled points; 0 selects the last 10%
  std::uint64_t master_seed = 1;
  unsigned threads = 0;            // 0 = hardware concurrency

  void validate() const;
};

// A RunSpec with its scenario drawn and automatic sizes filled in.
struct ResolvedRun {
  RunSpec spec;
  Scenario scenario;
  std::int64_t steps = 0;
  std::int64_t num_samples = 0;    // samples at steps 0, s, 2s, ..., <= steps
  std::int64_t steady_window = 0;
};

ResolvedRun resolve(const RunSpec& spec);

// Automatic run length: long enough that the last 10% of the run lies past the
// predicted transient (5x the last crossing time for OLBI, 5/(delta sigma_x2)
// otherwise, extended to the 1% settling time of the MSD prediction).
std::int64_t auto_steps(const RunSpec& spec, const Scenario& scenario);

struct TrialRecord {
  std::vector<double> sq_misalignment;   // ||w_k - w_star||^2 at sampled steps
  Eigen::Index final_sparsity = 0;
  Eigen::VectorXd tail_mean_weights;     // mean of w over the steady window samples
  bool diverged = false;
  std::int64_t diverged_at = 0;
};

TrialRecord run_trial(const ResolvedRun& run, std::int64_t trial_index);
TrialRecord run_trial(const RunSpec& spec, std::int64_t trial_index);

struct MsdTrajectory {
  std::vector<std::int64_t> steps_sampled;
  std::vector<double> msd;
  std::vector<double> msd_db;
  std::int64_t trials_used = 0;
  std::int64_t diverged_trials = 0;
  double final_sparsity_mean = 0.0;
  // Across-trial mean and standard error of each trial's tail-mean weights.
  Eigen::VectorXd tail_weights_mean;
  Eigen::VectorXd tail_weights_stderr;
  Scenario scenario;
  std::int64_t steps = 0;
  std::int64_t steady_window = 0;
};

// Averages the non-diverged trials 0..trials-1 pointwise. Throws
// AllTrialsDivergedError if none survive.
MsdTrajectory run_experiment(const RunSpec& spec);
MsdTrajectory run_experiment(const ResolvedRun& run);

struct SteadyStateEstimate {
  double value = 0.0;
  // The averaging window starts before the predicted transient has ended.
  bool transient_contaminated = false;
};

SteadyStateEstimate steady_state_msd(const MsdTrajectory& traj, const RunSpec& spec);

// Closed-form steady state for the spec's algorithm on this scenario: the
// sparse formula for OLBI with gamma > 0, the LMS formula for LMS and OLBI
// with gamma = 0, none for the attractor variants or unstable step sizes.
std::optional<double> steady_state_theory(const AlgoParams& algo, const Scenario& scenario);

// Predicted MSD at the given steps, where a prediction exists.
std::optional<std::vector<double>> theory_trajectory(const AlgoParams& algo,
                                                     const Scenario& scenario,
                                                     std::span<const std::int64_t> steps);

enum class SweepParam { kDelta, kGamma, kK0, kSnrDb };

std::string_view to_string(SweepParam param) noexcept;
std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept;

struct SweepResult {
  SweepParam swept_param = SweepParam::kDelta;
  std::vector<double> param_values;
  std::vector<double> steady_msd_sim;                 // NaN if every trial diverged
  std::vector<std::optional<double>> steady_msd_theory;
  std::vector<double> sparsity_sim;                   // NaN if every trial diverged
  std::vector<std::int64_t> diverged_trials;
  std::vector<bool> transient_contaminated;
};

// Applies one parameter value to a copy of the template.
RunSpec with_param(const RunSpec& spec, SweepParam param, double value);

SweepResult sweep(const RunSpec& spec_template, SweepParam param, std::span<const double> values);

}  // namespace olbi
