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

#include "olbi/harness.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <gtest/gtest.h>

#include "olbi/theory.hpp"

namespace olbi {
namespace {

RunSpec small_spec(const AlgoParams& algo) {
  RunSpec spec;
  spec.scenario.n = 32;
  spec.scenario.k0 = 4;
  spec.scenario.snr_db = 20.0;
  spec.algo = algo;
  spec.steps = 3000;
  spec.trials = 6;
  spec.sample_every = 10;
  spec.master_seed = 99;
  spec.threads = 1;
  return spec;
}

TEST(RunTrialTest, OlbiZeroThresholdMatchesLms) {
  const auto a = run_trial(small_spec(AlgoParams::lms(5e-3)), 3);
  const auto b = run_trial(small_spec(AlgoParams::olbi(5e-3, 0.0)), 3);
  EXPECT_EQ(a.sq_misalignment, b.sq_misalignment);
}

TEST(RunTrialTest, NothingToLearn) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.5));
  spec.w_star = Eigen::VectorXd::Zero(16);
  spec.scenario.snr_db.reset();
  spec.scenario.sigma_e2 = 0.0;
  const auto rec = run_trial(spec, 0);
  for (double v : rec.sq_misalignment) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(rec.final_sparsity, 0);
}

TEST(RunTrialTest, Deterministic) {
  const RunSpec spec = small_spec(AlgoParams::za(5e-3, 1e-4));
  const auto a = run_trial(spec, 2);
  const auto b = run_trial(spec, 2);
  EXPECT_EQ(a.sq_misalignment, b.sq_misalignment);
  EXPECT_EQ(a.tail_mean_weights, b.tail_mean_weights);
  EXPECT_NE(a.sq_misalignment, run_trial(spec, 3).sq_misalignment);
}

TEST(RunTrialTest, SampleLayout) {
  const auto run = resolve(small_spec(AlgoParams::lms(5e-3)));
  EXPECT_EQ(run.num_samples, 301);
  EXPECT_EQ(run.steady_window, 30);
  const auto rec = run_trial(run, 0);
  ASSERT_EQ(rec.sq_misalignment.size(), 301u);
  EXPECT_EQ(rec.sq_misalignment[0], run.scenario.w_star.squaredNorm());
}

TEST(RunTrialTest, DivergenceIsFlagged) {
  const auto rec = run_trial(small_spec(AlgoParams::lms(0.5)), 0);
  EXPECT_TRUE(rec.diverged);
  EXPECT_GT(rec.diverged_at, 0);
}

TEST(RunExperimentTest, SingleTrialEqualsTrial) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.2));
  spec.trials = 1;
  const auto traj = run_experiment(spec);
  const auto rec = run_trial(spec, 0);
  EXPECT_EQ(traj.msd, rec.sq_misalignment);
  EXPECT_EQ(traj.trials_used, 1);
  EXPECT_EQ(traj.final_sparsity_mean, static_cast<double>(rec.final_sparsity));
  ASSERT_EQ(traj.msd_db.size(), traj.msd.size());
  for (std::size_t j = 0; j < traj.msd.size(); ++j) {
    EXPECT_DOUBLE_EQ(traj.msd_db[j], 10.0 * std::log10(traj.msd[j]));
  }
}

TEST(RunExperimentTest, MoreTrialsKeepEarlierOnes) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.2));
  const auto before = run_trial(spec, 1);
  spec.trials *= 2;
  EXPECT_EQ(run_trial(spec, 1).sq_misalignment, before.sq_misalignment);
}

TEST(RunExperimentTest, ThreadCountDoesNotChangeResult) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.2));
  spec.threads = 1;
  const auto a = run_experiment(spec);
  spec.threads = 4;
  const auto b = run_experiment(spec);
  EXPECT_EQ(a.msd, b.msd);
  EXPECT_EQ(a.tail_weights_mean, b.tail_weights_mean);
}

TEST(RunExperimentTest, AllDiverged) {
  EXPECT_THROW(run_experiment(small_spec(AlgoParams::lms(0.5))), AllTrialsDivergedError);
}

TEST(SteadyStateTest, ConstantTrajectory) {
  MsdTrajectory traj;
  traj.msd.assign(50, 0.125);
  for (int j = 0; j < 50; ++j) traj.steps_sampled.push_back(j * 10);
  traj.steady_window = 5;
  traj.scenario = scenario_from_weights(Eigen::VectorXd::Zero(3), 1.0, std::nullopt, 0.1);
  RunSpec spec = small_spec(AlgoParams::lms(1e-3));
  const auto est = steady_state_msd(traj, spec);
  EXPECT_EQ(est.value, 0.125);
}

TEST(SteadyStateTest, FullWindowIsFlagged) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.5));
  spec.steps = 0;
  const auto traj = run_experiment(spec);
  EXPECT_FALSE(steady_state_msd(traj, spec).transient_contaminated);
  spec.steady_window = static_cast<std::int64_t>(traj.msd.size());
  EXPECT_TRUE(steady_state_msd(traj, spec).transient_contaminated);
}

TEST(AutoStepsTest, CoversCrossingTimes) {
  RunSpec spec = small_spec(AlgoParams::olbi(1e-3, 0.5));
  spec.steps = 0;
  const auto run = resolve(spec);
  double min_mag = 1e300;
  for (auto v : run.scenario.w_star) {
    if (v != 0.0) min_mag = std::min(min_mag, std::abs(v));
  }
  EXPECT_GE(run.steps, 5.0 * 0.5 / (1e-3 * min_mag));
  EXPECT_EQ(run.steps % spec.sample_every, 0);

  RunSpec lms = small_spec(AlgoParams::lms(1e-3));
  lms.steps = 0;
  EXPECT_GE(resolve(lms).steps, 5000);
}

TEST(TheoryTest, PredictionsByAlgorithm) {
  const auto run = resolve(small_spec(AlgoParams::lms(1e-3)));
  const auto& sc = run.scenario;
  EXPECT_EQ(steady_state_theory(AlgoParams::olbi(1e-3, 0.5), sc),
            theory::olbi_steady_state_msd(1e-3, sc.stats()));
  EXPECT_EQ(steady_state_theory(AlgoParams::lms(1e-3), sc),
            theory::lms_steady_state_msd(1e-3, sc.stats()));
  EXPECT_EQ(steady_state_theory(AlgoParams::olbi(1e-3, 0.0), sc),
            theory::lms_steady_state_msd(1e-3, sc.stats()));
  EXPECT_FALSE(steady_state_theory(AlgoParams::za(1e-3, 1e-4), sc).has_value());
  EXPECT_FALSE(steady_state_theory(AlgoParams::lms(0.5), sc).has_value());
  const std::vector<std::int64_t> steps = {0, 10, 100000};
  const auto lms = theory_trajectory(AlgoParams::lms(1e-3), sc, steps);
  ASSERT_TRUE(lms.has_value());
  EXPECT_EQ((*lms)[0], sc.w_star.squaredNorm());
  EXPECT_NEAR((*lms)[2], theory::lms_steady_state_msd(1e-3, sc.stats()), 1e-9);
}

TEST(SweepTest, GammaZeroMatchesLms) {
  RunSpec spec = small_spec(AlgoParams::olbi(5e-3, 0.5));
  const std::vector<double> gammas = {0.0, 0.5};
  const auto result = sweep(spec, SweepParam::kGamma, gammas);
  ASSERT_EQ(result.param_values.size(), 2u);
  const auto lms = run_experiment(small_spec(AlgoParams::lms(5e-3)));
  EXPECT_EQ(result.steady_msd_sim[0], steady_state_msd(lms, small_spec(AlgoParams::lms(5e-3))).value);
  EXPECT_EQ(result.sparsity_sim[0], lms.final_sparsity_mean);
}

TEST(SweepTest, DeltaSweepBelowBoundIsFinite) {
  RunSpec spec = small_spec(AlgoParams::olbi(1e-3, 0.5));
  spec.steps = 0;
  const std::vector<double> deltas = {2e-3, 5e-3, 1e-2};
  const auto result = sweep(spec, SweepParam::kDelta, deltas);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    EXPECT_TRUE(std::isfinite(result.steady_msd_sim[i]));
    ASSERT_TRUE(result.steady_msd_theory[i].has_value());
    EXPECT_TRUE(std::isfinite(*result.steady_msd_theory[i]));
  }
  EXPECT_LT(*result.steady_msd_theory[0], *result.steady_msd_theory[2]);
}

TEST(SweepTest, K0SweepTheoryIncreases) {
  RunSpec spec = small_spec(AlgoParams::olbi(2e-3, 0.5));
  spec.scenario.snr_db.reset();
  spec.scenario.sigma_e2 = 0.01;
  spec.trials = 2;
  const std::vector<double> k0s = {2, 4, 8, 16};
  const auto result = sweep(spec, SweepParam::kK0, k0s);
  for (std::size_t i = 1; i < k0s.size(); ++i) {
    EXPECT_GT(*result.steady_msd_theory[i], *result.steady_msd_theory[i - 1]);
  }
}

TEST(SweepTest, DivergedPointsAreRecorded) {
  RunSpec spec = small_spec(AlgoParams::lms(5e-3));
  const std::vector<double> deltas = {5e-3, 0.5};
  const auto result = sweep(spec, SweepParam::kDelta, deltas);
  EXPECT_TRUE(std::isfinite(result.steady_msd_sim[0]));
  EXPECT_TRUE(std::isnan(result.steady_msd_sim[1]));
  EXPECT_EQ(result.diverged_trials[1], spec.trials);
}

TEST(SweepTest, InvalidParams) {
  RunSpec spec = small_spec(AlgoParams::lms(5e-3));
  EXPECT_THROW(with_param(spec, SweepParam::kGamma, 0.5), ParameterError);
  EXPECT_THROW(with_param(spec, SweepParam::kK0, 2.5), ParameterError);
  EXPECT_THROW(with_param(spec, SweepParam::kDelta, -1.0), ParameterError);
}

}  // namespace
}  // namespace olbi
