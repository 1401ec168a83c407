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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "olbi/theory.hpp"

namespace olbi {
namespace {

constexpr std::uint64_t kScenarioStream = 0x5343454E4152494FULL;
constexpr std::uint64_t kTrialStream = 0x545249414C53ULL;
constexpr double kSettleTolerance = 0.01;
constexpr double kTailFraction = 0.1;

std::int64_t ceil_to_int(double v) {
  if (!(v < 4.0e18)) throw DomainError("automatic run length overflows");
  return static_cast<std::int64_t>(std::ceil(v));
}

bool is_sparse_olbi(const AlgoParams& algo) {
  return algo.algo == Algorithm::kOlbi && algo.gamma > 0.0;
}

// LMS recursion on all n coefficients: LMS itself, OLBI at gamma = 0, and the
// attractor variants as a proxy.
bool lms_stable(const AlgoParams& algo, const Scenario& sc) {
  return algo.delta < theory::lms_ms_stability_bound(sc.stats());
}

bool olbi_stable(const AlgoParams& algo, const Scenario& sc) {
  return algo.delta < theory::olbi_ms_stability_bound(sc.stats());
}

double min_nonzero_magnitude(const Eigen::VectorXd& w) {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) m = std::min(m, std::abs(w[i]));
  }
  return m;
}

// Step at which the predicted transient ends, if there is a prediction.
std::optional<std::int64_t> transient_end(const AlgoParams& algo, const Scenario& sc) {
  if (is_sparse_olbi(algo)) {
    if (sc.k0 == 0) return 0;
    return ceil_to_int(algo.gamma / (algo.delta * min_nonzero_magnitude(sc.w_star) * sc.sigma_x2));
  }
  if ((algo.algo == Algorithm::kLms || algo.algo == Algorithm::kOlbi) && lms_stable(algo, sc)) {
    return theory::lms_settling_steps(algo.delta, sc.stats(), sc.w_star.squaredNorm(),
                                      kSettleTolerance);
  }
  return std::nullopt;
}

}  // namespace

void RunSpec::validate() const {
  algo.validate();
  if (steps < 0) throw ParameterError("steps", "must be >= 0 (0 = automatic)");
  if (trials < 1) throw ParameterError("trials", "must be >= 1");
  if (sample_every < 1) throw ParameterError("sample_every", "must be >= 1");
  if (steady_window < 0) throw ParameterError("steady_window", "must be >= 0 (0 = automatic)");
}

std::int64_t auto_steps(const RunSpec& spec, const Scenario& sc) {
  const AlgoParams& algo = spec.algo;
  std::int64_t steps = ceil_to_int(5.0 / (algo.delta * sc.sigma_x2));
  if (is_sparse_olbi(algo) && sc.k0 > 0) {
    const double last_crossing =
        algo.gamma / (algo.delta * min_nonzero_magnitude(sc.w_star) * sc.sigma_x2);
    steps = std::max(steps, ceil_to_int(5.0 * last_crossing));
    if (olbi_stable(algo, sc)) {
      const auto curve =
          theory::instantaneous_msd_curve(sc.w_star, algo.delta, algo.gamma, sc.stats(), 1);
      const double settled =
          static_cast<double>(curve.segment_starts.back()) +
          static_cast<double>(theory::affine_settling_steps(
              curve.segment_gains.back(), curve.segment_start_values.back(), curve.limit(),
              kSettleTolerance));
      steps = std::max(steps, ceil_to_int(settled / (1.0 - kTailFraction)));
    }
  } else if (lms_stable(algo, sc)) {
    const auto settled = theory::lms_settling_steps(algo.delta, sc.stats(),
                                                    sc.w_star.squaredNorm(), kSettleTolerance);
    steps = std::max(steps, ceil_to_int(static_cast<double>(settled) / (1.0 - kTailFraction)));
  }
  const std::int64_t stride = spec.sample_every;
  return (steps + stride - 1) / stride * stride;
}

ResolvedRun resolve(const RunSpec& spec) {
  spec.validate();
  ResolvedRun run;
  run.spec = spec;
  if (spec.w_star) {
    run.scenario = scenario_from_weights(*spec.w_star, spec.scenario.sigma_x2,
                                         spec.scenario.snr_db, spec.scenario.sigma_e2,
                                         spec.scenario.input_mode);
  } else {
    run.scenario =
        make_scenario(spec.scenario, derive_seed(spec.master_seed, kScenarioStream, 0));
  }
  run.steps = spec.steps > 0 ? spec.steps : auto_steps(spec, run.scenario);
  run.num_samples = run.steps / spec.sample_every + 1;
  run.steady_window =
      spec.steady_window > 0
          ? spec.steady_window
          : std::max<std::int64_t>(1, static_cast<std::int64_t>(static_cast<double>(
                                          run.num_samples) * kTailFraction));
  if (run.steady_window > run.num_samples) {
    throw ParameterError("steady_window", "exceeds the number of sampled points");
  }
  return run;
}

TrialRecord run_trial(const ResolvedRun& run, std::int64_t trial_index) {
  const Scenario& sc = run.scenario;
  const std::int64_t stride = run.spec.sample_every;
  const std::int64_t tail_start = run.num_samples - run.steady_window;

  AdaptiveFilter<double> filter(run.spec.algo, sc.n);
  SampleStream stream(sc, derive_seed(run.spec.master_seed, kTrialStream,
                                      static_cast<std::uint64_t>(trial_index)));
  TrialRecord rec;
  rec.sq_misalignment.reserve(static_cast<std::size_t>(run.num_samples));
  rec.tail_mean_weights = Eigen::VectorXd::Zero(sc.n);

  auto record = [&](std::int64_t sample) {
    rec.sq_misalignment.push_back(misalignment(filter, sc.w_star));
    if (sample >= tail_start) rec.tail_mean_weights += filter.weights();
  };

  record(0);
  for (std::int64_t k = 1; k <= run.steps; ++k) {
    const double f = stream.next();
    try {
      filter.step(stream.x(), f);
    } catch (const DivergedError& e) {
      rec.diverged = true;
      rec.diverged_at = e.step();
      return rec;
    }
    if (k % stride == 0) record(k / stride);
  }
  rec.tail_mean_weights /= static_cast<double>(run.steady_window);

  const auto& w = filter.weights();
  // shrink gives exact zeros; OLBI at gamma = 0 is LMS and is counted like it
  const bool exact = run.spec.algo.algo == Algorithm::kOlbi && run.spec.algo.gamma > 0.0;
  const double tol = exact ? 0.0 : 1e-8 * w.cwiseAbs().maxCoeff();
  rec.final_sparsity = weight_sparsity(w, tol);
  return rec;
}

TrialRecord run_trial(const RunSpec& spec, std::int64_t trial_index) {
  return run_trial(resolve(spec), trial_index);
}

MsdTrajectory run_experiment(const RunSpec& spec) { return run_experiment(resolve(spec)); }

MsdTrajectory run_experiment(const ResolvedRun& run) {
  const auto trials = static_cast<std::size_t>(run.spec.trials);
  std::vector<TrialRecord> records(trials);
  std::vector<std::exception_ptr> errors(trials);

  unsigned workers = run.spec.threads > 0 ? run.spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(trials));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        records[i] = run_trial(run, static_cast<std::int64_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Fixed index-order reduction, independent of completion order.
  MsdTrajectory traj;
  traj.scenario = run.scenario;
  traj.steps = run.steps;
  traj.steady_window = run.steady_window;
  const auto samples = static_cast<std::size_t>(run.num_samples);
  traj.msd.assign(samples, 0.0);
  std::vector<const TrialRecord*> used;
  for (const auto& rec : records) {
    if (rec.diverged) {
      ++traj.diverged_trials;
      continue;
    }
    used.push_back(&rec);
    for (std::size_t j = 0; j < samples; ++j) traj.msd[j] += rec.sq_misalignment[j];
    traj.final_sparsity_mean += static_cast<double>(rec.final_sparsity);
  }
  if (used.empty()) throw AllTrialsDivergedError(run.spec.trials);

  const auto count = static_cast<double>(used.size());
  traj.trials_used = static_cast<std::int64_t>(used.size());
  traj.final_sparsity_mean /= count;
  traj.steps_sampled.resize(samples);
  traj.msd_db.resize(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    traj.msd[j] /= count;
    traj.msd_db[j] = 10.0 * std::log10(traj.msd[j]);
    traj.steps_sampled[j] = static_cast<std::int64_t>(j) * run.spec.sample_every;
  }

  traj.tail_weights_mean = Eigen::VectorXd::Zero(run.scenario.n);
  for (const auto* rec : used) traj.tail_weights_mean += rec->tail_mean_weights;
  traj.tail_weights_mean /= count;
  if (used.size() > 1) {
    Eigen::VectorXd ss = Eigen::VectorXd::Zero(run.scenario.n);
    for (const auto* rec : used) {
      ss += (rec->tail_mean_weights - traj.tail_weights_mean).cwiseAbs2();
    }
    traj.tail_weights_stderr = (ss / (count - 1.0) / count).cwiseSqrt();
  } else {
    traj.tail_weights_stderr =
        Eigen::VectorXd::Constant(run.scenario.n, std::numeric_limits<double>::quiet_NaN());
  }
  return traj;
}

SteadyStateEstimate steady_state_msd(const MsdTrajectory& traj, const RunSpec& spec) {
  const auto size = static_cast<std::int64_t>(traj.msd.size());
  if (size == 0) throw ParameterError("trajectory", "is empty");
  const std::int64_t window = spec.steady_window > 0 ? spec.steady_window : traj.steady_window;
  if (window < 1 || window > size) {
    throw ParameterError("steady_window", "must lie within the sampled trajectory");
  }
  SteadyStateEstimate est;
  double sum = 0.0;
  for (std::int64_t j = size - window; j < size; ++j) sum += traj.msd[static_cast<std::size_t>(j)];
  est.value = sum / static_cast<double>(window);

  const auto end = transient_end(spec.algo, traj.scenario);
  est.transient_contaminated =
      end && traj.steps_sampled[static_cast<std::size_t>(size - window)] < *end;
  return est;
}

std::optional<double> steady_state_theory(const AlgoParams& algo, const Scenario& sc) {
  if (is_sparse_olbi(algo)) {
    if (!olbi_stable(algo, sc)) return std::nullopt;
    return theory::olbi_steady_state_msd(algo.delta, sc.stats());
  }
  if (algo.algo == Algorithm::kLms || algo.algo == Algorithm::kOlbi) {
    if (!lms_stable(algo, sc)) return std::nullopt;
    return theory::lms_steady_state_msd(algo.delta, sc.stats());
  }
  return std::nullopt;
}

std::optional<std::vector<double>> theory_trajectory(const AlgoParams& algo, const Scenario& sc,
                                                     std::span<const std::int64_t> steps) {
  std::vector<double> out;
  out.reserve(steps.size());
  if (is_sparse_olbi(algo)) {
    if (!olbi_stable(algo, sc)) return std::nullopt;
    const auto curve =
        theory::instantaneous_msd_curve(sc.w_star, algo.delta, algo.gamma, sc.stats(), 1);
    for (auto t : steps) out.push_back(curve.at(t));
    return out;
  }
  if (algo.algo == Algorithm::kLms || algo.algo == Algorithm::kOlbi) {
    if (!lms_stable(algo, sc)) return std::nullopt;
    const double limit = theory::lms_steady_state_msd(algo.delta, sc.stats());
    const double gain = theory::msd_recursion_gain(algo.delta, sc.sigma_x2, sc.n);
    const double d0 = sc.w_star.squaredNorm();
    for (auto t : steps) {
      out.push_back(t == 0 ? d0 : limit + std::pow(gain, static_cast<double>(t)) * (d0 - limit));
    }
    return out;
  }
  return std::nullopt;
}

std::string_view to_string(SweepParam param) noexcept {
  switch (param) {
    case SweepParam::kDelta: return "delta";
    case SweepParam::kGamma: return "gamma";
    case SweepParam::kK0: return "k0";
    case SweepParam::kSnrDb: return "snr_db";
  }
  return "unknown";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept {
  for (auto p : {SweepParam::kDelta, SweepParam::kGamma, SweepParam::kK0, SweepParam::kSnrDb}) {
    if (to_string(p) == name) return p;
  }
  if (name == "snr-db") return SweepParam::kSnrDb;
  return std::nullopt;
}

RunSpec with_param(const RunSpec& spec, SweepParam param, double value) {
  RunSpec out = spec;
  switch (param) {
    case SweepParam::kDelta:
      out.algo.delta = value;
      break;
    case SweepParam::kGamma:
      if (spec.algo.algo != Algorithm::kOlbi) {
        throw ParameterError("gamma", "only OLBI has a threshold to sweep");
      }
      out.algo.gamma = value;
      break;
    case SweepParam::kK0:
      if (spec.w_star) throw ParameterError("k0", "cannot sweep k0 with an explicit system");
      if (value != std::floor(value) || value < 0.0) {
        throw ParameterError("k0", "sweep values must be nonnegative integers");
      }
      out.scenario.k0 = static_cast<std::int64_t>(value);
      break;
    case SweepParam::kSnrDb:
      out.scenario.snr_db = value;
      break;
  }
  out.validate();
  return out;
}

SweepResult sweep(const RunSpec& spec_template, SweepParam param, std::span<const double> values) {
  SweepResult result;
  result.swept_param = param;
  for (double value : values) {
    const RunSpec spec = with_param(spec_template, param, value);
    const ResolvedRun run = resolve(spec);
    result.param_values.push_back(value);
    result.steady_msd_theory.push_back(steady_state_theory(spec.algo, run.scenario));
    try {
      const MsdTrajectory traj = run_experiment(run);
      const SteadyStateEstimate est = steady_state_msd(traj, spec);
      result.steady_msd_sim.push_back(est.value);
      result.sparsity_sim.push_back(traj.final_sparsity_mean);
      result.diverged_trials.push_back(traj.diverged_trials);
      result.transient_contaminated.push_back(est.transient_contaminated);
    } catch (const AllTrialsDivergedError&) {
      result.steady_msd_sim.push_back(std::numeric_limits<double>::quiet_NaN());
      result.sparsity_sim.push_back(std::numeric_limits<double>::quiet_NaN());
      result.diverged_trials.push_back(spec.trials);
      result.transient_contaminated.push_back(false);
    }
  }
  return result;
}

}  // namespace olbi
