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

// Ground-truth sparse systems and seeded sample streams
// f_k = w_star' x_k + e_k with white Gaussian input and noise.

#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Core>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <nlohmann/json.hpp>

#include "olbi/theory.hpp"

namespace olbi {

enum class InputMode {
  kIidVector,        // fresh i.i.d. regressor every step
  kTappedDelayLine,  // x_k = [u_k, u_{k-1}, ..., u_{k-n+1}]
};

std::string_view to_string(InputMode mode) noexcept;
std::optional<InputMode> parse_input_mode(std::string_view name) noexcept;

// Mixes (master, stream, index) into an independent 64-bit seed. Pure, so
// per-trial seeds can be derived in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

struct ScenarioConfig {
  std::int64_t n = 1000;
  std::int64_t k0 = 100;
  double sigma_x2 = 1.0;
  // When set, the noise power is calibrated from the drawn system; otherwise
  // sigma_e2 is used as given.
  std::optional<double> snr_db = 20.0;
  double sigma_e2 = 0.0;
  InputMode input_mode = InputMode::kIidVector;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct Scenario {
  Eigen::VectorXd w_star;
  std::int64_t n = 0;
  std::int64_t k0 = 0;
  double sigma_x2 = 1.0;
  double sigma_e2 = 0.0;
  std::optional<double> snr_db;
  InputMode input_mode = InputMode::kIidVector;

  theory::SystemStats stats() const { return {n, k0, sigma_x2, sigma_e2}; }
};

// Draws k0 support positions uniformly without replacement and i.i.d.
// standard normal values on them (exact zeros are redrawn).
Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed);

// Scenario around a given system; k0 is its nonzero count.
Scenario scenario_from_weights(const Eigen::Ref<const Eigen::VectorXd>& w_star, double sigma_x2,
                               std::optional<double> snr_db, double sigma_e2 = 0.0,
                               InputMode mode = InputMode::kIidVector);

void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);

class SampleStream {
 public:
  SampleStream(const Scenario& scenario, std::uint64_t seed);

  // Advances to the next sample, updating x(), and returns f.
  double next();
  const Eigen::VectorXd& x() const noexcept { return x_; }

 private:
  double gaussian() { return normal_(engine_); }

  Eigen::VectorXd w_star_;
  InputMode mode_;
  double input_scale_;
  double noise_scale_;
  boost::random::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
  Eigen::VectorXd x_;
  bool primed_ = false;
};

}  // namespace olbi
