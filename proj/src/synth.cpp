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

#include "olbi/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "olbi/errors.hpp"

namespace olbi {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void validate_common(double sigma_x2, const std::optional<double>& snr_db, double sigma_e2) {
  if (!std::isfinite(sigma_x2) || !(sigma_x2 > 0.0)) {
    throw ParameterError("sigma_x2", "must be finite and > 0");
  }
  if (snr_db && !std::isfinite(*snr_db)) throw ParameterError("snr_db", "must be finite");
  if (!snr_db && (!std::isfinite(sigma_e2) || !(sigma_e2 >= 0.0))) {
    throw ParameterError("sigma_e2", "must be finite and >= 0");
  }
}

}  // namespace

std::string_view to_string(InputMode mode) noexcept {
  return mode == InputMode::kIidVector ? "iid_vector" : "tapped_delay_line";
}

std::optional<InputMode> parse_input_mode(std::string_view name) noexcept {
  if (name == "iid_vector" || name == "iid") return InputMode::kIidVector;
  if (name == "tapped_delay_line" || name == "tdl") return InputMode::kTappedDelayLine;
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

Scenario scenario_from_weights(const Eigen::Ref<const Eigen::VectorXd>& w_star, double sigma_x2,
                               std::optional<double> snr_db, double sigma_e2, InputMode mode) {
  if (w_star.size() < 1) throw ParameterError("n", "must be >= 1");
  if (!w_star.allFinite()) throw NumericError("scenario: non-finite true weights");
  validate_common(sigma_x2, snr_db, sigma_e2);
  Scenario s;
  s.w_star = w_star;
  s.n = w_star.size();
  s.k0 = (w_star.array() != 0.0).count();
  s.sigma_x2 = sigma_x2;
  s.snr_db = snr_db;
  s.sigma_e2 = snr_db ? theory::noise_power_for_snr(w_star, sigma_x2, *snr_db) : sigma_e2;
  s.input_mode = mode;
  return s;
}

Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  if (config.n < 1) throw ParameterError("n", "must be >= 1");
  if (config.k0 < 0 || config.k0 > config.n) {
    throw ParameterError("k0", "must satisfy 0 <= k0 <= n");
  }
  if (config.k0 == 0 && config.snr_db) {
    throw ParameterError("k0", "k0 = 0 needs an explicit sigma_e2; SNR is undefined");
  }
  validate_common(config.sigma_x2, config.snr_db, config.sigma_e2);

  boost::random::mt19937_64 engine(seed);
  std::vector<std::int64_t> positions(static_cast<std::size_t>(config.n));
  std::iota(positions.begin(), positions.end(), 0);
  // Partial Fisher-Yates: the first k0 entries are a uniform k0-subset.
  for (std::int64_t i = 0; i < config.k0; ++i) {
    boost::random::uniform_int_distribution<std::int64_t> pick(i, config.n - 1);
    std::swap(positions[static_cast<std::size_t>(i)],
              positions[static_cast<std::size_t>(pick(engine))]);
  }
  boost::random::normal_distribution<double> normal;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(config.n);
  for (std::int64_t i = 0; i < config.k0; ++i) {
    double v = 0.0;
    while (v == 0.0) v = normal(engine);
    w[positions[static_cast<std::size_t>(i)]] = v;
  }
  return scenario_from_weights(w, config.sigma_x2, config.snr_db, config.sigma_e2,
                               config.input_mode);
}

void to_json(nlohmann::json& j, const Scenario& s) {
  j = nlohmann::json{
      {"n", s.n},
      {"k0", s.k0},
      {"sigma_x2", s.sigma_x2},
      {"sigma_e2", s.sigma_e2},
      {"snr_db", s.snr_db ? nlohmann::json(*s.snr_db) : nlohmann::json(nullptr)},
      {"input_mode", std::string(to_string(s.input_mode))},
      {"w_star", std::vector<double>(s.w_star.data(), s.w_star.data() + s.w_star.size())},
  };
}

void from_json(const nlohmann::json& j, Scenario& s) {
  const auto w = j.at("w_star").get<std::vector<double>>();
  const auto mode = parse_input_mode(j.at("input_mode").get<std::string>());
  if (!mode) throw ParameterError("input_mode", "unknown input mode");
  std::optional<double> snr;
  if (!j.at("snr_db").is_null()) snr = j.at("snr_db").get<double>();
  s = scenario_from_weights(Eigen::Map<const Eigen::VectorXd>(w.data(), std::ssize(w)),
                            j.at("sigma_x2").get<double>(), std::nullopt,
                            j.at("sigma_e2").get<double>(), *mode);
  s.snr_db = snr;
  if (s.k0 != j.at("k0").get<std::int64_t>()) {
    throw ParameterError("k0", "does not match the nonzero count of w_star");
  }
}

SampleStream::SampleStream(const Scenario& scenario, std::uint64_t seed)
    : w_star_(scenario.w_star),
      mode_(scenario.input_mode),
      input_scale_(std::sqrt(scenario.sigma_x2)),
      noise_scale_(std::sqrt(scenario.sigma_e2)),
      engine_(seed),
      x_(Eigen::VectorXd::Zero(scenario.n)) {}

double SampleStream::next() {
  const Eigen::Index n = x_.size();
  if (mode_ == InputMode::kIidVector || !primed_) {
    // The delay line starts full so the first regressor is already stationary.
    for (Eigen::Index i = 0; i < n; ++i) x_[i] = input_scale_ * gaussian();
    primed_ = true;
  } else {
    std::copy_backward(x_.data(), x_.data() + n - 1, x_.data() + n);
    x_[0] = input_scale_ * gaussian();
  }
  const double noise = noise_scale_ * gaussian();
  return w_star_.dot(x_) + noise;
}

}  // namespace olbi
