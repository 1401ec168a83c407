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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace olbi {

// Invalid hyperparameter or configuration value. The message names the field.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(const std::string& field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DimensionError : public std::invalid_argument {
 public:
  DimensionError(std::int64_t expected, std::int64_t actual)
      : std::invalid_argument("dimension mismatch: expected " +
                              std::to_string(expected) + ", got " +
                              std::to_string(actual)) {}
};

// A closed-form quantity was requested outside the region where it is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite value encountered, either in an input or produced by an update.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A filter update produced a non-finite weight.
class DivergedError : public NumericError {
 public:
  explicit DivergedError(std::int64_t step)
      : NumericError("filter diverged at step " + std::to_string(step)),
        step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

// Every Monte Carlo trial of an experiment diverged.
class AllTrialsDivergedError : public std::runtime_error {
 public:
  explicit AllTrialsDivergedError(std::int64_t trials)
      : std::runtime_error("all " + std::to_string(trials) + " trials diverged") {}
};

}  // namespace olbi
