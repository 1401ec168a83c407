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

// LMS, OLBI, ZA-LMS, RZA-LMS and l0-LMS behind a single step() interface.
//
// Every variant computes the prediction and error from the pre-update
// weights, applies the gradient term, then (ZA/RZA/l0) adds the attractor
// evaluated at the pre-update weights. The gradient term is the same
// expression for LMS and for the OLBI accumulator, so OLBI with gamma = 0
// reproduces LMS bit for bit.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "olbi/errors.hpp"
#include "olbi/proximal.hpp"

namespace olbi {

enum class Algorithm { kLms, kOlbi, kZa, kRza, kL0 };

std::string_view to_string(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

// Hyperparameters for one algorithm. Fields not used by the selected
// algorithm are ignored; the named constructors leave them at neutral values.
struct AlgoParams {
  Algorithm algo = Algorithm::kLms;
  double delta = 0.0;  // step size
  double gamma = 0.0;  // OLBI threshold
  double rho = 0.0;    // ZA/RZA attraction strength
  double eps = 1.0;    // RZA shape
  double kappa = 0.0;  // l0 attraction strength
  double alpha = 1.0;  // l0 shape

  static AlgoParams lms(double delta);
  static AlgoParams olbi(double delta, double gamma);
  static AlgoParams za(double delta, double rho);
  static AlgoParams rza(double delta, double rho, double eps);
  static AlgoParams l0(double delta, double kappa, double alpha);

  // Throws ParameterError naming the first offending field.
  void validate() const;

  friend bool operator==(const AlgoParams&, const AlgoParams&) = default;
};

template <typename Scalar>
struct StepOutcome {
  Scalar prediction;
  Scalar error;
};

template <typename Scalar>
class AdaptiveFilter {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  AdaptiveFilter(const AlgoParams& params, Eigen::Index n)
      : params_(params), n_(n) {
    params.validate();
    if (n < 1) throw ParameterError("n", "filter length must be >= 1");
    delta_ = static_cast<Scalar>(params.delta);
    w_ = Vector::Zero(n);
    switch (params.algo) {
      case Algorithm::kOlbi:
        threshold_ = Threshold<Scalar>(static_cast<Scalar>(params.gamma));
        m_ = Vector::Zero(n);
        break;
      case Algorithm::kZa:
      case Algorithm::kRza:
        attract_scale_ = delta_ * static_cast<Scalar>(params.rho);
        scratch_ = Vector::Zero(n);
        break;
      case Algorithm::kL0:
        attract_scale_ = delta_ * static_cast<Scalar>(params.kappa);
        scratch_ = Vector::Zero(n);
        break;
      case Algorithm::kLms:
        break;
    }
  }

  // Observes (x, f), returns prediction/error from the current weights and
  // then adapts. Throws DimensionError, NumericError on non-finite input, or
  // DivergedError (carrying the 1-based step index) if the update overflows;
  // after DivergedError the state is not usable.
  template <typename Derived>
  StepOutcome<Scalar> step(const Eigen::MatrixBase<Derived>& x, Scalar f) {
    if (x.size() != n_) throw DimensionError(n_, x.size());
    if (!std::isfinite(f) || !x.allFinite()) {
      throw NumericError("step: non-finite input sample");
    }
    const Scalar prediction = w_.dot(x);
    const Scalar error = f - prediction;
    const Scalar gain = delta_ * error;

    switch (params_.algo) {
      case Algorithm::kLms:
        w_.noalias() += gain * x;
        break;
      case Algorithm::kOlbi:
        m_.noalias() += gain * x;
        w_ = shrink(m_, threshold_);
        break;
      case Algorithm::kZa:
        scratch_ = attract_scale_ * w_.unaryExpr(ZaAttractor<Scalar>{});
        apply_gradient_and_attraction(gain, x);
        break;
      case Algorithm::kRza:
        scratch_ = attract_scale_ *
                   w_.unaryExpr(RzaAttractor<Scalar>(static_cast<Scalar>(params_.eps)));
        apply_gradient_and_attraction(gain, x);
        break;
      case Algorithm::kL0:
        scratch_ = attract_scale_ *
                   w_.unaryExpr(L0Attractor<Scalar>(static_cast<Scalar>(params_.alpha)));
        apply_gradient_and_attraction(gain, x);
        break;
    }
    ++step_count_;
    if (!w_.allFinite()) throw DivergedError(step_count_);
    return {prediction, error};
  }

  const Vector& weights() const noexcept { return w_; }
  // OLBI pre-threshold accumulator; empty for the other algorithms.
  const Vector& accumulator() const noexcept { return m_; }
  std::int64_t step_count() const noexcept { return step_count_; }
  Eigen::Index size() const noexcept { return n_; }
  const AlgoParams& params() const noexcept { return params_; }

 private:
  template <typename Derived>
  void apply_gradient_and_attraction(Scalar gain, const Eigen::MatrixBase<Derived>& x) {
    w_.noalias() += gain * x;
    w_ += scratch_;
  }

  AlgoParams params_;
  Eigen::Index n_;
  Scalar delta_{};
  Scalar attract_scale_{};
  Threshold<Scalar> threshold_{};
  Vector w_;
  Vector m_;
  Vector scratch_;
  std::int64_t step_count_ = 0;
};

template <typename Scalar = double>
AdaptiveFilter<Scalar> make_filter(const AlgoParams& params, Eigen::Index n) {
  return AdaptiveFilter<Scalar>(params, n);
}

// ||w - w_star||^2
template <typename Derived, typename OtherDerived>
typename Derived::Scalar misalignment(const Eigen::MatrixBase<Derived>& w,
                                      const Eigen::MatrixBase<OtherDerived>& w_star) {
  if (w.size() != w_star.size()) throw DimensionError(w.size(), w_star.size());
  return (w - w_star).squaredNorm();
}

template <typename Scalar, typename Derived>
Scalar misalignment(const AdaptiveFilter<Scalar>& filter,
                    const Eigen::MatrixBase<Derived>& w_star) {
  return misalignment(filter.weights(), w_star);
}

// Number of components with |w_i| > tol.
template <typename Derived>
Eigen::Index weight_sparsity(const Eigen::MatrixBase<Derived>& w,
                             typename Derived::Scalar tol) {
  if (!(tol >= 0)) throw ParameterError("tol", "must be >= 0");
  return (w.array().abs() > tol).count();
}

template <typename Scalar>
Eigen::Index weight_sparsity(const AdaptiveFilter<Scalar>& filter, Scalar tol) {
  return weight_sparsity(filter.weights(), tol);
}

}  // namespace olbi
