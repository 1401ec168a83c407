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

// Soft-thresholding and the zero-point attractors used by the sparse LMS
// family. Scalar forms validate their input; the functor forms are meant for
// Eigen's unaryExpr and propagate NaN/Inf instead of throwing, leaving the
// finiteness check to the caller.

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "olbi/errors.hpp"

namespace olbi {

namespace detail {

template <typename Scalar>
inline void require_finite(Scalar z, const char* what) {
  if (!std::isfinite(z)) {
    throw NumericError(std::string(what) + ": non-finite input");
  }
}

}  // namespace detail

// sgn with sgn(0) = 0.
template <typename Scalar>
constexpr Scalar sgn(Scalar z) noexcept {
  return static_cast<Scalar>((Scalar(0) < z) - (z < Scalar(0)));
}

// Nonnegative soft-threshold level.
template <typename Scalar>
class Threshold {
 public:
  constexpr Threshold() = default;
  explicit Threshold(Scalar gamma) : gamma_(gamma) {
    if (!(gamma >= Scalar(0)) || !std::isfinite(gamma)) {
      throw ParameterError("gamma", "must be finite and >= 0");
    }
  }

  constexpr Scalar value() const noexcept { return gamma_; }

 private:
  Scalar gamma_ = Scalar(0);
};

template <typename Scalar>
struct ShrinkOp {
  Scalar gamma;

  // Dead-zone branch multiplies by zero so a NaN input stays NaN.
  constexpr Scalar operator()(Scalar a) const noexcept {
    if (a > gamma) return a - gamma;
    if (a < -gamma) return a + gamma;
    return a * Scalar(0);
  }
};

template <typename Scalar>
Scalar shrink(Scalar a, Threshold<Scalar> gamma) {
  detail::require_finite(a, "shrink");
  return ShrinkOp<Scalar>{gamma.value()}(a);
}

// Componentwise shrink as a lazy expression.
template <typename Derived>
auto shrink(const Eigen::MatrixBase<Derived>& a,
            Threshold<typename Derived::Scalar> gamma) {
  return a.unaryExpr(ShrinkOp<typename Derived::Scalar>{gamma.value()});
}

// h(z) = -sgn(z)
template <typename Scalar>
struct ZaAttractor {
  constexpr Scalar operator()(Scalar z) const noexcept { return -sgn(z); }
};

// h(z) = -sgn(z) / (1 + eps |z|)
template <typename Scalar>
class RzaAttractor {
 public:
  explicit RzaAttractor(Scalar eps) : eps_(eps) {
    if (!(eps > Scalar(0)) || !std::isfinite(eps)) {
      throw ParameterError("eps", "must be finite and > 0");
    }
  }

  Scalar operator()(Scalar z) const noexcept {
    return -sgn(z) / (Scalar(1) + eps_ * std::abs(z));
  }

  Scalar eps() const noexcept { return eps_; }

 private:
  Scalar eps_;
};

// h(z) = alpha^2 z - alpha sgn(z) on |z| < 1/alpha, 0 elsewhere. The formula
// vanishes at |z| = 1/alpha, so the boundary is assigned to the outer branch
// to make it exactly zero there.
template <typename Scalar>
class L0Attractor {
 public:
  explicit L0Attractor(Scalar alpha) : alpha_(alpha), inv_alpha_(Scalar(1) / alpha) {
    if (!(alpha > Scalar(0)) || !std::isfinite(alpha)) {
      throw ParameterError("alpha", "must be finite and > 0");
    }
  }

  Scalar operator()(Scalar z) const noexcept {
    if (!(std::abs(z) < inv_alpha_)) return std::isnan(z) ? z : Scalar(0);
    return alpha_ * alpha_ * z - alpha_ * sgn(z);
  }

  Scalar alpha() const noexcept { return alpha_; }

 private:
  Scalar alpha_;
  Scalar inv_alpha_;
};

template <typename Scalar>
Scalar h_za(Scalar z) {
  detail::require_finite(z, "h_za");
  return ZaAttractor<Scalar>{}(z);
}

template <typename Scalar>
Scalar h_rza(Scalar z, Scalar eps) {
  RzaAttractor<Scalar> h(eps);
  detail::require_finite(z, "h_rza");
  return h(z);
}

template <typename Scalar>
Scalar h_l0(Scalar z, Scalar alpha) {
  L0Attractor<Scalar> h(alpha);
  detail::require_finite(z, "h_l0");
  return h(z);
}

}  // namespace olbi
