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

#include "olbi/filters.hpp"

#include <limits>
#include <random>

#include <Eigen/Core>
#include <gtest/gtest.h>

namespace olbi {
namespace {

TEST(MakeFilterTest, ZeroInitialized) {
  auto lms = make_filter(AlgoParams::lms(0.1), 3);
  EXPECT_EQ(lms.weights(), Eigen::Vector3d::Zero());
  EXPECT_EQ(lms.step_count(), 0);
  EXPECT_EQ(lms.accumulator().size(), 0);

  auto olbi = make_filter(AlgoParams::olbi(0.1, 0.5), 2);
  EXPECT_EQ(olbi.weights(), Eigen::Vector2d::Zero());
  EXPECT_EQ(olbi.accumulator(), Eigen::Vector2d::Zero());
}

TEST(MakeFilterTest, RejectsInvalidParams) {
  auto field_of = [](const AlgoParams& p) {
    try {
      make_filter(p, 4);
    } catch (const ParameterError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of(AlgoParams::l0(0.1, 0.1, 0.0)), "alpha");
  EXPECT_EQ(field_of(AlgoParams::lms(0.0)), "delta");
  EXPECT_EQ(field_of(AlgoParams::olbi(0.1, -1.0)), "gamma");
  EXPECT_EQ(field_of(AlgoParams::za(0.1, -0.5)), "rho");
  EXPECT_EQ(field_of(AlgoParams::rza(0.1, 0.5, 0.0)), "eps");
  EXPECT_EQ(field_of(AlgoParams::l0(0.1, -1.0, 5.0)), "kappa");
  EXPECT_THROW(make_filter(AlgoParams::lms(0.1), 0), ParameterError);
}

TEST(StepTest, Lms) {
  auto f = make_filter(AlgoParams::lms(0.1), 2);
  const auto out = f.step(Eigen::Vector2d(1, 0), 1.0);
  EXPECT_EQ(out.prediction, 0.0);
  EXPECT_EQ(out.error, 1.0);
  EXPECT_DOUBLE_EQ(f.weights()[0], 0.1);
  EXPECT_EQ(f.weights()[1], 0.0);
  EXPECT_EQ(f.step_count(), 1);
}

TEST(StepTest, Olbi) {
  auto f = make_filter(AlgoParams::olbi(0.5, 0.5), 2);
  f.step(Eigen::Vector2d(1, 1), 2.0);
  EXPECT_EQ(f.accumulator(), Eigen::Vector2d(1, 1));
  EXPECT_EQ(f.weights(), Eigen::Vector2d(0.5, 0.5));
}

// Prime a single-tap filter to w = w0 with one LMS-style step; the attractor
// at w = 0 is zero so the first step is a pure gradient step.
template <typename Params>
AdaptiveFilter<double> primed(const Params& p, double w0) {
  auto f = make_filter(p, 1);
  // delta * (f - 0) * 1 = w0
  Eigen::VectorXd x(1);
  x << 1.0;
  f.step(x, w0 / p.delta);
  return f;
}

TEST(StepTest, ZaPureAttraction) {
  auto f = primed(AlgoParams::za(0.1, 0.05), 0.2);
  ASSERT_DOUBLE_EQ(f.weights()[0], 0.2);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(1);
  const auto out = f.step(x, 0.0);
  EXPECT_EQ(out.error, 0.0);
  EXPECT_NEAR(f.weights()[0], 0.195, 1e-15);
}

TEST(StepTest, L0PureAttraction) {
  auto f = primed(AlgoParams::l0(0.1, 0.1, 5.0), 0.1);
  ASSERT_DOUBLE_EQ(f.weights()[0], 0.1);
  f.step(Eigen::VectorXd::Zero(1), 0.0);
  EXPECT_NEAR(f.weights()[0], 0.075, 1e-15);
}

TEST(StepTest, RzaPureAttraction) {
  auto f = primed(AlgoParams::rza(0.1, 0.05, 10.0), 0.1);
  f.step(Eigen::VectorXd::Zero(1), 0.0);
  // 0.1 + 0.1 * 0.05 * (-1 / (1 + 1))
  EXPECT_NEAR(f.weights()[0], 0.0975, 1e-15);
}

TEST(StepTest, OlbiWithZeroThresholdMatchesLms) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto lms = make_filter(AlgoParams::lms(0.05), 8);
  auto olbi = make_filter(AlgoParams::olbi(0.05, 0.0), 8);
  Eigen::VectorXd x(8);
  for (int k = 0; k < 500; ++k) {
    for (auto& v : x) v = g(rng);
    const double f = g(rng);
    const auto a = lms.step(x, f);
    const auto b = olbi.step(x, f);
    ASSERT_EQ(a.prediction, b.prediction);
    ASSERT_EQ(lms.weights(), olbi.weights());
  }
}

TEST(StepTest, DimensionMismatch) {
  auto f = make_filter(AlgoParams::lms(0.1), 3);
  EXPECT_THROW(f.step(Eigen::Vector2d(1, 1), 0.0), DimensionError);
}

TEST(StepTest, NonFiniteInput) {
  auto f = make_filter(AlgoParams::lms(0.1), 2);
  EXPECT_THROW(f.step(Eigen::Vector2d(1, 1), std::numeric_limits<double>::quiet_NaN()),
               NumericError);
  EXPECT_THROW(f.step(Eigen::Vector2d(std::numeric_limits<double>::infinity(), 1), 0.0),
               NumericError);
}

TEST(StepTest, DivergenceCarriesStepIndex) {
  // delta far above any stability bound; the error doubles in magnitude every step.
  auto f = make_filter(AlgoParams::lms(1e200), 1);
  Eigen::VectorXd x(1);
  x << 1e100;
  try {
    for (int k = 0; k < 10; ++k) f.step(x, 1.0);
    FAIL() << "expected divergence";
  } catch (const DivergedError& e) {
    EXPECT_GE(e.step(), 1);
    EXPECT_LE(e.step(), 10);
  }
}

TEST(StepTest, FloatScalar) {
  AdaptiveFilter<float> f(AlgoParams::olbi(0.5, 0.5), 2);
  f.step(Eigen::Vector2f(1, 1), 2.0f);
  EXPECT_EQ(f.weights(), Eigen::Vector2f(0.5f, 0.5f));
}

TEST(MisalignmentTest, Examples) {
  EXPECT_EQ(misalignment(Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 4)), 25.0);
  EXPECT_EQ(misalignment(Eigen::Vector2d(3, 4), Eigen::Vector2d(3, 4)), 0.0);
  EXPECT_EQ(misalignment(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)), 2.0);
  auto f = make_filter(AlgoParams::lms(0.1), 2);
  EXPECT_EQ(misalignment(f, Eigen::Vector2d(3, 4)), 25.0);
  EXPECT_THROW(misalignment(f, Eigen::Vector3d(0, 0, 0)), DimensionError);
}

TEST(WeightSparsityTest, Examples) {
  EXPECT_EQ(weight_sparsity(Eigen::Vector3d(0, 0.5, -0.2), 0.0), 2);
  EXPECT_EQ(weight_sparsity(Eigen::Vector2d(1e-9, 1), 1e-6), 1);
  auto f = make_filter(AlgoParams::olbi(0.1, 0.5), 5);
  EXPECT_EQ(weight_sparsity(f, 0.0), 0);
  EXPECT_EQ(weight_sparsity(f, 1.0), 0);
}

TEST(AlgorithmNameTest, RoundTrip) {
  for (auto a : {Algorithm::kLms, Algorithm::kOlbi, Algorithm::kZa, Algorithm::kRza,
                 Algorithm::kL0}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("nlms").has_value());
}

}  // namespace
}  // namespace olbi
