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

#include "olbi/proximal.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Core>
#include <gtest/gtest.h>

namespace olbi {
namespace {

using Th = Threshold<double>;

TEST(ShrinkTest, PiecewiseCases) {
  EXPECT_NEAR(shrink(0.7, Th(0.5)), 0.2, 1e-15);
  EXPECT_EQ(shrink(-0.3, Th(0.5)), 0.0);
  EXPECT_NEAR(shrink(-1.2, Th(0.5)), -0.7, 1e-15);
  EXPECT_EQ(shrink(0.5, Th(0.5)), 0.0);
  EXPECT_EQ(shrink(-0.5, Th(0.5)), 0.0);
}

TEST(ShrinkTest, ZeroThresholdIsIdentity) {
  for (double x : {-3.5, -1e-300, 0.0, 2.0, 1e300}) {
    EXPECT_EQ(shrink(x, Th(0.0)), x);
  }
}

TEST(ShrinkTest, VectorFormIsComponentwise) {
  Eigen::Vector4d a(0.7, -0.3, -1.2, 0.0);
  Eigen::Vector4d out = shrink(a, Th(0.5));
  EXPECT_NEAR(out[0], 0.2, 1e-15);
  EXPECT_EQ(out[1], 0.0);
  EXPECT_NEAR(out[2], -0.7, 1e-15);
  EXPECT_EQ(out[3], 0.0);
}

TEST(ShrinkTest, RejectsNonFiniteInput) {
  EXPECT_THROW(shrink(std::numeric_limits<double>::quiet_NaN(), Th(0.5)), NumericError);
  EXPECT_THROW(shrink(std::numeric_limits<double>::infinity(), Th(0.5)), NumericError);
}

TEST(ShrinkTest, VectorFormPropagatesNaN) {
  Eigen::Vector2d a(std::numeric_limits<double>::quiet_NaN(), 0.1);
  Eigen::Vector2d out = shrink(a, Th(0.5));
  EXPECT_TRUE(std::isnan(out[0]));
  EXPECT_EQ(out[1], 0.0);
}

TEST(ThresholdTest, RejectsNegative) {
  EXPECT_THROW(Th(-0.1), ParameterError);
  EXPECT_THROW(Th(std::numeric_limits<double>::quiet_NaN()), ParameterError);
}

TEST(AttractorTest, ZeroAttracting) {
  EXPECT_EQ(h_za(2.5), -1.0);
  EXPECT_EQ(h_za(0.0), 0.0);
  EXPECT_EQ(h_za(-0.01), 1.0);
}

TEST(AttractorTest, Reweighted) {
  EXPECT_DOUBLE_EQ(h_rza(0.1, 10.0), -0.5);
  EXPECT_EQ(h_rza(0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(h_rza(-1.0, 10.0), 1.0 / 11.0);
  EXPECT_THROW(h_rza(0.1, 0.0), ParameterError);
  EXPECT_THROW(RzaAttractor<double>(-1.0), ParameterError);
}

TEST(AttractorTest, L0) {
  EXPECT_DOUBLE_EQ(h_l0(0.1, 5.0), -2.5);
  EXPECT_EQ(h_l0(0.3, 5.0), 0.0);
  EXPECT_DOUBLE_EQ(h_l0(-0.1, 5.0), 2.5);
  EXPECT_EQ(h_l0(0.0, 5.0), 0.0);
  EXPECT_EQ(h_l0(0.2, 5.0), 0.0);
  EXPECT_EQ(h_l0(-0.2, 5.0), 0.0);
  EXPECT_THROW(h_l0(0.1, 0.0), ParameterError);
}

TEST(AttractorTest, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(h_za(nan), NumericError);
  EXPECT_THROW(h_rza(nan, 1.0), NumericError);
  EXPECT_THROW(h_l0(nan, 1.0), NumericError);
}

TEST(AttractorTest, FloatInstantiation) {
  EXPECT_FLOAT_EQ(shrink(0.7f, Threshold<float>(0.5f)), 0.2f);
  EXPECT_FLOAT_EQ(h_l0(0.1f, 5.0f), -2.5f);
}

}  // namespace
}  // namespace olbi
