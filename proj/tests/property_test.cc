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

#include <gtest/gtest.h>

#include "properties.hpp"

namespace olbi::props {
namespace {

constexpr int kCases = 10'000;

void expect_ok(const PropertyResult& r) {
  EXPECT_EQ(r.cases, kCases) << r.name;
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
}

TEST(PropertyTest, Shrink) { expect_ok(shrink_odd_nonexpansive_deadzone(11, kCases)); }
TEST(PropertyTest, Attractors) { expect_ok(attractors_odd_and_attracting(12, kCases)); }
TEST(PropertyTest, OlbiCoupling) { expect_ok(olbi_coupling(13, kCases)); }
TEST(PropertyTest, ZeroStrengthReductions) { expect_ok(zero_strength_reductions(14, kCases)); }
TEST(PropertyTest, StepDeterminism) { expect_ok(step_determinism_and_rest(15, kCases)); }
TEST(PropertyTest, SteadyStateClosedForm) { expect_ok(steady_state_closed_form(16, kCases)); }
TEST(PropertyTest, ParallelOrderInvariance) { expect_ok(parallel_order_invariance(17, kCases)); }

}  // namespace
}  // namespace olbi::props
