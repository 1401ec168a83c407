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

#include <cmath>

namespace olbi {
namespace {

void require(bool ok, const char* field, const char* reason) {
  if (!ok) throw ParameterError(field, reason);
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kLms: return "lms";
    case Algorithm::kOlbi: return "olbi";
    case Algorithm::kZa: return "za";
    case Algorithm::kRza: return "rza";
    case Algorithm::kL0: return "l0";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::kLms, Algorithm::kOlbi, Algorithm::kZa,
                      Algorithm::kRza, Algorithm::kL0}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

AlgoParams AlgoParams::lms(double delta) {
  AlgoParams p;
  p.algo = Algorithm::kLms;
  p.delta = delta;
  return p;
}

AlgoParams AlgoParams::olbi(double delta, double gamma) {
  AlgoParams p;
  p.algo = Algorithm::kOlbi;
  p.delta = delta;
  p.gamma = gamma;
  return p;
}

AlgoParams AlgoParams::za(double delta, double rho) {
  AlgoParams p;
  p.algo = Algorithm::kZa;
  p.delta = delta;
  p.rho = rho;
  return p;
}

AlgoParams AlgoParams::rza(double delta, double rho, double eps) {
  AlgoParams p = za(delta, rho);
  p.algo = Algorithm::kRza;
  p.eps = eps;
  return p;
}

AlgoParams AlgoParams::l0(double delta, double kappa, double alpha) {
  AlgoParams p;
  p.algo = Algorithm::kL0;
  p.delta = delta;
  p.kappa = kappa;
  p.alpha = alpha;
  return p;
}

void AlgoParams::validate() const {
  require(std::isfinite(delta) && delta > 0.0, "delta", "must be finite and > 0");
  switch (algo) {
    case Algorithm::kLms:
      break;
    case Algorithm::kOlbi:
      require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "must be finite and >= 0");
      break;
    case Algorithm::kRza:
      require(std::isfinite(eps) && eps > 0.0, "eps", "must be finite and > 0");
      [[fallthrough]];
    case Algorithm::kZa:
      require(std::isfinite(rho) && rho >= 0.0, "rho", "must be finite and >= 0");
      break;
    case Algorithm::kL0:
      require(std::isfinite(kappa) && kappa >= 0.0, "kappa", "must be finite and >= 0");
      require(std::isfinite(alpha) && alpha > 0.0, "alpha", "must be finite and > 0");
      break;
  }
}

}  // namespace olbi
