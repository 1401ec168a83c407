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

// Command-line front end: `olbi run|trajectory|sweep|theory`.
//
// Exit codes: 0 success, 1 configuration or domain error, 2 every trial
// diverged. Output goes to --output, else to $OLBI_OUTPUT_DIR/<command>.<fmt>
// when that variable is set, else to stdout.

#include <iosfwd>
#include <string>

namespace olbi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDiverged = 2;

// Shortest decimal that round-trips; "" for NaN, "inf"/"-inf" for infinities.
std::string format_number(double v);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olbi::cli
