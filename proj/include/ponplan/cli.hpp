/*
 * Copyright (C) 2026 The ponplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include "ponplan/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ponplan::cli {

inline constexpr int kExitOk             = 0;
inline constexpr int kExitInfeasible     = 2;
inline constexpr int kExitBudget         = 3;
inline constexpr int kExitInvalidInput   = 4;

/// Default output directory when --out is not given.
inline constexpr const char *kOutDirEnv = "PONPLAN_OUT_DIR";

/// "10ms", "0.01s" or a bare number of seconds. Throws std::invalid_argument.
double parse_duration(std::string_view text);

/// Comma-separated durations.
std::vector<double> parse_duration_list(std::string_view text);

/// "1-5", "1,3,7" or a mix of both.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

int exit_code(SolveStatus status);

/// Runs one command line (without the program name). Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ponplan::cli
