/**
 * Copyright 2026 The fanolattice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fano::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line front end. `args` excludes the program name.
/// JSON reports go to `out`, diagnostics and warnings to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// n evenly spaced values from lo to hi inclusive; {lo} when n == 1.
std::vector<double> linspace(double lo, double hi, int n);

/// Parses a flat key=value config file into "--key=value" arguments.
/// Blank lines and lines starting with '#' are skipped; `key=true` becomes a
/// bare "--key" flag and `key=false` is dropped.
std::vector<std::string> read_config_file(const std::string& path);

}  // namespace fano::cli
