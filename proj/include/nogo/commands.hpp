// Copyright 2026 The nogo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOGO_COMMANDS_HPP
#define NOGO_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "nogo/error.hpp"
#include "nogo/pipeline.hpp"
#include "nogo/superposer.hpp"

namespace nogo {

inline constexpr int kReportSchemaVersion = 1;

/// Everything a command needs, mirrored from the command-line flags. Complex
/// weights travel as modulus + phase. Unset optionals are derived: b from a,
/// beta's modulus from alpha's.
struct RunConfig {
    std::size_t dim = 3;
    double a = std::numbers::sqrt2 / 2.0;
    std::optional<double> b;
    double alpha_mod = std::numbers::sqrt2 / 2.0;
    double alpha_arg = 0.0;
    std::optional<double> beta_mod;
    double beta_arg = 0.0;
    std::string phase_policy = "constant";
    double theta = 0.0;
    std::optional<double> theta1;
    std::optional<double> theta2;
    std::optional<double> theta3;
    std::string success_policy = "always";
    double success_p = 1.0;
    double tol = kDefaultRankTolerance;
    double scan_tol = kScanRankTolerance;
    std::uint64_t trials = 100000;
    double grid_step = std::numbers::pi / 180.0;
    std::uint64_t seed = kDefaultSeed;
    /// 1-based hypothesis index measured by the `usd` command.
    std::size_t truth = 1;
    /// Omit the wall-clock timestamp.
    bool deterministic = false;
};

/// Fills in derived fields and checks every range; throws InvalidConfig or
/// InvalidParams with a one-line message.
RunConfig resolve(const RunConfig &config);

CounterexampleParams make_counterexample(const RunConfig &resolved);
SuperposerConfig make_superposer(const RunConfig &resolved);

std::string run_verify(const RunConfig &config);

struct ScanOutput {
    std::string summary_json;
    std::string grid_csv;
};
ScanOutput run_scan(const RunConfig &config);

/// Throws DependentOutputs when the configured phases sit on the locus.
std::string run_demo(const RunConfig &config);

/// `states_json` is an array of states (or {"states": [...]}) where each state
/// is an array of [re, im] pairs; states are normalized on load.
std::string run_usd(const RunConfig &config, std::string_view states_json);

/// CSV with header theta21,theta31,min_singular_value,rank.
std::string scan_to_csv(const ScanResult &scan);

/// Exit status contract of the CLI: 2 config, 3 numerical/IO, 4 on-locus.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace nogo

#endif
