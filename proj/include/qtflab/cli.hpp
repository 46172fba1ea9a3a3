// Copyright 2026 The qtflab Authors
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

#ifndef QTFLAB_CLI_HPP
#define QTFLAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qtflab::cli {

enum ExitCode : int {
    kOk = 0,
    kAssertionFailed = 1,
    kInvalidConfig = 2,
    kResourceCap = 3,
};

enum class Format { kJson, kCsv };

struct RunConfig {
    std::string subcommand;
    std::optional<std::uint64_t> seed;  ///< mandatory; no wall-clock default
    std::vector<int> n;                 ///< scalar subcommands use the first entry
    std::vector<int> m;
    std::vector<int> d;                 ///< spectrum-check local dimensions
    std::string family = "table";
    int t = 1;
    std::optional<std::size_t> trials;      ///< per-subcommand default when unset
    std::optional<std::string> adversary;   ///< per-subcommand default when unset
    std::string mode = "bit";
    std::string channel = "authenticated_copy";
    std::string input;
    std::string ciphertext;
    std::string decrypted;
    std::string transcript;
    std::string out;  ///< empty: report on stdout
    Format format = Format::kJson;
    std::optional<std::size_t> max_dim;

    /// Stable echo of every field, in declaration order.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

const std::vector<std::string> &subcommands();

/// Rendered report plus the one-line human summary.
struct Outcome {
    int exit_code = kOk;
    std::string report;
    std::string summary;
};

/// Validates `cfg`, runs the subcommand and renders its report. Never throws:
/// configuration problems map to kInvalidConfig, cap violations to
/// kResourceCap.
Outcome run_subcommand(const RunConfig &cfg);

/// Writes `report` to cfg.out (or `stdout_sink` when empty) and the summary to
/// the other stream. I/O failures are reported with the path.
int emit(const RunConfig &cfg, const Outcome &outcome, std::ostream &stdout_sink, std::ostream &stderr_sink);

/// Column contract of pgm-grid CSV output.
inline constexpr const char *kGridCsvHeader =
    "n,m,d,dim,pgm_success_dense,pgm_success_structured,bound_value,spectrum_ok";

}  // namespace qtflab::cli

#endif
