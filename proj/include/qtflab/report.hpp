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

#ifndef QTFLAB_REPORT_HPP
#define QTFLAB_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qtflab {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 0.0;

    friend bool operator==(const Interval &, const Interval &) = default;
};

/// Wilson score interval for hits/trials.
Interval wilson_interval(std::size_t hits, std::size_t trials, double z = kZ95);
/// Newcombe's hybrid score interval for p1 - p0.
Interval newcombe_difference(std::size_t hits1, std::size_t trials1, std::size_t hits0, std::size_t trials0,
                             double z = kZ95);
/// sqrt(p (1 - p) / trials)
double binomial_sigma(double p, std::size_t trials);

/// One arm of an experiment: how often the tallied event happened.
struct ArmRecord {
    std::string name;
    std::size_t trials = 0;
    std::size_t hits = 0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials); }

    friend bool operator==(const ArmRecord &, const ArmRecord &) = default;
};

/// Seeded, reproducible record of a game or experiment run.
///
/// `metric` is either "advantage" (|P(event | arm1) - P(event | arm0)|, with a
/// Newcombe interval) or "success_rate" (single arm, Wilson interval).
struct ExperimentReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ArmRecord> arms;
    std::string metric;
    double value = 0.0;
    Interval ci;
    double std_error = 0.0;
    std::vector<std::pair<std::string, double>> extras;

    const ArmRecord &arm(const std::string &name) const;
    double extra(const std::string &name) const;
    bool has_extra(const std::string &name) const;

    nlohmann::ordered_json to_json() const;
    static ExperimentReport from_json(const nlohmann::ordered_json &j);

    friend bool operator==(const ExperimentReport &, const ExperimentReport &) = default;
};

/// Success-rate report over a single arm.
ExperimentReport success_report(std::string experiment, std::uint64_t seed, ArmRecord arm);
/// Two-arm distinguishing report; `positive` is the arm where the event
/// should be more likely.
ExperimentReport advantage_report(std::string experiment, std::uint64_t seed, ArmRecord positive,
                                  ArmRecord negative);

}  // namespace qtflab

#endif
