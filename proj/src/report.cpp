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

#include "qtflab/report.hpp"

#include <algorithm>
#include <cmath>

#include "qtflab/errors.hpp"

namespace qtflab {

Interval wilson_interval(std::size_t hits, std::size_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == trials ? 1.0 : std::min(1.0, centre + half)};
}

Interval newcombe_difference(std::size_t hits1, std::size_t trials1, std::size_t hits0, std::size_t trials0,
                             double z) {
    const double p1 = trials1 ? static_cast<double>(hits1) / static_cast<double>(trials1) : 0.0;
    const double p0 = trials0 ? static_cast<double>(hits0) / static_cast<double>(trials0) : 0.0;
    const Interval w1 = wilson_interval(hits1, trials1, z);
    const Interval w0 = wilson_interval(hits0, trials0, z);
    const double diff = p1 - p0;
    const double lower = diff - std::sqrt((p1 - w1.low) * (p1 - w1.low) + (w0.high - p0) * (w0.high - p0));
    const double upper = diff + std::sqrt((w1.high - p1) * (w1.high - p1) + (p0 - w0.low) * (p0 - w0.low));
    return {std::max(-1.0, lower), std::min(1.0, upper)};
}

double binomial_sigma(double p, std::size_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

const ArmRecord &ExperimentReport::arm(const std::string &name) const {
    for (const auto &a : arms) {
        if (a.name == name) {
            return a;
        }
    }
    throw ArgumentError("report has no arm named " + name);
}

double ExperimentReport::extra(const std::string &name) const {
    for (const auto &[k, v] : extras) {
        if (k == name) {
            return v;
        }
    }
    throw ArgumentError("report has no extra named " + name);
}

bool ExperimentReport::has_extra(const std::string &name) const {
    return std::any_of(extras.begin(), extras.end(), [&](const auto &kv) { return kv.first == name; });
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["trials"] = trials;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto &[k, v] : config) {
        cfg[k] = v;
    }
    j["config"] = cfg;
    nlohmann::ordered_json arm_list = nlohmann::ordered_json::array();
    for (const auto &a : arms) {
        arm_list.push_back({{"name", a.name}, {"trials", a.trials}, {"successes", a.hits}, {"rate", a.rate()}});
    }
    j["arms"] = arm_list;
    j["metric"] = metric;
    j["value"] = value;
    j["ci_low"] = ci.low;
    j["ci_high"] = ci.high;
    j["std_error"] = std_error;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto &[k, v] : extras) {
        ex[k] = v;
    }
    j["extras"] = ex;
    return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::ordered_json &j) {
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<std::size_t>();
    for (const auto &[k, v] : j.at("config").items()) {
        r.config.emplace_back(k, v.get<std::string>());
    }
    for (const auto &a : j.at("arms")) {
        r.arms.push_back(ArmRecord{a.at("name").get<std::string>(), a.at("trials").get<std::size_t>(),
                                   a.at("successes").get<std::size_t>()});
    }
    r.metric = j.at("metric").get<std::string>();
    r.value = j.at("value").get<double>();
    r.ci = Interval{j.at("ci_low").get<double>(), j.at("ci_high").get<double>()};
    r.std_error = j.at("std_error").get<double>();
    for (const auto &[k, v] : j.at("extras").items()) {
        r.extras.emplace_back(k, v.get<double>());
    }
    return r;
}

ExperimentReport success_report(std::string experiment, std::uint64_t seed, ArmRecord arm) {
    ExperimentReport r;
    r.experiment = std::move(experiment);
    r.seed = seed;
    r.trials = arm.trials;
    r.metric = "success_rate";
    r.value = arm.rate();
    r.ci = wilson_interval(arm.hits, arm.trials);
    r.std_error = binomial_sigma(r.value, arm.trials);
    r.arms.push_back(std::move(arm));
    return r;
}

ExperimentReport advantage_report(std::string experiment, std::uint64_t seed, ArmRecord positive,
                                  ArmRecord negative) {
    ExperimentReport r;
    r.experiment = std::move(experiment);
    r.seed = seed;
    r.trials = positive.trials + negative.trials;
    r.metric = "advantage";
    const double diff = positive.rate() - negative.rate();
    r.value = std::abs(diff);
    Interval d = newcombe_difference(positive.hits, positive.trials, negative.hits, negative.trials);
    if (d.low <= 0.0 && d.high >= 0.0) {
        r.ci = {0.0, std::max(-d.low, d.high)};
    } else {
        r.ci = {std::min(std::abs(d.low), std::abs(d.high)), std::max(std::abs(d.low), std::abs(d.high))};
    }
    const double pooled = r.trials == 0 ? 0.0
                                        : static_cast<double>(positive.hits + negative.hits) /
                                              static_cast<double>(r.trials);
    if (positive.trials > 0 && negative.trials > 0) {
        r.std_error = std::sqrt(pooled * (1.0 - pooled) *
                                (1.0 / static_cast<double>(positive.trials) +
                                 1.0 / static_cast<double>(negative.trials)));
    }
    r.extras.emplace_back("signed_difference", diff);
    r.arms.push_back(std::move(positive));
    r.arms.push_back(std::move(negative));
    return r;
}

}  // namespace qtflab
