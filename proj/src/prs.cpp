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

#include "qtflab/prs.hpp"

#include <cmath>
#include <string>

namespace qtflab::prs {

PrsKey gen_key(int n, Family family, Rng &rng) { return PrsKey{sample_key(family, n, rng)}; }

StateVector gen_state(const PrsKey &key) {
    const int n = key.n();
    auto signs = phase_signs(key.inner, n);
    const double amp = std::pow(2.0, -0.5 * n);
    CVector v(static_cast<Eigen::Index>(signs.size()));
    for (std::size_t y = 0; y < signs.size(); ++y) {
        v(static_cast<Eigen::Index>(y)) = amp * signs[y];
    }
    return StateVector(2, n, std::move(v));
}

ExperimentReport distinguish_game(const Distinguisher &distinguisher, int m, std::size_t trials, int n,
                                  Family family, Rng &rng) {
    if (m < 1) {
        throw ArgumentError("distinguish_game needs at least one copy");
    }
    checked_pow(2, static_cast<std::size_t>(m) * static_cast<std::size_t>(n), max_state_dim(),
                "distinguish_game");
    ArmRecord prs_arm{"prs", 0, 0};
    ArmRecord haar_arm{"haar", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        Rng trial = rng.split(t);
        const bool use_prs = trial.coin();
        StateVector one = use_prs ? gen_state(gen_key(n, family, trial)) : haar_random_state(2, n, trial);
        StateVector copies = kron_power(one, m);
        int guess = distinguisher(copies, trial);
        ArmRecord &arm = use_prs ? prs_arm : haar_arm;
        ++arm.trials;
        arm.hits += (guess == 1) ? 1 : 0;
    }
    ExperimentReport r = advantage_report("prs_distinguish", rng.seed(), prs_arm, haar_arm);
    r.config = {{"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"family", std::string(family_name(family))},
                {"trials", std::to_string(trials)}};
    return r;
}

}  // namespace qtflab::prs
