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

#include <cmath>

#include "gtest/gtest.h"

#include "qtflab/attacks.hpp"
#include "qtflab/prs.hpp"

using namespace qtflab;

TEST(DistinguishGame, random_guess_has_no_advantage) {
    Rng rng(21);
    ExperimentReport rep = prs::distinguish_game(attacks::random_distinguisher(), 2, 2000, 2, Family::kTable, rng);
    ASSERT_LT(std::abs(rep.value), 4.0 * std::sqrt(0.5 / 1000.0));
    ASSERT_EQ(rep.trials, 2000u);
}

TEST(DistinguishGame, deterministic_under_seed) {
    Rng a(3);
    Rng b(3);
    auto d = attacks::swap_test_distinguisher(2);
    ExperimentReport ra = prs::distinguish_game(d, 2, 300, 2, Family::kTable, a);
    ExperimentReport rb = prs::distinguish_game(d, 2, 300, 2, Family::kTable, b);
    ASSERT_EQ(ra.to_json().dump(), rb.to_json().dump());
}

TEST(DistinguishGame, key_exhausting_distinguisher_wins_small_n) {
    Rng rng(22);
    ExperimentReport rep =
        prs::distinguish_game(attacks::key_exhausting_distinguisher(2, 4), 4, 1500, 2, Family::kTable, rng);
    ASSERT_GT(rep.value, 0.4);
}

TEST(CandidateMeasurement, identifies_single_copy_probabilities) {
    auto cm = attacks::candidate_measurement(2, 3);
    ASSERT_EQ(cm->size(), 8u);
    StateVector s = prs::gen_state(prs::PrsKey{cm->candidate(5)});
    StateVector three = kron_power(s, 3);
    ASSERT_NEAR(cm->span_probability(three), 1.0, 1e-9);
    auto p = cm->outcome_probabilities(three);
    double total = 0.0;
    for (double v : p) {
        total += v;
    }
    ASSERT_NEAR(total, 1.0, 1e-9);
    ASSERT_THROW(cm->span_probability(s), DimensionError);
}

TEST(CandidateMeasurement, rejects_large_n) {
    ASSERT_THROW(attacks::CandidateMeasurement(5, 1), ResourceError);
    ASSERT_THROW(attacks::CandidateMeasurement(0, 1), ArgumentError);
}

TEST(Inverter, key_exhausting_beats_chance) {
    Rng rng(23);
    ExperimentReport rep = qtf::inversion_game(attacks::key_exhausting_inverter(), 3, 800, 3, Family::kTable, rng);
    ASSERT_GT(rep.value, 0.5);
}

TEST(Inverter, random_is_chance) {
    Rng rng(24);
    ExperimentReport rep = qtf::inversion_game(attacks::random_inverter(), 1, 2000, 2, Family::kTable, rng);
    ASSERT_LT(std::abs(rep.value - 0.25), 4.0 * std::sqrt(0.25 * 0.75 / 2000.0));
}

TEST(DistinguishGame, swap_test_has_no_advantage_on_two_copies) {
    Rng rng(25);
    ExperimentReport rep = prs::distinguish_game(attacks::swap_test_distinguisher(3), 2, 2000, 3, Family::kTable, rng);
    ASSERT_LE(std::abs(rep.value), 3.0 * rep.std_error);
}
