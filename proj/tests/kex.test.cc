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
#include "qtflab/kex.hpp"

using namespace qtflab;

TEST(Channel, validation) {
    ASSERT_NO_THROW((kex::ChannelModel{kex::ChannelMode::kAuthenticatedCopy, 3}.validate()));
    ASSERT_THROW((kex::ChannelModel{kex::ChannelMode::kAuthenticatedCopy, -1}.validate()), ArgumentError);
    ASSERT_THROW((kex::ChannelModel{kex::ChannelMode::kUnauthenticated, 1}.validate()), ArgumentError);
    for (auto mode : {kex::ChannelMode::kAuthenticatedCopy, kex::ChannelMode::kUnauthenticated}) {
        ASSERT_EQ(kex::parse_channel_mode(kex::channel_mode_name(mode)), mode);
    }
}

TEST(Honest, parties_agree_for_every_choice) {
    Rng rng(51);
    kex::ChannelModel model{kex::ChannelMode::kAuthenticatedCopy, 0};
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            kex::HonestRun run = kex::run_honest(n, Family::kTable, model, rng, Bits(n, x));
            ASSERT_EQ(run.alice_key, Bits(n, x));
            ASSERT_EQ(run.bob_key, Bits(n, x));
        }
    }
}

TEST(Honest, transcript_records_adversary_copies) {
    Rng rng(52);
    kex::ChannelModel model{kex::ChannelMode::kAuthenticatedCopy, 2};
    kex::HonestRun run = kex::run_honest(3, Family::kTable, model, rng);
    ASSERT_EQ(run.transcript.size(), 4u);
    ASSERT_EQ(run.transcript.events()[0].sender, "alice");
    ASSERT_EQ(run.transcript.events()[0].receiver, "bob");
    ASSERT_TRUE(run.transcript.events().back().simulator_privilege);
}

TEST(Transcript, jsonl_round_trip) {
    Rng rng(53);
    kex::HonestRun run =
        kex::run_honest(2, Family::kTable, kex::ChannelModel{kex::ChannelMode::kAuthenticatedCopy, 1}, rng);
    std::string text = run.transcript.to_jsonl();
    ASSERT_EQ(kex::Transcript::from_jsonl(text), run.transcript);
    ASSERT_EQ(kex::Transcript::from_jsonl(text).to_jsonl(), text);
    ASSERT_THROW(kex::Transcript::from_jsonl("{\"seq\": 5}\n"), std::exception);
}

TEST(Adversarial, random_eavesdropper_is_chance) {
    Rng rng(54);
    ExperimentReport rep = kex::run_adversarial(attacks::random_eavesdropper(), 2, Family::kTable,
                                                kex::ChannelModel{kex::ChannelMode::kAuthenticatedCopy, 1}, 2000, rng);
    ASSERT_LT(std::abs(rep.value - 0.25), 4.0 * std::sqrt(0.25 * 0.75 / 2000.0));
    ASSERT_EQ(rep.extra("honest_agreement_rate"), 1.0);
    ASSERT_EQ(rep.extra("chance_rate"), 0.25);
}

TEST(Adversarial, mitm_shares_both_keys) {
    Rng rng(55);
    ExperimentReport rep = kex::run_adversarial({}, 3, Family::kTable,
                                                kex::ChannelModel{kex::ChannelMode::kUnauthenticated, 0}, 1000, rng);
    ASSERT_EQ(rep.extra("eve_alice_rate"), 1.0);
    ASSERT_EQ(rep.extra("eve_bob_rate"), 1.0);
    ASSERT_LT(std::abs(rep.value - 0.125), 4.0 * std::sqrt(0.125 * 0.875 / 1000.0));
}

TEST(Adversarial, mitm_rejects_custom_adversary) {
    Rng rng(56);
    ASSERT_THROW(kex::run_adversarial(attacks::random_eavesdropper(), 2, Family::kTable,
                                      kex::ChannelModel{kex::ChannelMode::kUnauthenticated, 0}, 10, rng),
                 ArgumentError);
}

TEST(Equivalence, kex_and_cpa_rates_are_consistent) {
    Rng rng(57);
    auto eq = kex::kex_cpa_equivalence(attacks::key_exhausting_eavesdropper(), 2, 3, Family::kTable, 1000, rng);
    ASSERT_GT(eq.kex_recovery, 0.5);
    ASSERT_TRUE(eq.consistent()) << eq.kex_recovery << " vs " << eq.implied_recovery << " sigma " << eq.sigma;
    ASSERT_THROW(kex::kex_cpa_equivalence(attacks::random_eavesdropper(), 1, 1, Family::kTable, 10, rng),
                 ArgumentError);
}
