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

#ifndef QTFLAB_KEX_HPP
#define QTFLAB_KEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtflab/bits.hpp"
#include "qtflab/pke.hpp"
#include "qtflab/report.hpp"

/// Two-message key exchange: Alice sends pk^{(x)n}, Bob answers with the n
/// bitwise encryptions of a fresh x, and both output x.
namespace qtflab::kex {

enum class ChannelMode { kAuthenticatedCopy, kUnauthenticated };
std::string_view channel_mode_name(ChannelMode mode);
std::optional<ChannelMode> parse_channel_mode(std::string_view name);

struct ChannelModel {
    ChannelMode mode = ChannelMode::kAuthenticatedCopy;
    /// Copies of each quantum message the adversary receives
    /// (authenticated-copy mode only).
    int adversary_copies = 0;

    void validate() const;
};

struct TranscriptEvent {
    std::uint64_t seed = 0;
    std::string sender;
    std::string receiver;
    std::string payload;
    std::string adversary_view;
    bool simulator_privilege = false;

    friend bool operator==(const TranscriptEvent &, const TranscriptEvent &) = default;
};

/// Append-only event log, serialised as JSON lines.
class Transcript {
  public:
    void append(TranscriptEvent event) { events_.push_back(std::move(event)); }
    const std::vector<TranscriptEvent> &events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    std::string to_jsonl() const;
    static Transcript from_jsonl(std::string_view text);

    friend bool operator==(const Transcript &, const Transcript &) = default;

  private:
    std::vector<TranscriptEvent> events_;
};

struct HonestRun {
    Bits alice_key;
    Bits bob_key;
    Transcript transcript;
};

/// One honest execution. In authenticated-copy mode the transcript also
/// records the adversary's t public-key copies. `bob_choice` fixes Bob's x
/// for exhaustive checks; it is sampled otherwise.
HonestRun run_honest(int n, Family family, const ChannelModel &model, Rng &rng,
                     std::optional<Bits> bob_choice = std::nullopt);

/// What a passive eavesdropper sees in authenticated-copy mode: t copies of
/// pk and, through the simulator privilege, Bob's n ciphertexts.
struct EavesdropView {
    const StateVector &pk_copies;
    std::span<const pke::BitCiphertext> ciphertexts;
    int n;
    int t;
};
using Eavesdropper = std::function<Bits(const EavesdropView &, Rng &)>;

/// Authenticated-copy mode: success_rate of the eavesdropper recovering x,
/// plus extras "chance_rate" and "honest_agreement_rate".
/// Unauthenticated mode: runs the built-in man-in-the-middle (`adversary` must
/// be empty); arms "eve_alice", "eve_bob", "alice_bob" count key equalities
/// and the headline value is the alice_bob agreement rate.
ExperimentReport run_adversarial(const Eavesdropper &adversary, int n, Family family, const ChannelModel &model,
                                 std::size_t trials, Rng &rng);

/// Rewraps an eavesdropper as a bitwise CPA attacker (m0, m1 uniform and
/// distinct; guess b' = [x' == m1], ties broken at random) and compares the
/// recovery rate it implies with the rate measured in run_adversarial.
struct CpaEquivalence {
    double kex_recovery = 0.0;
    double cpa_success = 0.0;
    double implied_recovery = 0.0;
    double sigma = 0.0;  ///< combined standard error of the two recovery estimates

    bool consistent(double k = 3.0) const;
};
CpaEquivalence kex_cpa_equivalence(const Eavesdropper &adversary, int n, int t, Family family, std::size_t trials,
                                   Rng &rng);

}  // namespace qtflab::kex

#endif
