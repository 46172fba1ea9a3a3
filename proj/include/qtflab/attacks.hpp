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

#ifndef QTFLAB_ATTACKS_HPP
#define QTFLAB_ATTACKS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "qtflab/kex.hpp"
#include "qtflab/oracles.hpp"
#include "qtflab/pke.hpp"
#include "qtflab/prs.hpp"
#include "qtflab/qtf.hpp"

/// Reference adversaries for the game harnesses: chance-level guessers,
/// cheating baselines that are handed the key, and brute-force attacks that
/// enumerate the whole key space.
namespace qtflab::attacks {

/// Square-root measurement over every phase state |phi_f>^{(x)copies}, f
/// ranging over all boolean functions on n bits with f(0) = 0 (the other half
/// differ only by a global sign). Feasible for n <= 4.
class CandidateMeasurement {
  public:
    CandidateMeasurement(int n, int copies);

    int n() const { return n_; }
    int copies() const { return copies_; }
    std::size_t size() const { return candidates_.size(); }
    const PrfKey &candidate(std::size_t k) const { return candidates_.at(k); }

    /// Probability that `state` (copies * n qubits) lies in the span of the
    /// candidate states.
    double span_probability(const StateVector &state) const;
    /// Outcome distribution of the measurement on `state`; entries sum to at
    /// most 1, the rest is the "outside the span" outcome.
    std::vector<double> outcome_probabilities(const StateVector &state) const;

    struct Outcome {
        std::optional<std::size_t> candidate;
        /// Normalised post-measurement state of the untouched leading qubits
        /// (only meaningful when a candidate was found).
        std::optional<StateVector> leading;
    };
    /// Measures the trailing copies * n qubits of `composite`.
    Outcome measure_trailing(const StateVector &composite, int leading_qubits, Rng &rng) const;

  private:
    int n_;
    int copies_;
    std::vector<PrfKey> candidates_;
    CMatrix frame_;  ///< columns Phi G^{+1/2}
};

/// Shared, lazily built measurement for (n, copies).
std::shared_ptr<const CandidateMeasurement> candidate_measurement(int n, int copies);

prs::Distinguisher random_distinguisher();
/// Swap test on the first two copies; guesses "pseudorandom" on acceptance.
prs::Distinguisher swap_test_distinguisher(int n);
/// Projects the copies onto the span of all candidate states; guesses
/// "pseudorandom" on success.
prs::Distinguisher key_exhausting_distinguisher(int n, int copies);

qtf::InversionAdversary random_inverter();
/// Uses the leaked trapdoor; guesses at random when none is supplied.
qtf::InversionAdversary trapdoor_inverter();
/// Identifies a key from the trailing copies, then inverts the challenge
/// with it.
qtf::InversionAdversary key_exhausting_inverter();

pke::CpaAttacker random_cpa_attacker();
/// Decrypts with the leaked secret key (bit, bitwise and hybrid modes).
pke::CpaAttacker sk_cpa_attacker();
/// Bit mode only: identifies a key from the t public-key copies and decrypts.
pke::CpaAttacker key_exhausting_cpa_attacker();

kex::Eavesdropper random_eavesdropper();
kex::Eavesdropper key_exhausting_eavesdropper();

}  // namespace qtflab::attacks

#endif
