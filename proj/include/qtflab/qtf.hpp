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

#ifndef QTFLAB_QTF_HPP
#define QTFLAB_QTF_HPP

#include <cstddef>
#include <functional>
#include <optional>

#include "qtflab/bits.hpp"
#include "qtflab/prs.hpp"
#include "qtflab/report.hpp"
#include "qtflab/state.hpp"

namespace qtflab::qtf {

/// Classical trapdoor: the key of the underlying phase state.
struct Trapdoor {
    prs::PrsKey key;
    int n = 0;

    friend bool operator==(const Trapdoor &, const Trapdoor &) = default;
};

/// Evaluation key |eval> = |PRS(k)>. Every amplitude has modulus 2^{-n/2}.
struct EvalKey {
    StateVector state;

    int n() const { return state.num_sites(); }
};

Trapdoor gen_tr(int n, Family family, Rng &rng);

/// Re-running this on the same trapdoor yields the identical vector, which is
/// how the simulator hands out further copies of the evaluation key.
EvalKey gen_ev(const Trapdoor &tr);

/// Z^x |eval>, with |x| = n.
StateVector eval(const EvalKey &ek, const Bits &x);

/// H^{(x)n} G(k) applied to the leading n qubits of `state`; on honest inputs
/// the result is the basis vector |x>.
StateVector invert_premeasurement(const Trapdoor &tr, const StateVector &state);

/// Pre-measurement transform followed by a standard-basis measurement of the
/// n-qubit input. Never fails on dishonest inputs; it returns the outcome.
Bits invert(const Trapdoor &tr, const StateVector &phi, Rng &rng);
/// Same on the leading n qubits of a composite register.
Bits invert_leading(const Trapdoor &tr, const StateVector &composite, Rng &rng);

/// What an inversion adversary is handed: eval(ek, x) (x) ek^{(x)copies} as one
/// composite (challenge in the leading n qubits). `leaked_trapdoor` is only
/// populated for cheating baselines.
struct InversionChallenge {
    const StateVector &composite;
    int n;
    int copies;
    std::optional<Trapdoor> leaked_trapdoor;
};

using InversionAdversary = std::function<Bits(const InversionChallenge &, Rng &)>;

enum class Privilege { kNone, kTrapdoor };

/// Hard-to-invert game: per trial a fresh trapdoor and uniform x; the
/// adversary succeeds when its output equals x.
ExperimentReport inversion_game(const InversionAdversary &adversary, int m, std::size_t trials, int n,
                                Family family, Rng &rng, Privilege privilege = Privilege::kNone);

}  // namespace qtflab::qtf

#endif
