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

#ifndef QTFLAB_PRS_HPP
#define QTFLAB_PRS_HPP

#include <cstddef>
#include <functional>

#include "qtflab/oracles.hpp"
#include "qtflab/report.hpp"
#include "qtflab/rng.hpp"
#include "qtflab/state.hpp"

namespace qtflab::prs {

/// Key of the binary-phase pseudorandom state family.
struct PrsKey {
    PrfKey inner;

    int n() const { return inner.domain_bits(); }
    Family family() const { return inner.family(); }
    friend bool operator==(const PrsKey &, const PrsKey &) = default;
};

PrsKey gen_key(int n, Family family, Rng &rng);

/// 2^{-n/2} sum_y (-1)^{f(k, y)} |y>
StateVector gen_state(const PrsKey &key);

/// Receives the m-copy state and returns a guess: 1 for "pseudorandom",
/// 0 for "Haar".
using Distinguisher = std::function<int(const StateVector &copies, Rng &rng)>;

/// m-copy indistinguishability game. Each trial flips a fair coin and hands
/// the distinguisher |PRS(k)>^{(x)m} for a fresh key or |psi>^{(x)m} for a
/// fresh Haar-random psi. Arms "prs" and "haar" tally guesses of 1.
ExperimentReport distinguish_game(const Distinguisher &distinguisher, int m, std::size_t trials, int n,
                                  Family family, Rng &rng);

}  // namespace qtflab::prs

#endif
