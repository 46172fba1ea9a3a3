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

#include "qtflab/qtf.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace qtflab::qtf {

Trapdoor gen_tr(int n, Family family, Rng &rng) {
    if (n < 1) {
        throw ArgumentError("security parameter must be at least 1");
    }
    return Trapdoor{prs::gen_key(n, family, rng), n};
}

EvalKey gen_ev(const Trapdoor &tr) {
    if (tr.key.n() != tr.n) {
        throw InvariantError(fmt::format("trapdoor n={} but key domain is {} bits", tr.n, tr.key.n()));
    }
    return EvalKey{prs::gen_state(tr.key)};
}

StateVector eval(const EvalKey &ek, const Bits &x) {
    if (x.length() != ek.n()) {
        throw DimensionError(fmt::format("input of length {} for an evaluation key on {} qubits", x.length(), ek.n()));
    }
    return apply_z_mask(ek.state, x);
}

StateVector invert_premeasurement(const Trapdoor &tr, const StateVector &state) {
    if (state.local_dim() != 2 || state.num_sites() < tr.n) {
        throw DimensionError(
            fmt::format("cannot invert a {}-site register with an n={} trapdoor", state.num_sites(), tr.n));
    }
    auto signs = phase_signs(tr.key.inner, tr.n);
    StateVector phased = apply_phase_signs_leading(state, signs);
    return apply_hadamard_leading(phased, tr.n);
}

Bits invert(const Trapdoor &tr, const StateVector &phi, Rng &rng) {
    if (phi.num_sites() != tr.n) {
        throw DimensionError(fmt::format("invert expects {} qubits, got {}", tr.n, phi.num_sites()));
    }
    return invert_leading(tr, phi, rng);
}

Bits invert_leading(const Trapdoor &tr, const StateVector &composite, Rng &rng) {
    StateVector pre = invert_premeasurement(tr, composite);
    return Bits(tr.n, measure_leading(pre, tr.n, rng));
}

ExperimentReport inversion_game(const InversionAdversary &adversary, int m, std::size_t trials, int n,
                                Family family, Rng &rng, Privilege privilege) {
    if (m < 0) {
        throw ArgumentError("copy count must be non-negative");
    }
    checked_pow(2, static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n), max_state_dim(),
                "inversion_game");
    ArmRecord arm{"inversion", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        Rng trial = rng.split(t);
        Trapdoor tr = gen_tr(n, family, trial);
        Bits x = Bits::random(n, trial);
        StateVector challenge = eval(gen_ev(tr), x);
        // Each copy is a fresh run of gen_ev on the same trapdoor.
        StateVector composite = kron(challenge, kron_power(gen_ev(tr).state, m));
        InversionChallenge view{composite, n, m, std::nullopt};
        if (privilege == Privilege::kTrapdoor) {
            view.leaked_trapdoor = tr;
        }
        Bits guess = adversary(view, trial);
        ++arm.trials;
        arm.hits += (guess == x) ? 1 : 0;
    }
    ExperimentReport r = success_report("qtf_inversion", rng.seed(), arm);
    r.config = {{"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"family", std::string(family_name(family))},
                {"trials", std::to_string(trials)},
                {"privilege", privilege == Privilege::kTrapdoor ? "trapdoor" : "none"}};
    r.extras.emplace_back("chance_rate", std::ldexp(1.0, -n));
    return r;
}

}  // namespace qtflab::qtf
