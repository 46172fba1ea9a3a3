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

#include "qtflab/attacks.hpp"

#include <any>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fmt/format.h>

namespace qtflab::attacks {

namespace {

std::vector<PrfKey> canonical_tables(int n) {
    const std::size_t table = std::size_t{1} << n;
    const std::size_t count = std::size_t{1} << (table - 1);
    std::vector<PrfKey> out;
    out.reserve(count);
    std::vector<int> bits(table, 0);
    for (std::size_t code = 0; code < count; ++code) {
        for (std::size_t y = 1; y < table; ++y) {
            bits[y] = static_cast<int>((code >> (y - 1)) & 1u);
        }
        out.push_back(PrfKey::from_table(n, bits));
    }
    return out;
}

qtf::Trapdoor as_trapdoor(const PrfKey &key) { return qtf::Trapdoor{prs::PrsKey{key}, key.domain_bits()}; }

std::optional<std::size_t> identify(const CandidateMeasurement &cm, const StateVector &copies, Rng &rng) {
    return cm.measure_trailing(copies, 0, rng).candidate;
}

}  // namespace

CandidateMeasurement::CandidateMeasurement(int n, int copies) : n_(n), copies_(copies) {
    if (n < 1 || copies < 1) {
        throw ArgumentError(fmt::format("candidate measurement needs n >= 1 and copies >= 1, got ({}, {})", n, copies));
    }
    if (n > 4) {
        throw ResourceError(fmt::format("key space for n={} is too large to enumerate", n));
    }
    const std::size_t count = std::size_t{1} << ((std::size_t{1} << n) - 1);
    require_operator_dim(count, "candidate measurement");
    const std::size_t dim = checked_pow(2, static_cast<std::size_t>(n) * static_cast<std::size_t>(copies),
                                        max_state_dim(), "candidate measurement");
    candidates_ = canonical_tables(n);

    const auto rows = static_cast<Eigen::Index>(dim);
    const auto cols = static_cast<Eigen::Index>(count);
    CMatrix phi(rows, cols);
    for (Eigen::Index k = 0; k < cols; ++k) {
        StateVector one = prs::gen_state(prs::PrsKey{candidates_[static_cast<std::size_t>(k)]});
        phi.col(k) = kron_power(one, copies).amplitudes();
    }
    CMatrix gram = phi.adjoint() * phi;
    // Exact Hermitian symmetrisation before the eigensolve.
    gram = (0.5 * (gram + gram.adjoint())).eval();
    frame_ = phi * pinv_sqrt(Operator(std::move(gram))).matrix();
}

double CandidateMeasurement::span_probability(const StateVector &state) const {
    if (state.dim() != static_cast<std::size_t>(frame_.rows())) {
        throw DimensionError(fmt::format("state of dimension {} for a measurement on dimension {}", state.dim(),
                                         frame_.rows()));
    }
    return (frame_.adjoint() * state.amplitudes()).squaredNorm();
}

std::vector<double> CandidateMeasurement::outcome_probabilities(const StateVector &state) const {
    if (state.dim() != static_cast<std::size_t>(frame_.rows())) {
        throw DimensionError(fmt::format("state of dimension {} for a measurement on dimension {}", state.dim(),
                                         frame_.rows()));
    }
    CVector c = frame_.adjoint() * state.amplitudes();
    std::vector<double> out(static_cast<std::size_t>(c.size()));
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        out[static_cast<std::size_t>(k)] = std::norm(c(k));
    }
    return out;
}

CandidateMeasurement::Outcome CandidateMeasurement::measure_trailing(const StateVector &composite,
                                                                     int leading_qubits, Rng &rng) const {
    if (composite.local_dim() != 2 || leading_qubits < 0) {
        throw DimensionError("candidate measurement acts on qubit registers");
    }
    const auto tail = static_cast<std::size_t>(frame_.rows());
    const std::size_t lead = std::size_t{1} << leading_qubits;
    if (composite.dim() != lead * tail) {
        throw DimensionError(fmt::format("composite of dimension {} is not {} x {}", composite.dim(), lead, tail));
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> psi(composite.amplitudes().data(), static_cast<Eigen::Index>(lead),
                                   static_cast<Eigen::Index>(tail));
    // Column k is the unnormalised leading state after outcome k.
    CMatrix conditional = psi * frame_.conjugate();
    double u = rng.uniform();
    for (Eigen::Index k = 0; k < conditional.cols(); ++k) {
        const double p = conditional.col(k).squaredNorm();
        if (u < p) {
            return Outcome{static_cast<std::size_t>(k),
                           StateVector::normalized(2, leading_qubits, conditional.col(k))};
        }
        u -= p;
    }
    return Outcome{std::nullopt, std::nullopt};
}

std::shared_ptr<const CandidateMeasurement> candidate_measurement(int n, int copies) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const CandidateMeasurement>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[{n, copies}];
    if (!slot) {
        slot = std::make_shared<const CandidateMeasurement>(n, copies);
    }
    return slot;
}

prs::Distinguisher random_distinguisher() {
    return [](const StateVector &, Rng &rng) { return rng.coin() ? 1 : 0; };
}

prs::Distinguisher swap_test_distinguisher(int n) {
    return [n](const StateVector &copies, Rng &rng) {
        if (copies.local_dim() != 2 || copies.num_sites() < 2 * n) {
            throw DimensionError("swap test needs at least two n-qubit copies");
        }
        const std::size_t d = std::size_t{1} << n;
        const std::size_t rest = copies.dim() / (d * d);
        const CVector &a = copies.amplitudes();
        Complex overlap_swap = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                for (std::size_t r = 0; r < rest; ++r) {
                    overlap_swap += std::conj(a(static_cast<Eigen::Index>((i * d + j) * rest + r))) *
                                    a(static_cast<Eigen::Index>((j * d + i) * rest + r));
                }
            }
        }
        const double accept = 0.5 * (1.0 + overlap_swap.real());
        return rng.uniform() < accept ? 1 : 0;
    };
}

prs::Distinguisher key_exhausting_distinguisher(int n, int copies) {
    auto cm = candidate_measurement(n, copies);
    return [cm](const StateVector &state, Rng &rng) { return rng.uniform() < cm->span_probability(state) ? 1 : 0; };
}

qtf::InversionAdversary random_inverter() {
    return [](const qtf::InversionChallenge &ch, Rng &rng) { return Bits::random(ch.n, rng); };
}

qtf::InversionAdversary trapdoor_inverter() {
    return [](const qtf::InversionChallenge &ch, Rng &rng) {
        if (!ch.leaked_trapdoor) {
            return Bits::random(ch.n, rng);
        }
        return qtf::invert_leading(*ch.leaked_trapdoor, ch.composite, rng);
    };
}

qtf::InversionAdversary key_exhausting_inverter() {
    return [](const qtf::InversionChallenge &ch, Rng &rng) {
        if (ch.copies == 0) {
            return Bits::random(ch.n, rng);
        }
        auto cm = candidate_measurement(ch.n, ch.copies);
        auto outcome = cm->measure_trailing(ch.composite, ch.n, rng);
        if (!outcome.candidate) {
            return Bits::random(ch.n, rng);
        }
        return qtf::invert(as_trapdoor(cm->candidate(*outcome.candidate)), *outcome.leading, rng);
    };
}

pke::CpaAttacker random_cpa_attacker() {
    pke::CpaAttacker a;
    a.phase1 = [](const pke::CpaPhase1View &v, Rng &) {
        if (v.mode == pke::CpaMode::kBitwise) {
            return pke::CpaChoice{std::vector<std::uint8_t>(static_cast<std::size_t>(v.n), 0),
                                  std::vector<std::uint8_t>(static_cast<std::size_t>(v.n), 1), {}};
        }
        return pke::CpaChoice{{0}, {1}, {}};
    };
    a.phase2 = [](pke::CpaPhase2View &, Rng &rng) { return rng.coin() ? 1 : 0; };
    return a;
}

pke::CpaAttacker sk_cpa_attacker() {
    pke::CpaAttacker a = random_cpa_attacker();
    a.phase2 = [](pke::CpaPhase2View &v, Rng &rng) {
        if (v.leaked_sk == nullptr) {
            return rng.coin() ? 1 : 0;
        }
        if (v.hybrid != nullptr) {
            auto msg = pke::dec_hybrid(*v.leaked_sk, *v.hybrid, rng);
            return (!msg.empty() && msg[0] == 1) ? 1 : 0;
        }
        // Messages are all-zero vs all-one; the first bit decides.
        return pke::dec_bit(*v.leaked_sk, v.bits.front(), rng);
    };
    return a;
}

pke::CpaAttacker key_exhausting_cpa_attacker() {
    pke::CpaAttacker a;
    a.phase1 = [](const pke::CpaPhase1View &v, Rng &rng) {
        if (v.mode != pke::CpaMode::kBit) {
            throw ArgumentError("key-exhausting CPA attacker plays the bit game");
        }
        pke::CpaChoice c{{0}, {1}, {}};
        if (v.t > 0) {
            auto cm = candidate_measurement(v.n, v.t);
            if (auto k = identify(*cm, v.pk_copies, rng)) {
                c.aux = cm->candidate(*k);
            }
        }
        return c;
    };
    a.phase2 = [](pke::CpaPhase2View &v, Rng &rng) {
        const auto *key = std::any_cast<PrfKey>(&v.aux);
        if (key == nullptr) {
            return rng.coin() ? 1 : 0;
        }
        const pke::BitCiphertext &c = v.bits.front();
        Bits x = qtf::invert(as_trapdoor(*key), c.psi, rng);
        return c.r.dot(x) ^ c.b;
    };
    return a;
}

kex::Eavesdropper random_eavesdropper() {
    return [](const kex::EavesdropView &v, Rng &rng) { return Bits::random(v.n, rng); };
}

kex::Eavesdropper key_exhausting_eavesdropper() {
    return [](const kex::EavesdropView &v, Rng &rng) {
        if (v.t == 0) {
            return Bits::random(v.n, rng);
        }
        auto cm = candidate_measurement(v.n, v.t);
        auto k = identify(*cm, v.pk_copies, rng);
        if (!k) {
            return Bits::random(v.n, rng);
        }
        qtf::Trapdoor tr = as_trapdoor(cm->candidate(*k));
        std::uint64_t value = 0;
        for (const auto &c : v.ciphertexts) {
            Bits x = qtf::invert(tr, c.psi, rng);
            value = (value << 1) | static_cast<std::uint64_t>(c.r.dot(x) ^ c.b);
        }
        return Bits(v.n, value);
    };
}

}  // namespace qtflab::attacks
