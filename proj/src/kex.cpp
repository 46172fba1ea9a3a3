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

#include "qtflab/kex.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace qtflab::kex {

namespace {

std::vector<pke::BitCiphertext> wrap_key(const pke::PublicKey &pk, const Bits &x, Rng &rng) {
    std::vector<pke::BitCiphertext> out;
    out.reserve(static_cast<std::size_t>(x.length()));
    for (int i = 0; i < x.length(); ++i) {
        out.push_back(pke::enc_bit(pk, x.bit(i) ? 1 : 0, rng));
    }
    return out;
}

Bits unwrap_key(const pke::SecretKey &sk, std::span<const pke::BitCiphertext> cts, Rng &rng) {
    std::uint64_t v = 0;
    for (const auto &c : cts) {
        v = (v << 1) | static_cast<std::uint64_t>(pke::dec_bit(sk, c, rng));
    }
    return Bits(static_cast<int>(cts.size()), v);
}

std::string describe_ciphertexts(std::span<const pke::BitCiphertext> cts) {
    std::string r;
    std::string b;
    for (const auto &c : cts) {
        r += (r.empty() ? "" : ",") + c.r.str();
        b += static_cast<char>('0' + c.b);
    }
    return fmt::format("{} bit ciphertexts; r=[{}]; b={}", cts.size(), r, b);
}

void check_n(int n, int copies) {
    if (n < 1) {
        throw ArgumentError("security parameter must be at least 1");
    }
    checked_pow(2, static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(copies, 1)), max_state_dim(),
                "kex");
}

}  // namespace

std::string_view channel_mode_name(ChannelMode mode) {
    return mode == ChannelMode::kAuthenticatedCopy ? "authenticated_copy" : "unauthenticated";
}

std::optional<ChannelMode> parse_channel_mode(std::string_view name) {
    if (name == "authenticated_copy") {
        return ChannelMode::kAuthenticatedCopy;
    }
    if (name == "unauthenticated") {
        return ChannelMode::kUnauthenticated;
    }
    return std::nullopt;
}

void ChannelModel::validate() const {
    if (adversary_copies < 0) {
        throw ArgumentError(fmt::format("adversary copy count must be non-negative, got {}", adversary_copies));
    }
    if (mode == ChannelMode::kUnauthenticated && adversary_copies != 0) {
        throw ArgumentError("adversary copies only apply to the authenticated-copy channel");
    }
}

std::string Transcript::to_jsonl() const {
    std::string out;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto &e = events_[i];
        nlohmann::ordered_json j;
        j["seq"] = i;
        j["seed"] = e.seed;
        j["sender"] = e.sender;
        j["receiver"] = e.receiver;
        j["payload"] = e.payload;
        j["adversary_view"] = e.adversary_view;
        j["simulator_privilege"] = e.simulator_privilege;
        out += j.dump();
        out += '\n';
    }
    return out;
}

Transcript Transcript::from_jsonl(std::string_view text) {
    Transcript t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto j = nlohmann::ordered_json::parse(line);
        if (j.at("seq").get<std::size_t>() != t.size()) {
            throw InvariantError("transcript events out of order");
        }
        t.append(TranscriptEvent{j.at("seed").get<std::uint64_t>(), j.at("sender").get<std::string>(),
                                 j.at("receiver").get<std::string>(), j.at("payload").get<std::string>(),
                                 j.at("adversary_view").get<std::string>(), j.at("simulator_privilege").get<bool>()});
    }
    return t;
}

HonestRun run_honest(int n, Family family, const ChannelModel &model, Rng &rng, std::optional<Bits> bob_choice) {
    model.validate();
    check_n(n, 1);
    const bool copy_mode = model.mode == ChannelMode::kAuthenticatedCopy;
    const std::uint64_t seed = rng.seed();
    Transcript tr;

    pke::SecretKey sk = pke::gen_sk(n, family, rng);
    pke::PublicKey pk = pke::gen_pk(sk);
    tr.append({seed, "alice", "bob", fmt::format("{} copies of |pk> ({} qubits each)", n, n),
               copy_mode ? "none" : "in transit (unauthenticated)", false});
    for (int i = 0; i < model.adversary_copies; ++i) {
        // Regenerated from sk: every copy is the same vector.
        tr.append({seed, "alice", "adversary", fmt::format("copy {} of |pk> ({} qubits)", i, n), "pk copy", false});
    }

    if (bob_choice && bob_choice->length() != n) {
        throw DimensionError(fmt::format("Bob's key has {} bits, expected {}", bob_choice->length(), n));
    }
    Bits x = bob_choice ? *bob_choice : Bits::random(n, rng);
    std::vector<pke::BitCiphertext> cts = wrap_key(pk, x, rng);
    tr.append({seed, "bob", "alice", describe_ciphertexts(cts),
               copy_mode ? "ciphertext observation" : "in transit (unauthenticated)", copy_mode});

    Bits alice = unwrap_key(sk, cts, rng);
    return HonestRun{alice, x, std::move(tr)};
}

ExperimentReport run_adversarial(const Eavesdropper &adversary, int n, Family family, const ChannelModel &model,
                                 std::size_t trials, Rng &rng) {
    model.validate();
    const double chance = std::ldexp(1.0, -n);
    if (model.mode == ChannelMode::kUnauthenticated) {
        if (adversary) {
            throw ArgumentError("the unauthenticated channel runs the built-in man-in-the-middle");
        }
        check_n(n, 1);
        ArmRecord eve_alice{"eve_alice", 0, 0};
        ArmRecord eve_bob{"eve_bob", 0, 0};
        ArmRecord alice_bob{"alice_bob", 0, 0};
        for (std::size_t i = 0; i < trials; ++i) {
            Rng trial = rng.split(i);
            pke::SecretKey sk_a = pke::gen_sk(n, family, trial);
            pke::PublicKey pk_a = pke::gen_pk(sk_a);
            // Eve keeps Alice's copies and forwards her own key to Bob.
            pke::SecretKey sk_e = pke::gen_sk(n, family, trial);
            pke::PublicKey pk_e = pke::gen_pk(sk_e);

            Bits x_bob = Bits::random(n, trial);
            auto to_eve = wrap_key(pk_e, x_bob, trial);
            Bits eve_side_bob = unwrap_key(sk_e, to_eve, trial);

            Bits x_eve = Bits::random(n, trial);
            auto to_alice = wrap_key(pk_a, x_eve, trial);
            Bits alice_key = unwrap_key(sk_a, to_alice, trial);

            for (ArmRecord *a : {&eve_alice, &eve_bob, &alice_bob}) {
                ++a->trials;
            }
            eve_alice.hits += x_eve == alice_key ? 1 : 0;
            eve_bob.hits += eve_side_bob == x_bob ? 1 : 0;
            alice_bob.hits += alice_key == x_bob ? 1 : 0;
        }
        ExperimentReport r = success_report("kex_mitm", rng.seed(), alice_bob);
        r.arms = {eve_alice, eve_bob, alice_bob};
        r.config = {{"n", std::to_string(n)},
                    {"family", std::string(family_name(family))},
                    {"channel", std::string(channel_mode_name(model.mode))},
                    {"trials", std::to_string(trials)}};
        r.extras.emplace_back("eve_alice_rate", eve_alice.rate());
        r.extras.emplace_back("eve_bob_rate", eve_bob.rate());
        r.extras.emplace_back("chance_rate", chance);
        return r;
    }

    if (!adversary) {
        throw ArgumentError("authenticated-copy mode needs an eavesdropper");
    }
    const int t = model.adversary_copies;
    check_n(n, t);
    ArmRecord recover{"recover", 0, 0};
    std::size_t agree = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng trial = rng.split(i);
        Rng adv = trial.split(1);
        pke::SecretKey sk = pke::gen_sk(n, family, trial);
        pke::PublicKey pk = pke::gen_pk(sk);
        StateVector copies = kron_power(pk.state(), t);
        Bits x = Bits::random(n, trial);
        auto cts = wrap_key(pk, x, trial);
        // Alice decrypts an identically prepared message; the eavesdropper
        // observes these.
        agree += unwrap_key(sk, cts, trial) == x ? 1 : 0;
        Bits guess = adversary(EavesdropView{copies, cts, n, t}, adv);
        ++recover.trials;
        recover.hits += guess == x ? 1 : 0;
    }
    ExperimentReport r = success_report("kex_eavesdrop", rng.seed(), recover);
    r.config = {{"n", std::to_string(n)},
                {"family", std::string(family_name(family))},
                {"channel", std::string(channel_mode_name(model.mode))},
                {"t", std::to_string(t)},
                {"trials", std::to_string(trials)},
                {"simulator_privilege", "ciphertext_observation"}};
    r.extras.emplace_back("chance_rate", chance);
    r.extras.emplace_back("advantage_over_chance", recover.rate() - chance);
    r.extras.emplace_back("honest_agreement_rate",
                          trials == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(trials));
    return r;
}

bool CpaEquivalence::consistent(double k) const {
    return std::abs(kex_recovery - implied_recovery) <= k * sigma + 1e-12;
}

CpaEquivalence kex_cpa_equivalence(const Eavesdropper &adversary, int n, int t, Family family, std::size_t trials,
                                   Rng &rng) {
    if (n < 2) {
        throw ArgumentError("kex_cpa_equivalence needs n >= 2");
    }
    ExperimentReport kex =
        run_adversarial(adversary, n, family, ChannelModel{ChannelMode::kAuthenticatedCopy, t}, trials, rng);

    struct Aux {
        StateVector copies;
        std::vector<std::uint8_t> m0;
        std::vector<std::uint8_t> m1;
    };
    pke::CpaAttacker wrapped;
    wrapped.phase1 = [n](const pke::CpaPhase1View &v, Rng &r) {
        const std::uint64_t size = std::uint64_t{1} << n;
        const std::uint64_t a = r.below(size);
        const std::uint64_t b = (a + 1 + r.below(size - 1)) % size;
        auto to_bytes = [n](std::uint64_t value) {
            std::vector<std::uint8_t> out;
            Bits bits(n, value);
            for (int i = 0; i < n; ++i) {
                out.push_back(bits.bit(i) ? 1 : 0);
            }
            return out;
        };
        pke::CpaChoice c{to_bytes(a), to_bytes(b), {}};
        c.aux = Aux{v.pk_copies, c.m0, c.m1};
        return c;
    };
    wrapped.phase2 = [&adversary, n, t](pke::CpaPhase2View &v, Rng &r) {
        const Aux &aux = std::any_cast<const Aux &>(v.aux);
        Bits guess = adversary(EavesdropView{aux.copies, v.bits, n, t}, r);
        std::vector<std::uint8_t> g;
        for (int i = 0; i < n; ++i) {
            g.push_back(guess.bit(i) ? 1 : 0);
        }
        if (g == aux.m1) {
            return 1;
        }
        if (g == aux.m0) {
            return 0;
        }
        return r.coin() ? 1 : 0;
    };
    Rng cpa_rng = rng.split(0x6b6578);
    ExperimentReport cpa = pke::cpa_game(wrapped, t, trials, n, family, cpa_rng, pke::CpaMode::kBitwise);

    const double size = std::ldexp(1.0, n);
    CpaEquivalence out;
    out.kex_recovery = kex.value;
    out.cpa_success = cpa.extra("success_rate");
    // s = p + (1 - p)(N - 2) / (2(N - 1)) for m_{1-b} uniform among the other N - 1 strings.
    const double scale = 2.0 * (size - 1.0) / size;
    out.implied_recovery = (2.0 * (size - 1.0) * out.cpa_success - (size - 2.0)) / size;
    const double s_kex = binomial_sigma(out.kex_recovery, trials);
    const double s_cpa = scale * binomial_sigma(out.cpa_success, trials);
    out.sigma = std::sqrt(s_kex * s_kex + s_cpa * s_cpa);
    return out;
}

}  // namespace qtflab::kex
