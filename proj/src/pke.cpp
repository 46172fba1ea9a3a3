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

#include "qtflab/pke.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

#include <fmt/format.h>
#include <sodium.h>

namespace qtflab::pke {

namespace {

constexpr std::array<std::uint8_t, 5> kMagic = {'Q', 'P', 'K', 'E', '1'};

void ensure_sodium() {
    static const bool ready = [] { return sodium_init() >= 0; }();
    if (!ready) {
        throw std::runtime_error("libsodium initialisation failed");
    }
}

void require_bit(int m) {
    if (m != 0 && m != 1) {
        throw ArgumentError(fmt::format("message bit must be 0 or 1, got {}", m));
    }
}

class Writer {
  public:
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

  private:
    std::vector<std::uint8_t> out_;
};

class Reader {
  public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::span<const std::uint8_t> bytes(std::size_t n) {
        if (in_.size() - pos_ < n) {
            throw InvariantError("truncated hybrid ciphertext");
        }
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint8_t u8() { return bytes(1)[0]; }
    std::uint32_t u32() {
        auto b = bytes(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) {
            v = (v << 8) | b[static_cast<std::size_t>(i)];
        }
        return v;
    }
    std::uint64_t u64() {
        auto b = bytes(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) {
            v = (v << 8) | b[static_cast<std::size_t>(i)];
        }
        return v;
    }
    std::span<const std::uint8_t> rest() { return bytes(in_.size() - pos_); }

  private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

BitCiphertext encrypt(const PublicKey &pk, int m, const Bits &x, const Bits &r) {
    require_bit(m);
    if (r.length() != pk.n()) {
        throw DimensionError(fmt::format("mask r has {} bits, key has n={}", r.length(), pk.n()));
    }
    return BitCiphertext{qtf::eval(pk.ek, x), r, r.dot(x) ^ m};
}

}  // namespace

SecretKey gen_sk(int n, Family family, Rng &rng) { return SecretKey{qtf::gen_tr(n, family, rng)}; }

PublicKey gen_pk(const SecretKey &sk) { return PublicKey{qtf::gen_ev(sk.tr)}; }

BitCiphertext enc_bit(const PublicKey &pk, int m, Rng &rng) {
    Bits r = Bits::random(pk.n(), rng);
    Bits x = Bits::random(pk.n(), rng);
    return encrypt(pk, m, x, r);
}

BitCiphertext enc_bit_with(const PublicKey &pk, int m, const Bits &x, const Bits &r) {
    return encrypt(pk, m, x, r);
}

int dec_bit(const SecretKey &sk, const BitCiphertext &c, Rng &rng) {
    if (c.r.length() != sk.n()) {
        throw DimensionError(fmt::format("ciphertext mask has {} bits, key has n={}", c.r.length(), sk.n()));
    }
    Bits x = qtf::invert(sk.tr, c.psi, rng);
    return c.r.dot(x) ^ (c.b & 1);
}

std::vector<std::uint8_t> priv_stream(const Bits &key, const Nonce &iv, std::size_t len) {
    ensure_sodium();
    std::array<std::uint8_t, crypto_auth_hmacsha256_KEYBYTES> k{};
    for (int i = 0; i < 8; ++i) {
        k[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(key.value() >> (56 - 8 * i));
    }
    std::array<std::uint8_t, 24> block_in{};
    std::copy(iv.begin(), iv.end(), block_in.begin());
    std::array<std::uint8_t, crypto_auth_hmacsha256_BYTES> tag{};
    std::vector<std::uint8_t> out;
    out.reserve(len);
    for (std::uint64_t counter = 0; out.size() < len; ++counter) {
        for (int i = 0; i < 8; ++i) {
            block_in[16 + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
        }
        crypto_auth_hmacsha256(tag.data(), block_in.data(), block_in.size(), k.data());
        const std::size_t take = std::min(tag.size(), len - out.size());
        out.insert(out.end(), tag.begin(), tag.begin() + static_cast<std::ptrdiff_t>(take));
    }
    sodium_memzero(k.data(), k.size());
    return out;
}

std::vector<std::uint8_t> priv_xor(const Bits &key, const Nonce &iv, std::span<const std::uint8_t> msg) {
    std::vector<std::uint8_t> out = priv_stream(key, iv, msg.size());
    for (std::size_t i = 0; i < msg.size(); ++i) {
        out[i] ^= msg[i];
    }
    return out;
}

HybridCiphertext enc_hybrid(std::span<const PublicKey> pks, std::span<const std::uint8_t> msg, Rng &rng) {
    if (pks.empty()) {
        throw ArgumentError("enc_hybrid needs n public-key copies, got none");
    }
    const int n = pks.front().n();
    if (pks.size() != static_cast<std::size_t>(n)) {
        throw ArgumentError(fmt::format("enc_hybrid needs exactly n={} public-key copies, got {}", n, pks.size()));
    }
    Bits stream_key = Bits::random(n, rng);
    HybridCiphertext hc;
    for (int i = 0; i < n; ++i) {
        const PublicKey &pk = pks[static_cast<std::size_t>(i)];
        if (pk.n() != n) {
            throw DimensionError("public-key copies of different sizes");
        }
        hc.key_wraps.push_back(enc_bit(pk, stream_key.bit(i) ? 1 : 0, rng));
    }
    rng.fill_bytes(hc.iv);
    hc.masked = priv_xor(stream_key, hc.iv, msg);
    return hc;
}

std::vector<std::uint8_t> dec_hybrid(const SecretKey &sk, const HybridCiphertext &hc, Rng &rng) {
    const int n = sk.n();
    if (hc.key_wraps.size() != static_cast<std::size_t>(n)) {
        throw DimensionError(fmt::format("{} key wraps for n={}", hc.key_wraps.size(), n));
    }
    std::uint64_t value = 0;
    for (const auto &wrap : hc.key_wraps) {
        value = (value << 1) | static_cast<std::uint64_t>(dec_bit(sk, wrap, rng));
    }
    return priv_xor(Bits(n, value), hc.iv, hc.masked);
}

std::vector<std::uint8_t> serialize(const HybridCiphertext &hc) {
    const auto n = static_cast<int>(hc.key_wraps.size());
    Writer w;
    w.bytes(kMagic);
    w.u32(static_cast<std::uint32_t>(n));
    w.bytes(hc.iv);
    const std::size_t r_bytes = (static_cast<std::size_t>(n) + 7) / 8;
    for (const auto &c : hc.key_wraps) {
        if (c.psi.num_sites() != n || c.psi.local_dim() != 2 || c.r.length() != n) {
            throw DimensionError("key wrap does not match the number of wraps");
        }
        for (Eigen::Index i = 0; i < c.psi.amplitudes().size(); ++i) {
            w.u64(std::bit_cast<std::uint64_t>(c.psi.amplitudes()(i).real()));
            w.u64(std::bit_cast<std::uint64_t>(c.psi.amplitudes()(i).imag()));
        }
        std::vector<std::uint8_t> packed(r_bytes, 0);
        for (int s = 0; s < n; ++s) {
            if (c.r.bit(s)) {
                packed[static_cast<std::size_t>(s) / 8] |= static_cast<std::uint8_t>(1u << (s % 8));
            }
        }
        w.bytes(packed);
        w.u8(static_cast<std::uint8_t>(c.b & 1));
    }
    w.bytes(hc.masked);
    return w.take();
}

HybridCiphertext deserialize(std::span<const std::uint8_t> bytes) {
    Reader rd(bytes);
    auto magic = rd.bytes(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
        throw InvariantError("not a hybrid ciphertext (bad magic)");
    }
    const std::uint32_t n32 = rd.u32();
    if (n32 < 1 || n32 > 30) {
        throw InvariantError(fmt::format("hybrid ciphertext declares n={}", n32));
    }
    const int n = static_cast<int>(n32);
    const std::size_t dim = checked_pow(2, static_cast<std::size_t>(n), max_state_dim(), "deserialize");
    HybridCiphertext hc;
    auto iv = rd.bytes(hc.iv.size());
    std::copy(iv.begin(), iv.end(), hc.iv.begin());
    const std::size_t r_bytes = (static_cast<std::size_t>(n) + 7) / 8;
    for (int k = 0; k < n; ++k) {
        CVector amps(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            const double re = std::bit_cast<double>(rd.u64());
            const double im = std::bit_cast<double>(rd.u64());
            amps(static_cast<Eigen::Index>(i)) = Complex(re, im);
        }
        auto packed = rd.bytes(r_bytes);
        std::uint64_t r = 0;
        for (int s = 0; s < n; ++s) {
            const bool on = (packed[static_cast<std::size_t>(s) / 8] >> (s % 8)) & 1u;
            r = (r << 1) | (on ? 1u : 0u);
        }
        const std::uint8_t b = rd.u8();
        if (b > 1) {
            throw InvariantError("masked bit byte must be 0 or 1");
        }
        hc.key_wraps.push_back(BitCiphertext{StateVector(2, n, std::move(amps)), Bits(n, r), b});
    }
    auto rest = rd.rest();
    hc.masked.assign(rest.begin(), rest.end());
    return hc;
}

namespace {

int single_bit(const std::vector<std::uint8_t> &m) {
    if (m.size() != 1 || m[0] > 1) {
        throw ArgumentError("bit-mode challenge messages must be one byte holding 0 or 1");
    }
    return m[0];
}

}  // namespace

std::string_view cpa_mode_name(CpaMode mode) {
    switch (mode) {
    case CpaMode::kBit:
        return "bit";
    case CpaMode::kBitwise:
        return "bitwise";
    case CpaMode::kHybrid:
        return "hybrid";
    }
    return "unknown";
}

std::optional<CpaMode> parse_cpa_mode(std::string_view name) {
    for (CpaMode m : {CpaMode::kBit, CpaMode::kBitwise, CpaMode::kHybrid}) {
        if (cpa_mode_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

ExperimentReport cpa_game(const CpaAttacker &attacker, int t, std::size_t trials, int n, Family family, Rng &rng,
                          CpaMode mode, bool leak_sk) {
    if (t < 0) {
        throw ArgumentError("copy count must be non-negative");
    }
    if (!attacker.phase1 || !attacker.phase2) {
        throw ArgumentError("attacker needs both phases");
    }
    checked_pow(2, static_cast<std::size_t>(t) * static_cast<std::size_t>(n), max_state_dim(), "cpa_game");
    ArmRecord b1{"b1", 0, 0};
    ArmRecord b0{"b0", 0, 0};
    std::size_t correct = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng trial = rng.split(i);
        Rng adv = trial.split(1);
        SecretKey sk = gen_sk(n, family, trial);
        PublicKey pk = gen_pk(sk);
        StateVector copies = kron_power(pk.state(), t);
        const SecretKey *leak = leak_sk ? &sk : nullptr;
        CpaChoice choice = attacker.phase1(CpaPhase1View{copies, n, t, mode, leak}, adv);
        const bool b = trial.coin();
        int guess = 0;
        if (mode == CpaMode::kBit) {
            const int m0 = single_bit(choice.m0);
            const int m1 = single_bit(choice.m1);
            std::vector<BitCiphertext> c{enc_bit(pk, b ? m1 : m0, trial)};
            CpaPhase2View view{c, nullptr, choice.aux, n, leak};
            guess = attacker.phase2(view, adv);
        } else if (mode == CpaMode::kBitwise) {
            const auto &msg = b ? choice.m1 : choice.m0;
            if (choice.m0.size() != static_cast<std::size_t>(n) || choice.m1.size() != static_cast<std::size_t>(n)) {
                throw ArgumentError(fmt::format("bitwise challenge messages must have n={} entries", n));
            }
            std::vector<BitCiphertext> c;
            for (std::uint8_t bit : msg) {
                c.push_back(enc_bit(pk, single_bit({bit}), trial));
            }
            CpaPhase2View view{c, nullptr, choice.aux, n, leak};
            guess = attacker.phase2(view, adv);
        } else {
            if (choice.m0.size() != choice.m1.size()) {
                throw ArgumentError("hybrid challenge messages must have equal length");
            }
            std::vector<PublicKey> fresh(static_cast<std::size_t>(n), pk);
            HybridCiphertext hc = enc_hybrid(fresh, b ? choice.m1 : choice.m0, trial);
            CpaPhase2View view{{}, &hc, choice.aux, n, leak};
            guess = attacker.phase2(view, adv);
        }
        ArmRecord &arm = b ? b1 : b0;
        ++arm.trials;
        arm.hits += guess == 1 ? 1 : 0;
        correct += (guess == 1) == b ? 1 : 0;
    }
    ExperimentReport r = advantage_report("cpa", rng.seed(), b1, b0);
    r.config = {{"n", std::to_string(n)},
                {"t", std::to_string(t)},
                {"family", std::string(family_name(family))},
                {"trials", std::to_string(trials)},
                {"mode", std::string(cpa_mode_name(mode))},
                {"privilege", leak_sk ? "sk" : "none"}};
    r.extras.emplace_back("success_rate",
                          trials == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(trials));
    return r;
}

HardcoreEquivalence hardcore_bit_equivalence(const CpaAttacker &attacker, int t, std::size_t trials, int n,
                                             Family family, Rng &rng) {
    checked_pow(2, static_cast<std::size_t>(t) * static_cast<std::size_t>(n), max_state_dim(),
                "hardcore_bit_equivalence");
    HardcoreEquivalence out;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng trial = rng.split(i);
        SecretKey sk = gen_sk(n, family, trial);
        PublicKey pk = gen_pk(sk);
        StateVector copies = kron_power(pk.state(), t);
        Bits x = Bits::random(n, trial);
        Bits r = Bits::random(n, trial);
        const int masked = trial.coin() ? 1 : 0;
        const int rx = r.dot(x);

        auto run = [&](int shown_b) {
            Rng adv = trial.split(1);
            CpaChoice choice = attacker.phase1(CpaPhase1View{copies, n, t, CpaMode::kBit, nullptr}, adv);
            const int m0 = single_bit(choice.m0);
            const int m1 = single_bit(choice.m1);
            if (m0 == m1) {
                throw ArgumentError("equivalence harness needs distinct challenge bits");
            }
            std::vector<BitCiphertext> c{BitCiphertext{qtf::eval(pk.ek, x), r, shown_b}};
            CpaPhase2View view{c, nullptr, choice.aux, n, nullptr};
            const int guess = attacker.phase2(view, adv) == 1 ? 1 : 0;
            return std::pair{guess, guess ? m1 : m0};
        };

        // CPA view: b = masked xor r.x selects m_b; the ciphertext shows masked.
        auto [cpa_guess, cpa_msg] = run(masked);
        const int true_msg = masked ^ rx;
        const bool cpa_hit = cpa_msg == true_msg;
        // Converted attacker: same view, predicts r.x as b~ xor m_{b'}.
        auto [conv_guess, conv_msg] = run(masked);
        const bool rx_hit = (masked ^ conv_msg) == rx;
        (void)cpa_guess;
        (void)conv_guess;

        ++out.trials;
        out.cpa_hits += cpa_hit ? 1 : 0;
        out.inner_product_hits += rx_hit ? 1 : 0;
        out.disagreements += cpa_hit != rx_hit ? 1 : 0;
    }
    return out;
}

}  // namespace qtflab::pke
