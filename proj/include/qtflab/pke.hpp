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

#ifndef QTFLAB_PKE_HPP
#define QTFLAB_PKE_HPP

#include <any>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtflab/bits.hpp"
#include "qtflab/qtf.hpp"
#include "qtflab/report.hpp"
#include "qtflab/state.hpp"

namespace qtflab::pke {

struct SecretKey {
    qtf::Trapdoor tr;

    int n() const { return tr.n; }
};

/// |pk> = |eval>; gen_pk regenerates the identical vector on every call.
struct PublicKey {
    qtf::EvalKey ek;

    int n() const { return ek.n(); }
    const StateVector &state() const { return ek.state; }
};

/// (|psi_x>, r, r.x xor m)
struct BitCiphertext {
    StateVector psi;
    Bits r;
    int b = 0;
};

SecretKey gen_sk(int n, Family family, Rng &rng);
PublicKey gen_pk(const SecretKey &sk);

/// Consumes one public-key copy.
BitCiphertext enc_bit(const PublicKey &pk, int m, Rng &rng);
/// Same with caller-chosen x and r, for fixtures.
BitCiphertext enc_bit_with(const PublicKey &pk, int m, const Bits &x, const Bits &r);
/// (r.x' mod 2) xor b with x' from QTF inversion. Never fails; dishonest
/// ciphertexts decrypt to some bit.
int dec_bit(const SecretKey &sk, const BitCiphertext &c, Rng &rng);

using Nonce = std::array<std::uint8_t, 16>;

/// Counter-mode keystream: block i is HMAC-SHA256(K, iv || i as uint64 BE),
/// where K is the n-bit key written as a big-endian uint64 into the first 8
/// bytes of an otherwise zero 32-byte key.
std::vector<std::uint8_t> priv_stream(const Bits &key, const Nonce &iv, std::size_t len);
/// msg xor priv_stream(key, iv, msg.size())
std::vector<std::uint8_t> priv_xor(const Bits &key, const Nonce &iv, std::span<const std::uint8_t> msg);

struct HybridCiphertext {
    std::vector<BitCiphertext> key_wraps;
    Nonce iv{};
    std::vector<std::uint8_t> masked;
};

/// Wraps a fresh n-bit stream key bit by bit, one public-key copy per bit, and
/// masks msg with its keystream. Requires exactly n copies.
HybridCiphertext enc_hybrid(std::span<const PublicKey> pks, std::span<const std::uint8_t> msg, Rng &rng);
std::vector<std::uint8_t> dec_hybrid(const SecretKey &sk, const HybridCiphertext &hc, Rng &rng);

/// "QPKE1" | n (uint32 LE) | iv | n records | masked bytes. Each record is
/// 2^n (re, im) float64 LE pairs, r packed LSB-first into ceil(n/8) bytes
/// (site 0 in bit 0 of byte 0), then b as one byte.
std::vector<std::uint8_t> serialize(const HybridCiphertext &hc);
HybridCiphertext deserialize(std::span<const std::uint8_t> bytes);

/// kBit: one-bit messages. kBitwise: n-bit messages, one byte (0 or 1) per
/// bit, encrypted bit by bit. kHybrid: byte strings under enc_hybrid.
enum class CpaMode { kBit, kBitwise, kHybrid };
std::string_view cpa_mode_name(CpaMode mode);
std::optional<CpaMode> parse_cpa_mode(std::string_view name);

struct CpaPhase1View {
    /// pk^{(x)t}: all t copies, delivered before the challenge.
    const StateVector &pk_copies;
    int n;
    int t;
    CpaMode mode;
    const SecretKey *leaked_sk;  ///< cheating baselines only
};

/// Challenge messages. Bit mode: each a single byte, 0 or 1. Bitwise mode: n
/// such bytes. Hybrid mode: equal-length byte strings.
struct CpaChoice {
    std::vector<std::uint8_t> m0;
    std::vector<std::uint8_t> m1;
    std::any aux;
};

struct CpaPhase2View {
    std::span<const BitCiphertext> bits;  ///< bit (1 entry) and bitwise (n entries) modes
    const HybridCiphertext *hybrid;       ///< hybrid mode only
    std::any &aux;
    int n;
    const SecretKey *leaked_sk;
};

struct CpaAttacker {
    std::function<CpaChoice(const CpaPhase1View &, Rng &)> phase1;
    std::function<int(CpaPhase2View &, Rng &)> phase2;
};

/// Per trial: fresh sk, t public-key copies to phase 1, a fair challenge bit,
/// and the encryption of m_b to phase 2. Arms "b1"/"b0" tally guesses of 1;
/// extra "success_rate" is P[b' = b].
ExperimentReport cpa_game(const CpaAttacker &attacker, int t, std::size_t trials, int n, Family family, Rng &rng,
                          CpaMode mode = CpaMode::kBit, bool leak_sk = false);

/// Runs a bit-mode attacker both as a CPA attacker and, converted, as a
/// predictor of r.x from (|psi_x>, r): the converted attacker is handed a
/// uniform b~ in place of the masked bit and outputs b~ xor m_{b'}. On shared
/// randomness both succeed on exactly the same trials.
struct HardcoreEquivalence {
    std::size_t trials = 0;
    std::size_t cpa_hits = 0;
    std::size_t inner_product_hits = 0;
    std::size_t disagreements = 0;
};
HardcoreEquivalence hardcore_bit_equivalence(const CpaAttacker &attacker, int t, std::size_t trials, int n,
                                             Family family, Rng &rng);

}  // namespace qtflab::pke

#endif
