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

#include "qtflab/oracles.hpp"

#include <array>

#include <fmt/format.h>
#include <sodium.h>

namespace qtflab {

namespace {

bool table_like(Family f) { return f == Family::kTable || f == Family::kRandomFunction; }

void require_domain(Family family, int n) {
    if (n < 1 || n > Bits::kMaxLength) {
        throw ArgumentError(fmt::format("domain bits {} outside [1, {}]", n, Bits::kMaxLength));
    }
    if (table_like(family) && n > max_table_bits()) {
        throw ResourceError(fmt::format("{} family with n={} exceeds table cap {}", family_name(family), n,
                                        max_table_bits()));
    }
}

void ensure_sodium() {
    static const bool ready = [] { return sodium_init() >= 0; }();
    if (!ready) {
        throw std::runtime_error("libsodium initialisation failed");
    }
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
    case Family::kTable:
        return "table";
    case Family::kCryptographic:
        return "cryptographic";
    case Family::kRandomFunction:
        return "random_function";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "table") {
        return Family::kTable;
    }
    if (name == "cryptographic" || name == "crypto") {
        return Family::kCryptographic;
    }
    if (name == "random_function" || name == "random") {
        return Family::kRandomFunction;
    }
    return std::nullopt;
}

std::size_t key_length(Family family, int domain_bits) {
    if (table_like(family)) {
        return ((std::size_t{1} << domain_bits) + 7) / 8;
    }
    return kCryptographicKeyBytes;
}

PrfKey::PrfKey(Family family, int domain_bits, std::vector<std::uint8_t> key_bytes)
    : family_(family), domain_bits_(domain_bits), key_bytes_(std::move(key_bytes)) {
    require_domain(family, domain_bits);
    if (key_bytes_.size() != key_length(family, domain_bits)) {
        throw ArgumentError(fmt::format("{} key for n={} needs {} bytes, got {}", family_name(family),
                                        domain_bits, key_length(family, domain_bits), key_bytes_.size()));
    }
    if (table_like(family) && domain_bits < 3) {
        // Bits beyond the 2^n table entries stay zero so equal functions compare equal.
        auto used = static_cast<unsigned>(1U << domain_bits);
        if ((key_bytes_[0] >> used) != 0) {
            throw ArgumentError("table key has bits set beyond its domain");
        }
    }
}

PrfKey PrfKey::from_table(int domain_bits, const std::vector<int> &table, Family family) {
    if (!table_like(family)) {
        throw ArgumentError("explicit truth tables need a table-like family");
    }
    require_domain(family, domain_bits);
    std::size_t entries = std::size_t{1} << domain_bits;
    if (table.size() != entries) {
        throw DimensionError(fmt::format("truth table for n={} needs {} entries, got {}", domain_bits, entries,
                                         table.size()));
    }
    std::vector<std::uint8_t> bytes(key_length(family, domain_bits), 0);
    for (std::size_t y = 0; y < entries; ++y) {
        if (table[y] != 0 && table[y] != 1) {
            throw ArgumentError("truth table entries must be 0 or 1");
        }
        if (table[y]) {
            bytes[y / 8] |= static_cast<std::uint8_t>(1U << (y % 8));
        }
    }
    return PrfKey(family, domain_bits, std::move(bytes));
}

std::string PrfKey::hex() const {
    std::string out;
    out.reserve(key_bytes_.size() * 2);
    for (std::uint8_t b : key_bytes_) {
        out += fmt::format("{:02x}", b);
    }
    return out;
}

int BooleanOracle::eval(const PrfKey &key, std::uint64_t y) const {
    if (key.family() != family_) {
        throw ArgumentError(fmt::format("{} oracle given a {} key", family_name(family_), family_name(key.family())));
    }
    const int n = key.domain_bits();
    if (n < 64 && (y >> n) != 0) {
        throw DimensionError(fmt::format("input {} outside {}-bit domain", y, n));
    }
    if (table_like(family_)) {
        return (key.key_bytes()[y / 8] >> (y % 8)) & 1;
    }
    ensure_sodium();
    std::array<std::uint8_t, 8> msg{};
    for (int i = 0; i < 8; ++i) {
        msg[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(y >> (56 - 8 * i));
    }
    std::array<std::uint8_t, crypto_auth_hmacsha256_BYTES> tag{};
    crypto_auth_hmacsha256(tag.data(), msg.data(), msg.size(), key.key_bytes().data());
    return tag[0] & 1;
}

PrfKey sample_key(Family family, int n, Rng &rng) {
    require_domain(family, n);
    std::vector<std::uint8_t> bytes(key_length(family, n));
    rng.fill_bytes(bytes);
    if (table_like(family) && n < 3) {
        bytes[0] &= static_cast<std::uint8_t>((1U << (1U << n)) - 1U);
    }
    return PrfKey(family, n, std::move(bytes));
}

int eval_bit(const BooleanOracle &oracle, const PrfKey &key, const Bits &y) {
    if (y.length() != key.domain_bits()) {
        throw DimensionError(
            fmt::format("input of length {} for a {}-bit oracle", y.length(), key.domain_bits()));
    }
    return oracle.eval(key, y.value());
}

int eval_bit(const PrfKey &key, const Bits &y) { return eval_bit(BooleanOracle(key.family()), key, y); }

std::vector<std::int8_t> phase_signs(const PrfKey &key, int n) {
    if (n != key.domain_bits()) {
        throw DimensionError(fmt::format("phase table for n={} from a {}-bit key", n, key.domain_bits()));
    }
    std::size_t dim = checked_pow(2, static_cast<std::size_t>(n), max_state_dim(), "phase_signs");
    BooleanOracle oracle(key.family());
    std::vector<std::int8_t> signs(dim);
    for (std::size_t y = 0; y < dim; ++y) {
        signs[y] = oracle.eval(key, y) ? std::int8_t{-1} : std::int8_t{1};
    }
    return signs;
}

StateVector apply_phase_oracle(const StateVector &state, const BooleanOracle &oracle, const PrfKey &key) {
    if (state.local_dim() != 2 || state.num_sites() != key.domain_bits()) {
        throw DimensionError(fmt::format("{}-bit oracle on a register of {} sites (local dim {})",
                                         key.domain_bits(), state.num_sites(), state.local_dim()));
    }
    if (oracle.family() != key.family()) {
        throw ArgumentError("oracle and key families differ");
    }
    auto signs = phase_signs(key, key.domain_bits());
    return apply_phase_signs(state, signs);
}

StateVector apply_phase_oracle(const StateVector &state, const PrfKey &key) {
    return apply_phase_oracle(state, BooleanOracle(key.family()), key);
}

}  // namespace qtflab
