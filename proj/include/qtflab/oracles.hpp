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

#ifndef QTFLAB_ORACLES_HPP
#define QTFLAB_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtflab/bits.hpp"
#include "qtflab/rng.hpp"
#include "qtflab/state.hpp"

namespace qtflab {

enum class Family {
    kTable,           ///< random truth table; key bytes are the packed table
    kCryptographic,   ///< HMAC-SHA256 under a 32-byte key, low bit of the tag
    kRandomFunction,  ///< keyless baseline; a fresh table on every sample
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

inline constexpr std::size_t kCryptographicKeyBytes = 32;

/// Key of a keyed boolean function on n-bit inputs.
///
/// Table-like families store the truth table itself as key bytes: bit y lives
/// in byte y/8 at position y%8, so the key length is ceil(2^n / 8) bytes and
/// enumerating byte strings enumerates all functions.
class PrfKey {
  public:
    PrfKey(Family family, int domain_bits, std::vector<std::uint8_t> key_bytes);

    /// Table-family key with an explicit truth table (table[y] in {0,1}).
    static PrfKey from_table(int domain_bits, const std::vector<int> &table,
                             Family family = Family::kTable);

    Family family() const { return family_; }
    int domain_bits() const { return domain_bits_; }
    const std::vector<std::uint8_t> &key_bytes() const { return key_bytes_; }
    std::string hex() const;

    friend bool operator==(const PrfKey &, const PrfKey &) = default;

  private:
    Family family_;
    int domain_bits_;
    std::vector<std::uint8_t> key_bytes_;
};

std::size_t key_length(Family family, int domain_bits);

/// Evaluation rule of one family. Stateless; evaluation is a pure function of
/// (key, input).
class BooleanOracle {
  public:
    explicit BooleanOracle(Family family) : family_(family) {}

    Family family() const { return family_; }
    int eval(const PrfKey &key, std::uint64_t y) const;

  private:
    Family family_;
};

/// Uniform key for `family` on n-bit inputs.
PrfKey sample_key(Family family, int n, Rng &rng);

int eval_bit(const BooleanOracle &oracle, const PrfKey &key, const Bits &y);
/// Convenience: evaluates with the key's own family.
int eval_bit(const PrfKey &key, const Bits &y);

/// Entry y is (-1)^{f(key, y)}, for all 2^n inputs.
std::vector<std::int8_t> phase_signs(const PrfKey &key, int n);

/// G(k): |y> -> (-1)^{f(k, y)} |y>.
StateVector apply_phase_oracle(const StateVector &state, const BooleanOracle &oracle, const PrfKey &key);
StateVector apply_phase_oracle(const StateVector &state, const PrfKey &key);

}  // namespace qtflab

#endif
