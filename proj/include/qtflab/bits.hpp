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

#ifndef QTFLAB_BITS_HPP
#define QTFLAB_BITS_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace qtflab {

class Rng;

/// Fixed-length bit string of at most 63 bits.
///
/// Site i is the i-th character of the textual form, and the packed integer
/// reads the string big-endian: site 0 is the most significant bit. That same
/// integer is the computational-basis index of |x> on a register of length().
class Bits {
  public:
    static constexpr int kMaxLength = 63;

    Bits() = default;
    Bits(int length, std::uint64_t value);

    static Bits zeros(int length) { return Bits(length, 0); }
    static Bits parse(std::string_view text);
    static Bits random(int length, Rng &rng);

    int length() const { return length_; }
    std::uint64_t value() const { return value_; }
    bool bit(int site) const;
    Bits flipped(int site) const;
    std::string str() const;

    /// Inner product mod 2; lengths must agree.
    int dot(const Bits &other) const;
    int parity() const;

    friend bool operator==(const Bits &, const Bits &) = default;

  private:
    int length_ = 0;
    std::uint64_t value_ = 0;
};

/// x.y mod 2 for two basis indices read as bit strings of the same length.
inline int dot_mod2(std::uint64_t x, std::uint64_t y) {
    return __builtin_popcountll(x & y) & 1;
}

}  // namespace qtflab

#endif
