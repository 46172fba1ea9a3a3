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

#include "qtflab/bits.hpp"

#include <fmt/format.h>

#include "qtflab/errors.hpp"
#include "qtflab/rng.hpp"

namespace qtflab {

Bits::Bits(int length, std::uint64_t value) : length_(length), value_(value) {
    if (length < 0 || length > kMaxLength) {
        throw ArgumentError(fmt::format("bit string length {} outside [0, {}]", length, kMaxLength));
    }
    if (length < 64 && (value >> length) != 0) {
        throw ArgumentError(fmt::format("value {} does not fit in {} bits", value, length));
    }
}

Bits Bits::parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(kMaxLength)) {
        throw ArgumentError("bit string too long");
    }
    std::uint64_t v = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ArgumentError(fmt::format("invalid bit character '{}'", c));
        }
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Bits(static_cast<int>(text.size()), v);
}

Bits Bits::random(int length, Rng &rng) {
    if (length == 0) {
        return Bits(0, 0);
    }
    return Bits(length, rng.next_u64() >> (64 - length));
}

bool Bits::bit(int site) const {
    if (site < 0 || site >= length_) {
        throw DimensionError(fmt::format("site {} outside bit string of length {}", site, length_));
    }
    return ((value_ >> (length_ - 1 - site)) & 1U) != 0;
}

Bits Bits::flipped(int site) const {
    if (site < 0 || site >= length_) {
        throw DimensionError(fmt::format("site {} outside bit string of length {}", site, length_));
    }
    return Bits(length_, value_ ^ (std::uint64_t{1} << (length_ - 1 - site)));
}

std::string Bits::str() const {
    std::string out(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i) {
        if (bit(i)) {
            out[static_cast<std::size_t>(i)] = '1';
        }
    }
    return out;
}

int Bits::dot(const Bits &other) const {
    if (other.length_ != length_) {
        throw DimensionError(
            fmt::format("inner product of bit strings of lengths {} and {}", length_, other.length_));
    }
    return dot_mod2(value_, other.value_);
}

int Bits::parity() const { return __builtin_popcountll(value_) & 1; }

}  // namespace qtflab
