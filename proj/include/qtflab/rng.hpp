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

#ifndef QTFLAB_RNG_HPP
#define QTFLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace qtflab {

/// Seeded pseudorandom source.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard); every conversion to doubles, bounded integers and Gaussians is
/// done here rather than through <random> distributions, whose algorithms are
/// implementation-defined. Same seed therefore gives the same transcript on
/// every conforming toolchain.
///
/// split(i) derives a child stream from (seed, i) only, independent of how
/// much of the parent has been consumed, so trial i of a game sees the same
/// randomness whether trials run sequentially or in parallel.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound); bound > 0. Unbiased (rejection).
    std::uint64_t below(std::uint64_t bound);
    bool coin();
    /// Standard normal via Box-Muller.
    double normal();
    void fill_bytes(std::span<std::uint8_t> out);

    Rng split(std::uint64_t stream) const;

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qtflab

#endif
