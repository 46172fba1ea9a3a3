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

#include "qtflab/errors.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include <fmt/format.h>

namespace qtflab {

namespace {
std::atomic<std::size_t> g_max_state_dim{kDefaultMaxStateDim};
std::atomic<std::size_t> g_max_operator_dim{kDefaultMaxOperatorDim};
std::atomic<int> g_max_table_bits{kDefaultMaxTableBits};
}  // namespace

std::size_t max_state_dim() { return g_max_state_dim.load(std::memory_order_relaxed); }

void set_max_state_dim(std::size_t dim) {
    if (dim == 0) {
        throw ArgumentError("state dimension cap must be positive");
    }
    g_max_state_dim.store(dim, std::memory_order_relaxed);
}

std::size_t max_operator_dim() { return g_max_operator_dim.load(std::memory_order_relaxed); }

void set_max_operator_dim(std::size_t dim) {
    if (dim == 0) {
        throw ArgumentError("operator dimension cap must be positive");
    }
    g_max_operator_dim.store(dim, std::memory_order_relaxed);
}

int max_table_bits() { return g_max_table_bits.load(std::memory_order_relaxed); }

void set_max_table_bits(int n) {
    if (n < 1 || n > 30) {
        throw ArgumentError("table-family cap must lie in [1, 30]");
    }
    g_max_table_bits.store(n, std::memory_order_relaxed);
}

bool load_caps_from_env() {
    const char *raw = std::getenv("QTFLAB_MAX_DIM");
    if (raw == nullptr) {
        return true;
    }
    std::size_t value = 0;
    const char *end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end || value == 0) {
        return false;
    }
    set_max_state_dim(value);
    return true;
}

void require_state_dim(std::size_t dim, const char *what) {
    if (dim > max_state_dim()) {
        throw ResourceError(
            fmt::format("{}: {} amplitudes exceeds dense cap {}", what, dim, max_state_dim()));
    }
}

void require_operator_dim(std::size_t dim, const char *what) {
    if (dim > max_operator_dim()) {
        throw ResourceError(
            fmt::format("{}: operator side {} exceeds dense cap {}", what, dim, max_operator_dim()));
    }
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const char *what) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > cap / base) {
            throw ResourceError(fmt::format("{}: {}^{} exceeds cap {}", what, base, exp, cap));
        }
        out *= base;
    }
    if (out > cap) {
        throw ResourceError(fmt::format("{}: {}^{} exceeds cap {}", what, base, exp, cap));
    }
    return out;
}

}  // namespace qtflab
