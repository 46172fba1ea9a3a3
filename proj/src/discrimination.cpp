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

#include "qtflab/discrimination.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

#include <fmt/format.h>

namespace qtflab::disc {

namespace {

constexpr std::array<char, 8> kOperatorMagic = {'Q', 'T', 'F', 'L', 'O', 'P', '0', '1'};

void require_dm(int d, int m) {
    if (d < 1) {
        throw ArgumentError(fmt::format("local dimension must be positive, got {}", d));
    }
    if (m < 0) {
        throw ArgumentError(fmt::format("copy count must be non-negative, got {}", m));
    }
}

std::size_t pow_size(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
            return std::numeric_limits<std::size_t>::max();
        }
        r *= base;
    }
    return r;
}

void types_rec(std::vector<int> &t, std::size_t pos, int remaining,
               const std::function<void(std::span<const int>)> &visit) {
    if (pos + 1 == t.size()) {
        t[pos] = remaining;
        visit(t);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        t[pos] = v;
        types_rec(t, pos + 1, remaining - v, visit);
    }
}

// Calls f(index) for every big-endian base-d sequence of type t.
template <typename F>
void for_each_sequence(std::span<const int> t, F &&f) {
    std::vector<int> labels;
    for (std::size_t i = 0; i < t.size(); ++i) {
        labels.insert(labels.end(), static_cast<std::size_t>(t[i]), static_cast<int>(i));
    }
    const auto d = static_cast<std::size_t>(t.size());
    do {
        std::size_t idx = 0;
        for (int l : labels) {
            idx = idx * d + static_cast<std::size_t>(l);
        }
        f(idx);
    } while (std::next_permutation(labels.begin(), labels.end()));
}

CMatrix sym_projector_matrix(int d, int m) {
    const std::size_t dim = checked_pow(static_cast<std::size_t>(d), static_cast<std::size_t>(m),
                                        max_operator_dim(), "sym_projector");
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix p = CMatrix::Zero(n, n);
    std::vector<std::size_t> idx;
    for_each_type(d, m, [&](std::span<const int> t) {
        idx.clear();
        for_each_sequence(t, [&](std::size_t i) { idx.push_back(i); });
        const double w = 1.0 / static_cast<double>(idx.size());
        for (std::size_t a : idx) {
            for (std::size_t b : idx) {
                p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = w;
            }
        }
    });
    return p;
}

// (Z^x (x) I) A (Z^x (x) I) where the leading register has index a / tail.
CMatrix conjugate_z(const CMatrix &a, std::size_t x, std::size_t tail) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t lead = static_cast<std::size_t>(i) / tail;
        s(i) = (std::popcount(lead & x) & 1) ? -1.0 : 1.0;
    }
    return s.asDiagonal() * a * s.asDiagonal();
}

// Partitions of `total` into at most `max_parts` positive parts, non-increasing.
void partitions_rec(std::vector<int> &parts, int remaining, int max_part, double max_parts,
                    const std::function<void(const std::vector<int> &)> &visit) {
    if (remaining == 0) {
        visit(parts);
        return;
    }
    if (static_cast<double>(parts.size()) >= max_parts) {
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        parts.push_back(p);
        partitions_rec(parts, remaining - p, p, max_parts, visit);
        parts.pop_back();
    }
}

double structured_success(double d, int m) {
    if (!(d >= 1.0)) {
        throw ArgumentError("local dimension must be positive");
    }
    if (m < 0) {
        throw ArgumentError("copy count must be non-negative");
    }
    const int total = m + 1;
    double factorial_total = 1.0;
    for (int i = 2; i <= total; ++i) {
        factorial_total *= i;
    }
    // Sum over T in I_{d,m+1} grouped by the multiset of nonzero entries.
    double sum = 0.0;
    std::vector<int> parts;
    partitions_rec(parts, total, total, d, [&](const std::vector<int> &lambda) {
        double amp = 0.0;
        for (int p : lambda) {
            amp += std::sqrt(static_cast<double>(p) / total);
        }
        // count(T) / binom(d+m, m+1)
        double ratio = factorial_total;
        for (std::size_t i = 0; i < lambda.size();) {
            std::size_t j = i;
            while (j < lambda.size() && lambda[j] == lambda[i]) {
                ++j;
            }
            for (std::size_t k = 2; k <= j - i; ++k) {
                ratio /= static_cast<double>(k);
            }
            i = j;
        }
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            ratio *= (d - static_cast<double>(i)) / (d + static_cast<double>(i));
        }
        for (std::size_t i = lambda.size(); i < static_cast<std::size_t>(total); ++i) {
            ratio /= d + static_cast<double>(i);
        }
        sum += ratio * amp * amp;
    });
    return sum / d;
}

void put_u64(std::ostream &out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) {
        b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream &in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char *>(b.data()), 8);
    if (!in) {
        throw InvariantError("truncated operator dump");
    }
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | b[static_cast<std::size_t>(i)];
    }
    return v;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r) < 9.0e15 ? std::round(r) : r;
}

double multinomial(std::span<const int> t) {
    double r = 1.0;
    int acc = 0;
    for (int v : t) {
        if (v < 0) {
            throw ArgumentError("negative occupation number");
        }
        acc += v;
        r *= binomial(acc, v);
    }
    return r;
}

void for_each_type(int d, int m, const std::function<void(std::span<const int>)> &visit) {
    require_dm(d, m);
    std::vector<int> t(static_cast<std::size_t>(d), 0);
    types_rec(t, 0, m, visit);
}

std::vector<TypeVector> enumerate_types(int d, int m) {
    require_dm(d, m);
    const double count = binomial(d + m - 1, m);
    if (count > static_cast<double>(max_state_dim())) {
        throw ResourceError(fmt::format("enumerate_types: {} types exceed the cap of {}", count, max_state_dim()));
    }
    std::vector<TypeVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for_each_type(d, m, [&](std::span<const int> t) { out.push_back(TypeVector{d, m, {t.begin(), t.end()}}); });
    return out;
}

StateVector type_state(const TypeVector &tv) {
    require_dm(tv.d, tv.m);
    if (tv.t.size() != static_cast<std::size_t>(tv.d)) {
        throw DimensionError(fmt::format("type vector has {} entries for d={}", tv.t.size(), tv.d));
    }
    int sum = 0;
    for (int v : tv.t) {
        if (v < 0) {
            throw ArgumentError("negative occupation number");
        }
        sum += v;
    }
    if (sum != tv.m) {
        throw ArgumentError(fmt::format("type entries sum to {}, expected m={}", sum, tv.m));
    }
    const std::size_t dim = checked_pow(static_cast<std::size_t>(tv.d), static_cast<std::size_t>(tv.m),
                                        max_state_dim(), "type_state");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    const double amp = 1.0 / std::sqrt(multinomial(tv.t));
    for_each_sequence(tv.t, [&](std::size_t i) { v(static_cast<Eigen::Index>(i)) = amp; });
    return StateVector(tv.d, tv.m, std::move(v));
}

SymBasis::SymBasis(int d, int m) : d_(d), m_(m), types_(enumerate_types(d, m)) {
    for (std::size_t i = 0; i < types_.size(); ++i) {
        index_.emplace(types_[i].t, i);
    }
}

std::optional<std::size_t> SymBasis::index_of(std::span<const int> t) const {
    auto it = index_.find(std::vector<int>(t.begin(), t.end()));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Operator sym_projector(int d, int m) {
    require_dm(d, m);
    return Operator(sym_projector_matrix(d, m));
}

TwirlSides z_twirl_sides(const Operator &op, int n_twirl_qubits) {
    if (n_twirl_qubits < 0) {
        throw ArgumentError("number of twirled qubits must be non-negative");
    }
    const std::size_t masks = checked_pow(2, static_cast<std::size_t>(n_twirl_qubits), max_operator_dim(),
                                          "z_twirl enumeration");
    const std::size_t dim = op.dim();
    if (dim % masks != 0) {
        throw DimensionError(fmt::format("operator of dimension {} has no leading {}-qubit factor", dim,
                                         n_twirl_qubits));
    }
    const std::size_t tail = dim / masks;
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix avg = CMatrix::Zero(n, n);
    for (std::size_t s = 0; s < masks; ++s) {
        avg += conjugate_z(op.matrix(), s, tail);
    }
    avg /= static_cast<double>(masks);

    CMatrix deph = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < masks; ++j) {
        const auto off = static_cast<Eigen::Index>(j * tail);
        const auto len = static_cast<Eigen::Index>(tail);
        deph.block(off, off, len, len) = op.matrix().block(off, off, len, len);
    }
    Operator a(std::move(avg));
    Operator b(std::move(deph));
    const double gap = frobenius_distance(a, b);
    return TwirlSides{std::move(a), std::move(b), gap};
}

Operator z_twirl(const Operator &op, int n_twirl_qubits) {
    TwirlSides s = z_twirl_sides(op, n_twirl_qubits);
    if (s.gap > tol::kTwirlGap) {
        throw InvariantError(fmt::format("twirl sides differ by {:.3e}", s.gap));
    }
    return std::move(s.dephased);
}

std::vector<SpectrumLevel> predicted_sigma_tilde_spectrum(int d, int m) {
    require_dm(d, m);
    std::vector<std::size_t> mult(static_cast<std::size_t>(m) + 1, 0);
    std::size_t nonzero = 0;
    for_each_type(d, m, [&](std::span<const int> t) {
        for (int j = 0; j < d; ++j) {
            ++mult[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])];
            ++nonzero;
        }
    });
    std::vector<SpectrumLevel> out;
    const std::size_t full = pow_size(static_cast<std::size_t>(d), m + 1);
    if (full > nonzero) {
        out.push_back({0.0, full - nonzero});
    }
    for (int r = 0; r <= m; ++r) {
        if (mult[static_cast<std::size_t>(r)] > 0) {
            out.push_back({static_cast<double>(r + 1) / static_cast<double>(m + 1), mult[static_cast<std::size_t>(r)]});
        }
    }
    return out;
}

SigmaTilde sigma_tilde(int d, int m) {
    require_dm(d, m);
    CMatrix p = sym_projector_matrix(d, m + 1);
    const std::size_t tail = pow_size(static_cast<std::size_t>(d), m);
    const auto len = static_cast<Eigen::Index>(tail);
    CMatrix s = CMatrix::Zero(p.rows(), p.cols());
    for (int j = 0; j < d; ++j) {
        const Eigen::Index off = j * len;
        s.block(off, off, len, len) = p.block(off, off, len, len);
    }
    return SigmaTilde{d, m, Operator(std::move(s)), predicted_sigma_tilde_spectrum(d, m)};
}

SpectrumCheck check_spectrum(const SigmaTilde &st, double tolerance) {
    Spectrum spec = hermitian_spectrum(st.op);
    std::vector<double> expected;
    expected.reserve(st.op.dim());
    for (const auto &level : st.predicted) {
        expected.insert(expected.end(), level.multiplicity, level.value);
    }
    SpectrumCheck out;
    if (expected.size() != static_cast<std::size_t>(spec.values.size())) {
        out.max_deviation = std::numeric_limits<double>::infinity();
        return out;
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        out.max_deviation =
            std::max(out.max_deviation, std::abs(spec.values(static_cast<Eigen::Index>(i)) - expected[i]));
    }
    out.multiplicities_ok = true;
    for (const auto &level : st.predicted) {
        std::size_t count = 0;
        for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
            count += std::abs(spec.values(i) - level.value) <= tolerance ? 1 : 0;
        }
        out.multiplicities_ok = out.multiplicities_ok && count == level.multiplicity;
    }
    out.ok = out.multiplicities_ok && out.max_deviation <= tolerance;
    return out;
}

Ensemble make_ensemble(std::vector<std::string> labels, std::vector<Operator> states) {
    if (states.empty()) {
        throw ArgumentError("ensemble must have at least one member");
    }
    if (labels.size() != states.size()) {
        throw ArgumentError(fmt::format("{} labels for {} states", labels.size(), states.size()));
    }
    for (const auto &rho : states) {
        if (rho.dim() != states.front().dim()) {
            throw DimensionError("ensemble members have different dimensions");
        }
        validate_density(rho);
    }
    return Ensemble{std::move(labels), std::move(states)};
}

Ensemble lemma_key_ensemble(int n, int m) {
    if (n < 1 || n > 30) {
        throw ArgumentError(fmt::format("n={} outside 1..30", n));
    }
    if (m < 0) {
        throw ArgumentError("copy count must be non-negative");
    }
    const std::size_t d = std::size_t{1} << n;
    checked_pow(d, static_cast<std::size_t>(m) + 1, max_operator_dim(), "lemma_key_ensemble");
    CMatrix p = sym_projector_matrix(static_cast<int>(d), m + 1);
    p /= binomial(static_cast<int>(d) + m, m + 1);
    const std::size_t tail = pow_size(d, m);
    Ensemble ens;
    for (std::size_t x = 0; x < d; ++x) {
        ens.labels.push_back(Bits(n, x).str());
        ens.states.emplace_back(conjugate_z(p, x, tail));
    }
    for (const auto &rho : ens.states) {
        validate_density(rho);
    }
    return ens;
}

double Povm::completeness_defect() const {
    CMatrix sum = kernel.matrix();
    for (const auto &e : elements) {
        sum += e.matrix();
    }
    sum -= CMatrix::Identity(sum.rows(), sum.cols());
    return sum.norm();
}

Povm pgm(const Ensemble &ens) {
    if (ens.size() == 0) {
        throw ArgumentError("pgm of an empty ensemble");
    }
    const auto n = static_cast<Eigen::Index>(ens.dim());
    CMatrix sigma = CMatrix::Zero(n, n);
    for (const auto &rho : ens.states) {
        sigma += rho.matrix();
    }
    PseudoInverseRoot root = pinv_sqrt_with_support(Operator(std::move(sigma)));
    std::vector<Operator> elements;
    for (const auto &rho : ens.states) {
        elements.emplace_back(root.inv_sqrt.matrix() * rho.matrix() * root.inv_sqrt.matrix());
    }
    return Povm{ens.labels, std::move(elements), Operator(CMatrix::Identity(n, n) - root.support.matrix())};
}

double success_probability(const Povm &povm, const Ensemble &ens) {
    if (povm.elements.size() != ens.size()) {
        throw DimensionError(fmt::format("{} POVM elements for {} states", povm.elements.size(), ens.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        if (povm.elements[i].dim() != ens.states[i].dim()) {
            throw DimensionError("POVM element and state dimensions differ");
        }
        acc += (povm.elements[i].matrix().cwiseProduct(ens.states[i].matrix().transpose())).sum().real();
    }
    return acc / static_cast<double>(ens.size());
}

double pgm_success(const Ensemble &ens) {
    if (ens.size() == 0) {
        throw ArgumentError("pgm_success of an empty ensemble");
    }
    const auto n = static_cast<Eigen::Index>(ens.dim());
    CMatrix sigma = CMatrix::Zero(n, n);
    for (const auto &rho : ens.states) {
        sigma += rho.matrix();
    }
    Operator s = pinv_sqrt(Operator(std::move(sigma)));
    double acc = 0.0;
    for (const auto &rho : ens.states) {
        CMatrix a = s.matrix() * rho.matrix() * s.matrix();
        acc += (a.cwiseProduct(rho.matrix().transpose())).sum().real();
    }
    return acc / static_cast<double>(ens.size());
}

double pgm_success_dense(int n, int m) { return pgm_success(lemma_key_ensemble(n, m)); }

double pgm_success_structured_d(int d, int m) {
    require_dm(d, m);
    return structured_success(static_cast<double>(d), m);
}

double pgm_success_structured(int n, int m) {
    if (n < 0 || n > 62) {
        throw ArgumentError(fmt::format("n={} outside 0..62", n));
    }
    return structured_success(std::ldexp(1.0, n), m);
}

double helstrom_binary(const Operator &rho0, const Operator &rho1) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionError(fmt::format("states of dimension {} and {}", rho0.dim(), rho1.dim()));
    }
    validate_density(rho0);
    validate_density(rho1);
    return 0.5 + 0.25 * trace_norm(Operator(rho0.matrix() - rho1.matrix()));
}

Operator identity_kron(std::size_t d, const Operator &op) {
    const std::size_t dim = d * op.dim();
    require_operator_dim(dim, "identity_kron");
    const auto k = static_cast<Eigen::Index>(op.dim());
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < d; ++j) {
        out.block(static_cast<Eigen::Index>(j) * k, static_cast<Eigen::Index>(j) * k, k, k) = op.matrix();
    }
    return Operator(std::move(out));
}

double proof_term_trace(int d, int m) {
    require_dm(d, m);
    CMatrix big = sym_projector_matrix(d, m + 1);
    Operator lifted = identity_kron(static_cast<std::size_t>(d), Operator(sym_projector_matrix(d, m)));
    CMatrix a = big * lifted.matrix();
    return (a.cwiseProduct(a.transpose())).sum().real();
}

double key_pgm_bound(int n, int m, double constant) {
    const double d = std::ldexp(1.0, n);
    const double mm = static_cast<double>(m);
    return constant * std::sqrt(mm / d + std::pow(mm, 7) / (d * d * d));
}

bool asymptotic_regime(int n, int m) { return std::ldexp(1.0, n) > 2.0 * (m + 1); }

GridRow pgm_grid_row(int n, int m) {
    if (n < 1 || m < 0) {
        throw ArgumentError(fmt::format("grid point (n={}, m={}) out of range", n, m));
    }
    if (static_cast<long long>(n) * (m + 1) >= 63) {
        throw ResourceError(fmt::format("grid point (n={}, m={}) has dimension beyond 2^63", n, m));
    }
    GridRow row;
    row.n = n;
    row.m = m;
    row.d = std::size_t{1} << n;
    row.dim = std::size_t{1} << (n * (m + 1));
    row.pgm_success_structured = pgm_success_structured(n, m);
    row.bound_value = key_pgm_bound(n, m);
    row.asymptotic_regime = asymptotic_regime(n, m);
    if (row.dim <= max_operator_dim()) {
        row.pgm_success_dense = pgm_success_dense(n, m);
        row.spectrum_ok = check_spectrum(sigma_tilde(static_cast<int>(row.d), m)).ok;
    }
    return row;
}

ExperimentReport reduction_distinguisher(const qtf::InversionAdversary &adversary, int n, int m,
                                         std::size_t trials, Rng &rng, Family family, qtf::Privilege privilege) {
    if (n < 1) {
        throw ArgumentError("security parameter must be at least 1");
    }
    if (m < 0) {
        throw ArgumentError("copy count must be non-negative");
    }
    checked_pow(2, static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n), max_state_dim(),
                "reduction_distinguisher");
    ArmRecord prs_arm{"prs", 0, 0};
    ArmRecord haar_arm{"haar", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        Rng trial = rng.split(t);
        const bool use_prs = trial.coin();
        // The Haar arm also draws a key so a leaked-key adversary sees the
        // same interface in both arms; that key is unrelated to psi.
        prs::PrsKey key = prs::gen_key(n, family, trial);
        StateVector psi = use_prs ? prs::gen_state(key) : haar_random_state(2, n, trial);
        Bits x = Bits::random(n, trial);
        StateVector composite = kron(apply_z_mask(psi, x), kron_power(psi, m));
        qtf::InversionChallenge view{composite, n, m, std::nullopt};
        if (privilege == qtf::Privilege::kTrapdoor) {
            view.leaked_trapdoor = qtf::Trapdoor{key, n};
        }
        Bits guess = adversary(view, trial);
        ArmRecord &arm = use_prs ? prs_arm : haar_arm;
        ++arm.trials;
        arm.hits += (guess == x) ? 1 : 0;
    }
    ExperimentReport r = advantage_report("reduction_distinguisher", rng.seed(), prs_arm, haar_arm);
    r.config = {{"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"family", std::string(family_name(family))},
                {"trials", std::to_string(trials)},
                {"privilege", privilege == qtf::Privilege::kTrapdoor ? "trapdoor" : "none"}};
    r.extras.emplace_back("p_invert_prs", prs_arm.rate());
    r.extras.emplace_back("p_invert_haar", haar_arm.rate());
    return r;
}

void write_operator(std::ostream &out, const Operator &op) {
    out.write(kOperatorMagic.data(), static_cast<std::streamsize>(kOperatorMagic.size()));
    put_u64(out, op.dim());
    const auto n = static_cast<Eigen::Index>(op.dim());
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            put_u64(out, std::bit_cast<std::uint64_t>(op.matrix()(r, c).real()));
            put_u64(out, std::bit_cast<std::uint64_t>(op.matrix()(r, c).imag()));
        }
    }
    if (!out) {
        throw ResourceError("failed to write operator dump");
    }
}

Operator read_operator(std::istream &in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), 8);
    if (!in || magic != kOperatorMagic) {
        throw InvariantError("not an operator dump (bad magic)");
    }
    const std::uint64_t dim = get_u64(in);
    require_operator_dim(static_cast<std::size_t>(dim), "read_operator");
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = std::bit_cast<double>(get_u64(in));
            const double im = std::bit_cast<double>(get_u64(in));
            m(r, c) = Complex(re, im);
        }
    }
    return Operator(std::move(m));
}

}  // namespace qtflab::disc
