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

#include "qtflab/state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qtflab {

namespace {

std::size_t register_dim(int local_dim, int num_sites) {
    if (local_dim < 1) {
        throw ArgumentError(fmt::format("local dimension {} must be positive", local_dim));
    }
    if (num_sites < 0) {
        throw ArgumentError(fmt::format("site count {} must be non-negative", num_sites));
    }
    return checked_pow(static_cast<std::size_t>(local_dim), static_cast<std::size_t>(num_sites),
                       max_state_dim(), "state vector");
}

void require_qubits(const StateVector &state, const char *what) {
    if (state.local_dim() != 2) {
        throw DimensionError(fmt::format("{}: expected qubit register, got local dimension {}", what,
                                         state.local_dim()));
    }
}

}  // namespace

StateVector::StateVector(int local_dim, int num_sites, CVector amplitudes)
    : local_dim_(local_dim), num_sites_(num_sites), amplitudes_(std::move(amplitudes)) {
    std::size_t expected = register_dim(local_dim, num_sites);
    if (static_cast<std::size_t>(amplitudes_.size()) != expected) {
        throw DimensionError(fmt::format("state over {}^{} labels needs {} amplitudes, got {}", local_dim,
                                         num_sites, expected, amplitudes_.size()));
    }
    double norm = amplitudes_.norm();
    if (!(std::abs(norm - 1.0) <= tol::kNorm)) {
        throw InvariantError(fmt::format("state norm {:.17g} differs from 1", norm));
    }
}

StateVector StateVector::normalized(int local_dim, int num_sites, CVector raw) {
    double norm = raw.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvariantError("cannot normalise a zero or non-finite vector");
    }
    raw /= norm;
    return StateVector(local_dim, num_sites, std::move(raw));
}

StateVector StateVector::basis(int local_dim, int num_sites, std::size_t index) {
    std::size_t dim = register_dim(local_dim, num_sites);
    if (index >= dim) {
        throw DimensionError(fmt::format("basis index {} outside dimension {}", index, dim));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(local_dim, num_sites, std::move(v));
}

StateVector StateVector::qubit_basis(const Bits &x) { return basis(2, x.length(), x.value()); }

StateVector StateVector::unit(int local_dim) {
    CVector v(1);
    v(0) = 1.0;
    return StateVector(local_dim, 0, std::move(v));
}

StateVector StateVector::reshaped(int local_dim, int num_sites) const {
    return StateVector(local_dim, num_sites, amplitudes_);
}

Operator::Operator(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError(
            fmt::format("operator must be square, got {}x{}", entries_.rows(), entries_.cols()));
    }
}

Operator Operator::identity(std::size_t dim) {
    require_operator_dim(dim, "identity");
    auto d = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Identity(d, d));
}

Operator Operator::zero(std::size_t dim) {
    require_operator_dim(dim, "zero operator");
    auto d = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Zero(d, d));
}

Operator Operator::projector(const StateVector &psi) {
    require_operator_dim(psi.dim(), "projector");
    return Operator(psi.amplitudes() * psi.amplitudes().adjoint());
}

double Operator::hermiticity_defect() const {
    if (entries_.size() == 0) {
        return 0.0;
    }
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_spectrum(const Operator &op) {
    double defect = op.hermiticity_defect();
    if (defect > tol::kHermitian) {
        throw InvariantError(fmt::format("operator is not Hermitian (defect {:.3e})", defect));
    }
    // Symmetrise so round-off in the lower triangle cannot leak into the solver.
    CMatrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("Hermitian eigensolver failed to converge");
    }
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

void validate_density(const Operator &op) {
    Spectrum s = hermitian_spectrum(op);
    if (s.values.size() > 0 && s.values.minCoeff() < tol::kPsdFloor) {
        throw InvariantError(fmt::format("density matrix has eigenvalue {:.3e}", s.values.minCoeff()));
    }
    Complex tr = op.trace();
    if (std::abs(tr - 1.0) > tol::kTrace) {
        throw InvariantError(fmt::format("density matrix trace {:.17g} differs from 1", tr.real()));
    }
}

bool is_density(const Operator &op) {
    try {
        validate_density(op);
        return true;
    } catch (const InvariantError &) {
        return false;
    }
}

namespace {

PseudoInverseRoot spectral_map(const Operator &op, double kernel_threshold) {
    if (kernel_threshold < 0.0) {
        throw ArgumentError("kernel threshold must be non-negative");
    }
    Spectrum s = hermitian_spectrum(op);
    const Eigen::Index n = s.values.size();
    if (n == 0) {
        return {Operator(CMatrix(0, 0)), Operator(CMatrix(0, 0))};
    }
    if (s.values(0) < -std::max(1e-8, 1e-8 * std::abs(s.values(n - 1)))) {
        throw InvariantError(fmt::format("operator is not PSD (eigenvalue {:.3e})", s.values(0)));
    }
    const double cut = kernel_threshold * std::max(s.values(n - 1), 0.0);
    RVector inv_root = RVector::Zero(n);
    RVector keep = RVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double lambda = s.values(i);
        if (lambda > cut && lambda > 0.0) {
            inv_root(i) = 1.0 / std::sqrt(lambda);
            keep(i) = 1.0;
        }
    }
    CMatrix a = s.vectors * inv_root.asDiagonal() * s.vectors.adjoint();
    CMatrix b = s.vectors * keep.asDiagonal() * s.vectors.adjoint();
    return {Operator(std::move(a)), Operator(std::move(b))};
}

}  // namespace

Operator pinv_sqrt(const Operator &op, double kernel_threshold) {
    return spectral_map(op, kernel_threshold).inv_sqrt;
}

Operator support_projector(const Operator &op, double kernel_threshold) {
    return spectral_map(op, kernel_threshold).support;
}

PseudoInverseRoot pinv_sqrt_with_support(const Operator &op, double kernel_threshold) {
    return spectral_map(op, kernel_threshold);
}

double trace_norm(const Operator &op) { return hermitian_spectrum(op).values.cwiseAbs().sum(); }

double frobenius_distance(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError(fmt::format("operators of dimension {} and {}", a.dim(), b.dim()));
    }
    return (a.matrix() - b.matrix()).norm();
}

Operator ensemble_average(std::span<const WeightedTerm> terms) {
    if (terms.empty()) {
        throw ArgumentError("ensemble_average needs at least one term");
    }
    auto term_dim = [](const WeightedTerm &t) {
        return std::visit([](const auto &v) { return v.dim(); }, t.term);
    };
    const std::size_t dim = term_dim(terms.front());
    require_operator_dim(dim, "ensemble_average");
    double total = 0.0;
    auto d = static_cast<Eigen::Index>(dim);
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto &t : terms) {
        if (!(t.weight >= 0.0)) {
            throw ArgumentError("ensemble weights must be non-negative");
        }
        if (term_dim(t) != dim) {
            throw DimensionError("ensemble members have different dimensions");
        }
        total += t.weight;
        if (const auto *psi = std::get_if<StateVector>(&t.term)) {
            acc.noalias() += t.weight * psi->amplitudes() * psi->amplitudes().adjoint();
        } else {
            acc += t.weight * std::get<Operator>(t.term).matrix();
        }
    }
    if (std::abs(total - 1.0) > tol::kWeightSum) {
        throw ArgumentError(fmt::format("ensemble weights sum to {:.17g}, expected 1", total));
    }
    return Operator(std::move(acc));
}

StateVector apply_z_mask(const StateVector &state, const Bits &x) {
    require_qubits(state, "apply_z_mask");
    if (state.num_sites() != x.length()) {
        throw DimensionError(fmt::format("Z mask of length {} on {} qubits", x.length(), state.num_sites()));
    }
    return apply_z_mask_leading(state, x);
}

StateVector apply_z_mask_leading(const StateVector &state, const Bits &x) {
    require_qubits(state, "apply_z_mask_leading");
    if (x.length() > state.num_sites()) {
        throw DimensionError(fmt::format("Z mask of length {} on {} qubits", x.length(), state.num_sites()));
    }
    const int tail = state.num_sites() - x.length();
    CVector out = state.amplitudes();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        auto lead = static_cast<std::uint64_t>(i) >> tail;
        if (dot_mod2(x.value(), lead)) {
            out(i) = -out(i);
        }
    }
    return StateVector(2, state.num_sites(), std::move(out));
}

StateVector apply_hadamard_all(const StateVector &state) {
    require_qubits(state, "apply_hadamard_all");
    CVector v = state.amplitudes();
    const std::size_t dim = state.dim();
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t half = 1; half < dim; half <<= 1) {
        for (std::size_t block = 0; block < dim; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                auto a = static_cast<Eigen::Index>(i);
                auto b = static_cast<Eigen::Index>(i + half);
                Complex u = v(a);
                Complex w = v(b);
                v(a) = s * (u + w);
                v(b) = s * (u - w);
            }
        }
    }
    return StateVector(2, state.num_sites(), std::move(v));
}

StateVector apply_phase_signs(const StateVector &state, std::span<const std::int8_t> signs) {
    if (signs.size() != state.dim()) {
        throw DimensionError(
            fmt::format("phase table of size {} on state of dimension {}", signs.size(), state.dim()));
    }
    CVector out = state.amplitudes();
    for (std::size_t y = 0; y < signs.size(); ++y) {
        if (signs[y] < 0) {
            out(static_cast<Eigen::Index>(y)) = -out(static_cast<Eigen::Index>(y));
        }
    }
    return StateVector(state.local_dim(), state.num_sites(), std::move(out));
}

namespace {

int leading_tail(const StateVector &state, int leading_sites, const char *what) {
    if (leading_sites < 0 || leading_sites > state.num_sites()) {
        throw DimensionError(fmt::format("{}: leading register of {} sites in a {}-site state", what,
                                         leading_sites, state.num_sites()));
    }
    return state.num_sites() - leading_sites;
}

}  // namespace

StateVector apply_phase_signs_leading(const StateVector &state, std::span<const std::int8_t> signs) {
    require_qubits(state, "apply_phase_signs_leading");
    if (signs.empty() || (signs.size() & (signs.size() - 1)) != 0) {
        throw DimensionError("phase table size must be a power of two");
    }
    const int leading = __builtin_ctzll(signs.size());
    const int tail = leading_tail(state, leading, "apply_phase_signs_leading");
    CVector out = state.amplitudes();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (signs[static_cast<std::size_t>(i) >> tail] < 0) {
            out(i) = -out(i);
        }
    }
    return StateVector(2, state.num_sites(), std::move(out));
}

StateVector apply_hadamard_leading(const StateVector &state, int leading_sites) {
    require_qubits(state, "apply_hadamard_leading");
    const int tail = leading_tail(state, leading_sites, "apply_hadamard_leading");
    CVector v = state.amplitudes();
    const std::size_t dim = state.dim();
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t half = std::size_t{1} << tail; half < dim; half <<= 1) {
        for (std::size_t block = 0; block < dim; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                auto a = static_cast<Eigen::Index>(i);
                auto b = static_cast<Eigen::Index>(i + half);
                Complex u = v(a);
                Complex w = v(b);
                v(a) = s * (u + w);
                v(b) = s * (u - w);
            }
        }
    }
    return StateVector(2, state.num_sites(), std::move(v));
}

std::size_t measure_leading(const StateVector &state, int leading_sites, Rng &rng) {
    const int tail = leading_tail(state, leading_sites, "measure_leading");
    const std::size_t per_site = static_cast<std::size_t>(state.local_dim());
    std::size_t divisor = 1;
    for (int i = 0; i < tail; ++i) {
        divisor *= per_site;
    }
    return measure_computational(state, rng) / divisor;
}

std::vector<double> outcome_probabilities(const StateVector &state) {
    std::vector<double> p(state.dim());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state.amplitude(i));
        total += p[i];
    }
    if (std::abs(total - 1.0) > tol::kNorm) {
        throw InvariantError(fmt::format("outcome probabilities sum to {:.17g}", total));
    }
    return p;
}

std::size_t measure_computational(const StateVector &state, Rng &rng) {
    std::vector<double> p = outcome_probabilities(state);
    double u = rng.uniform();
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            last_nonzero = i;
        }
        acc += p[i];
        if (u < acc) {
            return i;
        }
    }
    // u landed in the round-off gap above the accumulated mass.
    return last_nonzero;
}

StateVector haar_random_state(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw ArgumentError("Haar state dimension must be positive");
    }
    require_state_dim(dim, "haar_random_state");
    CVector raw(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        double re = rng.normal();
        double im = rng.normal();
        raw(i) = Complex(re, im);
    }
    return StateVector::normalized(static_cast<int>(dim), 1, std::move(raw));
}

StateVector haar_random_state(int local_dim, int num_sites, Rng &rng) {
    std::size_t dim = register_dim(local_dim, num_sites);
    return haar_random_state(dim, rng).reshaped(local_dim, num_sites);
}

StateVector kron(const StateVector &a, const StateVector &b) {
    if (a.num_sites() == 0) {
        return b;
    }
    if (b.num_sites() == 0) {
        return a;
    }
    if (a.local_dim() != b.local_dim()) {
        throw DimensionError(
            fmt::format("kron of registers with local dimensions {} and {}", a.local_dim(), b.local_dim()));
    }
    std::size_t dim = a.dim();
    if (b.dim() != 0 && dim > max_state_dim() / b.dim()) {
        throw ResourceError(fmt::format("kron: {} x {} amplitudes exceeds dense cap {}", a.dim(), b.dim(),
                                        max_state_dim()));
    }
    CVector out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    const auto nb = static_cast<Eigen::Index>(b.dim());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i) {
        out.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    }
    return StateVector(a.local_dim(), a.num_sites() + b.num_sites(), std::move(out));
}

StateVector kron_power(const StateVector &state, int m) {
    if (m < 0) {
        throw ArgumentError("tensor power must be non-negative");
    }
    checked_pow(state.dim(), static_cast<std::size_t>(m), max_state_dim(), "kron_power");
    StateVector out = StateVector::unit(state.local_dim());
    for (int i = 0; i < m; ++i) {
        out = kron(out, state);
    }
    return out;
}

Complex overlap(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError(fmt::format("overlap of states of dimension {} and {}", a.dim(), b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the first argument
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tolerance) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return std::abs(overlap(a, b)) >= 1.0 - tolerance;
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("max_abs_diff on states of different dimension");
    }
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace qtflab
