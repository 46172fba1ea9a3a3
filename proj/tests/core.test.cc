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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "qtflab/bits.hpp"
#include "qtflab/errors.hpp"
#include "qtflab/report.hpp"
#include "qtflab/rng.hpp"
#include "qtflab/state.hpp"

using namespace qtflab;

TEST(Rng, same_seed_same_stream) {
    Rng a(17);
    Rng b(17);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    ASSERT_NE(Rng(17).next_u64(), Rng(18).next_u64());
}

TEST(Rng, split_depends_only_on_seed_and_stream) {
    Rng a(5);
    Rng b(5);
    b.next_u64();
    b.next_u64();
    ASSERT_EQ(a.split(3).next_u64(), b.split(3).next_u64());
    ASSERT_NE(a.split(3).next_u64(), a.split(4).next_u64());
}

TEST(Rng, below_stays_in_range) {
    Rng r(1);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_LT(r.below(7), 7u);
    }
}

TEST(Bits, parse_and_print) {
    Bits b = Bits::parse("0110");
    ASSERT_EQ(b.length(), 4);
    ASSERT_EQ(b.value(), 6u);
    ASSERT_EQ(b.str(), "0110");
    ASSERT_FALSE(b.bit(0));
    ASSERT_TRUE(b.bit(1));
    ASSERT_EQ(b.flipped(0).str(), "1110");
    ASSERT_THROW(Bits::parse("01x"), ArgumentError);
    ASSERT_THROW(Bits(2, 4), ArgumentError);
}

TEST(Bits, dot_product) {
    ASSERT_EQ(Bits::parse("110").dot(Bits::parse("011")), 1);
    ASSERT_EQ(Bits::parse("111").dot(Bits::parse("111")), 1);
    ASSERT_EQ(Bits::parse("101").dot(Bits::parse("101")), 0);
    ASSERT_THROW(Bits::parse("10").dot(Bits::parse("101")), DimensionError);
}

TEST(StateVector, validates_norm_and_length) {
    CVector v(2);
    v << 1.0, 1.0;
    ASSERT_THROW(StateVector(2, 1, v), InvariantError);
    ASSERT_THROW(StateVector(2, 2, CVector::Ones(2) / std::sqrt(2.0)), DimensionError);
    StateVector s = StateVector::normalized(2, 1, v);
    ASSERT_NEAR(s.norm(), 1.0, 1e-15);
    ASSERT_THROW(StateVector::normalized(2, 1, CVector::Zero(2)), InvariantError);
}

TEST(StateVector, basis_layout_is_big_endian) {
    StateVector s = StateVector::qubit_basis(Bits::parse("10"));
    ASSERT_EQ(s.amplitude(2), Complex(1.0, 0.0));
    StateVector k = kron(StateVector::basis(2, 1, 1), StateVector::basis(2, 1, 0));
    ASSERT_EQ(k.amplitude(2), Complex(1.0, 0.0));
}

TEST(StateVector, kron_power_of_zero_is_unit) {
    Rng rng(3);
    StateVector psi = haar_random_state(2, 2, rng);
    StateVector u = kron_power(psi, 0);
    ASSERT_EQ(u.dim(), 1u);
    ASSERT_EQ(kron(u, psi).dim(), psi.dim());
    ASSERT_EQ(kron_power(psi, 3).num_sites(), 6);
}

TEST(Gates, hadamard_is_involution) {
    Rng rng(9);
    StateVector psi = haar_random_state(2, 3, rng);
    ASSERT_LT(max_abs_diff(apply_hadamard_all(apply_hadamard_all(psi)), psi), 1e-12);
    StateVector plus = apply_hadamard_all(StateVector::qubit_basis(Bits::zeros(3)));
    for (std::size_t y = 0; y < 8; ++y) {
        ASSERT_NEAR(plus.amplitude(y).real(), 1.0 / std::sqrt(8.0), 1e-15);
    }
}

TEST(Gates, z_mask_on_leading_register_only) {
    StateVector plus = apply_hadamard_all(StateVector::qubit_basis(Bits::zeros(2)));
    StateVector masked = apply_z_mask_leading(plus, Bits::parse("1"));
    ASSERT_NEAR(masked.amplitude(0).real(), 0.5, 1e-15);
    ASSERT_NEAR(masked.amplitude(1).real(), 0.5, 1e-15);
    ASSERT_NEAR(masked.amplitude(2).real(), -0.5, 1e-15);
    ASSERT_NEAR(masked.amplitude(3).real(), -0.5, 1e-15);
    ASSERT_THROW(apply_z_mask(plus, Bits::parse("1")), DimensionError);
}

TEST(Gates, measure_basis_state_is_deterministic) {
    Rng rng(2);
    StateVector s = StateVector::qubit_basis(Bits::parse("1011"));
    ASSERT_EQ(measure_computational(s, rng), 11u);
    ASSERT_EQ(measure_leading(s, 2, rng), 2u);
}

TEST(Operator, density_validation) {
    ASSERT_NO_THROW(validate_density(Operator(CMatrix::Identity(4, 4) / 4.0)));
    ASSERT_THROW(validate_density(Operator(CMatrix::Identity(4, 4))), InvariantError);
    CMatrix nh = CMatrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    ASSERT_FALSE(Operator(nh).is_hermitian());
    ASSERT_THROW(Operator(CMatrix::Zero(2, 3)), DimensionError);
}

TEST(Operator, pinv_sqrt_on_rank_deficient) {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 4.0;
    a(1, 1) = 0.25;
    PseudoInverseRoot r = pinv_sqrt_with_support(Operator(a));
    ASSERT_NEAR(r.inv_sqrt.matrix()(0, 0).real(), 0.5, 1e-12);
    ASSERT_NEAR(r.inv_sqrt.matrix()(1, 1).real(), 2.0, 1e-12);
    ASSERT_NEAR(std::abs(r.inv_sqrt.matrix()(2, 2)), 0.0, 1e-12);
    ASSERT_NEAR(r.support.trace().real(), 2.0, 1e-12);
}

TEST(Operator, trace_norm_of_qubit_difference) {
    StateVector zero = StateVector::basis(2, 1, 0);
    StateVector plus = apply_hadamard_all(zero);
    Operator diff(Operator::projector(zero).matrix() - Operator::projector(plus).matrix());
    ASSERT_NEAR(trace_norm(diff), std::sqrt(2.0), 1e-12);
}

TEST(Operator, ensemble_average_checks_weights) {
    StateVector zero = StateVector::basis(2, 1, 0);
    StateVector one = StateVector::basis(2, 1, 1);
    std::vector<WeightedTerm> ok = {{0.5, zero}, {0.5, one}};
    ASSERT_LT((ensemble_average(ok).matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
    std::vector<WeightedTerm> bad = {{0.5, zero}, {0.4, one}};
    ASSERT_THROW(ensemble_average(bad), ArgumentError);
}

TEST(Caps, state_cap_is_enforced) {
    const std::size_t saved = max_state_dim();
    set_max_state_dim(16);
    Rng rng(1);
    ASSERT_THROW(haar_random_state(2, 5, rng), ResourceError);
    set_max_state_dim(saved);
    ASSERT_THROW(checked_pow(2, 70, saved, "test"), ResourceError);
}

TEST(Report, wilson_interval_contains_rate) {
    Interval w = wilson_interval(30, 100);
    ASSERT_LT(w.low, 0.3);
    ASSERT_GT(w.high, 0.3);
    Interval e = wilson_interval(0, 50);
    ASSERT_EQ(e.low, 0.0);
}

TEST(Report, json_round_trip) {
    ExperimentReport r = advantage_report("demo", 42, ArmRecord{"a", 100, 80}, ArmRecord{"b", 90, 30});
    r.config = {{"n", "3"}, {"family", "table"}};
    r.extras = {{"x", 0.25}};
    ExperimentReport back = ExperimentReport::from_json(r.to_json());
    ASSERT_EQ(back.to_json().dump(), r.to_json().dump());
    ASSERT_NEAR(r.value, 0.8 - 30.0 / 90.0, 1e-15);
}

TEST(Gates, plus_state_measurement_frequency) {
    Rng rng(12);
    StateVector plus = apply_hadamard_all(StateVector::basis(2, 1, 0));
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) {
        zeros += measure_computational(plus, rng) == 0 ? 1 : 0;
    }
    ASSERT_GE(zeros, 4700);
    ASSERT_LE(zeros, 5300);
}

TEST(Haar, first_moment_is_maximally_mixed) {
    Rng rng(13);
    CMatrix acc = CMatrix::Zero(2, 2);
    for (int i = 0; i < 20000; ++i) {
        StateVector s = haar_random_state(2, 1, rng);
        acc += s.amplitudes() * s.amplitudes().adjoint();
    }
    acc /= 20000.0;
    ASSERT_LT((acc - CMatrix::Identity(2, 2) / 2.0).norm(), 0.03);
}

TEST(Operator, pinv_sqrt_times_sqrt_is_support) {
    Rng rng(14);
    CMatrix b(6, 3);
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            b(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    CMatrix a = b * b.adjoint();
    Spectrum s = hermitian_spectrum(Operator(a));
    RVector root = s.values.cwiseMax(0.0).cwiseSqrt();
    CMatrix sqrt_a = s.vectors * root.asDiagonal() * s.vectors.adjoint();
    CMatrix prod = sqrt_a * pinv_sqrt(Operator(a)).matrix();
    ASSERT_LT((prod - support_projector(Operator(a)).matrix()).norm(), 1e-8);
    ASSERT_NEAR(support_projector(Operator(a)).trace().real(), 3.0, 1e-9);
}
