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
#include <sstream>

#include "gtest/gtest.h"

#include "oracle.test.h"
#include "qtflab/attacks.hpp"
#include "qtflab/discrimination.hpp"

using namespace qtflab;
using namespace qtflab::disc;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

CMatrix random_matrix(std::size_t dim, Rng &rng) {
    CMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return a;
}

}  // namespace

TEST(Types, lexicographic_enumeration) {
    auto types = enumerate_types(3, 2);
    ASSERT_EQ(types.size(), 6u);
    std::vector<std::vector<int>> expect = {{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
    for (std::size_t i = 0; i < types.size(); ++i) {
        ASSERT_EQ(types[i].t, expect[i]);
    }
    ASSERT_TRUE(std::is_sorted(types.begin(), types.end()));
}

TEST(Types, counts_match_binomial) {
    for (int d = 1; d <= 6; ++d) {
        for (int m = 0; m <= 4; ++m) {
            ASSERT_EQ(enumerate_types(d, m).size(), static_cast<std::size_t>(binomial(d + m - 1, m)));
        }
    }
    std::vector<int> t = {2, 1, 1};
    ASSERT_EQ(multinomial(t), 12.0);
}

TEST(Types, type_state_is_uniform_over_arrangements) {
    StateVector s = type_state(TypeVector{2, 3, {2, 1}});
    // Arrangements of two zeros and one one: 001, 010, 100.
    for (std::size_t i : {1u, 2u, 4u}) {
        ASSERT_NEAR(s.amplitude(i).real(), 1.0 / std::sqrt(3.0), 1e-15);
    }
    ASSERT_NEAR(std::abs(s.amplitude(0)), 0.0, 1e-15);
    ASSERT_THROW(type_state(TypeVector{2, 3, {2, 2}}), ArgumentError);
}

TEST(SymBasis, index_lookup) {
    SymBasis b(3, 2);
    std::vector<int> t = {1, 0, 1};
    ASSERT_EQ(b.index_of(t), 3u);
    std::vector<int> bad = {3, 0, 0};
    ASSERT_FALSE(b.index_of(bad).has_value());
}

TEST(SymProjector, matches_permutation_average) {
    for (int d = 2; d <= 3; ++d) {
        for (int m = 0; m <= 3; ++m) {
            Operator p = sym_projector(d, m);
            ASSERT_LT((p.matrix() - oracle::permutation_average(d, m)).norm(), 1e-12);
            ASSERT_NEAR(p.trace().real(), binomial(d + m - 1, m), 1e-10);
        }
    }
}

TEST(SymProjector, is_idempotent) {
    Operator p = sym_projector(4, 3);
    ASSERT_LT((p.matrix() * p.matrix() - p.matrix()).norm(), 1e-10);
}

TEST(Twirl, two_sides_agree) {
    Rng rng(31);
    for (int n = 1; n <= 3; ++n) {
        for (int extra = 0; extra <= 2; ++extra) {
            CMatrix a = random_matrix(std::size_t{1} << (n + extra), rng);
            TwirlSides s = z_twirl_sides(Operator(a), n);
            ASSERT_LT(s.gap, 1e-10);
        }
    }
}

TEST(Twirl, kills_off_diagonal_blocks) {
    CMatrix a = CMatrix::Ones(4, 4);
    Operator t = z_twirl(Operator(a), 1);
    ASSERT_NEAR(std::abs(t.matrix()(0, 2)), 0.0, 1e-15);
    ASSERT_NEAR(std::abs(t.matrix()(0, 1)), 1.0, 1e-15);
    ASSERT_THROW(z_twirl(Operator(a), 3), DimensionError);
}

TEST(SigmaTilde, spectrum_matches_prediction) {
    for (int d : {2, 3, 4}) {
        for (int m : {1, 2}) {
            SpectrumCheck c = check_spectrum(sigma_tilde(d, m));
            ASSERT_TRUE(c.ok) << d << "," << m;
            ASSERT_TRUE(c.multiplicities_ok);
            ASSERT_LT(c.max_deviation, 1e-9);
        }
    }
}

TEST(SigmaTilde, zero_level_multiplicity) {
    auto levels = predicted_sigma_tilde_spectrum(3, 2);
    std::size_t total = 0;
    std::size_t zero = 0;
    for (const auto &l : levels) {
        total += l.multiplicity;
        if (l.value == 0.0) {
            zero = l.multiplicity;
        }
    }
    ASSERT_EQ(total, 27u);
    ASSERT_EQ(zero, 27u - 3u * 6u);
}

TEST(Pgm, frozen_values) {
    ASSERT_NEAR(pgm_success_structured(1, 1), 2.0 / 3.0, 1e-12);
    ASSERT_NEAR(pgm_success_structured(2, 1), 0.4, 1e-12);
    ASSERT_NEAR(pgm_success_structured(3, 1), 2.0 / 9.0, 1e-12);
    ASSERT_NEAR(pgm_success_structured(1, 2), 0.5 + kSqrt2 / 6.0, 1e-12);
    ASSERT_NEAR(pgm_success_structured(2, 2), 0.35 + kSqrt2 / 10.0, 1e-12);
    ASSERT_NEAR(pgm_success_structured(1, 3), (6.0 + kSqrt3) / 10.0, 1e-12);
    ASSERT_NEAR(pgm_success_structured(3, 2), 0.296663860759, 1e-11);
}

TEST(Pgm, zero_copies_is_uniform_guess) {
    for (int n = 1; n <= 8; ++n) {
        ASSERT_NEAR(pgm_success_structured(n, 0), std::ldexp(1.0, -n), 1e-15);
    }
    ASSERT_NEAR(pgm_success_dense(3, 0), 0.125, 1e-12);
}

TEST(Pgm, dense_and_structured_agree_with_oracle) {
    for (int n = 1; n <= 3; ++n) {
        for (int m = 0; m <= 2; ++m) {
            const double dense = pgm_success_dense(n, m);
            ASSERT_NEAR(dense, pgm_success_structured(n, m), 1e-9);
            ASSERT_NEAR(dense, oracle::key_ensemble_pgm(n, m), 1e-9);
        }
    }
}

TEST(Pgm, povm_is_complete) {
    Povm p = pgm(lemma_key_ensemble(2, 1));
    ASSERT_EQ(p.elements.size(), 4u);
    ASSERT_LT(p.completeness_defect(), 1e-8);
    ASSERT_NEAR(success_probability(p, lemma_key_ensemble(2, 1)), 0.4, 1e-10);
}

TEST(Pgm, ensemble_rejects_mixed_dimensions) {
    ASSERT_THROW(make_ensemble({"a", "b"}, {Operator(CMatrix::Identity(2, 2) / 2.0), Operator(CMatrix::Identity(4, 4) / 4.0)}), DimensionError);
    ASSERT_THROW(make_ensemble({"a"}, {}), ArgumentError);
}

TEST(Pgm, two_state_sandwich) {
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        Operator r0 = Operator::projector(haar_random_state(2, 1, rng));
        Operator r1 = Operator::projector(haar_random_state(2, 1, rng));
        const double h = helstrom_binary(r0, r1);
        const double g = pgm_success(make_ensemble({"0", "1"}, {r0, r1}));
        ASSERT_LE(g, h + 1e-8);
        ASSERT_GE(g, h * h - 1e-8);
    }
}

TEST(ProofTerm, trace_identity) {
    for (int d : {2, 3, 4}) {
        for (int m = 0; m <= 2; ++m) {
            ASSERT_NEAR(proof_term_trace(d, m), binomial(d + m, m + 1), 1e-8);
        }
    }
}

TEST(Bound, regression_guard_for_positive_m) {
    for (int n = 1; n <= 4; ++n) {
        for (int m = 1; m <= 3; ++m) {
            ASSERT_LE(pgm_success_structured(n, m), key_pgm_bound(n, m));
        }
    }
    ASSERT_TRUE(asymptotic_regime(3, 2));
    ASSERT_FALSE(asymptotic_regime(1, 1));
}

TEST(Grid, row_fields) {
    GridRow r = pgm_grid_row(2, 1);
    ASSERT_EQ(r.d, 4u);
    ASSERT_EQ(r.dim, 16u);
    ASSERT_TRUE(r.pgm_success_dense.has_value());
    ASSERT_NEAR(*r.pgm_success_dense, 0.4, 1e-10);
    ASSERT_THROW(pgm_grid_row(30, 2), ResourceError);
}

TEST(Operators, binary_round_trip) {
    Rng rng(33);
    Operator op(random_matrix(8, rng));
    std::stringstream ss;
    write_operator(ss, op);
    Operator back = read_operator(ss);
    ASSERT_EQ(back.matrix(), op.matrix());
    std::stringstream bad("not an operator");
    ASSERT_THROW(read_operator(bad), std::exception);
}

TEST(Reduction, random_inverter_is_chance_on_both_arms) {
    Rng rng(34);
    ExperimentReport rep = reduction_distinguisher(attacks::random_inverter(), 2, 1, 2000, rng);
    ASSERT_LT(std::abs(rep.value), 0.1);
    ASSERT_NEAR(rep.extra("p_invert_prs"), 0.25, 0.05);
    ASSERT_NEAR(rep.extra("p_invert_haar"), 0.25, 0.05);
}

TEST(Helstrom, zero_versus_plus) {
    StateVector zero = StateVector::basis(2, 1, 0);
    StateVector plus = apply_hadamard_all(zero);
    ASSERT_NEAR(helstrom_binary(Operator::projector(zero), Operator::projector(plus)), 0.5 + kSqrt2 / 4.0, 1e-12);
}

TEST(Pgm, non_increasing_in_n) {
    double prev = 1.0;
    for (int n = 1; n <= 3; ++n) {
        const double p = pgm_success_dense(n, 1);
        ASSERT_LE(p, prev);
        prev = p;
    }
}

TEST(Pgm, completeness_on_key_ensembles) {
    for (int n = 1; n <= 2; ++n) {
        for (int m = 0; m <= 2; ++m) {
            ASSERT_LT(pgm(lemma_key_ensemble(n, m)).completeness_defect(), 1e-8);
        }
    }
}

TEST(Reduction, haar_arm_is_bounded_by_pgm) {
    Rng rng(35);
    ExperimentReport rep = reduction_distinguisher(attacks::key_exhausting_inverter(), 2, 1, 1000, rng);
    const double p = rep.extra("p_invert_haar");
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(rep.arm("haar").trials));
    ASSERT_LE(p, std::min(1.0, std::sqrt(pgm_success_structured(2, 1))) + 3.0 * sigma);
}
