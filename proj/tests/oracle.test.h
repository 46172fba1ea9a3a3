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

#ifndef QTFLAB_TESTS_ORACLE_TEST_H
#define QTFLAB_TESTS_ORACLE_TEST_H

// Brute-force reference computations that share no code with the library:
// the symmetric projector is the average over all m! register permutations,
// and every spectral quantity comes straight from Eigen's eigensolver.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;

inline std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

/// (1/m!) sum over permutations pi of P_pi on (C^d)^{(x)m}.
inline Mat permutation_average(int d, int m) {
    const std::size_t dim = ipow(static_cast<std::size_t>(d), m);
    Mat acc = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    std::vector<int> digits(static_cast<std::size_t>(m));
    do {
        for (std::size_t idx = 0; idx < dim; ++idx) {
            std::size_t v = idx;
            for (int s = m - 1; s >= 0; --s) {
                digits[static_cast<std::size_t>(s)] = static_cast<int>(v % static_cast<std::size_t>(d));
                v /= static_cast<std::size_t>(d);
            }
            std::size_t out = 0;
            for (int s = 0; s < m; ++s) {
                out = out * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])]);
            }
            acc(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(idx)) += 1.0;
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / static_cast<double>(count);
}

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Uniform-prior PGM success over the ensemble {rho}.
inline double pgm_success(const std::vector<Mat> &rho) {
    Mat sigma = Mat::Zero(rho[0].rows(), rho[0].cols());
    for (const auto &r : rho) {
        sigma += r;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(sigma);
    Eigen::VectorXd ev = es.eigenvalues();
    const double top = ev.maxCoeff();
    Eigen::VectorXd inv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        inv(i) = ev(i) > 1e-10 * top ? 1.0 / std::sqrt(ev(i)) : 0.0;
    }
    Mat s = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
    double total = 0.0;
    for (const auto &r : rho) {
        Mat mx = s * r * s;
        total += (mx * r).trace().real();
    }
    return total / static_cast<double>(rho.size());
}

/// Key ensemble with mask Z^x on the first of m+1 registers, d = 2^n.
inline double key_ensemble_pgm(int n, int m) {
    const int d = 1 << n;
    Mat pi = permutation_average(d, m + 1) / binom(d + m, m + 1);
    const std::size_t tail = ipow(static_cast<std::size_t>(d), m);
    std::vector<Mat> rho;
    for (int x = 0; x < d; ++x) {
        Eigen::VectorXd sign(pi.rows());
        for (Eigen::Index i = 0; i < pi.rows(); ++i) {
            const auto lead = static_cast<unsigned>(static_cast<std::size_t>(i) / tail);
            sign(i) = (std::popcount(lead & static_cast<unsigned>(x)) % 2) ? -1.0 : 1.0;
        }
        rho.push_back(sign.asDiagonal() * pi * sign.asDiagonal());
    }
    return pgm_success(rho);
}

inline double trace_norm(const Mat &a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle

#endif
