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

#ifndef QTFLAB_STATE_HPP
#define QTFLAB_STATE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qtflab/bits.hpp"
#include "qtflab/errors.hpp"
#include "qtflab/rng.hpp"

namespace qtflab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Unit-norm amplitude vector over local_dim^num_sites basis labels.
///
/// Basis index is the big-endian base-local_dim reading of the site labels:
/// site 0 is the most significant digit. Composite registers are therefore
/// laid out with the first register in the leading digits.
class StateVector {
  public:
    /// Validates length and norm (within tol::kNorm).
    StateVector(int local_dim, int num_sites, CVector amplitudes);

    /// Rescales `raw` to unit norm; raw must be nonzero.
    static StateVector normalized(int local_dim, int num_sites, CVector raw);
    static StateVector basis(int local_dim, int num_sites, std::size_t index);
    static StateVector qubit_basis(const Bits &x);
    /// Zero-site state of dimension 1 with amplitude 1.
    static StateVector unit(int local_dim = 2);

    int local_dim() const { return local_dim_; }
    int num_sites() const { return num_sites_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
    double norm() const { return amplitudes_.norm(); }

    /// Same amplitudes, reinterpreted over a different register shape.
    StateVector reshaped(int local_dim, int num_sites) const;

  private:
    int local_dim_;
    int num_sites_;
    CVector amplitudes_;
};

/// Square complex matrix. Hermiticity and density-matrix properties are
/// checked on demand rather than carried in the type.
class Operator {
  public:
    explicit Operator(CMatrix entries);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim);
    /// |psi><psi|
    static Operator projector(const StateVector &psi);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const CMatrix &matrix() const { return entries_; }
    Complex trace() const { return entries_.trace(); }

    /// max |A - A^dagger| entry.
    double hermiticity_defect() const;
    bool is_hermitian(double tolerance = tol::kHermitian) const {
        return hermiticity_defect() <= tolerance;
    }

  private:
    CMatrix entries_;
};

/// Throws InvariantError unless `op` is Hermitian, has eigenvalues above
/// tol::kPsdFloor and unit trace.
void validate_density(const Operator &op);
bool is_density(const Operator &op);

/// Ascending eigenvalues and matching orthonormal eigenvectors of a
/// Hermitian operator. Throws InvariantError for non-Hermitian input.
struct Spectrum {
    RVector values;
    CMatrix vectors;
};
Spectrum hermitian_spectrum(const Operator &op);

/// Pseudo-inverse square root: eigenvalues <= kernel_threshold * lambda_max map
/// to zero, the others to lambda^{-1/2}.
Operator pinv_sqrt(const Operator &op, double kernel_threshold = tol::kKernelRelative);
/// Projector onto the span of eigenvectors above the same relative threshold.
Operator support_projector(const Operator &op, double kernel_threshold = tol::kKernelRelative);
struct PseudoInverseRoot {
    Operator inv_sqrt;
    Operator support;
};
/// Both of the above from a single eigendecomposition.
PseudoInverseRoot pinv_sqrt_with_support(const Operator &op, double kernel_threshold = tol::kKernelRelative);
/// Sum of |eigenvalues| of a Hermitian operator.
double trace_norm(const Operator &op);
double frobenius_distance(const Operator &a, const Operator &b);

struct WeightedTerm {
    double weight;
    std::variant<StateVector, Operator> term;
};
/// sum_i w_i rho_i; weights must be non-negative and sum to one.
Operator ensemble_average(std::span<const WeightedTerm> terms);

/// Z^x on an n-qubit state: amplitude y picks up (-1)^{x.y}.
StateVector apply_z_mask(const StateVector &state, const Bits &x);
/// Z^x on the leading |x| qubits of a larger qubit register.
StateVector apply_z_mask_leading(const StateVector &state, const Bits &x);
/// H^{(x)n}, normalised Walsh-Hadamard transform.
StateVector apply_hadamard_all(const StateVector &state);
/// Multiplies amplitude y by signs[y] (each +1 or -1).
StateVector apply_phase_signs(const StateVector &state, std::span<const std::int8_t> signs);

/// Phase table / Walsh-Hadamard on the leading register of a composite
/// qubit state (signs.size() == 2^leading_sites); the trailing sites are
/// untouched.
StateVector apply_phase_signs_leading(const StateVector &state, std::span<const std::int8_t> signs);
StateVector apply_hadamard_leading(const StateVector &state, int leading_sites);

std::size_t measure_computational(const StateVector &state, Rng &rng);
/// Measures every site, returns the index of the leading `leading_sites`.
std::size_t measure_leading(const StateVector &state, int leading_sites, Rng &rng);
/// Born-rule distribution |amplitude|^2.
std::vector<double> outcome_probabilities(const StateVector &state);

/// Haar-random pure state: i.i.d. standard complex Gaussians, normalised.
StateVector haar_random_state(std::size_t dim, Rng &rng);
StateVector haar_random_state(int local_dim, int num_sites, Rng &rng);

StateVector kron(const StateVector &a, const StateVector &b);
/// m-fold tensor power; m = 0 gives StateVector::unit.
StateVector kron_power(const StateVector &state, int m);

/// <a|b>
Complex overlap(const StateVector &a, const StateVector &b);
/// |<a|b>| >= 1 - tolerance: equality up to a global phase.
bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tolerance = 1e-12);
/// Largest entrywise difference.
double max_abs_diff(const StateVector &a, const StateVector &b);

}  // namespace qtflab

#endif
