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

#ifndef QTFLAB_DISCRIMINATION_HPP
#define QTFLAB_DISCRIMINATION_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtflab/qtf.hpp"
#include "qtflab/report.hpp"
#include "qtflab/state.hpp"

/// Exact state-discrimination machinery for Haar copies under a hidden Z^x
/// mask: symmetric-subspace type basis, Pauli-Z twirl, the spectrum of the
/// dephased symmetric projector, and the pretty good measurement.
///
/// Conventions: registers are numbered from the left, basis index of
/// |j_1 ... j_m> is the big-endian base-d number, and d-dimensional "labels"
/// run over 0..d-1.
namespace qtflab::disc {

/// Occupation numbers of a label sequence: t[i] counts how often label i
/// occurs; sum(t) == m.
struct TypeVector {
    int d = 0;
    int m = 0;
    std::vector<int> t;

    friend bool operator==(const TypeVector &, const TypeVector &) = default;
    friend auto operator<=>(const TypeVector &a, const TypeVector &b) { return a.t <=> b.t; }
};

double binomial(int n, int k);
/// m! / (t_1! ... t_d!)
double multinomial(std::span<const int> t);

/// All types of length d summing to m, in ascending lexicographic order.
std::vector<TypeVector> enumerate_types(int d, int m);
/// Visits the same sequence without materialising it.
void for_each_type(int d, int m, const std::function<void(std::span<const int>)> &visit);

/// |s(t)>: uniform superposition, amplitude multinomial(t)^{-1/2}, over all
/// label sequences of type t. Local dimension d, m sites.
StateVector type_state(const TypeVector &tv);

/// Ordered orthonormal basis of the symmetric subspace of (C^d)^{(x)m}.
class SymBasis {
  public:
    SymBasis(int d, int m);

    int d() const { return d_; }
    int m() const { return m_; }
    std::size_t size() const { return types_.size(); }
    const std::vector<TypeVector> &types() const { return types_; }
    std::optional<std::size_t> index_of(std::span<const int> t) const;
    StateVector state(std::size_t i) const { return type_state(types_.at(i)); }

  private:
    int d_;
    int m_;
    std::vector<TypeVector> types_;
    std::map<std::vector<int>, std::size_t> index_;
};

/// Projector onto the symmetric subspace: sum_t |s(t)><s(t)|.
Operator sym_projector(int d, int m);

/// Both sides of the Pauli-Z twirl identity on the leading n qubits:
/// `enumerated` averages (Z^s (x) I) op (Z^s (x) I) over all 2^n masks,
/// `dephased` keeps only the blocks diagonal in the leading register.
struct TwirlSides {
    Operator enumerated;
    Operator dephased;
    double gap;  ///< Frobenius distance between the two
};
TwirlSides z_twirl_sides(const Operator &op, int n_twirl_qubits);
/// Returns the dephased form after checking gap <= tol::kTwirlGap
/// (InvariantError otherwise).
Operator z_twirl(const Operator &op, int n_twirl_qubits);

struct SpectrumLevel {
    double value;
    std::size_t multiplicity;
};

/// sigma~ = sum_j (|j><j| (x) I) Pi_sym^{d,m+1} (|j><j| (x) I), plus its
/// predicted spectrum: (r+1)/(m+1) with multiplicity sum_j |{t in I_{d,m} :
/// t_j = r}| for r = 0..m, and 0 on the rest.
struct SigmaTilde {
    int d;
    int m;
    Operator op;
    std::vector<SpectrumLevel> predicted;
};
SigmaTilde sigma_tilde(int d, int m);
std::vector<SpectrumLevel> predicted_sigma_tilde_spectrum(int d, int m);
/// Eigenvalue of sigma~ on |j> (x) |s(t)>, t in I_{d,m}.
inline double sigma_tilde_eigenvalue(std::span<const int> t, int j, int m) {
    return static_cast<double>(t[static_cast<std::size_t>(j)] + 1) / static_cast<double>(m + 1);
}

struct SpectrumCheck {
    bool ok = false;
    double max_deviation = 0.0;  ///< sorted dense vs sorted predicted
    bool multiplicities_ok = false;
};
SpectrumCheck check_spectrum(const SigmaTilde &st, double tolerance = 1e-9);

/// Uniform-prior ensemble of labelled density matrices.
struct Ensemble {
    std::vector<std::string> labels;
    std::vector<Operator> states;

    std::size_t size() const { return states.size(); }
    std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
};
/// Validates every member as a density matrix of a common dimension.
Ensemble make_ensemble(std::vector<std::string> labels, std::vector<Operator> states);

/// rho_x = binom(d+m, m+1)^{-1} (Z^x (x) I) Pi_sym^{d,m+1} (Z^x (x) I) for every
/// x in {0,1}^n, d = 2^n. Exact; no sampling.
Ensemble lemma_key_ensemble(int n, int m);

/// Pretty good measurement {M_x} plus the kernel projector M_perp.
struct Povm {
    std::vector<std::string> labels;
    std::vector<Operator> elements;
    Operator kernel;

    /// Frobenius norm of sum(M_x) + M_perp - I.
    double completeness_defect() const;
};
Povm pgm(const Ensemble &ens);
/// (1/N) sum_x Tr[M_x rho_x]
double success_probability(const Povm &povm, const Ensemble &ens);
/// Same quantity without materialising the POVM.
double pgm_success(const Ensemble &ens);

/// Key-ensemble PGM success, dense route (dimension d^{m+1}).
double pgm_success_dense(int n, int m);
/// Same quantity computed in the |j> (x) |s(t)> eigenbasis of sigma~; scales
/// to much larger d. Valid for any local dimension d >= 1.
double pgm_success_structured_d(int d, int m);
double pgm_success_structured(int n, int m);

/// Optimal success probability for two equiprobable states:
/// 1/2 + ||rho0 - rho1||_1 / 4.
double helstrom_binary(const Operator &rho0, const Operator &rho1);

/// I_d (x) op
Operator identity_kron(std::size_t d, const Operator &op);
/// Tr[Pi^{d,m+1} (I (x) Pi^{d,m}) Pi^{d,m+1} (I (x) Pi^{d,m})]
double proof_term_trace(int d, int m);

/// 4 * (m/d + m^7/d^3)^{1/2}, d = 2^n.
double key_pgm_bound(int n, int m, double constant = 4.0);
/// 2^n > 2(m+1)
bool asymptotic_regime(int n, int m);

/// One (n, m) row of the PGM grid. Dense-only fields are empty when the
/// dense route does not fit under the operator cap.
struct GridRow {
    int n = 0;
    int m = 0;
    std::size_t d = 0;
    std::size_t dim = 0;
    std::optional<double> pgm_success_dense;
    double pgm_success_structured = 0.0;
    double bound_value = 0.0;
    std::optional<bool> spectrum_ok;
    bool asymptotic_regime = false;
};
GridRow pgm_grid_row(int n, int m);

/// Wraps an inversion adversary into a pseudorandom-vs-Haar distinguisher:
/// given |psi>^{(x)(m+1)}, sample x, apply Z^x to the first copy, run the
/// adversary, and guess "pseudorandom" iff it returns x. Arms "prs"/"haar"
/// tally x' == x. With Privilege::kTrapdoor the PRS arm leaks its key.
ExperimentReport reduction_distinguisher(const qtf::InversionAdversary &adversary, int n, int m,
                                         std::size_t trials, Rng &rng, Family family = Family::kTable,
                                         qtf::Privilege privilege = qtf::Privilege::kNone);

/// Binary operator dump: 8-byte magic "QTFLOP01", uint64 little-endian side
/// length, then row-major (re, im) float64 little-endian pairs.
void write_operator(std::ostream &out, const Operator &op);
Operator read_operator(std::istream &in);

}  // namespace qtflab::disc

#endif
