/*
 * Copyright 2026 The qsos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "qsos/algebra.hpp"
#include "qsos/sdp.hpp"

namespace qsos {

/// Ordered monomial basis of degree <= r.  For the moment SDP the basis
/// monomials are Hermitian-normalized: Pauli strings are Hermitian as
/// is; a Majorana monomial of degree d carries the phase i^{floor(d/2)}.
struct MomentBasis {
  Algebra algebra = Algebra::majorana;
  int sites = 0;
  int r = 1;
  std::vector<MonoKey> monomials;  // identity first

  int size() const { return static_cast<int>(monomials.size()); }
};

/// Basis of all canonical monomials of degree <= r.  Fermion bases are
/// normal-ordered monomials (used by rank diagnostics only; the SDP
/// itself runs on the pauli or majorana algebra).  Guarded at 5000
/// elements.
MomentBasis enumerate_basis(Algebra algebra, int sites, int r);

enum class SosMode { general, hermitian_restricted };

/// Moment-matrix SDP for E[H] over pseudo-expectations of the degree-2r
/// algebra.  Every entry of M_{ab} = E[O_a O_b] reduces to a single
/// phase times a real variable (one per Hermitian-normalized monomial);
/// in general mode the complex Hermitian M is embedded as a doubled real
/// block, in hermitian_restricted mode only Re(M) is constrained PSD.
struct MomentProblem {
  MomentBasis basis;
  SosMode mode = SosMode::general;
  std::vector<MonoKey> variables;          // non-identity monomials
  std::map<MonoKey, int> variable_index;
  // entry_phase[a][b] = (variable index, complex phase); index -1 means
  // the entry reduced to the identity (phase holds its value).
  std::vector<std::vector<std::pair<int, cplx>>> entries;
  Eigen::VectorXd objective;               // per variable, real
  double objective_const = 0.0;            // identity coefficient of H
  SdpProblem sdp;                          // assembled solver input
};

/// Builds the moment problem for a Hermitian H with deg(H) <= 2r.  For
/// fermion-algebra H the problem is posed on the Majorana algebra.
/// `even_parity_only` restricts the basis to even monomials (valid for
/// even-parity H by the symmetry averaging argument).
MomentProblem build_moment_problem(const OperatorPolynomial& H, int r,
                                   SosMode mode,
                                   bool even_parity_only = false);

struct SosCertificate {
  double bound = 0.0;  // lambda with H >= lambda
  std::vector<double> weights;                 // lambda_alpha >= 0
  std::vector<OperatorPolynomial> squares;     // O_alpha, degree <= r
  double residual = 0.0;  // l1 norm of H - lambda - sum w O^dag O
};

struct LowerBoundResult {
  double bound = 0.0;
  SdpSolution solution;
  MomentProblem problem;
};

/// build + solve; bound from the SDP optimum.
LowerBoundResult lower_bound(const OperatorPolynomial& H, int r, SosMode mode,
                             const SdpOptions& opts = {},
                             bool even_parity_only = false);

/// Gram-factorizes the primal solution into an explicit decomposition
/// H = lambda + sum_alpha w_alpha O_alpha^dag O_alpha and verifies it by
/// symbolic re-expansion.  Eigenvalues below drop_tol are discarded.
SosCertificate extract_certificate(const MomentProblem& mp,
                                   const SdpSolution& sol,
                                   double drop_tol = 1e-9);

/// Re-expands a certificate and returns the l1 residual against H.
double certificate_residual(const OperatorPolynomial& H,
                            const SosCertificate& cert);

/// JSON export of a certificate: list of (weight, term list).
std::string certificate_to_json(const SosCertificate& cert);

struct RankReport {
  Eigen::VectorXd eigenvalues;       // of the basis Gram/moment matrix
  int zero_count = 0;
  Eigen::VectorXd even_eigenvalues;  // even-parity submatrix
  int even_zero_count = 0;
  int odd_zero_count = 0;
};

enum class StateSource { sdp, exact_ground_state };

/// Moment-matrix spectrum diagnostics over `basis` (typically the
/// normal-ordered fermion basis).  exact_ground_state builds M_{ab} =
/// <gs|O_a^dag O_b|gs> from dense ED (degenerate ground states are
/// rejected); sdp assembles the same entries from a solved moment
/// problem's pseudo-expectations.
RankReport moment_rank_report(const OperatorPolynomial& H,
                              const MomentBasis& basis, StateSource source,
                              double zero_tol = 1e-7, int sdp_r = 2);

/// sum_{s=1..r} sum_{t=0..r-s} C(n,s) C(n,t): zero-eigenvalue count of
/// the unperturbed moment matrix over the fermion basis.
long zero_count_formula(int n, int r);

struct PtOrderResult {
  std::vector<double> eps;
  std::vector<double> exact;
  std::vector<double> bound;
  double slope = 0.0;          // log-log fit of (exact - bound) vs eps
  bool exact_at_order = false; // errors at solver-noise level; no slope
};

/// Fits the error exponent of the degree-2r bound against exact ED for a
/// one-parameter Hamiltonian family.
PtOrderResult pt_order_check(
    const std::function<OperatorPolynomial(double)>& family, int r,
    const std::vector<double>& eps_grid, const SdpOptions& opts = {});

/// Degree-2 moment bound for a cyclic-translation and spin-flip
/// invariant qubit Hamiltonian, block-diagonalized over Fourier momenta.
/// Cross-checked against the unreduced build in tests.
double symmetry_reduced_ring_bound(const OperatorPolynomial& H,
                                   const SdpOptions& opts = {});

}  // namespace qsos
