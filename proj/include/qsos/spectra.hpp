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
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "qsos/algebra.hpp"

namespace qsos {

/// Qubit count of the dense representation (modes for fermions,
/// majorana_count/2 for Majorana operators).
int dense_qubits(const OperatorPolynomial& p);

/// Hilbert-space dimension 2^dense_qubits.
std::int64_t dense_dim(const OperatorPolynomial& p);

/// Faithful dense matrix (Jordan-Wigner for fermionic algebras, mode
/// index order).  Guarded at 14 qubits.
Eigen::MatrixXcd to_dense(const OperatorPolynomial& p);

/// Sparse form, used by the iterative eigensolver at large dimension.
Eigen::SparseMatrix<cplx> to_sparse(const OperatorPolynomial& p);

/// y = P x without materializing the matrix.
Eigen::VectorXcd apply_polynomial(const OperatorPolynomial& p,
                                  const Eigen::VectorXcd& x);

/// <state| P |state>; state must be normalized and of matching dimension.
cplx expectation(const OperatorPolynomial& p, const Eigen::VectorXcd& state);

struct SpectralResult {
  double min_eig = 0.0;
  double max_eig = 0.0;
  Eigen::VectorXcd min_vec;
  Eigen::VectorXcd max_vec;
  double min_residual = 0.0;  // ||H v - lambda v||
  double max_residual = 0.0;
};

enum class Which { min, max, both };

/// Extremal eigenpairs.  Dense solve for dim <= 2048; Lanczos with full
/// reorthogonalization (tolerance 1e-10, seeded start vector) beyond.
/// Throws on non-Hermitian input.
SpectralResult extremal_eigs(const OperatorPolynomial& p,
                             Which which = Which::both);

/// Ground-state energy convenience wrapper.
double ground_energy(const OperatorPolynomial& p);

struct PerturbationFit {
  Eigen::VectorXd coeffs;  // c_0 + c_1 eps + ... + c_k eps^k
  double residual = 0.0;   // rms misfit over the grid
};

/// Least-squares polynomial fit of E_0(eps) over the grid.  Throws if the
/// unperturbed (eps = 0) ground state is degenerate (gap < 1e-8).
PerturbationFit perturbation_fit(
    const std::function<OperatorPolynomial(double)>& family,
    const std::vector<double>& eps_grid, int order);

}  // namespace qsos
