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
#include <cstdint>
#include <vector>

#include "qsos/algebra.hpp"

namespace qsos {

/// Decomposition H = Q + sum_a Q_a^2 + lambda with Q positive
/// semidefinite quadratic and Q_a Hermitian quadratic (constant shifts
/// allowed); the imaginary-time propagator of each square factor is
/// Hubbard-Stratonovich decoupled during sampling.
struct HsDecomposition {
  OperatorPolynomial Q;                  // PSD quadratic part (may be 0)
  std::vector<double> weights;           // w_a >= 0, squares w_a Q_a^2
  std::vector<OperatorPolynomial> ops;   // Q_a (Hermitian)
  double lambda = 0.0;
  int modes = 0;
};

enum class DecomposeVia { sdp, manual };

/// via = sdp: Hermitian-restricted degree-4 certificate on the even
/// Majorana basis; Q = 0 and every square becomes a Q_a.  via = manual
/// only supports the purely quadratic PSD case (H = Q + lambda).
/// Residual above 1e-6 or a non-PSD Q is an error.
HsDecomposition decompose(const OperatorPolynomial& H, DecomposeVia via);

/// l1 residual of H - (Q + sum w_a Q_a^2 + lambda).
double decomposition_residual(const OperatorPolynomial& H,
                              const HsDecomposition& d);

/// Sampled field trajectory and its accumulated weight.
struct FieldTrajectory {
  double tau = 0.0;
  int steps = 0;
  std::vector<double> fields;      // one per (slice, half, operator)
  cplx weight{0.0, 0.0};           // tr of the propagated product
  std::vector<double> magnitude;   // trace norm of the partial product
};

/// Dense Fock-space propagator context for a decomposition (n <= 6
/// modes).  Precomputes eigenbases of Q and every Q_a in parity blocks
/// plus the transfer matrices between consecutive eigenbases of the
/// palindromic slice sequence, so each sampled field costs one
/// block-size matrix product.
class HsPropagator {
 public:
  HsPropagator(const HsDecomposition& d, double tau);

  int fields_per_slice() const { return 2 * num_ops_; }
  double tau() const { return tau_; }
  std::int64_t dim() const { return dim_; }

  /// Weight of one trajectory; fields laid out slice-major, palindromic
  /// (forward half then backward half per slice).  If `magnitudes` is
  /// non-null, records the trace norm after every slice.
  cplx weight(const std::vector<double>& fields, int slices,
              std::vector<double>* magnitudes = nullptr) const;

  /// Weights of `batch` trajectories at once (fields trajectory-major),
  /// propagated in planar real arithmetic so the transfer products run
  /// as wide real matrix products.  Agrees with weight() to rounding.
  std::vector<cplx> weight_batch(const std::vector<double>& fields,
                                 int slices, int batch) const;

  /// Deterministic Gauss-Hermite evaluation of E[weight] for a single
  /// operator and few slices (exactness-limit checks).
  cplx quadrature_weight(int slices, int nodes) const;

 private:
  struct Block {
    // palindromic chain: P <- Lcap D(f_last) T_1 D(f_..) ... T_2A-1
    //                        D(f_first) Rcap P
    Eigen::MatrixXcd Lcap, Rcap;
    std::vector<Eigen::MatrixXcd> transfer;  // 2A-1 inter-op transfers
    std::vector<const Eigen::VectorXd*> vals;  // eigenvalues per chain pos
  };
  template <int K>
  cplx weight_fixed(const std::vector<double>& fields, int slices,
                    std::vector<double>* magnitudes) const;
  double tau_ = 0.0;
  std::int64_t dim_ = 0;
  int num_ops_ = 0;
  std::vector<std::vector<Eigen::VectorXd>> op_vals_;  // [parity][op]
  std::vector<std::vector<Eigen::MatrixXcd>> op_vecs_;
  Eigen::MatrixXcd expQ_even_, expQ_odd_;  // exp(-tau Q / 2) halves
  std::vector<Block> blocks_;              // [parity]
  std::vector<int> even_idx_, odd_idx_;
};

struct SignDecayResult {
  double beta = 0.0, tau = 0.0;
  long samples = 0;
  cplx mean_weight{0.0, 0.0};
  double mean_abs_weight = 0.0;
  double stderr_weight = 0.0;       // std error of Re(weight)
  double decay_rate = 0.0;          // -(1/beta) log Re(mean weight)
  double bound_rate = 0.0;          // E0 - lambda when supplied
};

/// Monte Carlo over Hubbard-Stratonovich fields with the second-order
/// palindromic splitting; deterministic given the seed, trajectories
/// distributed over worker threads with per-worker counter streams.
SignDecayResult sign_decay(const HsDecomposition& d, double beta, double tau,
                           long samples, std::uint64_t seed,
                           int threads = 1);

/// CSV row per the documented schema: beta, tau, samples,
/// mean_weight_re, mean_weight_im, mean_abs_weight, stderr, bound_rate.
std::string sign_decay_csv_row(const SignDecayResult& r);

}  // namespace qsos
