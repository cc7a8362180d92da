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
#include <variant>
#include <vector>

#include "qsos/algebra.hpp"

namespace qsos {

/// beta-periodic double delta comb F(x) = sum_n delta(x - tau0 + n beta)
/// + delta(x + tau0 + n beta).
struct DeltaComb {
  double tau0 = 1.0;
};

/// Causal exponential kernel F(x) = theta(x) exp(-eps x) exp(i omega x),
/// omega an integer multiple of 2 pi / beta.
struct StepExp {
  double eps = 1.0;
  double omega = 0.0;
};

using KernelSpec = std::variant<DeltaComb, StepExp>;

/// Time-nonlocal partition function data: Z(beta, g) = tr T exp(-int H
/// - g sum_a int int Delta_a^dag(t) Delta_a(t') F_a(t - t')).
struct NonlocalModel {
  OperatorPolynomial H;                  // qubit algebra, n <= 3
  std::vector<OperatorPolynomial> deltas;
  std::vector<KernelSpec> kernels;       // one per delta
  double beta = 1.0;

  void validate() const;
};

/// Spectral two-point function tr[e^{-(beta-s)H} A e^{-sH} B].
cplx two_point(const OperatorPolynomial& H, const OperatorPolynomial& A,
               const OperatorPolynomial& B, double s, double beta);

struct LogZSeries {
  double c0 = 0.0;   // log Z(beta, 0)
  cplx c1{0.0, 0.0};  // coefficient of g in log Z
  cplx c2{0.0, 0.0};  // coefficient of g^2
  double error_estimate = 0.0;
};

/// Expands log Z(beta, g) to second order in g.  Delta combs are
/// collapsed analytically; the remaining time integrals are evaluated in
/// the eigenbasis of H via exact exponential divided differences, so the
/// reported error is at rounding level.  Kernel families cannot be mixed
/// within one model.
LogZSeries logZ_series(const NonlocalModel& m);

struct EmbeddedZResult {
  double Z = 0.0;
  double Z0 = 0.0;            // decoupled g = 0 value at the same L
  double truncation_shift = 0.0;  // |Z(n_max) - Z(n_max + 2)| / |Z|
};

/// Oscillator-embedded evaluation of Z(beta, g): one harmonic mode per
/// kernel (step_exp only; eps is the oscillator energy), Trotterized
/// time-ordered trace with a symmetric splitting.
EmbeddedZResult embedded_Z(const NonlocalModel& m, double g, int n_max,
                           int trotter_steps);

/// Quadratic fit of log Z_embedded in g at {0, h, 2h}: returns (c1, c2).
std::pair<double, double> embedded_logZ_coefficients(const NonlocalModel& m,
                                                     double h, int n_max,
                                                     int trotter_steps);

}  // namespace qsos
