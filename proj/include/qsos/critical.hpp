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

#include <optional>
#include <vector>

namespace qsos {

/// O(N) vector model on a periodic cubic lattice:
///   H = J sum_<ij> q_i q_j + (1/2) sum p_i^2 + (V/2) sum (q_i^2 - 1)^2
/// (N = 1 operators; N enters the large-N formulas only).
struct VectorModelParams {
  int dim = 1;       // spatial dimension d
  int L = 1;         // linear size, n = L^d sites
  double J = 0.0;
  double V = 0.5;
};

struct KappaSolution {
  double kappa = 0.0;          // self-consistent mass^2
  double s = 0.0;              // E[q^2] at the fixed point
  double energy_per_site = 0.0;  // SoS lower bound on E/n
  std::vector<double> omega;   // mode frequencies
  double residual = 0.0;       // |kappa/2 - V (s - 1)|
};

/// Solves kappa = 2V((1/n) sum_p 1/(2 omega(p)) - 1) by bracketed
/// bisection with omega(p)^2 = kappa + 2J sum_mu cos p_mu.  Throws when
/// no root exists in the physical bracket (ordered phase at this size).
KappaSolution solve_vector_model(const VectorModelParams& p);

/// <H> in the Gaussian ground state of H_Gaussian(kappa), using the Wick
/// value 3<q^2>^2 for the quartic term; per site.
double variational_vector_energy(const VectorModelParams& p, double kappa);

/// variational energy minimized over kappa (golden section).
double variational_vector_minimum(const VectorModelParams& p);

/// Ground energy of the single-site model -(1/2) d^2/dq^2 +
/// (V/2)(q^2-1)^2 by finite differences on [-box, box] with `points`
/// grid points (Sturm bisection on the tridiagonal matrix).
double single_site_schrodinger_energy(double V, int points = 2001,
                                      double box = 6.0);

/// Mean-field transverse-field Ising SoS coefficients at degree 2:
/// minimizes -(lambda) = b^2 n + a'^2 (n-1) + a^2 subject to
/// a^2 = a'^2 - 1/2 and |a b + (n-1) a' b| = h n / 2.
struct MeanfieldSos {
  double a = 0.0, a_prime = 0.0, b = 0.0;
  double lambda = 0.0;  // H >= lambda
};
MeanfieldSos tfim_meanfield_sos(int n, double h);

/// 3D TFIM degree-2 SoS over an L^3 momentum lattice: minimizes
/// b^2 + c with a(p)^2 = c - cos px - cos py - cos pz and the
/// consistency condition (1/n) sum_p a(p) b = h.
struct Tfim3dSolution {
  double c = 3.0;
  double m2 = 0.0;             // 2 (c - 3)
  double b = 0.0;
  double energy_density = 0.0; // -(b^2 + c)
  double h = 0.0;
  int L = 0;
  bool boundary = false;       // minimizer pinned at c = 3 (ordered side)
  double residual = 0.0;       // |(1/n) sum a(p) b - h|
};
Tfim3dSolution tfim3d_sos(int L, double h);

struct CriticalScan {
  double h_cr = 0.0;
  double exponent = 0.0;       // log-log fit of m vs (h - h_cr)
  std::vector<double> h;       // scan trace
  std::vector<double> m;
};

/// Locates h_cr by bisection on the boundary-minimizer flag, then fits
/// the exponent of m against (h - h_cr) on the decade
/// [h_cr + delta, h_cr + 10 delta].
CriticalScan critical_scan(int L, double h_lo, double h_hi,
                           double delta = 0.05);

}  // namespace qsos
