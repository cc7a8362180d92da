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
#include <complex>
#include <cstdint>
#include <vector>

#include "qsos/algebra.hpp"
#include "qsos/syk_tensor.hpp"

namespace qsos {

/// Fermionic Gaussian state described by its two-point function
/// M = I + iB with B real antisymmetric; pure iff B^2 = -I.
struct GaussianState {
  Eigen::MatrixXd B;

  int majoranas() const { return static_cast<int>(B.rows()); }
  bool is_pure(double tol = 1e-8) const {
    return (B * B + Eigen::MatrixXd::Identity(B.rows(), B.cols())).norm() <=
           tol * B.rows();
  }
  static GaussianState maximally_mixed(int n) {
    return GaussianState{Eigen::MatrixXd::Zero(n, n)};
  }
};

/// Haar-random pure Gaussian state: B = R B0 R^T with B0 the canonical
/// block form and R a seeded random orthogonal matrix.
GaussianState random_pure_gaussian(int n, std::uint64_t seed);

/// Pfaffian of a real antisymmetric matrix (Parlett-Reid with partial
/// pivoting).  Throws if the asymmetry exceeds 1e-10 * scale.
double pfaffian(Eigen::MatrixXd A);

/// Pfaffian of a complex antisymmetric matrix (same elimination).
cplx pfaffian_complex(Eigen::MatrixXcd A);

/// <gamma_{i1} ... gamma_{ik}> in the Gaussian state: reduces repeated
/// indices via the Clifford relations, then evaluates the pairing sum as
/// a Pfaffian of the M-minor.  Throws on odd length after reduction
/// bookkeeping (odd correlators vanish; returns 0).
cplx wick_expectation(const GaussianState& state,
                      const std::vector<int>& indices);

/// Pairing-sum evaluation (signed sum over all pairings); the
/// independent oracle for the Pfaffian route, exponential in length.
cplx wick_pairing_sum(const GaussianState& state,
                      const std::vector<int>& indices);

/// sum over increasing tuples of q! J_tuple <gamma...gamma> via Wick;
/// equals <H_SYK> in the Gaussian state.
double gaussian_energy(const GaussianState& state, const SykTensor& J);

/// Quadratic Hamiltonian i sum_{a<b} B_ab g_a g_b whose ground state is
/// the pure Gaussian state with correlation matrix B.
OperatorPolynomial gaussian_parent_hamiltonian(const GaussianState& state);

/// 4-regular pairing multigraph on k vertices (one per tensor copy);
/// self-loops count twice toward the degree.
struct PairingGraph {
  struct Edge {
    int u = 0, v = 0;
    int color = -1;  // 0 = left, 1 = right, -1 = uncolored
  };
  int vertices = 0;
  std::vector<Edge> edges;
};

/// Random pairing of the 4k Majorana slots of k tensor vertices.
PairingGraph random_pairing_graph(int k, std::uint64_t seed);

/// Colors the edges two-per-color-per-vertex by alternating along an
/// Eulerian circuit of each component.  Throws if the graph is not
/// 4-regular.
PairingGraph euler_color(PairingGraph g);

/// Structural validity: every vertex sees exactly two edges of each
/// color (loops counting twice).
bool coloring_balanced(const PairingGraph& g);

/// Brute-force check whether a graph admits any balanced 2-coloring
/// with q/2 edges per color per vertex (degree q).  Used for the
/// three-vertex degree-6 counterexample.
bool balanced_coloring_exists(int vertices, int degree,
                              const std::vector<std::pair<int, int>>& edges);

struct MomentBoundRow {
  int k = 0;
  double max_abs_moment = 0.0;  // max over sampled states of |<H^k>|
  double lambda_max_pow = 0.0;  // lambda_max(H)^k
};

/// Dense <H^k> over sampled pure Gaussian states, against the spectral
/// power; n <= 12 Majoranas, k <= 8.
std::vector<MomentBoundRow> moment_bound_experiment(int n, int kmax,
                                                    int state_samples,
                                                    std::uint64_t seed);

struct LanczosTrajectory {
  std::vector<double> ritz_max;       // per step
  std::vector<double> ratio_to_max;   // ritz / lambda_max
  std::vector<double> support_resid;  // ||P_{> 4k} v_k||
  double lambda_max = 0.0;
};

/// Lanczos on the SYK Hamiltonian from a random pure Gaussian
/// wavefunction; verifies the iterate stays within 4k excitations of
/// the defining stabilizer basis.
LanczosTrajectory excitation_lanczos(int n, int steps, std::uint64_t seed);

}  // namespace qsos
