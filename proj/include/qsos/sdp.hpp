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
#include <string>
#include <vector>

namespace qsos {

/// Dense semidefinite program in standard primal-dual form over one or
/// more symmetric blocks:
///
///   (P)  min  sum_b <C_b, X_b>    s.t. sum_b <A_{i,b}, X_b> = rhs_i,
///                                       X_b >= 0
///   (D)  max  rhs . y             s.t. C_b - sum_i y_i A_{i,b} = Z_b >= 0
///
/// All matrices are real symmetric; complex Hermitian problems are
/// embedded as [[Re, -Im], [Im, Re]] blocks before reaching the solver.
struct SdpProblem {
  struct Entry {
    int row = 0, col = 0;
    double value = 0.0;
  };
  /// Sparse symmetric matrix: entries listed for BOTH (r,c) and (c,r)
  /// when r != c, once for the diagonal.
  using SparseSym = std::vector<Entry>;

  std::vector<int> block_sizes;
  std::vector<SparseSym> C;                  // per block
  std::vector<std::vector<SparseSym>> A;     // A[i][b]
  std::vector<double> rhs;                   // length m
  bool maximize = false;  // if true the reported objective is negated

  int num_constraints() const { return static_cast<int>(rhs.size()); }
  void validate() const;
};

enum class SdpStatus { optimal, max_iter, infeasible_detected, numerical_error };

struct SdpIterate {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double mu = 0.0;
  double primal_res = 0.0;   // ||rhs - A(X)|| / (1 + ||rhs||)
  double dual_res = 0.0;     // ||C - A^T y - Z||_F / (1 + ||C||_F)
  double y_dot_rp = 0.0;     // y . (rhs - A(X)), raw
  double rd_dot_x = 0.0;     // <C - A^T y - Z, X>, raw
};

struct SdpSolution {
  std::vector<Eigen::MatrixXd> X;  // primal blocks
  std::vector<Eigen::MatrixXd> Z;  // dual slack blocks
  Eigen::VectorXd y;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double rel_gap = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::numerical_error;
  std::vector<SdpIterate> trace;
  std::string message;
};

struct SdpOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  /// Divergence threshold for the infeasibility heuristic.
  double diverge = 1e12;
};

/// Primal-dual path-following interior point with Nesterov-Todd scaling
/// and a Mehrotra-style predictor-corrector.  Dependent constraint rows
/// are removed by a Gram-matrix presolve.  Deterministic.
SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts = {});

struct KktReport {
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;           // |pobj - dobj| / (1 + |pobj| + |dobj|)
  double min_eig_X = 0.0;
  double min_eig_Z = 0.0;
};

/// Recomputes feasibility residuals and the duality gap from scratch,
/// independent of the solver loop.
KktReport check_kkt(const SdpProblem& p, const SdpSolution& s);

/// JSON round trip (dense row-major block arrays); used for regression
/// fixtures and debugging.
std::string sdp_problem_to_json(const SdpProblem& p);
SdpProblem sdp_problem_from_json(const std::string& text);
std::string sdp_solution_to_json(const SdpSolution& s);

}  // namespace qsos
