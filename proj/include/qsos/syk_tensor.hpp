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

namespace qsos {

/// Totally antisymmetric rank-q coupling tensor with unit l2 norm over
/// the full tensor (all index orderings).  Only strictly increasing
/// tuples are stored.
class SykTensor {
 public:
  SykTensor(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  std::uint64_t seed() const { return seed_; }

  /// Number of stored independent entries, C(n, q).
  std::size_t entry_count() const { return coeffs_.size(); }

  /// Coefficient for a strictly increasing tuple (0-based indices).
  double at_sorted(const std::vector<int>& idx) const;

  /// Coefficient for an arbitrary tuple of distinct indices, including
  /// the antisymmetry sign; repeated indices give 0.
  double at(const std::vector<int>& idx) const;

  double& raw(std::size_t rank) { return coeffs_[rank]; }
  const std::vector<double>& raw() const { return coeffs_; }

  /// sqrt(sum of squares over the full antisymmetric tensor) = sqrt(q!)
  /// times the norm of the stored entries.
  double full_l2_norm() const;

  void set_seed(std::uint64_t s) { seed_ = s; }

  /// Rank of an increasing tuple in the combinatorial number system.
  std::size_t rank_of(const std::vector<int>& sorted_idx) const;

  /// Enumerates all increasing q-tuples in rank order via a callback.
  template <typename F>
  void for_each_tuple(F&& f) const {
    std::vector<int> idx(q_);
    for (int i = 0; i < q_; ++i) idx[i] = i;
    std::size_t r = 0;
    while (true) {
      f(idx, coeffs_[r]);
      ++r;
      int k = q_ - 1;
      while (k >= 0 && idx[k] == n_ - q_ + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < q_; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

 private:
  int n_, q_;
  std::uint64_t seed_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::vector<std::size_t>> binom_;  // binom_[k][m] = C(m, k+1)
};

/// Draws iid Gaussian couplings on increasing tuples and normalizes so
/// the full antisymmetric tensor has unit l2 norm.  Deterministic per
/// (n, q, seed).  Requires n, q even and q <= n.
SykTensor sample_syk(int n, int q, std::uint64_t seed);

/// Reshapes J into an n^p-by-n^{q-p} dense matrix J_{p,q-p} with rows
/// indexed by the first p indices.  Guarded against n^q > 1e8 entries.
Eigen::MatrixXd matricize(const SykTensor& J, int p);

/// Largest singular value by power iteration on A^T A (deterministic
/// seeded start).
double operator_norm(const Eigen::MatrixXd& A, int iters = 120,
                     std::uint64_t seed = 12345);

}  // namespace qsos
