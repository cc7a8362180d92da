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

#include "qsos/syk_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsos/rng.hpp"

namespace qsos {

SykTensor::SykTensor(int n, int q) : n_(n), q_(q) {
  if (n <= 0 || q <= 0 || q > n)
    throw std::invalid_argument("SykTensor requires 0 < q <= n");
  // binom_[k][m] = C(m, k+1) for the combinatorial ranking.
  binom_.assign(q, std::vector<std::size_t>(n + 1, 0));
  for (int m = 0; m <= n; ++m) {
    std::size_t prev = m;  // C(m,1)
    if (q >= 1) binom_[0][m] = m;
    for (int k = 1; k < q; ++k) {
      // C(m, k+1) = C(m-1, k+1) + C(m-1, k)
      binom_[k][m] =
          (m == 0) ? 0 : binom_[k][m - 1] + binom_[k - 1][m - 1];
    }
    (void)prev;
  }
  std::size_t count = 1;
  for (int i = 0; i < q; ++i) count = count * (n - i) / (i + 1);
  coeffs_.assign(count, 0.0);
}

std::size_t SykTensor::rank_of(const std::vector<int>& idx) const {
  std::size_t r = 0;
  for (int k = 0; k < q_; ++k) r += binom_[k][idx[k]];
  return r;
}

double SykTensor::at_sorted(const std::vector<int>& idx) const {
  return coeffs_[rank_of(idx)];
}

double SykTensor::at(const std::vector<int>& idx) const {
  std::vector<int> s = idx;
  // Sort with sign, rejecting repeats.
  double sign = 1.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (std::size_t j = i; j > 0 && s[j] < s[j - 1]; --j) {
      std::swap(s[j], s[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) return 0.0;
  return sign * at_sorted(s);
}

double SykTensor::full_l2_norm() const {
  double s2 = 0.0;
  for (double c : coeffs_) s2 += c * c;
  double qfact = 1.0;
  for (int i = 2; i <= q_; ++i) qfact *= i;
  return std::sqrt(qfact * s2);
}

SykTensor sample_syk(int n, int q, std::uint64_t seed) {
  if (n % 2 != 0 || q % 2 != 0)
    throw std::invalid_argument("sample_syk requires n, q even");
  SykTensor J(n, q);
  J.set_seed(seed);
  CounterRng rng(seed, 0x53594b);
  for (std::size_t r = 0; r < J.entry_count(); ++r) J.raw(r) = rng.normal();
  double norm = J.full_l2_norm();
  if (norm == 0.0) throw std::runtime_error("degenerate SYK sample");
  for (std::size_t r = 0; r < J.entry_count(); ++r) J.raw(r) /= norm;
  return J;
}

Eigen::MatrixXd matricize(const SykTensor& J, int p) {
  const int n = J.n(), q = J.q();
  if (p < 0 || p > q) throw std::invalid_argument("matricize: 0 <= p <= q");
  double cells = std::pow((double)n, (double)q);
  if (cells > 1e8) throw std::invalid_argument("matricize: n^q too large");
  Eigen::Index rows = 1, cols = 1;
  for (int i = 0; i < p; ++i) rows *= n;
  for (int i = 0; i < q - p; ++i) cols *= n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
  // Scatter every permutation of every stored tuple.
  std::vector<int> perm(q);
  J.for_each_tuple([&](const std::vector<int>& idx, double c) {
    if (c == 0.0) return;
    for (int i = 0; i < q; ++i) perm[i] = idx[i];
    std::sort(perm.begin(), perm.end());
    // iterate permutations with sign
    double sign = 1.0;
    std::vector<int> work = perm;
    // Heap's algorithm with parity tracking would do; simpler: iterate
    // std::next_permutation over the sorted tuple and recompute sign by
    // inversion count (q is tiny).
    do {
      long inv = 0;
      for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
          if (work[a] > work[b]) ++inv;
      sign = (inv % 2 == 0) ? 1.0 : -1.0;
      Eigen::Index r = 0, cidx = 0;
      for (int i = 0; i < p; ++i) r = r * n + work[i];
      for (int i = p; i < q; ++i) cidx = cidx * n + work[i];
      M(r, cidx) = sign * c;
    } while (std::next_permutation(work.begin(), work.end()));
  });
  return M;
}

double operator_norm(const Eigen::MatrixXd& A, int iters, std::uint64_t seed) {
  // Power iteration on A^T A applied as x -> A^T (A x).
  const Eigen::Index ncols = A.cols();
  CounterRng rng(seed, 0x4e4f524d);
  Eigen::VectorXd x(ncols);
  for (Eigen::Index i = 0; i < ncols; ++i) x[i] = rng.normal();
  x.normalize();
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd y = A.transpose() * (A * x);
    double nrm = y.norm();
    if (nrm == 0.0) return 0.0;
    x = y / nrm;
    lam = nrm;
  }
  return std::sqrt(lam);
}

}  // namespace qsos
