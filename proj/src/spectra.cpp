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

#include "qsos/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsos/rng.hpp"

namespace qsos {

namespace {

constexpr std::int64_t kDenseDimCap = 1 << 14;
constexpr std::int64_t kDenseSolveDim = 2048;

// Action of one canonical monomial on basis state b: returns the target
// state and accumulates the phase; returns -1 if annihilated.
std::int64_t monomial_action(Algebra alg, const MonoKey& key,
                             std::int64_t b, cplx* phase) {
  cplx ph = 1.0;
  std::int64_t s = b;
  switch (alg) {
    case Algebra::pauli: {
      for (auto e : key) {
        int site = static_cast<int>(e >> 2), letter = e & 3;
        std::int64_t bit = (s >> site) & 1;
        switch (letter) {
          case 1:  // X
            s ^= (std::int64_t{1} << site);
            break;
          case 2:  // Y: |b> -> i(-1)^b |1-b>
            ph *= bit ? cplx{0, -1} : cplx{0, 1};
            s ^= (std::int64_t{1} << site);
            break;
          case 3:  // Z
            if (bit) ph = -ph;
            break;
        }
      }
      break;
    }
    case Algebra::fermion: {
      // Apply rightmost operator first.
      for (auto it = key.rbegin(); it != key.rend(); ++it) {
        int a = static_cast<int>(*it >> 1);
        bool annihilate = (*it & 1) != 0;
        std::int64_t bit = (s >> a) & 1;
        if (annihilate != (bit == 1)) return -1;
        std::int64_t prefix = s & ((std::int64_t{1} << a) - 1);
        if (__builtin_popcountll(prefix) & 1) ph = -ph;
        s ^= (std::int64_t{1} << a);
      }
      break;
    }
    case Algebra::majorana: {
      for (auto it = key.rbegin(); it != key.rend(); ++it) {
        int g = static_cast<int>(*it);
        int a = g >> 1;
        std::int64_t bit = (s >> a) & 1;
        std::int64_t prefix = s & ((std::int64_t{1} << a) - 1);
        if (__builtin_popcountll(prefix) & 1) ph = -ph;
        if (g & 1) ph *= bit ? cplx{0, -1} : cplx{0, 1};
        s ^= (std::int64_t{1} << a);
      }
      break;
    }
  }
  *phase *= ph;
  return s;
}

struct LanczosOut {
  double eig_min, eig_max;
  Eigen::VectorXcd vec_min, vec_max;
};

LanczosOut lanczos_extremal(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& Hx,
    std::int64_t dim, int max_iter, double tol) {
  CounterRng rng(0xED, 0x4c414e);
  Eigen::VectorXcd v0(dim);
  for (std::int64_t i = 0; i < dim; ++i)
    v0[i] = cplx(rng.normal(), rng.normal());
  v0.normalize();

  std::vector<Eigen::VectorXcd> V;
  std::vector<double> alpha, beta;
  V.push_back(v0);
  Eigen::VectorXcd w;
  int m = 0;
  double prev_min = 1e300, prev_max = -1e300;
  for (int k = 0; k < max_iter; ++k) {
    w = Hx(V[k]);
    double a = std::real(V[k].dot(w));
    alpha.push_back(a);
    w -= a * V[k];
    if (k > 0) w -= beta[k - 1] * V[k - 1];
    // Full reorthogonalization (twice for safety).
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) w -= v.dot(w) * v;
    double b = w.norm();
    m = k + 1;
    // Convergence check on the tridiagonal Ritz values.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) {
      T(i, i + 1) = beta.size() > (std::size_t)i ? beta[i] : 0.0;
      T(i + 1, i) = T(i, i + 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    double lo = es.eigenvalues()(0), hi = es.eigenvalues()(m - 1);
    bool stagnant = std::abs(lo - prev_min) < tol * (1 + std::abs(lo)) &&
                    std::abs(hi - prev_max) < tol * (1 + std::abs(hi));
    prev_min = lo;
    prev_max = hi;
    if (b < 1e-12 || k == max_iter - 1 || (k > 8 && stagnant) ||
        m >= dim) {
      LanczosOut out;
      out.eig_min = lo;
      out.eig_max = hi;
      out.vec_min = Eigen::VectorXcd::Zero(dim);
      out.vec_max = Eigen::VectorXcd::Zero(dim);
      for (int i = 0; i < m; ++i) {
        out.vec_min += es.eigenvectors()(i, 0) * V[i];
        out.vec_max += es.eigenvectors()(i, m - 1) * V[i];
      }
      out.vec_min.normalize();
      out.vec_max.normalize();
      return out;
    }
    beta.push_back(b);
    V.push_back(w / b);
  }
  throw std::runtime_error("lanczos failed to converge");
}

}  // namespace

int dense_qubits(const OperatorPolynomial& p) {
  switch (p.algebra()) {
    case Algebra::pauli:
    case Algebra::fermion:
      return p.sites();
    case Algebra::majorana:
      if (p.sites() % 2 != 0)
        throw std::invalid_argument("odd Majorana count is not representable");
      return p.sites() / 2;
  }
  return 0;
}

std::int64_t dense_dim(const OperatorPolynomial& p) {
  return std::int64_t{1} << dense_qubits(p);
}

Eigen::MatrixXcd to_dense(const OperatorPolynomial& p) {
  int nq = dense_qubits(p);
  if (nq > 14) throw std::invalid_argument("to_dense: size cap exceeded");
  std::int64_t dim = std::int64_t{1} << nq;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coeff] : p.terms()) {
    for (std::int64_t b = 0; b < dim; ++b) {
      cplx ph = 1.0;
      std::int64_t r = monomial_action(p.algebra(), key, b, &ph);
      if (r >= 0) M(r, b) += coeff * ph;
    }
  }
  return M;
}

Eigen::SparseMatrix<cplx> to_sparse(const OperatorPolynomial& p) {
  int nq = dense_qubits(p);
  if (nq > 14) throw std::invalid_argument("to_sparse: size cap exceeded");
  std::int64_t dim = std::int64_t{1} << nq;
  std::vector<Eigen::Triplet<cplx>> trips;
  // Group terms by flip mask so each (row,col) pair appears once.
  std::map<std::int64_t, std::vector<const std::pair<const MonoKey, cplx>*>>
      groups;
  for (const auto& term : p.terms()) {
    cplx ph = 1.0;
    std::int64_t r = monomial_action(p.algebra(), term.first, 0, &ph);
    std::int64_t mask = r >= 0 ? r : -1;
    if (mask < 0) {
      // Annihilates |0..0>; the flip mask is still well defined from the
      // occupation changes; recover it from any surviving state later.
      // Use the key structure directly instead.
      std::int64_t m2 = 0;
      for (auto e : term.first) {
        int a;
        if (p.algebra() == Algebra::fermion)
          a = static_cast<int>(e >> 1);
        else if (p.algebra() == Algebra::majorana)
          a = static_cast<int>(e >> 1);
        else
          a = static_cast<int>(e >> 2);
        if (p.algebra() == Algebra::pauli) {
          if ((e & 3) != 3) m2 ^= (std::int64_t{1} << a);
        } else {
          m2 ^= (std::int64_t{1} << a);
        }
      }
      mask = m2;
    }
    groups[mask].push_back(&term);
  }
  std::vector<cplx> col(dim);
  for (const auto& [mask, terms] : groups) {
    std::fill(col.begin(), col.end(), cplx{0.0});
    for (const auto* t : terms) {
      for (std::int64_t b = 0; b < dim; ++b) {
        cplx ph = 1.0;
        std::int64_t r = monomial_action(p.algebra(), t->first, b, &ph);
        if (r >= 0) col[b] += t->second * ph;
      }
    }
    for (std::int64_t b = 0; b < dim; ++b)
      if (col[b] != cplx{0.0}) trips.emplace_back(b ^ mask, b, col[b]);
  }
  Eigen::SparseMatrix<cplx> S(dim, dim);
  S.setFromTriplets(trips.begin(), trips.end());
  return S;
}

Eigen::VectorXcd apply_polynomial(const OperatorPolynomial& p,
                                  const Eigen::VectorXcd& x) {
  std::int64_t dim = dense_dim(p);
  if (x.size() != dim) throw std::invalid_argument("apply: dim mismatch");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
  for (const auto& [key, coeff] : p.terms()) {
    for (std::int64_t b = 0; b < dim; ++b) {
      if (x[b] == cplx{0.0}) continue;
      cplx ph = 1.0;
      std::int64_t r = monomial_action(p.algebra(), key, b, &ph);
      if (r >= 0) y[r] += coeff * ph * x[b];
    }
  }
  return y;
}

cplx expectation(const OperatorPolynomial& p, const Eigen::VectorXcd& state) {
  if (state.size() != dense_dim(p))
    throw std::invalid_argument("expectation: dimension mismatch");
  return state.dot(apply_polynomial(p, state));
}

SpectralResult extremal_eigs(const OperatorPolynomial& p, Which which) {
  if (!p.is_hermitian(1e-10))
    throw std::invalid_argument("extremal_eigs: non-Hermitian input");
  std::int64_t dim = dense_dim(p);
  SpectralResult out;
  if (p.empty()) {
    out.min_vec = Eigen::VectorXcd::Zero(dim);
    out.max_vec = Eigen::VectorXcd::Zero(dim);
    if (dim > 0) {
      out.min_vec[0] = 1.0;
      out.max_vec[0] = 1.0;
    }
    return out;
  }
  if (dim <= kDenseSolveDim) {
    Eigen::MatrixXcd H = to_dense(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    out.min_eig = es.eigenvalues()(0);
    out.max_eig = es.eigenvalues()(dim - 1);
    out.min_vec = es.eigenvectors().col(0);
    out.max_vec = es.eigenvectors().col(dim - 1);
    out.min_residual = (H * out.min_vec - out.min_eig * out.min_vec).norm();
    out.max_residual = (H * out.max_vec - out.max_eig * out.max_vec).norm();
  } else {
    if (dim > kDenseDimCap)
      throw std::invalid_argument("extremal_eigs: size cap exceeded");
    Eigen::SparseMatrix<cplx> S = to_sparse(p);
    auto Hx = [&S](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
      return S * x;
    };
    LanczosOut lo = lanczos_extremal(Hx, dim, 400, 1e-10);
    out.min_eig = lo.eig_min;
    out.max_eig = lo.eig_max;
    out.min_vec = lo.vec_min;
    out.max_vec = lo.vec_max;
    out.min_residual = (S * out.min_vec - out.min_eig * out.min_vec).norm();
    out.max_residual = (S * out.max_vec - out.max_eig * out.max_vec).norm();
  }
  (void)which;
  return out;
}

double ground_energy(const OperatorPolynomial& p) {
  return extremal_eigs(p, Which::min).min_eig;
}

PerturbationFit perturbation_fit(
    const std::function<OperatorPolynomial(double)>& family,
    const std::vector<double>& eps_grid, int order) {
  // Degeneracy guard on the unperturbed model.
  {
    OperatorPolynomial h0 = family(0.0);
    Eigen::MatrixXcd H = to_dense(h0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-8)
      throw std::invalid_argument(
          "perturbation_fit: degenerate unperturbed ground state");
  }
  const int npts = static_cast<int>(eps_grid.size());
  Eigen::MatrixXd A(npts, order + 1);
  Eigen::VectorXd y(npts);
  for (int i = 0; i < npts; ++i) {
    double e = eps_grid[i];
    double pw = 1.0;
    for (int j = 0; j <= order; ++j) {
      A(i, j) = pw;
      pw *= e;
    }
    y(i) = ground_energy(family(e));
  }
  PerturbationFit fit;
  fit.coeffs = A.colPivHouseholderQr().solve(y);
  fit.residual = std::sqrt((A * fit.coeffs - y).squaredNorm() / npts);
  return fit;
}

}  // namespace qsos
