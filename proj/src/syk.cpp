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

#include "qsos/syk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsos/models.hpp"
#include "qsos/rng.hpp"
#include "qsos/spectra.hpp"

namespace qsos {

GaussianState random_pure_gaussian(int n, std::uint64_t seed) {
  if (n % 2 != 0) throw std::invalid_argument("pure Gaussian state: n even");
  CounterRng rng(seed, 0x47415553);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd R = qr.householderQ();
  Eigen::MatrixXd T = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (T(i, i) < 0) R.col(i) *= -1.0;  // sign fix for Haar uniformity
  Eigen::MatrixXd B0 = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n / 2; ++j) {
    B0(2 * j, 2 * j + 1) = 1.0;
    B0(2 * j + 1, 2 * j) = -1.0;
  }
  return GaussianState{R * B0 * R.transpose()};
}

namespace {

template <typename Scalar>
Scalar pfaffian_impl(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A) {
  const Eigen::Index n = A.rows();
  if (n % 2 != 0) return Scalar(0);
  if (n == 0) return Scalar(1);
  Scalar result(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // pivot: largest |A(i,k)| for i > k
    Eigen::Index p = k + 1;
    for (Eigen::Index i = k + 2; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    if (p != k + 1) {
      A.row(k + 1).swap(A.row(p));
      A.col(k + 1).swap(A.col(p));
      result = -result;
    }
    Scalar piv = A(k + 1, k);
    if (piv == Scalar(0)) return Scalar(0);
    result *= -piv;  // Pf([[0, a],[-a, 0]]) = a with A(k, k+1) = a
    if (k + 2 < n) {
      auto tau = A.col(k).segment(k + 2, n - k - 2) / piv;
      for (Eigen::Index i = k + 2; i < n; ++i)
        for (Eigen::Index j = k + 2; j < n; ++j)
          A(i, j) += tau(i - k - 2) * A(j, k + 1) -
                     tau(j - k - 2) * A(i, k + 1);
    }
  }
  return result;
}

}  // namespace

double pfaffian(Eigen::MatrixXd A) {
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
  if (A.rows() % 2 != 0)
    throw std::invalid_argument("pfaffian: odd dimension");
  return pfaffian_impl<double>(std::move(A));
}

cplx pfaffian_complex(Eigen::MatrixXcd A) {
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
  if (A.rows() % 2 != 0)
    throw std::invalid_argument("pfaffian: odd dimension");
  return pfaffian_impl<cplx>(std::move(A));
}

cplx wick_expectation(const GaussianState& state,
                      const std::vector<int>& indices) {
  // Canonicalize: sort with sign, cancel equal adjacent pairs.
  std::vector<int> idx = indices;
  double sign = 1.0;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  std::vector<int> reduced;
  for (std::size_t i = 0; i < idx.size();) {
    if (i + 1 < idx.size() && idx[i] == idx[i + 1]) {
      i += 2;  // gamma^2 = 1
    } else {
      reduced.push_back(idx[i]);
      ++i;
    }
  }
  if (reduced.empty()) return sign;
  if (reduced.size() % 2 != 0) return 0.0;
  const int m = static_cast<int>(reduced.size());
  for (int i : reduced)
    if (i < 0 || i >= state.majoranas())
      throw std::invalid_argument("wick_expectation: index out of range");
  // Distinct sorted indices: <prod gamma> = Pf(M-minor), M = I + iB, and
  // the off-diagonal minor is i * (B-minor), so Pf = i^{m/2} Pf(B-minor).
  Eigen::MatrixXd Bm(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) Bm(a, b) = state.B(reduced[a], reduced[b]);
  double pf = pfaffian_impl<double>(std::move(Bm));
  cplx iphase(1.0);
  for (int h = 0; h < m / 2; ++h) iphase *= cplx(0, 1);
  return sign * iphase * pf;
}

cplx wick_pairing_sum(const GaussianState& state,
                      const std::vector<int>& indices) {
  if (indices.empty()) return 1.0;
  if (indices.size() % 2 != 0) return 0.0;
  auto M = [&](int a, int b) -> cplx {
    return (a == b ? cplx(1.0) : cplx(0.0)) +
           cplx(0, 1) * state.B(a, b);
  };
  // Pair the first element with each later one; the sign is (-1)^{gap}.
  std::function<cplx(const std::vector<int>&)> rec =
      [&](const std::vector<int>& list) -> cplx {
    if (list.empty()) return 1.0;
    cplx total = 0.0;
    for (std::size_t k = 1; k < list.size(); ++k) {
      std::vector<int> rest;
      for (std::size_t i = 1; i < list.size(); ++i)
        if (i != k) rest.push_back(list[i]);
      double sgn = (k % 2 == 1) ? 1.0 : -1.0;
      total += sgn * M(list[0], list[k]) * rec(rest);
    }
    return total;
  };
  return rec(indices);
}

double gaussian_energy(const GaussianState& state, const SykTensor& J) {
  if (J.q() != 4)
    throw std::invalid_argument("gaussian_energy: q = 4 required");
  const Eigen::MatrixXd& B = state.B;
  double energy = 0.0;
  J.for_each_tuple([&](const std::vector<int>& t, double c) {
    if (c == 0.0) return;
    // <g_i g_j g_k g_l> = -(B_ij B_kl - B_ik B_jl + B_il B_jk)
    double w = -(B(t[0], t[1]) * B(t[2], t[3]) -
                 B(t[0], t[2]) * B(t[1], t[3]) +
                 B(t[0], t[3]) * B(t[1], t[2]));
    energy += 24.0 * c * w;
  });
  return energy;
}

OperatorPolynomial gaussian_parent_hamiltonian(const GaussianState& state) {
  const int n = state.majoranas();
  OperatorPolynomial h(Algebra::majorana, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (state.B(a, b) != 0.0)
        h.add_term(MonoKey{(std::uint32_t)a, (std::uint32_t)b},
                   cplx(0, 1) * state.B(a, b));
  return h;
}

PairingGraph random_pairing_graph(int k, std::uint64_t seed) {
  CounterRng rng(seed, 0x50414952);
  std::vector<int> slots(4 * k);
  for (int i = 0; i < 4 * k; ++i) slots[i] = i;
  for (int i = 4 * k - 1; i > 0; --i)
    std::swap(slots[i], slots[rng.below(i + 1)]);
  PairingGraph g;
  g.vertices = k;
  for (int i = 0; i < 4 * k; i += 2)
    g.edges.push_back({slots[i] / 4, slots[i + 1] / 4, -1});
  return g;
}

PairingGraph euler_color(PairingGraph g) {
  const int n = g.vertices;
  std::vector<int> degree(n, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other, edge id)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    int u = g.edges[e].u, v = g.edges[e].v;
    degree[u] += (u == v) ? 2 : 1;
    degree[v] += (u == v) ? 0 : 1;
    adj[u].push_back({v, (int)e});
    if (u != v) adj[v].push_back({u, (int)e});
  }
  for (int v = 0; v < n; ++v)
    if (degree[v] != 4)
      throw std::invalid_argument("euler_color: graph is not 4-regular");

  std::vector<bool> used(g.edges.size(), false);
  std::vector<std::size_t> next(n, 0);
  for (int start = 0; start < n; ++start) {
    bool has_unused = false;
    for (auto [w, e] : adj[start])
      if (!used[e]) has_unused = true;
    if (!has_unused) continue;
    // Hierholzer: stack of (vertex, edge used to reach it); an edge is
    // appended to the circuit when its endpoint is fully explored.
    std::vector<std::pair<int, int>> stack = {{start, -1}};
    std::vector<int> circuit_edges;
    while (!stack.empty()) {
      auto [v, ein] = stack.back();
      while (next[v] < adj[v].size() && used[adj[v][next[v]].second])
        ++next[v];
      if (next[v] == adj[v].size()) {
        stack.pop_back();
        if (ein >= 0) circuit_edges.push_back(ein);
      } else {
        auto [w, e] = adj[v][next[v]];
        used[e] = true;
        stack.push_back({w, e});
      }
    }
    // Alternate colors along the circuit; component edge count is even
    // because every degree is 0 mod 4.
    int color = 0;
    for (int e : circuit_edges) {
      g.edges[e].color = color;
      color ^= 1;
    }
  }
  for (const auto& e : g.edges)
    if (e.color < 0) throw std::logic_error("euler_color: uncolored edge");
  return g;
}

bool coloring_balanced(const PairingGraph& g) {
  std::vector<std::array<int, 2>> cnt(g.vertices, {0, 0});
  for (const auto& e : g.edges) {
    if (e.color != 0 && e.color != 1) return false;
    cnt[e.u][e.color] += (e.u == e.v) ? 2 : 1;
    if (e.u != e.v) cnt[e.v][e.color] += 1;
  }
  for (const auto& c : cnt)
    if (c[0] != 2 || c[1] != 2) return false;
  return true;
}

bool balanced_coloring_exists(int vertices, int degree,
                              const std::vector<std::pair<int, int>>& edges) {
  const int m = static_cast<int>(edges.size());
  if (m > 24) throw std::invalid_argument("balanced_coloring_exists: too big");
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::vector<std::array<int, 2>> cnt(vertices, {0, 0});
    for (int e = 0; e < m; ++e) {
      int c = (mask >> e) & 1;
      auto [u, v] = edges[e];
      cnt[u][c] += (u == v) ? 2 : 1;
      if (u != v) cnt[v][c] += 1;
    }
    bool ok = true;
    for (int v = 0; v < vertices && ok; ++v)
      ok = cnt[v][0] == degree / 2 && cnt[v][1] == degree / 2;
    if (ok) return true;
  }
  return false;
}

namespace {

Eigen::VectorXcd pure_gaussian_wavefunction(const GaussianState& state) {
  OperatorPolynomial hb = gaussian_parent_hamiltonian(state);
  auto r = extremal_eigs(hb, Which::min);
  return r.min_vec;
}

}  // namespace

std::vector<MomentBoundRow> moment_bound_experiment(int n, int kmax,
                                                    int state_samples,
                                                    std::uint64_t seed) {
  if (n > 12 || kmax > 8)
    throw std::invalid_argument("moment_bound_experiment: n <= 12, k <= 8");
  auto H = build_hamiltonian(ModelSpec::syk(n, 4, seed));
  Eigen::MatrixXcd Hd = to_dense(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hd);
  double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  std::vector<MomentBoundRow> rows(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    rows[k].k = k;
    rows[k].lambda_max_pow = std::pow(lmax, k);
  }
  for (int s = 0; s < state_samples; ++s) {
    GaussianState st = random_pure_gaussian(n, seed * 7919 + s + 1);
    Eigen::VectorXcd psi = pure_gaussian_wavefunction(st);
    Eigen::VectorXcd v = psi;
    for (int k = 0; k <= kmax; ++k) {
      double mom = std::abs(psi.dot(v));
      rows[k].max_abs_moment = std::max(rows[k].max_abs_moment, mom);
      if (k < kmax) v = Hd * v;
    }
  }
  return rows;
}

LanczosTrajectory excitation_lanczos(int n, int steps, std::uint64_t seed) {
  if (n % 2 != 0 || n > 28)
    throw std::invalid_argument("excitation_lanczos: n even, n <= 28");
  auto H = build_hamiltonian(ModelSpec::syk(n, 4, seed));
  Eigen::SparseMatrix<cplx> Hs = to_sparse(H);
  const std::int64_t dim = Hs.rows();

  GaussianState st = random_pure_gaussian(n, seed + 17);
  Eigen::VectorXcd psi = pure_gaussian_wavefunction(st);

  // Stabilizer basis: real Schur form B = U T U^T with 2x2 blocks
  // [[0, b],[-b, 0]]; normalize signs so b = +1 for the pure state.
  Eigen::RealSchur<Eigen::MatrixXd> schur(st.B);
  Eigen::MatrixXd U = schur.matrixU();
  Eigen::MatrixXd T = schur.matrixT();
  OperatorPolynomial Nhat(Algebra::majorana, n);
  for (int j = 0; j < n / 2; ++j) {
    double bsign = T(2 * j, 2 * j + 1) >= 0 ? 1.0 : -1.0;
    // S_j = i gtil_{2j} gtil_{2j+1} with gtil_a = sum_b U(b, a) g_b;
    // the state has S_j = -1, so N = sum (1 + S_j)/2 annihilates it.
    OperatorPolynomial Sj(Algebra::majorana, n);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (b == c) continue;
        cplx coef = cplx(0, 1) * bsign * U(b, 2 * j) * U(c, 2 * j + 1);
        Sj += majorana_term(n, coef, {b, c});
      }
    Nhat += Sj * cplx(0.5);
    Nhat += OperatorPolynomial::identity(Algebra::majorana, n) * cplx(0.5);
  }
  Nhat.prune(1e-13);
  Eigen::SparseMatrix<cplx> Ns = to_sparse(Nhat);
  double n0 = std::real(psi.dot(Ns * psi));
  if (std::abs(n0) > 1e-6)
    throw std::runtime_error("excitation basis misaligned with the state");

  // lambda_max by converged Lanczos on H itself.
  double lmax;
  {
    auto r = extremal_eigs(H, Which::max);
    lmax = r.max_eig;
  }

  LanczosTrajectory out;
  out.lambda_max = lmax;
  const int nexc = n / 2;
  auto support_residual = [&](const Eigen::VectorXcd& v, int kstep) {
    // norm of the component with more than 4k excitations, via Lagrange
    // eigenfilters of the integer-spectrum operator Nhat
    int cutoff = std::min(4 * kstep, nexc);
    double sum2 = 0.0;
    for (int e = cutoff + 1; e <= nexc; ++e) {
      Eigen::VectorXcd u = v;
      for (int j = 0; j <= nexc; ++j) {
        if (j == e) continue;
        u = (Ns * u - cplx(j) * u) / cplx(e - j);
      }
      sum2 += u.squaredNorm();
    }
    return std::sqrt(sum2);
  };

  std::vector<Eigen::VectorXcd> V = {psi};
  std::vector<double> alpha, beta;
  out.ritz_max.push_back(std::real(psi.dot(Hs * psi)));
  out.ratio_to_max.push_back(out.ritz_max.back() / lmax);
  out.support_resid.push_back(support_residual(psi, 0));
  for (int k = 0; k < steps; ++k) {
    Eigen::VectorXcd w = Hs * V[k];
    double a = std::real(V[k].dot(w));
    alpha.push_back(a);
    w -= a * V[k];
    if (k > 0) w -= beta[k - 1] * V[k - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) w -= v.dot(w) * v;
    double b = w.norm();
    if (b < 1e-12) break;  // happy breakdown: converged subspace
    beta.push_back(b);
    V.push_back(w / b);
    const int m = static_cast<int>(V.size());
    Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m - 1; ++i) {
      Tm(i, i) = alpha[i];
      Tm(i, i + 1) = Tm(i + 1, i) = beta[i];
    }
    Tm(m - 1, m - 1) = std::real(V[m - 1].dot(Hs * V[m - 1]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> et(Tm,
                                                      Eigen::EigenvaluesOnly);
    out.ritz_max.push_back(et.eigenvalues()(m - 1));
    out.ratio_to_max.push_back(out.ritz_max.back() / lmax);
    out.support_resid.push_back(support_residual(V.back(), k + 1));
  }
  return out;
}

}  // namespace qsos
