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

#include "qsos/afqmc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsos/rng.hpp"
#include "qsos/sos_moment.hpp"
#include "qsos/spectra.hpp"

namespace qsos {

namespace {

// Parity-ordered basis indices of the 2^n Fock space.
void parity_split(int qubits, std::vector<int>* even, std::vector<int>* odd) {
  for (int b = 0; b < (1 << qubits); ++b)
    (__builtin_popcount((unsigned)b) % 2 == 0 ? even : odd)->push_back(b);
}

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& M,
                           const std::vector<int>& idx) {
  Eigen::MatrixXcd S(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) S(a, b) = M(idx[a], idx[b]);
  return S;
}

double offblock_norm(const Eigen::MatrixXcd& M, const std::vector<int>& even,
                     const std::vector<int>& odd) {
  double mx = 0.0;
  for (int a : even)
    for (int b : odd)
      mx = std::max({mx, std::abs(M(a, b)), std::abs(M(b, a))});
  return mx;
}

}  // namespace

HsDecomposition decompose(const OperatorPolynomial& H, DecomposeVia via) {
  if (H.algebra() != Algebra::fermion && H.algebra() != Algebra::majorana)
    throw std::invalid_argument("decompose: fermionic Hamiltonian required");
  OperatorPolynomial Hm =
      H.algebra() == Algebra::fermion ? to_majorana(H) : H;
  const int modes = Hm.sites() / 2;

  HsDecomposition d;
  d.modes = modes;
  d.Q = OperatorPolynomial(Algebra::majorana, Hm.sites());

  if (via == DecomposeVia::manual) {
    // H itself must already be PSD and quadratic; it becomes Q whole
    // (constant included) with lambda = 0.
    if (Hm.degree() > 2)
      throw std::invalid_argument("manual decomposition: H is not quadratic");
    auto eigs = extremal_eigs(Hm, Which::min);
    if (eigs.min_eig < -1e-9)
      throw std::invalid_argument("manual decomposition: Q is not PSD");
    d.Q = Hm;
    d.lambda = 0.0;
    return d;
  }

  if (Hm.degree() > 4)
    throw std::invalid_argument("decompose: quartic Hamiltonians only");
  auto lb = lower_bound(Hm, 2, SosMode::hermitian_restricted, {},
                        /*even_parity_only=*/true);
  if (lb.solution.status != SdpStatus::optimal)
    throw std::runtime_error("decompose: restricted SDP did not converge");
  auto cert = extract_certificate(lb.problem, lb.solution);
  d.lambda = cert.bound;
  // Keep squares from the largest weight down, dropping the smallest
  // tail whose total re-expansion cost fits the residual budget; the
  // interior-point Gram is maximum rank and carries many tiny terms.
  std::vector<std::size_t> order(cert.weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cert.weights[a] > cert.weights[b];
  });
  std::vector<double> cost(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t i = order[k];
    OperatorPolynomial sq =
        multiply(adjoint(cert.squares[i]), cert.squares[i]);
    cost[k] = cert.weights[i] * sq.norm_l1();
  }
  double budget = 2e-7 * std::max(1.0, Hm.norm_l1());
  std::size_t keep = order.size();
  double tail = 0.0;
  while (keep > 1 && tail + cost[keep - 1] <= budget) {
    tail += cost[keep - 1];
    --keep;
  }
  for (std::size_t k = 0; k < keep; ++k) {
    d.weights.push_back(cert.weights[order[k]]);
    d.ops.push_back(cert.squares[order[k]]);
  }
  double resid = decomposition_residual(H, d);
  if (resid > 1e-6 * std::max(1.0, Hm.norm_l1()))
    throw std::runtime_error("decompose: residual exceeds tolerance");
  return d;
}

double decomposition_residual(const OperatorPolynomial& H,
                              const HsDecomposition& d) {
  OperatorPolynomial Hm =
      H.algebra() == Algebra::fermion ? to_majorana(H) : H;
  OperatorPolynomial acc = d.Q;
  acc += OperatorPolynomial::identity(Algebra::majorana, Hm.sites()) *
         cplx(d.lambda);
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    OperatorPolynomial sq = multiply(d.ops[i], d.ops[i]);
    sq *= d.weights[i];
    acc += sq;
  }
  return (Hm - acc).norm_l1();
}

HsPropagator::HsPropagator(const HsDecomposition& d, double tau) : tau_(tau) {
  const int qubits = d.modes;
  if (qubits > 6)
    throw std::invalid_argument("HsPropagator: n <= 6 modes (dense space)");
  dim_ = std::int64_t{1} << qubits;
  parity_split(qubits, &even_idx_, &odd_idx_);

  auto dense_blocks = [&](const OperatorPolynomial& op, Eigen::MatrixXcd* ev,
                          Eigen::MatrixXcd* od) {
    Eigen::MatrixXcd M = to_dense(op);
    if (offblock_norm(M, even_idx_, odd_idx_) > 1e-10)
      throw std::invalid_argument("HsPropagator: operator mixes parity");
    *ev = submatrix(M, even_idx_);
    *od = submatrix(M, odd_idx_);
  };

  // exp(-tau Q / 2) halves
  {
    Eigen::MatrixXcd Qe, Qo;
    if (d.Q.empty()) {
      Qe = Eigen::MatrixXcd::Zero(even_idx_.size(), even_idx_.size());
      Qo = Eigen::MatrixXcd::Zero(odd_idx_.size(), odd_idx_.size());
    } else {
      dense_blocks(d.Q, &Qe, &Qo);
    }
    auto mexp = [&](const Eigen::MatrixXcd& M) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
      Eigen::VectorXd lam = es.eigenvalues();
      Eigen::VectorXcd f(lam.size());
      for (int i = 0; i < lam.size(); ++i)
        f[i] = std::exp(-0.5 * tau_ * lam[i]);
      return Eigen::MatrixXcd(es.eigenvectors() * f.asDiagonal() *
                              es.eigenvectors().adjoint());
    };
    expQ_even_ = mexp(Qe);
    expQ_odd_ = mexp(Qo);
  }

  num_ops_ = static_cast<int>(d.ops.size());
  op_vals_.assign(2, {});
  op_vecs_.assign(2, {});
  for (std::size_t a = 0; a < d.ops.size(); ++a) {
    Eigen::MatrixXcd Me, Mo;
    OperatorPolynomial scaled = d.ops[a];
    scaled *= cplx(std::sqrt(d.weights[a]));
    dense_blocks(scaled, &Me, &Mo);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ee(Me), eo(Mo);
    op_vecs_[0].push_back(ee.eigenvectors());
    op_vals_[0].push_back(ee.eigenvalues());
    op_vecs_[1].push_back(eo.eigenvectors());
    op_vals_[1].push_back(eo.eigenvalues());
  }
  // Palindromic op sequence within a slice, in application order
  // (rightmost factor first): a = 0..A-1 then A-1..0.
  const int A = num_ops_;
  std::vector<int> seq;
  for (int t = 0; t < A; ++t) seq.push_back(t);
  for (int t = A - 1; t >= 0; --t) seq.push_back(t);
  blocks_.resize(2);
  for (int par = 0; par < 2; ++par) {
    Block blk;
    const Eigen::MatrixXcd& expQ = par == 0 ? expQ_even_ : expQ_odd_;
    if (A == 0) {
      blk.Lcap = expQ * expQ;
      blocks_[par] = std::move(blk);
      continue;
    }
    // slice = expQ V_{seq.back} D .. (V_b^dag V_a) .. D V_{seq.front}^dag
    //         expQ
    blk.Rcap = op_vecs_[par][seq.front()].adjoint() * expQ;
    blk.Lcap = expQ * op_vecs_[par][seq.back()];
    for (std::size_t t = 0; t + 1 < seq.size(); ++t)
      blk.transfer.push_back(op_vecs_[par][seq[t + 1]].adjoint() *
                             op_vecs_[par][seq[t]]);
    for (std::size_t t = 0; t < seq.size(); ++t)
      blk.vals.push_back(&op_vals_[par][seq[t]]);
    blocks_[par] = std::move(blk);
  }
}

template <int K>
cplx HsPropagator::weight_fixed(const std::vector<double>& fields,
                                int slices,
                                std::vector<double>* magnitudes) const {
  using Mat = Eigen::Matrix<cplx, K, K>;
  using Vec = Eigen::Matrix<cplx, K, 1>;
  const int A = num_ops_;
  const double sfield = std::sqrt(tau_);
  cplx total = 0.0;
  for (int par = 0; par < 2; ++par) {
    const Block& blk = blocks_[par];
    const Eigen::Index k =
        par == 0 ? (Eigen::Index)even_idx_.size()
                 : (Eigen::Index)odd_idx_.size();
    Mat buf0 = Mat::Identity(k, k), buf1(k, k);
    Mat* cur = &buf0;
    Mat* alt = &buf1;
    Vec ph(k);
    std::size_t f = 0;
    for (int s = 0; s < slices; ++s) {
      if (A == 0) {
        alt->noalias() = blk.Lcap * (*cur);
        std::swap(cur, alt);
      } else {
        alt->noalias() = blk.Rcap * (*cur);
        std::swap(cur, alt);
        for (int t = 0; t < 2 * A; ++t) {
          double phi = sfield * fields[f++];
          const Eigen::VectorXd& lam = *blk.vals[t];
          for (Eigen::Index i = 0; i < k; ++i)
            ph[i] = cplx(std::cos(phi * lam[i]), std::sin(phi * lam[i]));
          cur->array().colwise() *= ph.array();
          if (t < 2 * A - 1) {
            alt->noalias() = blk.transfer[t] * (*cur);
            std::swap(cur, alt);
          }
        }
        alt->noalias() = blk.Lcap * (*cur);
        std::swap(cur, alt);
      }
      if (magnitudes) {
        Eigen::MatrixXcd Pd = *cur;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Pd);
        (*magnitudes)[s] += svd.singularValues().sum();
      }
    }
    total += cur->trace();
  }
  return total;
}

cplx HsPropagator::weight(const std::vector<double>& fields, int slices,
                          std::vector<double>* magnitudes) const {
  const int A = num_ops_;
  if (static_cast<int>(fields.size()) != 2 * A * slices)
    throw std::invalid_argument("HsPropagator: field count mismatch");
  if (magnitudes) magnitudes->assign(slices, 0.0);
  const std::size_t k = even_idx_.size();
  if (k == odd_idx_.size()) {
    switch (k) {
      case 2: return weight_fixed<2>(fields, slices, magnitudes);
      case 4: return weight_fixed<4>(fields, slices, magnitudes);
      case 8: return weight_fixed<8>(fields, slices, magnitudes);
      case 16: return weight_fixed<16>(fields, slices, magnitudes);
      case 32: return weight_fixed<32>(fields, slices, magnitudes);
      default: break;
    }
  }
  return weight_fixed<Eigen::Dynamic>(fields, slices, magnitudes);
}

std::vector<cplx> HsPropagator::weight_batch(const std::vector<double>& fields,
                                             int slices, int batch) const {
  const int A = num_ops_;
  const long per_traj = 2L * A * slices;
  if (static_cast<long>(fields.size()) != per_traj * batch)
    throw std::invalid_argument("weight_batch: field count mismatch");
  const double sfield = std::sqrt(tau_);
  std::vector<cplx> out(batch, cplx{0.0, 0.0});
  using Mat = Eigen::MatrixXd;
  for (int par = 0; par < 2; ++par) {
    const Block& blk = blocks_[par];
    const Eigen::Index k =
        par == 0 ? (Eigen::Index)even_idx_.size()
                 : (Eigen::Index)odd_idx_.size();
    // planar split of caps and transfers
    auto re = [](const Eigen::MatrixXcd& M) { return Mat(M.real()); };
    auto im = [](const Eigen::MatrixXcd& M) { return Mat(M.imag()); };
    Mat Pr = Mat::Zero(k, k * batch), Pi = Mat::Zero(k, k * batch);
    for (int b = 0; b < batch; ++b)
      Pr.block(0, b * k, k, k).setIdentity();
    Mat Tr_buf(k, k * batch), Ti_buf(k, k * batch);
    auto gemm = [&](const Mat& Ar, const Mat& Ai) {
      Tr_buf.noalias() = Ar * Pr;
      Tr_buf.noalias() -= Ai * Pi;
      Ti_buf.noalias() = Ar * Pi;
      Ti_buf.noalias() += Ai * Pr;
      Pr.swap(Tr_buf);
      Pi.swap(Ti_buf);
    };
    Mat Lr = re(blk.Lcap), Li = im(blk.Lcap);
    Mat Rr(0, 0), Ri(0, 0);
    std::vector<Mat> Trf, Tif;
    if (A > 0) {
      Rr = re(blk.Rcap);
      Ri = im(blk.Rcap);
      for (const auto& T : blk.transfer) {
        Trf.push_back(re(T));
        Tif.push_back(im(T));
      }
    }
    // Identity transfers (the palindrome turn, and slice boundaries when
    // exp(-tau Q) is trivial) are skipped outright.
    std::vector<bool> transfer_id;
    for (const auto& T : blk.transfer)
      transfer_id.push_back(
          (Eigen::MatrixXcd(T) -
           Eigen::MatrixXcd::Identity(T.rows(), T.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    bool boundary_id = false;
    Mat Br(0, 0), Bi(0, 0);
    if (A > 0) {
      Eigen::MatrixXcd bnd = blk.Rcap * blk.Lcap;
      boundary_id =
          (bnd - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() <
          1e-14;
      Br = re(bnd);
      Bi = im(bnd);
    }
    Eigen::VectorXd cv(k), sv(k);
    for (int s = 0; s < slices; ++s) {
      if (A == 0) {
        gemm(Lr, Li);
        continue;
      }
      if (s == 0) {
        gemm(Rr, Ri);
      } else if (!boundary_id) {
        gemm(Br, Bi);  // fused Rcap * Lcap across the slice boundary
      }
      for (int t = 0; t < 2 * A; ++t) {
        const Eigen::VectorXd& lam = *blk.vals[t];
        for (int b = 0; b < batch; ++b) {
          double phi =
              sfield * fields[(std::size_t)b * per_traj +
                              (std::size_t)s * 2 * A + t];
          for (Eigen::Index i = 0; i < k; ++i) {
            cv[i] = std::cos(phi * lam[i]);
            sv[i] = std::sin(phi * lam[i]);
          }
          for (Eigen::Index j = 0; j < k; ++j) {
            double* pr = Pr.col(b * k + j).data();
            double* pi = Pi.col(b * k + j).data();
            for (Eigen::Index i = 0; i < k; ++i) {
              double xr = pr[i], xi = pi[i];
              pr[i] = cv[i] * xr - sv[i] * xi;
              pi[i] = sv[i] * xr + cv[i] * xi;
            }
          }
        }
        if (t < 2 * A - 1 && !transfer_id[t]) gemm(Trf[t], Tif[t]);
      }
      if (s == slices - 1) gemm(Lr, Li);
    }
    for (int b = 0; b < batch; ++b) {
      cplx tr = 0.0;
      for (Eigen::Index i = 0; i < k; ++i)
        tr += cplx(Pr(i, b * k + i), Pi(i, b * k + i));
      out[b] += tr;
    }
  }
  return out;
}

cplx HsPropagator::quadrature_weight(int slices, int nodes) const {
  if (num_ops_ != 1)
    throw std::invalid_argument("quadrature_weight: one operator only");
  // Gauss-Hermite nodes/weights via the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int i = 0; i + 1 < nodes; ++i)
    J(i, i + 1) = J(i + 1, i) = std::sqrt(0.5 * (i + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Eigen::VectorXd x = es.eigenvalues();
  Eigen::VectorXd w(nodes);
  const double sqrtpi = 1.7724538509055160273;
  for (int i = 0; i < nodes; ++i) {
    double v0 = es.eigenvectors()(0, i);
    w[i] = v0 * v0;  // already normalized: sum w = 1 (weights / sqrt(pi))
  }
  (void)sqrtpi;
  cplx total = 0.0;
  for (int par = 0; par < 2; ++par) {
    const Eigen::MatrixXcd& expQ = par == 0 ? expQ_even_ : expQ_odd_;
    const Eigen::MatrixXcd& V = op_vecs_[par][0];
    const Eigen::VectorXd& lam = op_vals_[par][0];
    const Eigen::Index k = expQ.rows();
    // E[exp(i phi Q_a)] over one full slice: phi = 2 sqrt(tau') xk with
    // tau' = tau (weight already folded into lam), fields ~ N(0, 2 tau)
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 0; i < nodes; ++i) {
      Eigen::VectorXcd ph(k);
      for (Eigen::Index j = 0; j < k; ++j)
        ph[j] = std::exp(cplx(0.0, 2.0 * std::sqrt(tau_) * x[i] * lam[j]));
      K += w[i] * Eigen::MatrixXcd(V * ph.asDiagonal() * V.adjoint());
    }
    Eigen::MatrixXcd M = expQ * K * expQ;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(k, k);
    for (int s = 0; s < slices; ++s) P = M * P;
    total += P.trace();
  }
  return total;
}

SignDecayResult sign_decay(const HsDecomposition& d, double beta, double tau,
                           long samples, std::uint64_t seed, int threads) {
  HsPropagator prop(d, tau);
  int slices = static_cast<int>(std::llround(beta / tau));
  if (slices < 1 || std::abs(slices * tau - beta) > 1e-9 * beta)
    throw std::invalid_argument("sign_decay: beta must be a multiple of tau");
  const int fps = prop.fields_per_slice();
  const long chunk = 256;
  const long nchunks = (samples + chunk - 1) / chunk;

  struct Acc {
    cplx sum{0, 0};
    double sumabs = 0, sumsq = 0;
    long count = 0;
  };
  std::vector<Acc> per_chunk(nchunks);
  std::atomic<long> next_chunk{0};
  auto worker = [&]() {
    while (true) {
      long c = next_chunk.fetch_add(1);
      if (c >= nchunks) break;
      CounterRng rng(seed, 0xAF000000ull + static_cast<std::uint64_t>(c));
      Acc acc;
      long lo = c * chunk, hi = std::min(samples, (c + 1) * chunk);
      int nt = static_cast<int>(hi - lo);
      std::vector<double> fields(static_cast<std::size_t>(fps) * slices * nt);
      for (auto& x : fields) x = rng.normal();
      auto ws = prop.weight_batch(fields, slices, nt);
      for (cplx w : ws) {
        acc.sum += w;
        acc.sumabs += std::abs(w);
        acc.sumsq += w.real() * w.real();
        ++acc.count;
      }
      per_chunk[c] = acc;
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::max(1, threads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  cplx sum{0, 0};
  double sumabs = 0, sumsq = 0;
  long count = 0;
  for (const auto& a : per_chunk) {
    sum += a.sum;
    sumabs += a.sumabs;
    sumsq += a.sumsq;
    count += a.count;
  }
  SignDecayResult r;
  r.beta = beta;
  r.tau = tau;
  r.samples = count;
  r.mean_weight = sum / static_cast<double>(count);
  r.mean_abs_weight = sumabs / static_cast<double>(count);
  double mean_re = r.mean_weight.real();
  double var = sumsq / count - mean_re * mean_re;
  r.stderr_weight = std::sqrt(std::max(var, 0.0) / count);
  r.decay_rate = -std::log(std::max(mean_re, 1e-300)) / beta;
  return r;
}

std::string sign_decay_csv_row(const SignDecayResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.beta << "," << r.tau << "," << r.samples << ","
     << r.mean_weight.real() << "," << r.mean_weight.imag() << ","
     << r.mean_abs_weight << "," << r.stderr_weight << "," << r.bound_rate;
  return os.str();
}

}  // namespace qsos
