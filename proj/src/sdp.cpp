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

#include "qsos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qsos {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

double sparse_dot(const SdpProblem::SparseSym& a, const Mat& X) {
  double s = 0.0;
  for (const auto& e : a) s += e.value * X(e.row, e.col);
  return s;
}

void sparse_add_to(const SdpProblem::SparseSym& a, double w, Mat* M) {
  for (const auto& e : a) (*M)(e.row, e.col) += w * e.value;
}

// <A_i, A_j> across blocks, via coordinate maps (presolve only).
double cross_dot(const std::vector<SdpProblem::SparseSym>& a,
                 const std::vector<SdpProblem::SparseSym>& b) {
  double s = 0.0;
  for (std::size_t blk = 0; blk < a.size(); ++blk) {
    if (a[blk].empty() || b[blk].empty()) continue;
    // both lists are small; quadratic scan is fine here
    for (const auto& ea : a[blk])
      for (const auto& eb : b[blk])
        if (ea.row == eb.row && ea.col == eb.col) s += ea.value * eb.value;
  }
  return s;
}

// W = L_x (L_x^T Z L_x)^{-1/2} L_x^T  (Nesterov-Todd scaling point).
Mat nt_scaling(const Mat& X, const Mat& Z) {
  Eigen::LLT<Mat> lltx(X);
  if (lltx.info() != Eigen::Success)
    throw std::runtime_error("NT scaling: X not positive definite");
  Mat L = lltx.matrixL();
  Mat M = L.transpose() * Z * L;
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("NT scaling: eigendecomposition failed");
  Vec d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0)
      throw std::runtime_error("NT scaling: Z not positive definite");
    d[i] = 1.0 / std::sqrt(d[i]);
  }
  Mat W = L * es.eigenvectors() * d.asDiagonal() *
          es.eigenvectors().transpose() * L.transpose();
  return 0.5 * (W + W.transpose());
}

// Largest alpha with M + alpha*D > 0, via eigmin of L^{-1} D L^{-T}.
double max_step(const Mat& M, const Mat& D) {
  Eigen::LLT<Mat> llt(M);
  if (llt.info() != Eigen::Success) return 0.0;
  Mat L = llt.matrixL();
  Mat T = L.triangularView<Eigen::Lower>().solve(D);
  Mat S = L.triangularView<Eigen::Lower>().solve(T.transpose()).transpose();
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
  double mn = es.eigenvalues()(0);
  if (mn >= -1e-14) return 1e30;
  return -1.0 / mn;
}

}  // namespace

void SdpProblem::validate() const {
  const int nb = static_cast<int>(block_sizes.size());
  if (nb == 0) throw std::invalid_argument("SdpProblem: no blocks");
  if (rhs.empty()) throw std::invalid_argument("SdpProblem: m >= 1 required");
  if (static_cast<int>(C.size()) != nb)
    throw std::invalid_argument("SdpProblem: C block count mismatch");
  if (A.size() != rhs.size())
    throw std::invalid_argument("SdpProblem: A/rhs length mismatch");
  auto check_entries = [&](const SparseSym& s, int k) {
    for (const auto& e : s)
      if (e.row < 0 || e.col < 0 || e.row >= k || e.col >= k)
        throw std::invalid_argument("SdpProblem: entry out of range");
  };
  for (int b = 0; b < nb; ++b) check_entries(C[b], block_sizes[b]);
  for (const auto& ai : A) {
    if (static_cast<int>(ai.size()) != nb)
      throw std::invalid_argument("SdpProblem: A block count mismatch");
    for (int b = 0; b < nb; ++b) check_entries(ai[b], block_sizes[b]);
  }
}

SdpSolution solve_sdp(const SdpProblem& prob_in, const SdpOptions& opts) {
  prob_in.validate();
  SdpProblem prob = prob_in;
  if (prob.maximize) {
    for (auto& cb : prob.C)
      for (auto& e : cb) e.value = -e.value;
  }

  const int nb = static_cast<int>(prob.block_sizes.size());
  const int m_full = prob.num_constraints();

  // ---- presolve: drop linearly dependent constraint rows -------------
  std::vector<int> keep;
  {
    Mat G(m_full, m_full);
    for (int i = 0; i < m_full; ++i)
      for (int j = i; j < m_full; ++j)
        G(i, j) = G(j, i) = cross_dot(prob.A[i], prob.A[j]);
    // Greedy pivoted Cholesky on G; rows whose residual diagonal falls
    // below tolerance are dependent on the rows already kept.
    Mat R = G;
    std::vector<bool> dropped(m_full, false);
    for (int i = 0; i < m_full; ++i) {
      double tol = 1e-12 * std::max(1.0, G(i, i));
      if (R(i, i) <= tol) {
        dropped[i] = true;
        continue;
      }
      double piv = R(i, i);
      for (int a = i + 1; a < m_full; ++a) {
        if (dropped[a]) continue;
        double f = R(a, i) / piv;
        for (int b = a; b < m_full; ++b) R(a, b) -= f * R(i, b), R(b, a) = R(a, b);
      }
    }
    for (int i = 0; i < m_full; ++i)
      if (!dropped[i]) keep.push_back(i);
  }
  SdpProblem p;
  p.block_sizes = prob.block_sizes;
  p.C = prob.C;
  std::vector<double> row_scale;
  for (int i : keep) {
    auto ai = prob.A[i];
    double f2 = 0.0;
    for (const auto& blk : ai)
      for (const auto& e : blk) f2 += e.value * e.value;
    double s = std::sqrt(f2);
    if (s <= 0.0) s = 1.0;
    for (auto& blk : ai)
      for (auto& e : blk) e.value /= s;
    row_scale.push_back(s);
    p.A.push_back(std::move(ai));
    p.rhs.push_back(prob.rhs[i] / s);
  }
  const int m = static_cast<int>(p.rhs.size());
  const auto& ks = p.block_sizes;
  double ktot = 0;
  for (int k : ks) ktot += k;

  // ---- initial point --------------------------------------------------
  std::vector<Mat> X(nb), Z(nb), Cm(nb);
  double normC = 0.0, normA = 0.0, normB = 0.0;
  for (int b = 0; b < nb; ++b) {
    Cm[b] = Mat::Zero(ks[b], ks[b]);
    sparse_add_to(p.C[b], 1.0, &Cm[b]);
    normC = std::max(normC, Cm[b].norm());
  }
  for (int i = 0; i < m; ++i) {
    double na = 0.0;
    for (int b = 0; b < nb; ++b)
      for (const auto& e : p.A[i][b]) na += e.value * e.value;
    normA = std::max(normA, std::sqrt(na));
    normB = std::max(normB, std::abs(p.rhs[i]));
  }
  double taup = std::max({10.0, std::sqrt(ktot), normB / (1.0 + normA)});
  double taud = std::max({10.0, std::sqrt(ktot), normC, normA});
  for (int b = 0; b < nb; ++b) {
    X[b] = taup * Mat::Identity(ks[b], ks[b]);
    Z[b] = taud * Mat::Identity(ks[b], ks[b]);
  }
  Vec y = Vec::Zero(m);

  SdpSolution sol;
  sol.message = "";
  auto record = [&](SdpSolution* s) {
    SdpIterate it;
    double pobj = 0.0;
    for (int b = 0; b < nb; ++b) pobj += Cm[b].cwiseProduct(X[b]).sum();
    double dobj = 0.0;
    for (int i = 0; i < m; ++i) dobj += p.rhs[i] * y[i];
    it.primal_obj = pobj;
    it.dual_obj = dobj;
    double rp2 = 0.0, yrp = 0.0;
    for (int i = 0; i < m; ++i) {
      double r = p.rhs[i];
      for (int b = 0; b < nb; ++b) r -= sparse_dot(p.A[i][b], X[b]);
      rp2 += r * r;
      yrp += y[i] * r;
    }
    double rd2 = 0.0, rdx = 0.0, xz = 0.0;
    for (int b = 0; b < nb; ++b) {
      Mat Rd = Cm[b] - Z[b];
      for (int i = 0; i < m; ++i) sparse_add_to(p.A[i][b], -y[i], &Rd);
      rd2 += Rd.squaredNorm();
      rdx += Rd.cwiseProduct(X[b]).sum();
      xz += X[b].cwiseProduct(Z[b]).sum();
    }
    it.mu = xz / ktot;
    it.primal_res = std::sqrt(rp2) / (1.0 + normB);
    it.dual_res = std::sqrt(rd2) / (1.0 + normC);
    it.y_dot_rp = yrp;
    it.rd_dot_x = rdx;
    s->trace.push_back(it);
    return it;
  };

  SdpStatus status = SdpStatus::max_iter;
  int iter = 0;
  try {
    for (iter = 0; iter < opts.max_iter; ++iter) {
      SdpIterate cur = record(&sol);
      double relgap = std::abs(cur.primal_obj - cur.dual_obj) /
                      (1.0 + std::abs(cur.primal_obj) +
                       std::abs(cur.dual_obj));
      double mugap = cur.mu * ktot /
                     (1.0 + std::abs(cur.primal_obj) +
                      std::abs(cur.dual_obj));
      if (relgap <= opts.gap_tol && mugap <= std::sqrt(opts.gap_tol) &&
          cur.primal_res <= opts.feas_tol && cur.dual_res <= opts.feas_tol) {
        status = SdpStatus::optimal;
        break;
      }
      if (std::abs(cur.dual_obj) > opts.diverge ||
          (y.size() > 0 && y.cwiseAbs().maxCoeff() > opts.diverge)) {
        status = SdpStatus::infeasible_detected;
        break;
      }

      // residual quantities
      Vec rp(m);
      for (int i = 0; i < m; ++i) {
        double r = p.rhs[i];
        for (int b = 0; b < nb; ++b) r -= sparse_dot(p.A[i][b], X[b]);
        rp[i] = r;
      }
      std::vector<Mat> Rd(nb);
      for (int b = 0; b < nb; ++b) {
        Rd[b] = Cm[b] - Z[b];
        for (int i = 0; i < m; ++i) sparse_add_to(p.A[i][b], -y[i], &Rd[b]);
      }
      double mu = cur.mu;

      // NT scaling and Schur complement
      std::vector<Mat> W(nb), Zinv(nb);
      for (int b = 0; b < nb; ++b) {
        W[b] = nt_scaling(X[b], Z[b]);
        Eigen::LLT<Mat> lltz(Z[b]);
        if (lltz.info() != Eigen::Success)
          throw std::runtime_error("Z Cholesky failed");
        Zinv[b] = lltz.solve(Mat::Identity(ks[b], ks[b]));
      }
      Mat S = Mat::Zero(m, m);
      {
        std::vector<Mat> B(nb);
        for (int j = 0; j < m; ++j) {
          for (int b = 0; b < nb; ++b) {
            B[b].setZero(ks[b], ks[b]);
            for (const auto& e : p.A[j][b])
              B[b] += e.value * (W[b].col(e.row) * W[b].row(e.col));
            B[b] = 0.5 * (B[b] + B[b].transpose());
          }
          for (int i = 0; i <= j; ++i) {
            double s = 0.0;
            for (int b = 0; b < nb; ++b) s += sparse_dot(p.A[i][b], B[b]);
            S(i, j) = S(j, i) = s;
          }
        }
      }
      Eigen::LLT<Mat> lltS(S);
      bool useLDLT = lltS.info() != Eigen::Success;
      Eigen::LDLT<Mat> ldltS;
      if (useLDLT) {
        Mat Sreg = S + 1e-13 * std::max(1.0, S.norm()) * Mat::Identity(m, m);
        ldltS.compute(Sreg);
        if (ldltS.info() != Eigen::Success)
          throw std::runtime_error("Schur factorization failed");
      }
      auto solveS = [&](const Vec& r) {
        Vec x = useLDLT ? Vec(ldltS.solve(r)) : Vec(lltS.solve(r));
        // Two rounds of iterative refinement; the Schur system gets very
        // ill-conditioned near the central-path endgame.
        for (int ref = 0; ref < 2; ++ref) {
          Vec resid = r - S * x;
          x += useLDLT ? Vec(ldltS.solve(resid)) : Vec(lltS.solve(resid));
        }
        return x;
      };

      std::vector<Mat> WRdW(nb);
      for (int b = 0; b < nb; ++b) WRdW[b] = W[b] * Rd[b] * W[b];

      // One Newton solve for a given complementarity target R.
      auto newton = [&](const std::vector<Mat>& R, std::vector<Mat>* dX,
                        Vec* dy, std::vector<Mat>* dZ) {
        Vec rhs(m);
        for (int i = 0; i < m; ++i) {
          double t = rp[i];
          for (int b = 0; b < nb; ++b)
            t -= sparse_dot(p.A[i][b], R[b]) -
                 sparse_dot(p.A[i][b], WRdW[b]);
          rhs[i] = t;
        }
        *dy = solveS(rhs);
        dZ->resize(nb);
        dX->resize(nb);
        for (int b = 0; b < nb; ++b) {
          (*dZ)[b] = Rd[b];
          for (int i = 0; i < m; ++i)
            sparse_add_to(p.A[i][b], -(*dy)[i], &(*dZ)[b]);
          (*dX)[b] = R[b] - W[b] * (*dZ)[b] * W[b];
          (*dX)[b] = 0.5 * ((*dX)[b] + (*dX)[b].transpose());
        }
      };

      // Predictor (affine scaling).
      std::vector<Mat> Raff(nb);
      for (int b = 0; b < nb; ++b) Raff[b] = -X[b];
      std::vector<Mat> dXa, dZa;
      Vec dya;
      newton(Raff, &dXa, &dya, &dZa);
      double apa = 1e30, ada = 1e30;
      for (int b = 0; b < nb; ++b) {
        apa = std::min(apa, max_step(X[b], dXa[b]));
        ada = std::min(ada, max_step(Z[b], dZa[b]));
      }
      apa = std::min(1.0, 0.98 * apa);
      ada = std::min(1.0, 0.98 * ada);
      double muaff = 0.0;
      for (int b = 0; b < nb; ++b)
        muaff += (X[b] + apa * dXa[b]).cwiseProduct(Z[b] + ada * dZa[b]).sum();
      muaff /= ktot;
      double sigma = std::pow(std::max(0.0, muaff / mu), 3.0);
      sigma = std::min(1.0, std::max(1e-8, sigma));

      // Corrector.
      std::vector<Mat> Rc(nb);
      for (int b = 0; b < nb; ++b) {
        Mat corr = dXa[b] * dZa[b] * Zinv[b];
        Rc[b] = sigma * mu * Zinv[b] - X[b] - 0.5 * (corr + corr.transpose());
      }
      std::vector<Mat> dX, dZ;
      Vec dy;
      newton(Rc, &dX, &dy, &dZ);
      double ap = 1e30, ad = 1e30;
      for (int b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step(X[b], dX[b]));
        ad = std::min(ad, max_step(Z[b], dZ[b]));
      }
      ap = std::min(1.0, 0.98 * ap);
      ad = std::min(1.0, 0.98 * ad);
      if (std::min(ap, ad) < 0.05) {
        // The second-order term is hurting; fall back to a plain
        // centering step with a conservative sigma.
        double sig2 = std::min(0.9, std::max(0.3, 1.0 - std::min(apa, ada)));
        for (int b = 0; b < nb; ++b)
          Rc[b] = sig2 * mu * Zinv[b] - X[b];
        newton(Rc, &dX, &dy, &dZ);
        ap = ad = 1e30;
        for (int b = 0; b < nb; ++b) {
          ap = std::min(ap, max_step(X[b], dX[b]));
          ad = std::min(ad, max_step(Z[b], dZ[b]));
        }
        ap = std::min(1.0, 0.98 * ap);
        ad = std::min(1.0, 0.98 * ad);
      }
      if (ap < 1e-10 && ad < 1e-10) {
        status = SdpStatus::numerical_error;
        sol.message = "step length collapsed";
        break;
      }
      // Positive-definiteness safeguard: back off until Cholesky accepts
      // the updated blocks.
      auto pd_ok = [&](const std::vector<Mat>& M0, const std::vector<Mat>& dM,
                       double a) {
        for (int b = 0; b < nb; ++b) {
          Mat T = M0[b] + a * dM[b];
          T = 0.5 * (T + T.transpose());
          Eigen::LLT<Mat> llt(T);
          if (llt.info() != Eigen::Success) return false;
        }
        return true;
      };
      int guard = 0;
      while (!pd_ok(X, dX, ap) && guard++ < 40) ap *= 0.8;
      guard = 0;
      while (!pd_ok(Z, dZ, ad) && guard++ < 40) ad *= 0.8;
      if (ap < 1e-12 && ad < 1e-12) {
        status = SdpStatus::numerical_error;
        sol.message = "step length collapsed";
        break;
      }
      for (int b = 0; b < nb; ++b) {
        X[b] += ap * dX[b];
        Z[b] += ad * dZ[b];
        X[b] = 0.5 * (X[b] + X[b].transpose());
        Z[b] = 0.5 * (Z[b] + Z[b].transpose());
      }
      y += ad * dy;
    }
  } catch (const std::runtime_error& e) {
    status = SdpStatus::numerical_error;
    sol.message = e.what();
  }
  if (status == SdpStatus::max_iter) record(&sol);

  sol.X = X;
  sol.Z = Z;
  sol.y = y;
  sol.iterations = iter;
  sol.status = status;
  const SdpIterate& last = sol.trace.back();
  sol.primal_obj = prob_in.maximize ? -last.primal_obj : last.primal_obj;
  sol.dual_obj = prob_in.maximize ? -last.dual_obj : last.dual_obj;
  sol.rel_gap = std::abs(last.primal_obj - last.dual_obj) /
                (1.0 + std::abs(last.primal_obj) + std::abs(last.dual_obj));
  sol.primal_res = last.primal_res;
  sol.dual_res = last.dual_res;
  // Map the reduced dual vector back to the original constraint order,
  // undoing the row equilibration.  For maximize problems, X/y/Z refer
  // to the internal minimization of -C; only the reported objectives
  // carry the original sense.
  Vec yfull = Vec::Zero(m_full);
  for (int i = 0; i < m; ++i) yfull[keep[i]] = y[i] / row_scale[i];
  sol.y = yfull;
  return sol;
}

KktReport check_kkt(const SdpProblem& p, const SdpSolution& s) {
  p.validate();
  KktReport rep;
  const int nb = static_cast<int>(p.block_sizes.size());
  const int m = p.num_constraints();
  // Work in the internal minimization sense (C negated for maximize),
  // matching how X/y/Z are stored in the solution.
  double csign = p.maximize ? -1.0 : 1.0;
  double rp2 = 0.0, normB = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = p.rhs[i];
    for (int b = 0; b < nb; ++b) r -= sparse_dot(p.A[i][b], s.X[b]);
    rp2 += r * r;
    normB = std::max(normB, std::abs(p.rhs[i]));
  }
  rep.primal_res = std::sqrt(rp2) / (1.0 + normB);
  double rd2 = 0.0, normC = 0.0;
  double pobj = 0.0, dobj = 0.0;
  rep.min_eig_X = 1e300;
  rep.min_eig_Z = 1e300;
  for (int b = 0; b < nb; ++b) {
    Mat C = Mat::Zero(p.block_sizes[b], p.block_sizes[b]);
    sparse_add_to(p.C[b], csign, &C);
    normC = std::max(normC, C.norm());
    Mat Rd = C - s.Z[b];
    for (int i = 0; i < m; ++i) sparse_add_to(p.A[i][b], -s.y[i], &Rd);
    rd2 += Rd.squaredNorm();
    pobj += C.cwiseProduct(s.X[b]).sum();
    Eigen::SelfAdjointEigenSolver<Mat> ex(s.X[b], Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat> ez(s.Z[b], Eigen::EigenvaluesOnly);
    rep.min_eig_X = std::min(rep.min_eig_X, ex.eigenvalues()(0));
    rep.min_eig_Z = std::min(rep.min_eig_Z, ez.eigenvalues()(0));
  }
  rep.dual_res = std::sqrt(rd2) / (1.0 + normC);
  for (int i = 0; i < m; ++i) dobj += p.rhs[i] * s.y[i];
  rep.gap = std::abs(pobj - dobj) /
            (1.0 + std::abs(pobj) + std::abs(dobj));
  return rep;
}

namespace {

nlohmann::json dense_json(const SdpProblem::SparseSym& s, int k) {
  Mat M = Mat::Zero(k, k);
  for (const auto& e : s) M(e.row, e.col) += e.value;
  std::vector<double> flat(k * k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) flat[r * k + c] = M(r, c);
  return nlohmann::json(flat);
}

SdpProblem::SparseSym sparse_from_dense(const std::vector<double>& flat,
                                        int k) {
  SdpProblem::SparseSym s;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      double v = flat[r * k + c];
      if (v != 0.0) s.push_back({r, c, v});
    }
  return s;
}

}  // namespace

std::string sdp_problem_to_json(const SdpProblem& p) {
  nlohmann::json j;
  j["block_sizes"] = p.block_sizes;
  j["maximize"] = p.maximize;
  j["rhs"] = p.rhs;
  nlohmann::json cj = nlohmann::json::array();
  for (std::size_t b = 0; b < p.C.size(); ++b)
    cj.push_back(dense_json(p.C[b], p.block_sizes[b]));
  j["C"] = cj;
  nlohmann::json aj = nlohmann::json::array();
  for (const auto& ai : p.A) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < ai.size(); ++b)
      row.push_back(dense_json(ai[b], p.block_sizes[b]));
    aj.push_back(row);
  }
  j["A"] = aj;
  return j.dump();
}

SdpProblem sdp_problem_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SdpProblem p;
  p.block_sizes = j.at("block_sizes").get<std::vector<int>>();
  p.maximize = j.value("maximize", false);
  p.rhs = j.at("rhs").get<std::vector<double>>();
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
    p.C.push_back(sparse_from_dense(
        j.at("C")[b].get<std::vector<double>>(), p.block_sizes[b]));
  for (const auto& row : j.at("A")) {
    std::vector<SdpProblem::SparseSym> ai;
    for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
      ai.push_back(sparse_from_dense(row[b].get<std::vector<double>>(),
                                     p.block_sizes[b]));
    p.A.push_back(std::move(ai));
  }
  return p;
}

std::string sdp_solution_to_json(const SdpSolution& s) {
  nlohmann::json j;
  auto mat_flat = [](const Mat& M) {
    std::vector<double> f(M.rows() * M.cols());
    for (int r = 0; r < M.rows(); ++r)
      for (int c = 0; c < M.cols(); ++c) f[r * M.cols() + c] = M(r, c);
    return f;
  };
  nlohmann::json xs = nlohmann::json::array(), zs = nlohmann::json::array();
  for (const auto& X : s.X) xs.push_back(mat_flat(X));
  for (const auto& Z : s.Z) zs.push_back(mat_flat(Z));
  j["X"] = xs;
  j["Z"] = zs;
  j["y"] = std::vector<double>(s.y.data(), s.y.data() + s.y.size());
  j["primal_obj"] = s.primal_obj;
  j["dual_obj"] = s.dual_obj;
  j["rel_gap"] = s.rel_gap;
  j["primal_res"] = s.primal_res;
  j["dual_res"] = s.dual_res;
  j["iterations"] = s.iterations;
  switch (s.status) {
    case SdpStatus::optimal: j["status"] = "optimal"; break;
    case SdpStatus::max_iter: j["status"] = "max_iter"; break;
    case SdpStatus::infeasible_detected:
      j["status"] = "infeasible_detected";
      break;
    case SdpStatus::numerical_error: j["status"] = "numerical_error"; break;
  }
  return j.dump();
}

}  // namespace qsos
