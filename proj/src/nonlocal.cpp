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

#include "qsos/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsos/spectra.hpp"

namespace qsos {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Spectral {
  Eigen::VectorXd E;                     // shifted so min(E) = 0
  double shift = 0.0;                    // original ground energy
  std::vector<Eigen::MatrixXcd> ops;     // operators in the eigenbasis
  std::vector<Eigen::MatrixXcd> ops_dag;
  Eigen::Index dim = 0;
  double Z0 = 0.0;                       // tr e^{-beta (H - shift)}
};

Spectral spectralize(const NonlocalModel& m) {
  Spectral s;
  Eigen::MatrixXcd Hd = to_dense(m.H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hd);
  s.dim = Hd.rows();
  s.shift = es.eigenvalues()(0);
  s.E = es.eigenvalues().array() - s.shift;
  for (const auto& d : m.deltas) {
    Eigen::MatrixXcd D = es.eigenvectors().adjoint() * to_dense(d) *
                         es.eigenvectors();
    s.ops.push_back(D);
    s.ops_dag.push_back(D.adjoint());
  }
  s.Z0 = 0.0;
  for (Eigen::Index q = 0; q < s.dim; ++q)
    s.Z0 += std::exp(-m.beta * s.E[q]);
  return s;
}

// Divided difference of z -> exp(beta z) over the (possibly repeated)
// nodes, via the exponential of the upper-bidiagonal Opitz matrix.  The
// nodes are shifted so their real parts are <= 0 before the matrix
// exponential; the shift factors back multiplicatively.
cplx exp_divided_difference(const std::vector<cplx>& nodes, double beta) {
  const int n = static_cast<int>(nodes.size());
  double smax = nodes[0].real();
  for (const auto& z : nodes) smax = std::max(smax, z.real());
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = (nodes[i] - smax) * beta;
    if (i + 1 < n) J(i, i + 1) = beta;
  }
  Eigen::MatrixXcd E = J.exp();
  return std::exp(beta * smax) * E(0, n - 1);
}

// integral of exp(phi0 + kappa (u - ulo)) du over [ulo, uhi]
cplx cell_integral(cplx phi0, cplx kappa, double ulo, double uhi) {
  double du = uhi - ulo;
  cplx k = kappa * du;
  cplx base = std::exp(phi0);
  if (std::abs(k) < 1e-8) {
    return base * du * (1.0 + 0.5 * k + k * k / 6.0);
  }
  return base * (std::exp(k) - 1.0) / kappa;
}

// T-ordered 4-operator trace contribution machinery: operators given at
// torus positions p[0..3] in [0, beta) with attached matrices; returns
// sum over eigenstate tuples with per-gap exponents, as a function
// linear in one parameter when requested.  Used by the delta-comb path.
struct PlacedOp {
  double pos;        // absolute position in [0, beta)
  double dpos;       // derivative of pos w.r.t. the scan parameter u
  const Eigen::MatrixXcd* mat;
};

}  // namespace

void NonlocalModel::validate() const {
  if (H.algebra() != Algebra::pauli || H.sites() > 3)
    throw std::invalid_argument("NonlocalModel: qubit algebra, n <= 3");
  if (deltas.size() != kernels.size())
    throw std::invalid_argument("NonlocalModel: one kernel per operator");
  if (beta <= 0) throw std::invalid_argument("NonlocalModel: beta > 0");
  for (const auto& k : kernels) {
    if (std::holds_alternative<DeltaComb>(k)) {
      double t0 = std::get<DeltaComb>(k).tau0;
      if (t0 <= 0 || t0 >= beta)
        throw std::invalid_argument("NonlocalModel: tau0 in (0, beta)");
    } else {
      const auto& se = std::get<StepExp>(k);
      if (se.eps <= 0)
        throw std::invalid_argument("NonlocalModel: eps > 0");
      double ratio = se.omega * beta / kTwoPi;
      if (std::abs(ratio - std::llround(ratio)) > 1e-9)
        throw std::invalid_argument(
            "NonlocalModel: omega must be a multiple of 2 pi / beta");
    }
  }
}

cplx two_point(const OperatorPolynomial& H, const OperatorPolynomial& A,
               const OperatorPolynomial& B, double s, double beta) {
  if (s < 0 || s > beta)
    throw std::invalid_argument("two_point: 0 <= s <= beta");
  Eigen::MatrixXcd Hd = to_dense(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hd);
  Eigen::VectorXd E = es.eigenvalues();
  double e0 = E(0);
  Eigen::MatrixXcd Ad =
      es.eigenvectors().adjoint() * to_dense(A) * es.eigenvectors();
  Eigen::MatrixXcd Bd =
      es.eigenvectors().adjoint() * to_dense(B) * es.eigenvectors();
  cplx total = 0.0;
  for (Eigen::Index mI = 0; mI < E.size(); ++mI)
    for (Eigen::Index n = 0; n < E.size(); ++n)
      total += std::exp(-(beta - s) * (E[mI] - e0)) * Ad(mI, n) *
               std::exp(-s * (E[n] - e0)) * Bd(n, mI);
  return total * std::exp(-beta * e0);
}

namespace {

// Integral over one ordering cell of the time-ordered 4-operator trace,
// with operators at torus positions affine in the scan parameter u.
// States live on the gaps: q0 between op0 and op1, q1, q2, and qw on the
// wrap; the exponent is affine in u, so each eigen tuple integrates in
// closed form.
cplx delta_cell_contribution(const Spectral& sp, double beta,
                             std::vector<PlacedOp> placed, double ulo,
                             double uhi) {
  double umid = 0.5 * (ulo + uhi);
  std::sort(placed.begin(), placed.end(),
            [&](const PlacedOp& a, const PlacedOp& b) {
              return a.pos + umid * a.dpos < b.pos + umid * b.dpos;
            });
  const Eigen::Index dim = sp.dim;
  // gap values at u = ulo and their u-derivatives: gap k sits after
  // op k (k = 0..2); gap 3 is the wrap back to op 0.
  double gap0[4], dgap[4];
  for (int k = 0; k < 4; ++k) {
    int nxt = (k + 1) % 4;
    double wrap = k == 3 ? beta : 0.0;
    gap0[k] = wrap + placed[nxt].pos + ulo * placed[nxt].dpos -
              (placed[k].pos + ulo * placed[k].dpos);
    dgap[k] = placed[nxt].dpos - placed[k].dpos;
  }
  const Eigen::MatrixXcd& M0 = *placed[0].mat;
  const Eigen::MatrixXcd& M1 = *placed[1].mat;
  const Eigen::MatrixXcd& M2 = *placed[2].mat;
  const Eigen::MatrixXcd& M3 = *placed[3].mat;
  cplx total = 0.0;
  for (Eigen::Index qw = 0; qw < dim; ++qw)
    for (Eigen::Index q0 = 0; q0 < dim; ++q0) {
      cplx a0 = M0(q0, qw);
      if (std::abs(a0) < 1e-18) continue;
      for (Eigen::Index q1 = 0; q1 < dim; ++q1) {
        cplx a1 = a0 * M1(q1, q0);
        if (std::abs(a1) < 1e-18) continue;
        for (Eigen::Index q2 = 0; q2 < dim; ++q2) {
          cplx a2 = a1 * M2(q2, q1) * M3(qw, q2);
          if (std::abs(a2) < 1e-18) continue;
          double phi = -(sp.E[q0] * gap0[0] + sp.E[q1] * gap0[1] +
                         sp.E[q2] * gap0[2] + sp.E[qw] * gap0[3]);
          double kap = -(sp.E[q0] * dgap[0] + sp.E[q1] * dgap[1] +
                         sp.E[q2] * dgap[2] + sp.E[qw] * dgap[3]);
          total += a2 * cell_integral(cplx(phi), cplx(kap), ulo, uhi);
        }
      }
    }
  return total;
}

// first-order term for one operator with a delta comb
cplx delta_Z1(const Spectral& sp, double beta, int a, double tau0) {
  // -beta * [w(tau0) + w(beta - tau0)], w(x) = tr e^{-(b-x)H} D+ e^{-xH} D
  auto w = [&](double x) {
    cplx t = 0.0;
    for (Eigen::Index mI = 0; mI < sp.dim; ++mI)
      for (Eigen::Index n = 0; n < sp.dim; ++n)
        t += std::exp(-(beta - x) * sp.E[mI]) * sp.ops_dag[a](mI, n) *
             std::exp(-x * sp.E[n]) * sp.ops[a](n, mI);
    return t;
  };
  return -beta * (w(tau0) + w(beta - tau0));
}

cplx delta_Z2(const Spectral& sp, double beta,
              const std::vector<double>& tau0s) {
  const int A = static_cast<int>(tau0s.size());
  cplx total = 0.0;
  for (int a = 0; a < A; ++a) {
    for (int b = 0; b < A; ++b) {
      for (int s1 : {+1, -1}) {
        for (int s2 : {+1, -1}) {
          // pair 1: D_a at 0, D_a^dag at s1 tau0a (mod beta); pair 2 at
          // u and u + s2 tau0b; integrate u over (0, beta)
          double p1 = s1 > 0 ? tau0s[a] : beta - tau0s[a];
          double off2 = s2 > 0 ? tau0s[b] : beta - tau0s[b];
          // breakpoints where moving positions cross fixed ones mod beta
          std::vector<double> cuts = {0.0, beta};
          for (double fixed : {0.0, p1}) {
            for (double moving_off : {0.0, off2}) {
              double c = std::fmod(fixed - moving_off + 2 * beta, beta);
              if (c > 1e-12 && c < beta - 1e-12) cuts.push_back(c);
            }
          }
          std::sort(cuts.begin(), cuts.end());
          cuts.erase(std::unique(cuts.begin(), cuts.end(),
                                 [](double x, double y) {
                                   return std::abs(x - y) < 1e-12;
                                 }),
                     cuts.end());
          for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            double ulo = cuts[c], uhi = cuts[c + 1];
            double umid = 0.5 * (ulo + uhi);
            // positions of the second pair may wrap: place them at
            // their mod-beta values (wrapping is cell-constant)
            auto wrap = [&](double base, double off) {
              double v = base + off;
              return v >= beta ? v - beta : v;
            };
            std::vector<PlacedOp> placed;
            placed.push_back({0.0, 0.0, &sp.ops[a]});         // D_a
            placed.push_back({p1, 0.0, &sp.ops_dag[a]});      // D_a^dag
            bool wrap2 = umid + off2 >= beta;
            placed.push_back({0.0, 1.0, &sp.ops[b]});         // D_b at u
            placed.push_back({wrap2 ? off2 - beta : off2, 1.0,
                              &sp.ops_dag[b]});               // D_b^dag
            total += 0.5 * delta_cell_contribution(sp, beta, placed, ulo,
                                                   uhi);
          }
        }
      }
    }
  }
  // the free translation of the first pair contributes a factor beta
  return total * beta;
}

// step-kernel path: exponential divided differences over the gap simplex
cplx step_Z1(const Spectral& sp, double beta, int a, double eps,
             double omega) {
  // ops: early D_a at t', late D_a^dag at t; kernel exp((i w - eps) g1);
  // base-point freedom doubles the wrap node.
  cplx total = 0.0;
  cplx kcoef(-eps, omega);
  for (Eigen::Index qout = 0; qout < sp.dim; ++qout)
    for (Eigen::Index qin = 0; qin < sp.dim; ++qin) {
      cplx w = sp.ops_dag[a](qout, qin) * sp.ops[a](qin, qout);
      if (std::abs(w) < 1e-18) continue;
      std::vector<cplx> nodes = {cplx(-sp.E[qout]), cplx(-sp.E[qout]),
                                 cplx(-sp.E[qin]) + kcoef};
      total += w * exp_divided_difference(nodes, beta);
    }
  return -total;
}

cplx step_Z2(const Spectral& sp, double beta,
             const std::vector<StepExp>& ks) {
  const int A = static_cast<int>(ks.size());
  // interleavings of two ordered pairs (early < late within each pair):
  // positions of (early1, late1, early2, late2) among sorted slots
  struct Inter {
    int slot_of[4];  // slot index of early1, late1, early2, late2
  };
  std::vector<Inter> inters;
  {
    int perm[4] = {0, 1, 2, 3};
    std::sort(perm, perm + 4);
    do {
      // slot_of[i] = position of role i; roles: 0=e1, 1=l1, 2=e2, 3=l2
      int slot_of[4];
      for (int s = 0; s < 4; ++s) slot_of[perm[s]] = s;
      if (slot_of[0] < slot_of[1] && slot_of[2] < slot_of[3])
        inters.push_back({{slot_of[0], slot_of[1], slot_of[2], slot_of[3]}});
    } while (std::next_permutation(perm, perm + 4));
  }
  cplx total = 0.0;
  for (int a = 0; a < A; ++a) {
    for (int b = 0; b < A; ++b) {
      cplx k1(-ks[a].eps, ks[a].omega);
      cplx k2(-ks[b].eps, ks[b].omega);
      for (const auto& I : inters) {
        // role matrices
        const Eigen::MatrixXcd* role_mat[4] = {
            &sp.ops[a], &sp.ops_dag[a], &sp.ops[b], &sp.ops_dag[b]};
        const Eigen::MatrixXcd* slot_mat[4];
        for (int r = 0; r < 4; ++r) slot_mat[I.slot_of[r]] = role_mat[r];
        // kernel coefficient on gap k (between slot k and k+1, k=1..3):
        // kernel 1 acts on gaps in (slot(e1), slot(l1)], etc.
        cplx gap_kernel[4] = {0.0, 0.0, 0.0, 0.0};  // gap 0 unused
        for (int gk = 1; gk <= 3; ++gk) {
          if (I.slot_of[0] < gk && gk <= I.slot_of[1]) gap_kernel[gk] += k1;
          if (I.slot_of[2] < gk && gk <= I.slot_of[3]) gap_kernel[gk] += k2;
        }
        // eigen sums: q[k] = state on gap k (after slot k), k = 0..3,
        // with gap 0 the wrap; matrix element of slot k connects
        // q[k-1] -> q[k]; slot 0 connects q[3]... define q_w = state on
        // the wrap gap (before slot 0 and after slot 3).
        for (Eigen::Index qw = 0; qw < sp.dim; ++qw) {
          for (Eigen::Index q1 = 0; q1 < sp.dim; ++q1) {
            cplx a1 = (*slot_mat[0])(q1, qw);
            if (std::abs(a1) < 1e-18) continue;
            for (Eigen::Index q2 = 0; q2 < sp.dim; ++q2) {
              cplx a2 = a1 * (*slot_mat[1])(q2, q1);
              if (std::abs(a2) < 1e-18) continue;
              for (Eigen::Index q3 = 0; q3 < sp.dim; ++q3) {
                cplx a3 = a2 * (*slot_mat[2])(q3, q2) *
                          (*slot_mat[3])(qw, q3);
                if (std::abs(a3) < 1e-18) continue;
                // nodes: wrap doubled (base-point factor), then gaps 1-3
                std::vector<cplx> nodes = {
                    cplx(-sp.E[qw]), cplx(-sp.E[qw]),
                    cplx(-sp.E[q1]) + gap_kernel[1],
                    cplx(-sp.E[q2]) + gap_kernel[2],
                    cplx(-sp.E[q3]) + gap_kernel[3]};
                total += a3 * exp_divided_difference(nodes, beta);
              }
            }
          }
        }
      }
    }
  }
  return 0.5 * total;
}

}  // namespace

LogZSeries logZ_series(const NonlocalModel& m) {
  m.validate();
  Spectral sp = spectralize(m);
  LogZSeries out;
  out.c0 = std::log(sp.Z0) - m.beta * sp.shift;
  const int A = static_cast<int>(m.deltas.size());
  bool all_delta = true, all_step = true;
  for (const auto& k : m.kernels) {
    all_delta = all_delta && std::holds_alternative<DeltaComb>(k);
    all_step = all_step && std::holds_alternative<StepExp>(k);
  }
  if (A == 0) return out;
  if (!all_delta && !all_step)
    throw std::invalid_argument("logZ_series: kernel families cannot mix");
  cplx Z1 = 0.0, Z2 = 0.0;
  if (all_delta) {
    std::vector<double> tau0s;
    for (const auto& k : m.kernels)
      tau0s.push_back(std::get<DeltaComb>(k).tau0);
    for (int a = 0; a < A; ++a)
      Z1 += delta_Z1(sp, m.beta, a, tau0s[a]);
    Z2 = delta_Z2(sp, m.beta, tau0s);
  } else {
    std::vector<StepExp> ks;
    for (const auto& k : m.kernels) ks.push_back(std::get<StepExp>(k));
    for (int a = 0; a < A; ++a)
      Z1 += step_Z1(sp, m.beta, a, ks[a].eps, ks[a].omega);
    Z2 = step_Z2(sp, m.beta, ks);
  }
  out.c1 = Z1 / sp.Z0;
  out.c2 = Z2 / sp.Z0 - 0.5 * out.c1 * out.c1;
  out.error_estimate = 1e-12 * (std::abs(out.c1) + std::abs(out.c2));
  return out;
}

EmbeddedZResult embedded_Z(const NonlocalModel& m, double g, int n_max,
                           int trotter_steps) {
  m.validate();
  if (n_max < 1 || n_max > 6)
    throw std::invalid_argument("embedded_Z: 1 <= n_max <= 6");
  for (const auto& k : m.kernels)
    if (!std::holds_alternative<StepExp>(k))
      throw std::invalid_argument("embedded_Z: step_exp kernels only");

  auto evaluate = [&](int nm) {
    const Eigen::Index dq = dense_dim(m.H);
    const int nosc = static_cast<int>(m.deltas.size());
    Eigen::Index dimOsc = 1;
    for (int a = 0; a < nosc; ++a) dimOsc *= (nm + 1);
    const Eigen::Index dim = dq * dimOsc;
    // oscillator ladder operators in the truncated product space
    auto osc_op = [&](int which, bool creator) {
      Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(nm + 1, nm + 1);
      for (int k = 0; k < nm; ++k) b(k, k + 1) = std::sqrt(k + 1.0);
      if (creator) b = b.adjoint().eval();
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
      for (int a = 0; a < nosc; ++a) {
        Eigen::MatrixXcd factor =
            a == which ? b
                       : Eigen::MatrixXcd::Identity(nm + 1, nm + 1);
        Eigen::MatrixXcd next(full.rows() * factor.rows(),
                              full.cols() * factor.cols());
        for (Eigen::Index i = 0; i < full.rows(); ++i)
          for (Eigen::Index j = 0; j < full.cols(); ++j)
            next.block(i * factor.rows(), j * factor.cols(), factor.rows(),
                       factor.cols()) = full(i, j) * factor;
        full = next;
      }
      return full;
    };
    auto lift_q = [&](const Eigen::MatrixXcd& Mq) {
      Eigen::MatrixXcd full(dim, dim);
      Eigen::MatrixXcd Iosc = Eigen::MatrixXcd::Identity(dimOsc, dimOsc);
      for (Eigen::Index i = 0; i < dq; ++i)
        for (Eigen::Index j = 0; j < dq; ++j)
          full.block(i * dimOsc, j * dimOsc, dimOsc, dimOsc) =
              Mq(i, j) * Iosc;
      return full;
    };
    auto lift_o = [&](const Eigen::MatrixXcd& Mo) {
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dq; ++i)
        full.block(i * dimOsc, i * dimOsc, dimOsc, dimOsc) = Mo;
      return full;
    };
    Eigen::MatrixXcd K = lift_q(to_dense(m.H));
    for (int a = 0; a < nosc; ++a) {
      double eps = std::get<StepExp>(m.kernels[a]).eps;
      K += eps * lift_o(osc_op(a, true) * osc_op(a, false));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ek(K);
    Eigen::VectorXd lam = ek.eigenvalues();
    double tau = m.beta / trotter_steps;
    Eigen::VectorXcd half(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      half[i] = std::exp(-0.5 * tau * (lam[i] - lam[0]));
    Eigen::MatrixXcd Ehalf = ek.eigenvectors() * half.asDiagonal() *
                             ek.eigenvectors().adjoint();
    // product over slices with the midpoint phase
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(dim, dim);
    std::vector<Eigen::MatrixXcd> dl, bo;
    for (int a = 0; a < nosc; ++a) {
      dl.push_back(lift_q(to_dense(m.deltas[a])) * lift_o(osc_op(a, true)));
      bo.push_back(Eigen::MatrixXcd());
    }
    for (int s = 0; s < trotter_steps; ++s) {
      double t = (s + 0.5) * tau;
      Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, dim);
      for (int a = 0; a < nosc; ++a) {
        double omega = std::get<StepExp>(m.kernels[a]).omega;
        cplx ph = std::exp(cplx(0, -omega * t));
        V += ph * dl[a];
        V += std::conj(ph) * dl[a].adjoint();
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ev(V);
      Eigen::VectorXcd u(ev.eigenvalues().size());
      for (Eigen::Index i = 0; i < u.size(); ++i)
        u[i] = std::exp(cplx(0, std::sqrt(g) * tau * ev.eigenvalues()(i)));
      Eigen::MatrixXcd U = ev.eigenvectors() * u.asDiagonal() *
                           ev.eigenvectors().adjoint();
      P = (Ehalf * U * Ehalf * P).eval();
    }
    // undo the spectrum shift used to keep Ehalf bounded
    double logscale = -m.beta * lam[0];
    return std::real(P.trace()) * std::exp(logscale);
  };
  EmbeddedZResult out;
  out.Z = evaluate(n_max);
  // decoupled value at the same Trotterization: g = 0 collapses the
  // U factors to the identity, so Z0 factorizes exactly
  {
    double zq = 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(to_dense(m.H));
    for (Eigen::Index i = 0; i < eh.eigenvalues().size(); ++i)
      zq += std::exp(-m.beta * eh.eigenvalues()(i));
    double zo = 1.0;
    for (const auto& k : m.kernels) {
      double eps = std::get<StepExp>(k).eps;
      double z1 = 0.0;
      for (int n = 0; n <= n_max; ++n) z1 += std::exp(-m.beta * eps * n);
      zo *= z1;
    }
    out.Z0 = zq * zo;
  }
  double z2 = n_max + 2 <= 6 ? evaluate(n_max + 2) : out.Z;
  out.truncation_shift = std::abs(out.Z - z2) / std::max(1e-300, out.Z);
  return out;
}

std::pair<double, double> embedded_logZ_coefficients(const NonlocalModel& m,
                                                     double h, int n_max,
                                                     int trotter_steps) {
  auto z0 = embedded_Z(m, 0.0, n_max, trotter_steps).Z;
  auto z1 = embedded_Z(m, h, n_max, trotter_steps).Z;
  auto z2 = embedded_Z(m, 2 * h, n_max, trotter_steps).Z;
  double l0 = std::log(z0), l1 = std::log(z1), l2 = std::log(z2);
  double c2 = (l2 - 2 * l1 + l0) / (2 * h * h);
  double c1 = (4 * l1 - l2 - 3 * l0) / (2 * h);
  return {c1, c2};
}

}  // namespace qsos
