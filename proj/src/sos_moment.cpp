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

#include "qsos/sos_moment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include "qsos/spectra.hpp"

namespace qsos {

namespace {

constexpr std::size_t kBasisCap = 5000;

void subsets_up_to(int n, int r, std::vector<MonoKey>* out) {
  // all strictly increasing index lists of length <= r, by degree
  std::vector<std::uint32_t> cur;
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    out->push_back(MonoKey(cur.begin(), cur.end()));
    if (remaining == 0) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1, remaining - 1);
      cur.pop_back();
    }
  };
  // emit by degree: repeat recursion per degree to keep degree ordering
  out->clear();
  for (int d = 0; d <= r; ++d) {
    std::function<void(int, int)> pick = [&](int start, int need) {
      if (need == 0) {
        out->push_back(MonoKey(cur.begin(), cur.end()));
        return;
      }
      for (int i = start; i <= n - need; ++i) {
        cur.push_back(i);
        pick(i + 1, need - 1);
        cur.pop_back();
      }
    };
    pick(0, d);
    if (out->size() > kBasisCap)
      throw std::invalid_argument("enumerate_basis: basis size cap exceeded");
  }
}

// Express a polynomial in Hermitian-normalized monomials: returns map
// key -> real coefficient.  Throws if a coefficient has an imaginary
// part beyond tol (non-Hermitian input).
std::map<MonoKey, double> hermitian_coefficients(
    const OperatorPolynomial& p, double tol = 1e-9) {
  std::map<MonoKey, double> out;
  for (const auto& [k, c] : p.terms()) {
    cplx norm = 1.0;
    if (p.algebra() == Algebra::majorana)
      norm = majorana_hermitian_phase(static_cast<int>(k.size()));
    // p = sum c_k key = sum (c_k / norm) * (norm * key); the normalized
    // monomial norm*key is Hermitian, so c_k / norm must be real.
    cplx coeff = c / norm;
    if (std::abs(coeff.imag()) > tol * std::max(1.0, std::abs(coeff)))
      throw std::invalid_argument(
          "hermitian_coefficients: polynomial is not Hermitian");
    out[k] += coeff.real();
  }
  return out;
}

}  // namespace

MomentBasis enumerate_basis(Algebra algebra, int sites, int r) {
  if (r < 1) throw std::invalid_argument("enumerate_basis: r >= 1");
  MomentBasis b;
  b.algebra = algebra;
  b.sites = sites;
  b.r = r;
  switch (algebra) {
    case Algebra::majorana:
      subsets_up_to(sites, r, &b.monomials);
      break;
    case Algebra::pauli: {
      // weight-d strings: choose d sites, letter each
      for (int d = 0; d <= r; ++d) {
        std::vector<std::uint32_t> sitesel;
        std::function<void(int, int)> pick = [&](int start, int need) {
          if (need == 0) {
            // assign letters
            int w = static_cast<int>(sitesel.size());
            std::vector<int> letter(w, 1);
            while (true) {
              MonoKey k;
              for (int i = 0; i < w; ++i)
                k.push_back((sitesel[i] << 2) | letter[i]);
              b.monomials.push_back(k);
              if (b.monomials.size() > kBasisCap)
                throw std::invalid_argument(
                    "enumerate_basis: basis size cap exceeded");
              int j = w - 1;
              while (j >= 0 && letter[j] == 3) letter[j--] = 1;
              if (j < 0) break;
              ++letter[j];
            }
            return;
          }
          for (int i = start; i <= sites - need; ++i) {
            sitesel.push_back(i);
            pick(i + 1, need - 1);
            sitesel.pop_back();
          }
        };
        pick(0, d);
      }
      break;
    }
    case Algebra::fermion: {
      // normal-ordered monomials with |u| + |v| <= r, ordered by degree
      for (int d = 0; d <= r; ++d) {
        for (int s = d; s >= 0; --s) {
          int t = d - s;
          std::vector<std::uint32_t> u, v;
          std::function<void(int, int)> pickv = [&](int start, int need) {
            if (need == 0) {
              FermionMonomial m;
              m.creators.assign(u.begin(), u.end());
              m.annihilators.assign(v.begin(), v.end());
              b.monomials.push_back(m.key());
              if (b.monomials.size() > kBasisCap)
                throw std::invalid_argument(
                    "enumerate_basis: basis size cap exceeded");
              return;
            }
            for (int i = start; i <= sites - need; ++i) {
              v.push_back(i);
              pickv(i + 1, need - 1);
              v.pop_back();
            }
          };
          std::function<void(int, int)> picku = [&](int start, int need) {
            if (need == 0) {
              pickv(0, t);
              return;
            }
            for (int i = start; i <= sites - need; ++i) {
              u.push_back(i);
              picku(i + 1, need - 1);
              u.pop_back();
            }
          };
          picku(0, s);
        }
      }
      break;
    }
  }
  return b;
}

namespace {

// Internal complex linear-matrix-inequality block: each entry is a
// constant plus a real-variable linear combination with complex
// coefficients.  Assembled into the real SDP via 2x2 embedding (or
// directly when already real).
struct LmiEntryTerm {
  int var;
  cplx coef;
};
struct LmiBlock {
  int size = 0;
  bool complex_embed = true;
  // (row, col) -> {constant, terms}; only one orientation stored per
  // unordered pair plus the diagonal; the mirror is implied Hermitian.
  std::map<std::pair<int, int>, std::pair<cplx, std::vector<LmiEntryTerm>>>
      cells;
  void add(int r, int c, cplx constant, int var, cplx coef) {
    auto& cell = cells[{r, c}];
    cell.first += constant;
    if (var >= 0 && std::abs(coef) > 0.0) cell.second.push_back({var, coef});
  }
};

// Assemble min c.x s.t. all LMI blocks PSD into the standard-form dual
// encoding used by solve_sdp: variables y = x, Z = M(x).
SdpProblem assemble_lmi(const std::vector<LmiBlock>& blocks, int nvars,
                        const Eigen::VectorXd& obj) {
  SdpProblem p;
  const int nb = static_cast<int>(blocks.size());
  p.block_sizes.resize(nb);
  p.C.resize(nb);
  p.A.assign(nvars, std::vector<SdpProblem::SparseSym>(nb));
  p.rhs.assign(nvars, 0.0);
  for (int v = 0; v < nvars; ++v) p.rhs[v] = -obj[v];
  for (int b = 0; b < nb; ++b) {
    const LmiBlock& blk = blocks[b];
    const int k = blk.size;
    p.block_sizes[b] = blk.complex_embed ? 2 * k : k;
    auto put = [&](SdpProblem::SparseSym* dst, int r, int c, cplx val) {
      if (blk.complex_embed) {
        double re = val.real(), im = val.imag();
        if (re != 0.0) {
          dst->push_back({r, c, re});
          dst->push_back({k + r, k + c, re});
          if (r != c) {
            dst->push_back({c, r, re});
            dst->push_back({k + c, k + r, re});
          }
        }
        if (im != 0.0) {
          // embedding [[Re, -Im],[Im, Re]]; Im antisymmetric
          dst->push_back({k + r, c, im});
          dst->push_back({c, k + r, im});
          dst->push_back({r, k + c, -im});
          dst->push_back({k + c, r, -im});
        }
      } else {
        if (std::abs(val.imag()) > 1e-12)
          throw std::logic_error("real LMI block got a complex entry");
        if (val.real() != 0.0) {
          dst->push_back({r, c, val.real()});
          if (r != c) dst->push_back({c, r, val.real()});
        }
      }
    };
    for (const auto& [rc, cell] : blk.cells) {
      auto [r, c] = rc;
      if (std::abs(cell.first) > 0.0) put(&p.C[b], r, c, cell.first);
      for (const auto& t : cell.second) {
        // Z = C - sum y_v A_v must equal M(x), so A_v = -F_v.
        put(&p.A[t.var][b], r, c, -t.coef);
      }
    }
  }
  return p;
}

}  // namespace

MomentProblem build_moment_problem(const OperatorPolynomial& H_in, int r,
                                   SosMode mode, bool even_parity_only) {
  OperatorPolynomial H = H_in;
  if (H.algebra() == Algebra::fermion) H = to_majorana(H);
  if (H.algebra() == Algebra::fermion)
    throw std::invalid_argument("moment problem: unsupported algebra");
  if (!H.is_hermitian(1e-9))
    throw std::invalid_argument("moment problem: H must be Hermitian");
  if (H.degree() > 2 * r)
    throw std::invalid_argument("moment problem: degree too low for H");

  MomentProblem mp;
  mp.mode = mode;
  mp.basis = enumerate_basis(H.algebra(), H.sites(), r);
  if (even_parity_only) {
    std::vector<MonoKey> filtered;
    for (auto& k : mp.basis.monomials)
      if (k.size() % 2 == 0) filtered.push_back(k);
    mp.basis.monomials = std::move(filtered);
  }
  const int k = mp.basis.size();

  // Reduce every O_a O_b to phase * normalized monomial.
  auto normalized_product = [&](const MonoKey& a, const MonoKey& b)
      -> std::pair<MonoKey, cplx> {
    if (H.algebra() == Algebra::pauli) {
      PauliString pr = pauli_mul(PauliString{1.0, a}, PauliString{1.0, b});
      return {pr.letters, pr.phase};
    }
    MajoranaMonomial mr =
        majorana_mul(MajoranaMonomial{1.0, a}, MajoranaMonomial{1.0, b});
    cplx pa = majorana_hermitian_phase(static_cast<int>(a.size()));
    cplx pb = majorana_hermitian_phase(static_cast<int>(b.size()));
    cplx pu = majorana_hermitian_phase(static_cast<int>(mr.indices.size()));
    return {mr.indices, pa * pb * mr.sign / pu};
  };

  mp.entries.assign(k, std::vector<std::pair<int, cplx>>(k));
  std::map<MonoKey, int> vidx;
  std::vector<std::vector<std::tuple<int, int, cplx>>> var_cells;
  std::vector<std::tuple<int, int, cplx>> const_cells;
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      auto [u, phase] = normalized_product(mp.basis.monomials[a],
                                           mp.basis.monomials[b]);
      if (u.empty()) {
        mp.entries[a][b] = {-1, phase};
        mp.entries[b][a] = {-1, std::conj(phase)};
        const_cells.emplace_back(a, b, phase);
        continue;
      }
      auto [it, inserted] = vidx.try_emplace(
          u, static_cast<int>(mp.variables.size()));
      if (inserted) {
        mp.variables.push_back(u);
        var_cells.emplace_back();
      }
      mp.entries[a][b] = {it->second, phase};
      mp.entries[b][a] = {it->second, std::conj(phase)};
      var_cells[it->second].emplace_back(a, b, phase);
    }
  }
  mp.variable_index = vidx;
  const int nvars = static_cast<int>(mp.variables.size());

  // Objective: H in Hermitian-normalized monomials.
  auto hc = hermitian_coefficients(H);
  mp.objective = Eigen::VectorXd::Zero(nvars);
  mp.objective_const = 0.0;
  for (const auto& [key, c] : hc) {
    if (key.empty()) {
      mp.objective_const += c;
      continue;
    }
    auto it = vidx.find(key);
    if (it == vidx.end())
      throw std::invalid_argument(
          "moment problem: basis cannot express a Hamiltonian term");
    mp.objective[it->second] += c;
  }

  // Assemble the LMI.
  LmiBlock blk;
  blk.size = k;
  blk.complex_embed = (mode == SosMode::general);
  for (const auto& [a, b, phase] : const_cells) {
    cplx v = blk.complex_embed ? phase : cplx(phase.real(), 0.0);
    blk.add(a, b, v, -1, 0.0);
  }
  std::vector<bool> var_used(nvars, false);
  for (int v = 0; v < nvars; ++v) {
    for (const auto& [a, b, phase] : var_cells[v]) {
      cplx coef = blk.complex_embed ? phase : cplx(phase.real(), 0.0);
      if (std::abs(coef) > 0.0) {
        blk.add(a, b, 0.0, v, coef);
        var_used[v] = true;
      }
    }
  }
  for (int v = 0; v < nvars; ++v)
    if (!var_used[v] && std::abs(mp.objective[v]) > 0.0)
      throw std::invalid_argument(
          "moment problem: objective variable unconstrained in this mode");

  // Drop unused variables from the SDP (restricted mode may null some).
  std::vector<int> remap(nvars, -1);
  int nv2 = 0;
  for (int v = 0; v < nvars; ++v)
    if (var_used[v]) remap[v] = nv2++;
  LmiBlock blk2;
  blk2.size = blk.size;
  blk2.complex_embed = blk.complex_embed;
  for (auto& [rc, cell] : blk.cells) {
    auto& dst = blk2.cells[rc];
    dst.first = cell.first;
    for (auto& t : cell.second) dst.second.push_back({remap[t.var], t.coef});
  }
  Eigen::VectorXd obj2 = Eigen::VectorXd::Zero(nv2);
  for (int v = 0; v < nvars; ++v)
    if (remap[v] >= 0) obj2[remap[v]] = mp.objective[v];
  mp.sdp = assemble_lmi({blk2}, nv2, obj2);

  // Keep bookkeeping arrays aligned with the reduced variable set.
  std::vector<MonoKey> vars2(nv2);
  std::map<MonoKey, int> vmap2;
  Eigen::VectorXd objf = Eigen::VectorXd::Zero(nv2);
  for (int v = 0; v < nvars; ++v)
    if (remap[v] >= 0) {
      vars2[remap[v]] = mp.variables[v];
      vmap2[mp.variables[v]] = remap[v];
      objf[remap[v]] = mp.objective[v];
    }
  for (auto& row : mp.entries)
    for (auto& e : row)
      if (e.first >= 0) e.first = remap[e.first];
  mp.variables = std::move(vars2);
  mp.variable_index = std::move(vmap2);
  mp.objective = std::move(objf);
  return mp;
}

LowerBoundResult lower_bound(const OperatorPolynomial& H, int r, SosMode mode,
                             const SdpOptions& opts, bool even_parity_only) {
  LowerBoundResult out;
  out.problem = build_moment_problem(H, r, mode, even_parity_only);
  out.solution = solve_sdp(out.problem.sdp, opts);
  out.bound = out.problem.objective_const - out.solution.primal_obj;
  return out;
}

SosCertificate extract_certificate(const MomentProblem& mp,
                                   const SdpSolution& sol, double drop_tol) {
  if (sol.status != SdpStatus::optimal)
    throw std::invalid_argument("extract_certificate: solution not optimal");
  const int k = mp.basis.size();
  Eigen::MatrixXcd G(k, k);
  if (mp.mode == SosMode::general) {
    const Eigen::MatrixXd& X = sol.X[0];
    Eigen::MatrixXd P = X.topLeftCorner(k, k);
    Eigen::MatrixXd R = X.bottomRightCorner(k, k);
    Eigen::MatrixXd Q = X.topRightCorner(k, k);
    G = (P + R).cast<cplx>() +
        cplx(0, 1) * (Q.transpose() - Q).cast<cplx>();
  } else {
    G = sol.X[0].cast<cplx>();
  }
  G = 0.5 * (G + G.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);

  SosCertificate cert;
  cert.bound = mp.objective_const - sol.primal_obj;
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = k - 1; i >= 0; --i) {
    double lam = es.eigenvalues()(i);
    if (lam < drop_tol * scale) continue;
    OperatorPolynomial O(mp.basis.algebra, mp.basis.sites);
    for (int a = 0; a < k; ++a) {
      cplx v = es.eigenvectors()(a, i);
      if (std::abs(v) < 1e-13) continue;
      cplx norm = mp.basis.algebra == Algebra::majorana
                      ? majorana_hermitian_phase(
                            static_cast<int>(mp.basis.monomials[a].size()))
                      : cplx(1.0);
      O.add_term(mp.basis.monomials[a], v * norm);
    }
    cert.weights.push_back(lam);
    cert.squares.push_back(std::move(O));
  }
  return cert;
}

double certificate_residual(const OperatorPolynomial& H_in,
                            const SosCertificate& cert) {
  OperatorPolynomial H = H_in;
  if (H.algebra() == Algebra::fermion) H = to_majorana(H);
  OperatorPolynomial acc(H.algebra(), H.sites());
  acc += OperatorPolynomial::identity(H.algebra(), H.sites()) * cert.bound;
  for (std::size_t i = 0; i < cert.weights.size(); ++i) {
    OperatorPolynomial sq = multiply(adjoint(cert.squares[i]),
                                     cert.squares[i]);
    sq *= cert.weights[i];
    acc += sq;
  }
  return (H - acc).norm_l1();
}

std::string certificate_to_json(const SosCertificate& cert) {
  nlohmann::json j;
  j["bound"] = cert.bound;
  j["residual"] = cert.residual;
  nlohmann::json sq = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.weights.size(); ++i) {
    nlohmann::json one;
    one["weight"] = cert.weights[i];
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : cert.squares[i].terms()) {
      nlohmann::json t;
      t["key"] = key;
      t["re"] = c.real();
      t["im"] = c.imag();
      terms.push_back(t);
    }
    one["terms"] = terms;
    sq.push_back(one);
  }
  j["squares"] = sq;
  return j.dump();
}

RankReport moment_rank_report(const OperatorPolynomial& H,
                              const MomentBasis& basis, StateSource source,
                              double zero_tol, int sdp_r) {
  const int k = basis.size();
  Eigen::MatrixXcd M(k, k);
  if (source == StateSource::exact_ground_state) {
    Eigen::MatrixXcd Hd = to_dense(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hd);
    double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    double scl = std::max(1.0, std::abs(es.eigenvalues()(0)));
    if (gap < 1e-10 * scl)
      throw std::invalid_argument("moment_rank_report: degenerate ground state");
    Eigen::VectorXcd gs = es.eigenvectors().col(0);
    // Gram of O_b |gs>
    Eigen::MatrixXcd V(gs.size(), k);
    OperatorPolynomial proto(basis.algebra, basis.sites);
    for (int b = 0; b < k; ++b) {
      OperatorPolynomial Ob(basis.algebra, basis.sites);
      Ob.add_term(basis.monomials[b], 1.0);
      V.col(b) = apply_polynomial(Ob, gs);
    }
    M = V.adjoint() * V;
  } else {
    // Pseudo-expectations from a solved majorana moment problem.
    OperatorPolynomial Hm = H;
    if (Hm.algebra() == Algebra::fermion) Hm = to_majorana(Hm);
    auto lb = lower_bound(Hm, sdp_r, SosMode::general);
    if (lb.solution.status != SdpStatus::optimal)
      throw std::runtime_error("moment_rank_report: SDP did not converge");
    const auto& vmap = lb.problem.variable_index;
    const Eigen::VectorXd& y = lb.solution.y;
    auto pseudo = [&](const OperatorPolynomial& op) {
      auto hcoef = hermitian_coefficients(op + adjoint(op)) ;
      // E[op] for possibly non-Hermitian op: split op = Hs + i As with
      // Hs, As Hermitian; E is linear, E[Hermitian] is real.
      OperatorPolynomial herm = op + adjoint(op);
      herm *= 0.5;
      OperatorPolynomial anti = op - adjoint(op);
      anti *= cplx(0, -0.5);
      double re = 0.0, im = 0.0;
      for (auto part : {0, 1}) {
        const OperatorPolynomial& q = part == 0 ? herm : anti;
        double val = 0.0;
        for (const auto& [key, c] : hermitian_coefficients(q)) {
          if (key.empty()) {
            val += c;
            continue;
          }
          auto it = vmap.find(key);
          val += it == vmap.end() ? 0.0 : c * y[it->second];
        }
        (part == 0 ? re : im) = val;
      }
      (void)hcoef;
      return cplx(re, im);
    };
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        OperatorPolynomial Oa(basis.algebra, basis.sites);
        Oa.add_term(basis.monomials[a], 1.0);
        OperatorPolynomial Ob(basis.algebra, basis.sites);
        Ob.add_term(basis.monomials[b], 1.0);
        OperatorPolynomial prod = multiply(adjoint(Oa), Ob);
        if (prod.algebra() == Algebra::fermion) prod = to_majorana(prod);
        M(a, b) = pseudo(prod);
      }
  }
  M = 0.5 * (M + M.adjoint().eval());
  RankReport rep;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(M, Eigen::EigenvaluesOnly);
  rep.eigenvalues = em.eigenvalues();
  for (int i = 0; i < k; ++i)
    if (rep.eigenvalues(i) < zero_tol) ++rep.zero_count;
  // Parity split
  std::vector<int> even_idx, odd_idx;
  for (int b = 0; b < k; ++b)
    (basis.monomials[b].size() % 2 == 0 ? even_idx : odd_idx).push_back(b);
  auto sub_zeros = [&](const std::vector<int>& idx, Eigen::VectorXd* evs) {
    Eigen::MatrixXcd S(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        S(a, b) = M(idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(
        S, Eigen::EigenvaluesOnly);
    if (evs) *evs = e2.eigenvalues();
    int z = 0;
    for (int i = 0; i < e2.eigenvalues().size(); ++i)
      if (e2.eigenvalues()(i) < zero_tol) ++z;
    return z;
  };
  rep.even_zero_count = sub_zeros(even_idx, &rep.even_eigenvalues);
  rep.odd_zero_count = sub_zeros(odd_idx, nullptr);
  return rep;
}

long zero_count_formula(int n, int r) {
  auto binom = [](int a, int b) -> long {
    if (b < 0 || b > a) return 0;
    long v = 1;
    for (int i = 0; i < b; ++i) v = v * (a - i) / (i + 1);
    return v;
  };
  long total = 0;
  for (int s = 1; s <= r; ++s)
    for (int t = 0; t <= r - s; ++t) total += binom(n, s) * binom(n, t);
  return total;
}

PtOrderResult pt_order_check(
    const std::function<OperatorPolynomial(double)>& family, int r,
    const std::vector<double>& eps_grid, const SdpOptions& opts) {
  PtOrderResult out;
  for (double e : eps_grid) {
    OperatorPolynomial H = family(e);
    double exact = ground_energy(H);
    auto lb = lower_bound(H, r, SosMode::general, opts);
    if (lb.solution.status != SdpStatus::optimal)
      throw std::runtime_error("pt_order_check: SDP did not converge");
    out.eps.push_back(e);
    out.exact.push_back(exact);
    out.bound.push_back(lb.bound);
  }
  // log-log fit of (exact - bound) vs eps over points clear of solver noise
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.eps.size(); ++i) {
    double err = out.exact[i] - out.bound[i];
    if (err > 1e-9) {
      lx.push_back(std::log(out.eps[i]));
      ly.push_back(std::log(err));
    }
  }
  if (lx.size() < 2) {
    out.exact_at_order = true;
    return out;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double n = static_cast<double>(lx.size());
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

double symmetry_reduced_ring_bound(const OperatorPolynomial& H,
                                   const SdpOptions& opts) {
  if (H.algebra() != Algebra::pauli)
    throw std::invalid_argument("ring bound: pauli algebra required");
  if (H.degree() > 2)
    throw std::invalid_argument("ring bound: degree-2 Hamiltonians only");
  const int n = H.sites();

  // Verify cyclic translation and spin-flip invariance.
  auto translated = [&](const OperatorPolynomial& p) {
    OperatorPolynomial q(Algebra::pauli, n);
    for (const auto& [k, c] : p.terms()) {
      PauliString s;
      for (auto e : k) {
        int site = (static_cast<int>(e >> 2) + 1) % n;
        PauliString one{1.0,
                        {static_cast<std::uint32_t>((site << 2) | (e & 3))}};
        s = pauli_mul(s, one);
      }
      q.add_term(s.letters, c * s.phase);
    }
    return q;
  };
  auto flipped = [&](const OperatorPolynomial& p) {
    OperatorPolynomial q(Algebra::pauli, n);
    for (const auto& [k, c] : p.terms()) {
      int nyz = 0;
      for (auto e : k)
        if ((e & 3) != 1) ++nyz;
      q.add_term(k, (nyz % 2 == 0) ? c : -c);
    }
    return q;
  };
  if ((translated(H) - H).norm_l1() > 1e-9 ||
      (flipped(H) - H).norm_l1() > 1e-9)
    throw std::invalid_argument("ring bound: H lacks the required symmetry");

  // Variables: x_X = E[X_j] plus translation-orbit two-point functions
  // t[(A,B,d)] = E[A_0 B_d], d = 1..n-1, identified with t[(B,A,n-d)].
  // Spin flip kills orbits with an odd number of Y/Z letters.
  auto flip_sign = [&](int A, int B) {
    int nyz = (A != 1) + (B != 1);
    return nyz % 2 == 0 ? 1 : -1;
  };
  auto single_flip_sign = [&](int A) { return A == 1 ? 1 : -1; };
  std::map<std::tuple<int, int, int>, int> tvar;  // (A,B,d) -> var
  std::vector<std::tuple<int, int, int>> tdef;
  int nvars = 0;
  int xX = -1;
  if (single_flip_sign(1) == 1) {
    xX = nvars++;  // E[X]; E[Y], E[Z] vanish by spin flip
  }
  for (int d = 1; d < n; ++d)
    for (int A = 1; A <= 3; ++A)
      for (int B = 1; B <= 3; ++B) {
        if (flip_sign(A, B) < 0) continue;
        if (tvar.count({A, B, d})) continue;
        int v = nvars++;
        tvar[{A, B, d}] = v;
        tvar[{B, A, n - d}] = v;
        tdef.push_back({A, B, d});
      }

  // Objective: sum over H's terms of coefficient times its variable.
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(nvars);
  double obj_const = 0.0;
  for (const auto& [k, c] : H.terms()) {
    if (std::abs(c.imag()) > 1e-10)
      throw std::invalid_argument("ring bound: complex coefficient");
    if (k.empty()) {
      obj_const += c.real();
    } else if (k.size() == 1) {
      int A = k[0] & 3;
      if (A != 1)
        throw std::invalid_argument("ring bound: flip-odd single-site term");
      obj[xX] += c.real();
    } else {
      int s1 = static_cast<int>(k[0] >> 2), A = k[0] & 3;
      int s2 = static_cast<int>(k[1] >> 2), B = k[1] & 3;
      int d = (s2 - s1 + n) % n;
      auto it = tvar.find({A, B, d});
      if (it == tvar.end())
        throw std::invalid_argument("ring bound: flip-odd two-site term");
      obj[it->second] += c.real();
    }
  }

  // Momentum blocks: M(p)_{AB} = sum_d w^{pd} E[A_0 B_d] with the d = 0
  // entry reducing through the single-site algebra; the identity row
  // attaches to the p = 0 block.
  std::vector<LmiBlock> blocks;
  const double twopi = 6.283185307179586476925286766559;
  for (int p = 0; p < n; ++p) {
    LmiBlock blk;
    bool zero_mode = (p == 0);
    blk.size = zero_mode ? 4 : 3;
    int off = zero_mode ? 1 : 0;
    if (zero_mode) {
      blk.add(0, 0, 1.0, -1, 0.0);
      // E[1 * A(0)] = sqrt(n) x_A; only A = X survives.
      blk.add(0, off + 0, 0.0, xX, std::sqrt((double)n));
    }
    for (int A = 1; A <= 3; ++A)
      for (int B = A; B <= 3; ++B) {
        int ra = off + A - 1, cb = off + B - 1;
        // d = 0: A_0 B_0 = phase * single Pauli (or identity)
        {
          PauliString pa{1.0, {static_cast<std::uint32_t>(A)}};
          PauliString pb{1.0, {static_cast<std::uint32_t>(B)}};
          PauliString pr = pauli_mul(pa, pb);
          if (pr.letters.empty()) {
            blk.add(ra, cb, pr.phase, -1, 0.0);
          } else {
            int Cletter = pr.letters[0] & 3;
            if (Cletter == 1) blk.add(ra, cb, 0.0, xX, pr.phase);
            // Y/Z single-site expectations vanish by spin flip.
          }
        }
        for (int d = 1; d < n; ++d) {
          cplx w = std::exp(cplx(0, twopi * p * d / n));
          auto it = tvar.find({A, B, d});
          if (it == tvar.end()) continue;  // flip-odd, fixed to zero
          blk.add(ra, cb, 0.0, it->second, w);
        }
      }
    blocks.push_back(std::move(blk));
  }
  SdpProblem sdp = assemble_lmi(blocks, nvars, obj);
  auto sol = solve_sdp(sdp, opts);
  if (sol.status != SdpStatus::optimal)
    throw std::runtime_error("ring bound: SDP did not converge");
  return obj_const - sol.primal_obj;
}

}  // namespace qsos
