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

#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsos/afqmc.hpp"
#include "qsos/models.hpp"
#include "qsos/rng.hpp"
#include "qsos/spectra.hpp"

using namespace qsos;

namespace {

Eigen::MatrixXcd dense_hs_target(const HsDecomposition& d) {
  // H - lambda as a dense matrix
  OperatorPolynomial acc = d.Q;
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    OperatorPolynomial sq = multiply(d.ops[i], d.ops[i]);
    sq *= d.weights[i];
    acc += sq;
  }
  return to_dense(acc);
}

}  // namespace

TEST_CASE("manual decomposition of a number operator") {
  auto h = fermion_word(1, 1.0, {{0, true}, {0, false}});
  auto d = decompose(h, DecomposeVia::manual);
  CHECK(d.ops.empty());
  CHECK(d.lambda == 0.0);
  CHECK(decomposition_residual(h, d) < 1e-12);
  // non-PSD rejected
  auto bad = h;
  bad += OperatorPolynomial::identity(Algebra::fermion, 1) * cplx(-0.5);
  CHECK_THROWS(decompose(bad, DecomposeVia::manual));
}

TEST_CASE("sdp decomposition of the toy model") {
  for (double eps : {0.5, 1.0}) {
    auto h = build_hamiltonian(ModelSpec::toy4(eps));
    auto d = decompose(h, DecomposeVia::sdp);
    double resid = decomposition_residual(h, d);
    CHECK(resid <= 1e-6 * to_majorana(h).norm_l1());
    // lambda equals the hermitian-restricted bound and sits below E0
    double e0 = ground_energy(h);
    CHECK(d.lambda <= e0 + 1e-7);
    for (const auto& q : d.ops) {
      CHECK(q.is_hermitian(1e-8));
      CHECK(q.degree() <= 2);
      CHECK(q.parity() >= 0);  // even (constants allowed)
    }
  }
}

TEST_CASE("hs weight with zero fields reproduces tr exp(-beta Q)") {
  auto h = fermion_word(2, 0.7, {{0, true}, {0, false}});
  h += fermion_word(2, 1.1, {{1, true}, {1, false}});
  auto d = decompose(h, DecomposeVia::manual);
  double beta = 1.5, tau = 0.25;
  HsPropagator prop(d, tau);
  std::vector<double> fields;  // no operators -> no fields
  auto w = prop.weight(fields, 6);
  Eigen::MatrixXcd Q = to_dense(to_majorana(h));
  cplx expect = (-beta * Q).exp().trace();
  CHECK(std::abs(w - expect) < 1e-9 * std::abs(expect));
}

TEST_CASE("single-slice small-field weight matches the Taylor oracle") {
  auto h = build_hamiltonian(ModelSpec::toy4(0.8));
  auto d = decompose(h, DecomposeVia::sdp);
  double tau = 0.05;
  HsPropagator prop(d, tau);
  const int A = prop.fields_per_slice() / 2;
  // one slice, one small field on operator 0, others zero
  for (double phi : {1e-3, 5e-3}) {
    std::vector<double> fields(2 * A, 0.0);
    fields[0] = phi;
    cplx w = prop.weight(fields, 1);
    // Taylor: tr(expQ [1 + i phi' S - phi'^2 S^2/2] expQ) + O(phi^3),
    // with S the weighted operator and phi' = sqrt(tau) phi; here Q = 0
    // in the sdp route, and the remaining zero-field factors are 1.
    OperatorPolynomial S = d.ops[0];
    S *= cplx(std::sqrt(d.weights[0]));
    Eigen::MatrixXcd Sd = to_dense(S);
    double phip = std::sqrt(tau) * phi;
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(Sd.rows(), Sd.cols());
    cplx taylor = (I + cplx(0, 1) * phip * Sd - 0.5 * phip * phip * Sd * Sd)
                      .trace();
    CHECK(std::abs(w - taylor) <=
          2.0 * std::abs(phip * phip * phip) * Sd.rows() *
              std::pow(Sd.cwiseAbs().maxCoeff() + 1.0, 3.0));
  }
}

TEST_CASE("weight magnitude is non-increasing along trajectories") {
  auto h = build_hamiltonian(ModelSpec::toy4(1.0));
  auto d = decompose(h, DecomposeVia::sdp);
  HsPropagator prop(d, 0.1);
  CounterRng rng(5, 99);
  const int slices = 8;
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> fields(prop.fields_per_slice() * slices);
    for (auto& x : fields) x = rng.normal();
    std::vector<double> mags;
    cplx w = prop.weight(fields, slices, &mags);
    for (std::size_t s = 1; s < mags.size(); ++s)
      CHECK(mags[s] <= mags[s - 1] * (1 + 1e-10));
    CHECK(std::abs(w) <= mags.back() + 1e-9);
  }
}

TEST_CASE("deterministic quadrature reproduces the trace within O(tau^2)") {
  // H' = Q + w S^2 with [Q, S] != 0 so the splitting error is real;
  // the Hubbard-Stratonovich integral itself is exact per slice.
  // Disjoint pairs commute, so S^2 carries the quartic g0 g2 g3 g4,
  // which shares exactly one index with g0 g1 and fails to commute.
  OperatorPolynomial S(Algebra::majorana, 6);
  S += majorana_term(6, cplx(0, 0.8), {0, 2});
  S += majorana_term(6, cplx(0, 0.5), {3, 4});
  OperatorPolynomial Q(Algebra::majorana, 6);
  Q += OperatorPolynomial::identity(Algebra::majorana, 6);
  Q += majorana_term(6, cplx(0, 1.0), {0, 1});  // 1 + i g0 g1 >= 0
  HsDecomposition d;
  d.modes = 3;
  d.Q = Q;
  d.ops = {S};
  d.weights = {0.9};
  d.lambda = 0.0;
  Eigen::MatrixXcd Sd = to_dense(S);
  Eigen::MatrixXcd Hd = to_dense(Q) + 0.9 * Sd * Sd;
  double beta = 0.6;
  cplx expect = (-beta * Hd).exp().trace();
  // O(tau^2): quadruple the slice count -> error drops ~16x (allow 8x)
  HsPropagator p1(d, beta / 2);
  HsPropagator p2(d, beta / 8);
  double e1 = std::abs(p1.quadrature_weight(2, 48) - expect);
  double e2 = std::abs(p2.quadrature_weight(8, 48) - expect);
  CHECK(e1 > 1e-10);  // splitting error is visible at L = 2
  CHECK(e2 < e1 / 8.0);
}

TEST_CASE("sign decay on a free model has no sign problem") {
  // H = sum E_j n_j: manual decomposition, Q only; every trajectory
  // weight is the same positive trace, so ratio = 1.
  auto h = fermion_word(2, 0.9, {{0, true}, {0, false}});
  h += fermion_word(2, 0.4, {{1, true}, {1, false}});
  auto d = decompose(h, DecomposeVia::manual);
  auto r = sign_decay(d, 2.0, 0.125, 64, 7, 2);
  CHECK(r.mean_abs_weight ==
        doctest::Approx(r.mean_weight.real()).epsilon(1e-12));
  CHECK(std::abs(r.mean_weight.imag()) < 1e-12);
}

TEST_CASE("sign decay tracks E0 - lambda on the toy model (short run)") {
  auto h = build_hamiltonian(ModelSpec::toy4(1.0));
  auto d = decompose(h, DecomposeVia::sdp);
  double e0 = ground_energy(h);
  double beta = 2.0, tau = 0.1;
  auto r = sign_decay(d, beta, tau, 4000, 11, 2);
  CHECK(r.mean_abs_weight >= std::abs(r.mean_weight) - 1e-12);
  // Compare the Monte Carlo mean against the exact Trotterized trace
  // (statistics only, Trotter bias cancels in this comparison).
  Eigen::MatrixXcd Hd = dense_hs_target(d);
  cplx expect = (-beta * Hd).exp().trace();
  CHECK(std::abs(r.mean_weight.real() - expect.real()) <
        5.0 * r.stderr_weight + 0.02 * std::abs(expect.real()));
  // and the implied rate is in the right neighborhood
  double rate = -std::log(expect.real()) / beta;
  CHECK(std::abs(rate - (e0 - d.lambda)) < 0.35);
  // reruns are bit-identical
  auto r2 = sign_decay(d, beta, tau, 4000, 11, 2);
  CHECK(r2.mean_weight == r.mean_weight);
  // thread count does not change the result
  auto r3 = sign_decay(d, beta, tau, 4000, 11, 1);
  CHECK(r3.mean_weight == r.mean_weight);
}
