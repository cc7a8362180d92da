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

#include <random>

#include "qsos/algebra.hpp"
#include "qsos/models.hpp"
#include "qsos/rng.hpp"
#include "qsos/spectra.hpp"
#include "qsos/syk_tensor.hpp"

using namespace qsos;

namespace {

OperatorPolynomial random_poly(Algebra alg, int sites, int max_deg,
                               int nterms, CounterRng* rng) {
  OperatorPolynomial p(alg, sites);
  for (int t = 0; t < nterms; ++t) {
    cplx c(rng->normal(), rng->normal());
    switch (alg) {
      case Algebra::pauli: {
        std::vector<std::pair<int, char>> ops;
        int d = 1 + (int)rng->below(max_deg);
        for (int k = 0; k < d; ++k) {
          int site = (int)rng->below(sites);
          char letter = "XYZ"[rng->below(3)];
          ops.push_back({site, letter});
        }
        p += pauli_term(sites, c, ops);
        break;
      }
      case Algebra::majorana: {
        std::vector<int> idx;
        int d = 1 + (int)rng->below(max_deg);
        for (int k = 0; k < d; ++k) idx.push_back((int)rng->below(sites));
        p += majorana_term(sites, c, idx);
        break;
      }
      case Algebra::fermion: {
        std::vector<std::pair<int, bool>> word;
        int d = 1 + (int)rng->below(max_deg);
        for (int k = 0; k < d; ++k)
          word.push_back({(int)rng->below(sites), rng->below(2) == 0});
        p += fermion_word(sites, c, word);
        break;
      }
    }
  }
  return p;
}

double dense_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pauli single-site identities") {
  // X1 * Y1 = i Z1
  auto x = pauli_term(1, 1.0, {{0, 'X'}});
  auto y = pauli_term(1, 1.0, {{0, 'Y'}});
  auto prod = multiply(x, y);
  REQUIRE(prod.size() == 1);
  CHECK(prod.coefficient({(0u << 2) | 3u}) == cplx(0, 1));

  // X^2 = 1
  auto xx = multiply(x, x);
  CHECK(xx.coefficient({}) == cplx(1, 0));
  CHECK(xx.size() == 1);
}

TEST_CASE("majorana contraction and sign") {
  // (g0 g1)(g1 g2) = g0 g2
  auto a = majorana_term(4, 1.0, {0, 1});
  auto b = majorana_term(4, 1.0, {1, 2});
  auto prod = multiply(a, b);
  REQUIRE(prod.size() == 1);
  CHECK(prod.coefficient({0u, 2u}) == cplx(1, 0));

  // (g1 g0) = -(g0 g1)
  auto swapped = majorana_term(4, 1.0, {1, 0});
  CHECK(swapped.coefficient({0u, 1u}) == cplx(-1, 0));
}

TEST_CASE("fermion CAR identity") {
  // psi_0 psi_0^dag = 1 - psi_0^dag psi_0
  auto p = fermion_word(2, 1.0, {{0, false}, {0, true}});
  CHECK(p.coefficient({}) == cplx(1, 0));
  FermionMonomial n0;
  n0.creators = {0};
  n0.annihilators = {0};
  CHECK(p.coefficient(n0.key()) == cplx(-1, 0));
  CHECK(p.size() == 2);
}

TEST_CASE("normal ordering is idempotent and matches dense at n=2") {
  // psi_1^dag psi_0 psi_0^dag psi_1 = psi_1^dag psi_1 - psi_1^dag
  // psi_0^dag psi_0 psi_1, checked as 16x16 dense matrices at n=2... here
  // 4x4 at n=2 modes.
  auto p = fermion_word(2, 1.0, {{1, true}, {0, false}, {0, true}, {1, false}});
  auto q = normal_order(p);
  CHECK(dense_diff(to_dense(p), to_dense(q)) < 1e-12);
  // Expected expansion
  OperatorPolynomial expect(Algebra::fermion, 2);
  expect += fermion_word(2, 1.0, {{1, true}, {1, false}});
  expect += fermion_word(2, -1.0, {{1, true}, {0, true}, {0, false}, {1, false}});
  auto diff = q - expect;
  CHECK(diff.norm_l1() < 1e-12);
  // Idempotence on canonical input.
  auto q2 = normal_order(q);
  CHECK((q2 - q).norm_l1() == 0.0);
}

TEST_CASE("adjoint involution and fixed points") {
  CounterRng rng(7, 1);
  for (Algebra alg : {Algebra::pauli, Algebra::majorana, Algebra::fermion}) {
    int sites = alg == Algebra::majorana ? 6 : 3;
    auto p = random_poly(alg, sites, 3, 6, &rng);
    auto pd = adjoint(adjoint(p));
    CHECK((pd - p).norm_l1() < 1e-12);
    auto h = p + adjoint(p);
    CHECK(h.is_hermitian());
    CHECK(dense_diff(to_dense(adjoint(p)), to_dense(p).adjoint()) < 1e-10);
  }
  // i X0 -> -i X0
  auto ix = pauli_term(1, cplx(0, 1), {{0, 'X'}});
  CHECK(adjoint(ix).coefficient({(0u << 2) | 1u}) == cplx(0, -1));
  // (psi_0^dag psi_1)^dag = psi_1^dag psi_0
  auto t = fermion_word(2, 1.0, {{0, true}, {1, false}});
  auto td = adjoint(t);
  FermionMonomial m;
  m.creators = {1};
  m.annihilators = {0};
  CHECK(td.coefficient(m.key()) == cplx(1, 0));
}

TEST_CASE("multiplication agrees with dense matrices on all algebras") {
  CounterRng rng(11, 2);
  for (Algebra alg : {Algebra::pauli, Algebra::majorana, Algebra::fermion}) {
    int sites = alg == Algebra::majorana ? 8 : 4;
    for (int rep = 0; rep < 8; ++rep) {
      auto a = random_poly(alg, sites, 3, 5, &rng);
      auto b = random_poly(alg, sites, 3, 5, &rng);
      auto ab = multiply(a, b);
      CHECK(dense_diff(to_dense(ab), to_dense(a) * to_dense(b)) < 1e-9);
    }
  }
}

TEST_CASE("canonicalization is a normal form under reordering") {
  CounterRng rng(13, 3);
  std::mt19937 shuf(99);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> idx;
    for (int k = 0; k < 5; ++k) idx.push_back((int)rng.below(8));
    auto base = majorana_term(8, 1.0, idx);
    // Any adjacent transposition of distinct indices flips the sign.
    for (int t = 0; t < 4; ++t) {
      auto idx2 = idx;
      std::shuffle(idx2.begin(), idx2.end(), shuf);
      auto again = majorana_term(8, 1.0, idx2);
      // Same canonical key set; coefficients differ by +-1 only.
      REQUIRE(again.size() == base.size());
      if (!base.empty()) {
        auto kb = base.terms().begin()->first;
        REQUIRE(again.terms().count(kb) == 1);
        double ratio = std::abs(again.terms().at(kb) / base.terms().at(kb));
        CHECK(ratio == doctest::Approx(1.0));
      }
      CHECK(dense_diff(to_dense(again), to_dense(majorana_term(8, 1.0, idx2)))
            < 1e-12);
    }
  }
}

TEST_CASE("parity grading and model hermiticity") {
  auto toy = build_hamiltonian(ModelSpec::toy4(0.7));
  CHECK(toy.parity() == 1);
  CHECK(toy.is_hermitian());
  auto syk = build_hamiltonian(ModelSpec::syk(8, 4, 5));
  CHECK(syk.parity() == 1);
  CHECK(syk.is_hermitian());
  auto quart = build_hamiltonian(random_quartic_family(4, 3).at(0.4));
  CHECK(quart.parity() == 1);
  CHECK(quart.is_hermitian());
  // Product of even-parity polynomials is even.
  auto prod = multiply(toy, toy);
  CHECK(prod.parity() == 1);
}

TEST_CASE("model coefficient conventions") {
  auto h0 = build_hamiltonian(ModelSpec::two_qubit(0.0));
  CHECK(h0.size() == 2);
  CHECK(h0.coefficient({(0u << 2) | 3u}) == cplx(1, 0));
  CHECK(h0.coefficient({(1u << 2) | 3u}) == cplx(1, 0));

  auto toy = build_hamiltonian(ModelSpec::toy4(1.5));
  FermionMonomial quad;
  quad.creators = {0, 1, 2, 3};
  CHECK(toy.coefficient(quad.key()) == cplx(1.5, 0));
  FermionMonomial n0;
  n0.creators = {0};
  n0.annihilators = {0};
  CHECK(toy.coefficient(n0.key()) == cplx(1, 0));

  auto syk = build_hamiltonian(ModelSpec::syk(8, 4, 1));
  SykTensor J = sample_syk(8, 4, 1);
  CHECK(J.full_l2_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fermion <-> majorana conversion round trip") {
  CounterRng rng(17, 4);
  auto p = random_poly(Algebra::fermion, 3, 4, 6, &rng);
  auto m = to_majorana(p);
  auto back = to_fermion(m);
  CHECK((back - normal_order(p)).norm_l1() < 1e-10);
  CHECK(dense_diff(to_dense(p), to_dense(m)) < 1e-10);
}

TEST_CASE("algebra tag mismatch is rejected") {
  auto a = pauli_term(2, 1.0, {{0, 'X'}});
  auto b = majorana_term(4, 1.0, {0});
  CHECK_THROWS_AS((void)multiply(a, b), std::invalid_argument);
  auto c = pauli_term(3, 1.0, {{0, 'X'}});
  CHECK_THROWS_AS((void)multiply(a, c), std::invalid_argument);
}

TEST_CASE("majorana hermitian phase makes monomials hermitian") {
  for (int d = 0; d <= 6; ++d) {
    std::vector<int> idx;
    for (int k = 0; k < d; ++k) idx.push_back(k);
    auto m = majorana_term(8, majorana_hermitian_phase(d), idx);
    CHECK(m.is_hermitian());
  }
}
