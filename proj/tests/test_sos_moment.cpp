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

#include "qsos/models.hpp"
#include "qsos/sos_moment.hpp"
#include "qsos/spectra.hpp"

using namespace qsos;

TEST_CASE("basis counts") {
  CHECK(enumerate_basis(Algebra::majorana, 4, 2).size() == 11);  // 1+4+6
  CHECK(enumerate_basis(Algebra::fermion, 4, 2).size() == 37);   // 1+8+28
  auto pb = enumerate_basis(Algebra::pauli, 2, 1);
  CHECK(pb.size() == 7);  // {1, X1,Y1,Z1, X2,Y2,Z2}
  CHECK(pb.monomials[0].empty());
  CHECK_THROWS_AS((void)enumerate_basis(Algebra::pauli, 12, 3),
                  std::invalid_argument);
}

TEST_CASE("single qubit Z bound is exact") {
  auto h = pauli_term(1, 1.0, {{0, 'Z'}});
  auto lb = lower_bound(h, 1, SosMode::general);
  REQUIRE(lb.solution.status == SdpStatus::optimal);
  CHECK(lb.bound == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("two-qubit general bound matches the exact ground state") {
  for (double g : {0.5, 1.0, 2.0}) {
    auto h = build_hamiltonian(ModelSpec::two_qubit(g));
    auto lb = lower_bound(h, 1, SosMode::general);
    REQUIRE(lb.solution.status == SdpStatus::optimal);
    CHECK(lb.bound ==
          doctest::Approx(-2.0 * std::sqrt(1 + g * g / 4)).epsilon(1e-6));
  }
}

TEST_CASE("two-qubit hermitian-restricted bound is -2-g") {
  for (double g : {0.5, 1.0, 2.0}) {
    auto h = build_hamiltonian(ModelSpec::two_qubit(g));
    auto lb = lower_bound(h, 1, SosMode::hermitian_restricted);
    REQUIRE(lb.solution.status == SdpStatus::optimal);
    CHECK(lb.bound == doctest::Approx(-2.0 - g).epsilon(1e-6));
  }
}

TEST_CASE("toy model degree-4 bound is exact") {
  for (double eps : {0.0, 0.5, 1.0, 1.5}) {
    auto h = build_hamiltonian(ModelSpec::toy4(eps));
    auto lb = lower_bound(h, 2, SosMode::general);
    REQUIRE(lb.solution.status == SdpStatus::optimal);
    CHECK(lb.bound ==
          doctest::Approx(2.0 - std::sqrt(4 + eps * eps)).epsilon(1e-6));
  }
}

TEST_CASE("certificates re-expand to H") {
  // two-qubit at g=1: bound -sqrt(5), residual small
  {
    auto h = build_hamiltonian(ModelSpec::two_qubit(1.0));
    auto lb = lower_bound(h, 1, SosMode::general);
    auto cert = extract_certificate(lb.problem, lb.solution);
    cert.residual = certificate_residual(h, cert);
    CHECK(cert.bound == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-6));
    CHECK(cert.residual <= 1e-5 * h.norm_l1());
  }
  // identity Hamiltonian: bound 1, no squares
  {
    auto h = OperatorPolynomial::identity(Algebra::pauli, 1);
    auto lb = lower_bound(h, 1, SosMode::general);
    auto cert = extract_certificate(lb.problem, lb.solution);
    cert.residual = certificate_residual(h, cert);
    CHECK(cert.bound == doctest::Approx(1.0).epsilon(1e-7));
    double wsum = 0;
    for (double w : cert.weights) wsum += w;
    CHECK(wsum < 1e-6);
    CHECK(cert.residual < 1e-6);
  }
  // toy4: coefficient-wise reproduction within 1e-5
  {
    auto h = build_hamiltonian(ModelSpec::toy4(1.5));
    auto lb = lower_bound(h, 2, SosMode::general);
    auto cert = extract_certificate(lb.problem, lb.solution);
    cert.residual = certificate_residual(h, cert);
    CHECK(cert.residual <= 1e-5 * h.norm_l1());
    // weights nonnegative, squares of degree <= r
    for (double w : cert.weights) CHECK(w >= 0.0);
    for (const auto& o : cert.squares) CHECK(o.degree() <= 2);
  }
  // restricted-mode certificate re-expands too
  {
    auto h = build_hamiltonian(ModelSpec::two_qubit(0.7));
    auto lb = lower_bound(h, 1, SosMode::hermitian_restricted);
    auto cert = extract_certificate(lb.problem, lb.solution);
    cert.residual = certificate_residual(h, cert);
    CHECK(cert.residual <= 1e-5 * h.norm_l1());
    for (const auto& o : cert.squares) CHECK(o.is_hermitian(1e-8));
  }
}

TEST_CASE("soundness: bound <= exact ground energy across models") {
  auto check_model = [](const OperatorPolynomial& h, int r, SosMode mode) {
    auto lb = lower_bound(h, r, mode);
    REQUIRE(lb.solution.status == SdpStatus::optimal);
    double e0 = ground_energy(h);
    CHECK(lb.bound <= e0 + 1e-6);
    return lb.bound;
  };
  check_model(build_hamiltonian(ModelSpec::two_qubit(1.3)), 1,
              SosMode::general);
  check_model(build_hamiltonian(ModelSpec::two_qubit(1.3)), 1,
              SosMode::hermitian_restricted);
  check_model(build_hamiltonian(ModelSpec::toy4(0.8)), 2, SosMode::general);
  check_model(build_hamiltonian(ModelSpec::syk(8, 4, 11)), 2,
              SosMode::general);
  check_model(build_hamiltonian(ModelSpec::tfim_meanfield(4, 0.9)), 1,
              SosMode::general);
}

TEST_CASE("mode ordering: restricted <= general") {
  for (double g : {0.4, 1.0}) {
    auto h = build_hamiltonian(ModelSpec::two_qubit(g));
    double bg = lower_bound(h, 1, SosMode::general).bound;
    double br = lower_bound(h, 1, SosMode::hermitian_restricted).bound;
    CHECK(br <= bg + 1e-7);
  }
  auto toy = build_hamiltonian(ModelSpec::toy4(1.0));
  CHECK(lower_bound(toy, 2, SosMode::hermitian_restricted).bound <=
        lower_bound(toy, 2, SosMode::general).bound + 1e-7);
}

TEST_CASE("hierarchy monotonicity in r") {
  auto h = build_hamiltonian(ModelSpec::syk(6, 4, 21));
  double b2 = lower_bound(h, 2, SosMode::general).bound;
  double b3 = lower_bound(h, 3, SosMode::general).bound;
  CHECK(b3 >= b2 - 1e-7);
  double e0 = ground_energy(h);
  CHECK(b3 <= e0 + 1e-6);
}

TEST_CASE("even-parity restriction reproduces the full bound") {
  auto toy = build_hamiltonian(ModelSpec::toy4(1.2));
  double full = lower_bound(toy, 2, SosMode::hermitian_restricted).bound;
  double even =
      lower_bound(toy, 2, SosMode::hermitian_restricted, {}, true).bound;
  CHECK(even == doctest::Approx(full).epsilon(1e-6));
}

TEST_CASE("rank diagnostics on the toy model") {
  auto basis = enumerate_basis(Algebra::fermion, 4, 2);
  {
    auto h = build_hamiltonian(ModelSpec::toy4(0.0));
    // eps = 0 ground state is degenerate-safe (gap 1), diagnostics exact
    auto rep = moment_rank_report(h, basis, StateSource::exact_ground_state);
    CHECK(rep.zero_count == 26);
    CHECK(rep.even_zero_count == 22);
    CHECK(rep.zero_count == rep.even_zero_count + rep.odd_zero_count);
  }
  {
    auto h = build_hamiltonian(ModelSpec::toy4(0.5));
    auto rep = moment_rank_report(h, basis, StateSource::exact_ground_state);
    // The ground state a|0000> + b|1111> is annihilated by the 12
    // operators p+_i p_j, the 6 combinations u p+ p+ + p p, and the 3
    // differences n_i - n_j; the Gram over the 37-element basis spans
    // the full 16-dimensional space, so 37 - 16 = 21 zeros (all in the
    // even sector: 29 - 8 = 21).
    CHECK(rep.zero_count == 21);
    CHECK(rep.even_zero_count == 21);
    CHECK(rep.odd_zero_count == 0);
  }
}

TEST_CASE("zero count formula matches measured eps=0 zeros") {
  CHECK(zero_count_formula(4, 2) == 26);
  CHECK(zero_count_formula(1, 1) == 1);
  for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}, {5, 2}}) {
    OperatorPolynomial h(Algebra::fermion, n);
    for (int i = 0; i < n; ++i)
      h += fermion_word(n, 1.0, {{i, true}, {i, false}});
    auto basis = enumerate_basis(Algebra::fermion, n, r);
    auto rep = moment_rank_report(h, basis, StateSource::exact_ground_state);
    CHECK(rep.zero_count == zero_count_formula(n, r));
  }
}

TEST_CASE("sdp-sourced moment matrix agrees with exact one for toy4") {
  // Degree-4 SoS is exact for this model, so pseudo-expectations from
  // the solved SDP reproduce the ground-state moment matrix spectrum.
  auto h = build_hamiltonian(ModelSpec::toy4(0.7));
  auto basis = enumerate_basis(Algebra::fermion, 4, 1);
  auto exact = moment_rank_report(h, basis, StateSource::exact_ground_state);
  auto sdp = moment_rank_report(h, basis, StateSource::sdp, 1e-7, 2);
  CHECK((exact.eigenvalues - sdp.eigenvalues).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("symmetry-reduced ring bound equals the unreduced value") {
  // TFIM ring
  for (int n : {4, 5}) {
    for (double hh : {0.4, 1.1}) {
      OperatorPolynomial H(Algebra::pauli, n);
      for (int j = 0; j < n; ++j) {
        H += pauli_term(n, -0.5, {{j, 'Z'}, {(j + 1) % n, 'Z'}});
        H += pauli_term(n, -hh, {{j, 'X'}});
      }
      double reduced = symmetry_reduced_ring_bound(H);
      double full = lower_bound(H, 1, SosMode::general).bound;
      CHECK(reduced == doctest::Approx(full).epsilon(1e-6));
    }
  }
  // mean-field model is also cyclic + flip invariant
  auto H = build_hamiltonian(ModelSpec::tfim_meanfield(5, 0.8));
  CHECK(symmetry_reduced_ring_bound(H) ==
        doctest::Approx(lower_bound(H, 1, SosMode::general).bound)
            .epsilon(1e-6));
}

TEST_CASE("degree guard") {
  auto toy = build_hamiltonian(ModelSpec::toy4(0.5));
  CHECK_THROWS_AS((void)build_moment_problem(toy, 1, SosMode::general),
                  std::invalid_argument);
}

TEST_CASE("certificate json export") {
  auto h = build_hamiltonian(ModelSpec::two_qubit(1.0));
  auto lb = lower_bound(h, 1, SosMode::general);
  auto cert = extract_certificate(lb.problem, lb.solution);
  auto text = certificate_to_json(cert);
  CHECK(text.find("\"weight\"") != std::string::npos);
  CHECK(text.find("\"bound\"") != std::string::npos);
}
