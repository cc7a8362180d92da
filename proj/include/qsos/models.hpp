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

#pragma once

#include <cstdint>
#include <vector>

#include "qsos/algebra.hpp"

namespace qsos {

/// Model selector for the Hamiltonian builders.
///
/// Conventions:
///   two_qubit(g)         H = Z_0 + Z_1 + g X_0 X_1                (pauli, n=2)
///   toy4(eps)            H = sum_i n_i + eps (p+_0 p+_1 p+_2 p+_3 + h.c.)
///                                                               (fermion, n=4)
///   tfim_meanfield(n,h)  H = -(1/n) sum_{i<j} Z_i Z_j - h sum X_i   (pauli)
///   tfim3d(L,h)          H = -(1/2) sum_{bonds} Z Z - h sum X, periodic
///                        L^3 cube (pauli; only sensible for tiny L)
///   syk(n,q,seed)        H = q! sum_{i1<..<iq} J_{i...} g_{i1}..g_{iq}
///                        with J from sample_syk            (majorana, n)
///   quartic_fermion      H = sum_j E_j n_j + eps V with V Hermitian
///                        normal-ordered quartic             (fermion)
struct ModelSpec {
  enum class Kind {
    two_qubit,
    toy4,
    tfim_meanfield,
    tfim3d,
    syk,
    quartic_fermion
  };
  Kind kind = Kind::two_qubit;
  double g = 0.0;
  double eps = 0.0;
  double h = 0.0;
  int n = 0;
  int L = 0;
  int q = 4;
  std::uint64_t seed = 0;
  // quartic_fermion payload
  std::vector<double> E;
  OperatorPolynomial V;

  static ModelSpec two_qubit(double g);
  static ModelSpec toy4(double eps);
  static ModelSpec tfim_meanfield(int n, double h);
  static ModelSpec tfim3d(int L, double h);
  static ModelSpec syk(int n, int q, std::uint64_t seed);
  static ModelSpec quartic_fermion(std::vector<double> E,
                                   OperatorPolynomial V, double eps);
};

/// Builds the Hermitian OperatorPolynomial for a model.  Throws
/// std::invalid_argument for invalid size parameters.
OperatorPolynomial build_hamiltonian(const ModelSpec& spec);

/// A gapped quartic perturbation family H(eps) = sum E_j n_j + eps V
/// with seeded random positive E_j and a random Hermitian quartic V of
/// unit l1 norm.  V mixes particle numbers (all p in H_{p,4-p} arise).
struct QuarticFamily {
  std::vector<double> E;
  OperatorPolynomial V;  // fermion algebra, Hermitian, quartic
  ModelSpec at(double eps) const {
    return ModelSpec::quartic_fermion(E, V, eps);
  }
};
QuarticFamily random_quartic_family(int modes, std::uint64_t seed);

}  // namespace qsos
