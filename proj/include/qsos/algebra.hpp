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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qsos {

using cplx = std::complex<double>;

/// Coefficients with |c| below this are dropped after arithmetic.
inline constexpr double kCoeffTol = 1e-14;

enum class Algebra { pauli, majorana, fermion };

/// A canonical monomial key.  Encoding depends on the algebra:
///   pauli    — sorted (site << 2 | letter) with letter 1=X, 2=Y, 3=Z,
///              distinct sites, ascending.
///   majorana — strictly increasing Majorana indices (0-based).
///   fermion  — creators (idx << 1) ascending, then annihilators
///              (idx << 1 | 1) ascending; normal ordered by construction.
/// The empty key is the identity in every algebra.
using MonoKey = std::vector<std::uint32_t>;

/// A single Pauli string with its scalar phase in {1, i, -1, -i}.
struct PauliString {
  cplx phase{1.0, 0.0};
  MonoKey letters;  // canonical encoding as above

  int weight() const { return static_cast<int>(letters.size()); }
  static PauliString identity() { return PauliString{}; }
};

/// Product of two canonical Pauli strings (site-by-site multiplication).
PauliString pauli_mul(const PauliString& a, const PauliString& b);

/// A signed Majorana monomial gamma_{i1} ... gamma_{id}, i1 < ... < id.
struct MajoranaMonomial {
  double sign = 1.0;
  MonoKey indices;

  int degree() const { return static_cast<int>(indices.size()); }
};

/// Product using {gamma_a, gamma_b} = 2 delta_ab; sign from the merge
/// transposition count, repeated indices cancel in pairs.
MajoranaMonomial majorana_mul(const MajoranaMonomial& a,
                              const MajoranaMonomial& b);

/// A normal-ordered fermion monomial  psi^dag_{u1}..psi^dag_{us}
/// psi_{v1}..psi_{vt} with u, v strictly increasing.
struct FermionMonomial {
  double sign = 1.0;
  std::vector<std::uint32_t> creators;
  std::vector<std::uint32_t> annihilators;

  int degree() const {
    return static_cast<int>(creators.size() + annihilators.size());
  }
  MonoKey key() const;
};

/// Sparse operator polynomial over canonical monomials of one algebra.
///
/// `sites` counts qubits (pauli), modes (fermion) or Majorana operators
/// (majorana).  Pure value semantics; all operations return new values.
class OperatorPolynomial {
 public:
  OperatorPolynomial() = default;
  OperatorPolynomial(Algebra alg, int sites) : algebra_(alg), sites_(sites) {}

  static OperatorPolynomial identity(Algebra alg, int sites) {
    OperatorPolynomial p(alg, sites);
    p.add_term(MonoKey{}, 1.0);
    return p;
  }

  Algebra algebra() const { return algebra_; }
  int sites() const { return sites_; }
  const std::map<MonoKey, cplx>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  cplx coefficient(const MonoKey& k) const;
  void add_term(const MonoKey& k, cplx c);
  void prune(double tol = kCoeffTol);

  OperatorPolynomial& operator+=(const OperatorPolynomial& o);
  OperatorPolynomial& operator-=(const OperatorPolynomial& o);
  OperatorPolynomial& operator*=(cplx s);

  friend OperatorPolynomial operator+(OperatorPolynomial a,
                                      const OperatorPolynomial& b) {
    a += b;
    return a;
  }
  friend OperatorPolynomial operator-(OperatorPolynomial a,
                                      const OperatorPolynomial& b) {
    a -= b;
    return a;
  }
  friend OperatorPolynomial operator*(OperatorPolynomial a, cplx s) {
    a *= s;
    return a;
  }

  /// Max monomial degree (pauli weight / operator count); 0 for identity.
  int degree() const;

  /// l1 norm of the coefficient vector.
  double norm_l1() const;

  bool is_hermitian(double tol = 1e-10) const;

  /// +1 if every monomial has even degree, -1 if every monomial odd,
  /// 0 if mixed (fermion/majorana parity grading).
  int parity() const;

  std::string to_string() const;

 private:
  Algebra algebra_ = Algebra::pauli;
  int sites_ = 0;
  std::map<MonoKey, cplx> terms_;
};

/// Canonical-form product.  Throws std::invalid_argument on algebra or
/// size mismatch.
OperatorPolynomial multiply(const OperatorPolynomial& a,
                            const OperatorPolynomial& b);

/// Hermitian adjoint.
OperatorPolynomial adjoint(const OperatorPolynomial& p);

/// Rewrites a fermion polynomial so every term is normal ordered
/// (creators left of annihilators, indices ascending).  Identity on
/// already-canonical input.  Throws on non-fermion tag.
OperatorPolynomial normal_order(const OperatorPolynomial& p);

/// Builds a fermion polynomial from an arbitrary operator word
/// (index, dagger) with the given coefficient, normal ordering as needed.
OperatorPolynomial fermion_word(int modes, cplx coeff,
                                const std::vector<std::pair<int, bool>>& ops);

/// Fermion -> Majorana with gamma_{2a} = psi_a + psi^dag_a,
/// gamma_{2a+1} = -i (psi_a - psi^dag_a)  (0-based Majorana indices).
OperatorPolynomial to_majorana(const OperatorPolynomial& p);

/// Majorana -> fermion, inverse of the convention above; result is
/// normal ordered.
OperatorPolynomial to_fermion(const OperatorPolynomial& p);

/// Hermitian normalization phase for a Majorana monomial of degree d:
/// i^{floor(d/2)} gamma_S is Hermitian.
cplx majorana_hermitian_phase(int degree);

/// Single-string helpers used by builders and tests.
OperatorPolynomial pauli_term(int qubits, cplx coeff,
                              const std::vector<std::pair<int, char>>& ops);
OperatorPolynomial majorana_term(int majoranas, cplx coeff,
                                 const std::vector<int>& indices);

}  // namespace qsos
