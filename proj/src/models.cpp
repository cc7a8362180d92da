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

#include "qsos/models.hpp"

#include <stdexcept>

#include "qsos/rng.hpp"
#include "qsos/syk_tensor.hpp"

namespace qsos {

ModelSpec ModelSpec::two_qubit(double g) {
  ModelSpec s;
  s.kind = Kind::two_qubit;
  s.g = g;
  s.n = 2;
  return s;
}

ModelSpec ModelSpec::toy4(double eps) {
  ModelSpec s;
  s.kind = Kind::toy4;
  s.eps = eps;
  s.n = 4;
  return s;
}

ModelSpec ModelSpec::tfim_meanfield(int n, double h) {
  ModelSpec s;
  s.kind = Kind::tfim_meanfield;
  s.n = n;
  s.h = h;
  return s;
}

ModelSpec ModelSpec::tfim3d(int L, double h) {
  ModelSpec s;
  s.kind = Kind::tfim3d;
  s.L = L;
  s.h = h;
  s.n = L * L * L;
  return s;
}

ModelSpec ModelSpec::syk(int n, int q, std::uint64_t seed) {
  ModelSpec s;
  s.kind = Kind::syk;
  s.n = n;
  s.q = q;
  s.seed = seed;
  return s;
}

ModelSpec ModelSpec::quartic_fermion(std::vector<double> E,
                                     OperatorPolynomial V, double eps) {
  ModelSpec s;
  s.kind = Kind::quartic_fermion;
  s.E = std::move(E);
  s.V = std::move(V);
  s.eps = eps;
  s.n = static_cast<int>(s.E.size());
  return s;
}

OperatorPolynomial build_hamiltonian(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelSpec::Kind::two_qubit: {
      OperatorPolynomial h = pauli_term(2, 1.0, {{0, 'Z'}});
      h += pauli_term(2, 1.0, {{1, 'Z'}});
      h += pauli_term(2, spec.g, {{0, 'X'}, {1, 'X'}});
      return h;
    }
    case ModelSpec::Kind::toy4: {
      OperatorPolynomial h(Algebra::fermion, 4);
      for (int i = 0; i < 4; ++i)
        h += fermion_word(4, 1.0, {{i, true}, {i, false}});
      h += fermion_word(4, spec.eps,
                        {{0, true}, {1, true}, {2, true}, {3, true}});
      h += fermion_word(4, spec.eps,
                        {{3, false}, {2, false}, {1, false}, {0, false}});
      return h;
    }
    case ModelSpec::Kind::tfim_meanfield: {
      if (spec.n < 2) throw std::invalid_argument("tfim_meanfield: n >= 2");
      const int n = spec.n;
      OperatorPolynomial h(Algebra::pauli, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          h += pauli_term(n, -1.0 / n, {{i, 'Z'}, {j, 'Z'}});
      for (int i = 0; i < n; ++i) h += pauli_term(n, -spec.h, {{i, 'X'}});
      return h;
    }
    case ModelSpec::Kind::tfim3d: {
      if (spec.L < 2) throw std::invalid_argument("tfim3d: L >= 2");
      const int L = spec.L, n = L * L * L;
      if (n > 16) throw std::invalid_argument("tfim3d polynomial: L too big");
      auto site = [L](int x, int y, int z) {
        return ((x % L) * L + (y % L)) * L + (z % L);
      };
      OperatorPolynomial h(Algebra::pauli, n);
      for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
          for (int z = 0; z < L; ++z) {
            int j = site(x, y, z);
            int nb[3] = {site(x + 1, y, z), site(x, y + 1, z),
                         site(x, y, z + 1)};
            for (int k : nb)
              h += pauli_term(n, -0.5, {{j, 'Z'}, {k, 'Z'}});
            h += pauli_term(n, -spec.h, {{j, 'X'}});
          }
      return h;
    }
    case ModelSpec::Kind::syk: {
      SykTensor J = sample_syk(spec.n, spec.q, spec.seed);
      double qfact = 1.0;
      for (int i = 2; i <= spec.q; ++i) qfact *= i;
      OperatorPolynomial h(Algebra::majorana, spec.n);
      J.for_each_tuple([&](const std::vector<int>& idx, double c) {
        if (c == 0.0) return;
        MonoKey k(idx.begin(), idx.end());
        h.add_term(k, qfact * c);
      });
      return h;
    }
    case ModelSpec::Kind::quartic_fermion: {
      const int n = static_cast<int>(spec.E.size());
      if (n < 1) throw std::invalid_argument("quartic_fermion: empty E");
      OperatorPolynomial h(Algebra::fermion, n);
      for (int j = 0; j < n; ++j) {
        if (spec.E[j] <= 0.0)
          throw std::invalid_argument("quartic_fermion: E_j must be > 0");
        h += fermion_word(n, spec.E[j], {{j, true}, {j, false}});
      }
      OperatorPolynomial v = spec.V;
      v *= spec.eps;
      h += v;
      return h;
    }
  }
  throw std::invalid_argument("unknown model kind");
}

QuarticFamily random_quartic_family(int modes, std::uint64_t seed) {
  if (modes < 4)
    throw std::invalid_argument("random_quartic_family: modes >= 4");
  CounterRng rng(seed, 0x51554152);
  QuarticFamily fam;
  fam.E.resize(modes);
  for (int j = 0; j < modes; ++j) fam.E[j] = 1.0 + rng.uniform();
  // Random normal-ordered quartic terms with every creator/annihilator
  // split p = 4..0 represented, Hermitized.
  OperatorPolynomial v(Algebra::fermion, modes);
  auto add_pair = [&](const std::vector<std::pair<int, bool>>& word,
                      double c) {
    OperatorPolynomial t = fermion_word(modes, c, word);
    v += t;
    v += adjoint(t);
  };
  // p = 4: the full creation quadruple on a random 4-subset.
  std::vector<int> all(modes);
  for (int i = 0; i < modes; ++i) all[i] = i;
  auto pick4 = [&]() {
    std::vector<int> s = all;
    for (int i = 0; i < 4; ++i)
      std::swap(s[i], s[i + (int)rng.below(modes - i)]);
    s.resize(4);
    return s;
  };
  for (int k = 0; k < 2; ++k) {
    auto s = pick4();
    add_pair({{s[0], true}, {s[1], true}, {s[2], true}, {s[3], true}},
             rng.normal());
  }
  // p = 3: three creators, one annihilator.
  for (int k = 0; k < 2; ++k) {
    auto s = pick4();
    add_pair({{s[0], true}, {s[1], true}, {s[2], true}, {s[3], false}},
             rng.normal());
  }
  // p = 2: number-conserving scattering terms.
  for (int k = 0; k < 3; ++k) {
    auto s = pick4();
    add_pair({{s[0], true}, {s[1], true}, {s[2], false}, {s[3], false}},
             rng.normal());
  }
  v = normal_order(v);
  double norm = v.norm_l1();
  v *= 1.0 / norm;
  fam.V = v;
  return fam;
}

}  // namespace qsos
