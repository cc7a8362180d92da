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

#include "qsos/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace qsos {

namespace {

constexpr cplx kI{0.0, 1.0};

// Levi-Civita phase table for single-site Pauli products:
// sigma_a sigma_b = delta_ab I + i eps_abc sigma_c, a,b in {1=X,2=Y,3=Z}.
// Returns (letter, phase); letter 0 means identity.
std::pair<int, cplx> pauli_site_mul(int a, int b) {
  if (a == b) return {0, 1.0};
  if (a == 0) return {b, 1.0};
  if (b == 0) return {a, 1.0};
  int c = 6 - a - b;  // the remaining letter
  // eps: (1,2,3),(2,3,1),(3,1,2) -> +1
  bool even = (b - a + 3) % 3 == 1;
  return {c, even ? kI : -kI};
}

}  // namespace

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  PauliString out;
  out.phase = a.phase * b.phase;
  out.letters.reserve(a.letters.size() + b.letters.size());
  std::size_t i = 0, j = 0;
  while (i < a.letters.size() || j < b.letters.size()) {
    std::uint32_t sa = i < a.letters.size() ? a.letters[i] >> 2 : ~0u;
    std::uint32_t sb = j < b.letters.size() ? b.letters[j] >> 2 : ~0u;
    if (sa < sb) {
      out.letters.push_back(a.letters[i++]);
    } else if (sb < sa) {
      out.letters.push_back(b.letters[j++]);
    } else {
      int la = a.letters[i] & 3, lb = b.letters[j] & 3;
      auto [lc, ph] = pauli_site_mul(la, lb);
      out.phase *= ph;
      if (lc != 0) out.letters.push_back((sa << 2) | lc);
      ++i;
      ++j;
    }
  }
  return out;
}

MajoranaMonomial majorana_mul(const MajoranaMonomial& a,
                              const MajoranaMonomial& b) {
  // Merge the two increasing index lists, counting the transpositions
  // needed to move each element of b past the remaining tail of a.
  MajoranaMonomial out;
  out.sign = a.sign * b.sign;
  std::vector<std::uint32_t> merged;
  merged.reserve(a.indices.size() + b.indices.size());
  std::size_t i = 0, j = 0;
  long swaps = 0;
  while (i < a.indices.size() && j < b.indices.size()) {
    if (a.indices[i] < b.indices[j]) {
      merged.push_back(a.indices[i++]);
    } else if (a.indices[i] > b.indices[j]) {
      swaps += static_cast<long>(a.indices.size() - i);
      merged.push_back(b.indices[j++]);
    } else {
      // Equal indices: gamma^2 = 1.  Bringing b[j] adjacent to a[i]
      // costs (len(a)-i-1) transpositions, then the pair cancels.
      swaps += static_cast<long>(a.indices.size() - i - 1);
      ++i;
      ++j;
    }
  }
  while (i < a.indices.size()) merged.push_back(a.indices[i++]);
  while (j < b.indices.size()) merged.push_back(b.indices[j++]);
  if (swaps % 2 != 0) out.sign = -out.sign;
  out.indices = std::move(merged);
  return out;
}

MonoKey FermionMonomial::key() const {
  MonoKey k;
  k.reserve(creators.size() + annihilators.size());
  for (auto u : creators) k.push_back(u << 1);
  for (auto v : annihilators) k.push_back((v << 1) | 1);
  return k;
}

cplx OperatorPolynomial::coefficient(const MonoKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? cplx{0.0} : it->second;
}

void OperatorPolynomial::add_term(const MonoKey& k, cplx c) {
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kCoeffTol) terms_.erase(it);
}

void OperatorPolynomial::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

OperatorPolynomial& OperatorPolynomial::operator+=(
    const OperatorPolynomial& o) {
  if (o.algebra_ != algebra_ || o.sites_ != sites_) {
    if (!terms_.empty() && !o.terms_.empty())
      throw std::invalid_argument("operator algebra/size mismatch in +=");
    if (terms_.empty()) {
      algebra_ = o.algebra_;
      sites_ = o.sites_;
    }
  }
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator-=(
    const OperatorPolynomial& o) {
  OperatorPolynomial neg = o;
  neg *= cplx{-1.0};
  return (*this) += neg;
}

OperatorPolynomial& OperatorPolynomial::operator*=(cplx s) {
  if (std::abs(s) <= kCoeffTol) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

int OperatorPolynomial::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max<int>(d, (int)k.size());
  return d;
}

double OperatorPolynomial::norm_l1() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += std::abs(c);
  return s;
}

int OperatorPolynomial::parity() const {
  bool even = true, odd = true;
  for (const auto& [k, c] : terms_) {
    if (k.size() % 2 == 0)
      odd = false;
    else
      even = false;
  }
  if (even && !terms_.empty()) return 1;
  if (odd && !terms_.empty()) return -1;
  return 0;
}

bool OperatorPolynomial::is_hermitian(double tol) const {
  OperatorPolynomial d = adjoint(*this);
  d -= *this;
  return d.norm_l1() <= tol;
}

std::string OperatorPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+")
       << std::abs(c.imag()) << "i)";
    if (k.empty()) {
      os << "*1";
      continue;
    }
    for (auto e : k) {
      switch (algebra_) {
        case Algebra::pauli: {
          static const char* L = "IXYZ";
          os << "*" << L[e & 3] << (e >> 2);
          break;
        }
        case Algebra::majorana:
          os << "*g" << e;
          break;
        case Algebra::fermion:
          os << "*c" << (e >> 1) << ((e & 1) ? "" : "^");
          break;
      }
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

void check_compatible(const OperatorPolynomial& a,
                      const OperatorPolynomial& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("operator algebra tag mismatch");
  if (a.sites() != b.sites())
    throw std::invalid_argument("operator system size mismatch");
}

// Normal order an arbitrary fermion word by worklist rewriting.
// Each work item is (coefficient, list of (index, dagger)).
void normal_order_word(int modes, cplx coeff,
                       std::vector<std::pair<std::uint32_t, bool>> word,
                       OperatorPolynomial* out) {
  struct Item {
    cplx c;
    std::vector<std::pair<std::uint32_t, bool>> w;
  };
  std::deque<Item> work;
  work.push_back({coeff, std::move(word)});
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    bool rewritten = false;
    auto& w = it.w;
    for (std::size_t i = 0; i + 1 < w.size() && !rewritten; ++i) {
      auto [ia, da] = w[i];
      auto [ib, db] = w[i + 1];
      if (!da && db) {
        // psi_a psi^dag_b = delta_ab - psi^dag_b psi_a
        Item swapped = it;
        std::swap(swapped.w[i], swapped.w[i + 1]);
        swapped.c = -it.c;
        if (ia == ib) {
          Item contracted;
          contracted.c = it.c;
          contracted.w.assign(w.begin(), w.begin() + i);
          contracted.w.insert(contracted.w.end(), w.begin() + i + 2, w.end());
          work.push_back(std::move(contracted));
        }
        work.push_back(std::move(swapped));
        rewritten = true;
      } else if (da == db) {
        if (ia == ib) {
          rewritten = true;  // psi^2 = 0, drop item
          it.c = 0.0;
          break;
        }
        if (ia > ib) {
          // Same species out of order: anticommute.
          Item swapped = std::move(it);
          std::swap(swapped.w[i], swapped.w[i + 1]);
          swapped.c = -swapped.c;
          work.push_back(std::move(swapped));
          rewritten = true;
        }
      }
    }
    if (rewritten) continue;
    if (std::abs(it.c) <= kCoeffTol) continue;
    FermionMonomial m;
    for (auto [idx, dag] : w) {
      if (dag)
        m.creators.push_back(idx);
      else
        m.annihilators.push_back(idx);
    }
    out->add_term(m.key(), it.c);
  }
  (void)modes;
}

}  // namespace

OperatorPolynomial multiply(const OperatorPolynomial& a,
                            const OperatorPolynomial& b) {
  check_compatible(a, b);
  OperatorPolynomial out(a.algebra(), a.sites());
  switch (a.algebra()) {
    case Algebra::pauli: {
      for (const auto& [ka, ca] : a.terms()) {
        PauliString pa{1.0, ka};
        for (const auto& [kb, cb] : b.terms()) {
          PauliString pr = pauli_mul(pa, PauliString{1.0, kb});
          out.add_term(pr.letters, ca * cb * pr.phase);
        }
      }
      break;
    }
    case Algebra::majorana: {
      for (const auto& [ka, ca] : a.terms()) {
        MajoranaMonomial ma{1.0, ka};
        for (const auto& [kb, cb] : b.terms()) {
          MajoranaMonomial mr = majorana_mul(ma, MajoranaMonomial{1.0, kb});
          out.add_term(mr.indices, ca * cb * mr.sign);
        }
      }
      break;
    }
    case Algebra::fermion: {
      for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
          std::vector<std::pair<std::uint32_t, bool>> word;
          word.reserve(ka.size() + kb.size());
          for (auto e : ka) word.emplace_back(e >> 1, (e & 1) == 0);
          for (auto e : kb) word.emplace_back(e >> 1, (e & 1) == 0);
          normal_order_word(a.sites(), ca * cb, std::move(word), &out);
        }
      }
      break;
    }
  }
  out.prune();
  return out;
}

OperatorPolynomial adjoint(const OperatorPolynomial& p) {
  OperatorPolynomial out(p.algebra(), p.sites());
  switch (p.algebra()) {
    case Algebra::pauli:
      // Canonical Pauli strings are Hermitian.
      for (const auto& [k, c] : p.terms()) out.add_term(k, std::conj(c));
      break;
    case Algebra::majorana:
      // (g_1..g_d)^dag = g_d..g_1 = (-1)^{d(d-1)/2} g_1..g_d.
      for (const auto& [k, c] : p.terms()) {
        long d = static_cast<long>(k.size());
        double s = (d * (d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        out.add_term(k, s * std::conj(c));
      }
      break;
    case Algebra::fermion:
      // (Psi^dag_u Psi_v)^dag = Psi^dag_v Psi_u up to reversal signs.
      for (const auto& [k, c] : p.terms()) {
        std::vector<std::uint32_t> cr, an;
        for (auto e : k)
          ((e & 1) == 0 ? cr : an).push_back(e >> 1);
        // Reverse both groups to keep ascending order after dagger;
        // each group of length L contributes L(L-1)/2 transpositions.
        long s = static_cast<long>(cr.size()) * (cr.size() - 1) / 2 +
                 static_cast<long>(an.size()) * (an.size() - 1) / 2;
        FermionMonomial m;
        m.creators = an;
        m.annihilators = cr;
        out.add_term(m.key(), (s % 2 == 0 ? 1.0 : -1.0) * std::conj(c));
      }
      break;
  }
  out.prune();
  return out;
}

OperatorPolynomial normal_order(const OperatorPolynomial& p) {
  if (p.algebra() != Algebra::fermion)
    throw std::invalid_argument("normal_order requires the fermion algebra");
  // Keys are normal ordered by construction; re-canonicalize defensively
  // by passing every term through the rewriter.
  OperatorPolynomial out(Algebra::fermion, p.sites());
  for (const auto& [k, c] : p.terms()) {
    std::vector<std::pair<std::uint32_t, bool>> word;
    for (auto e : k) word.emplace_back(e >> 1, (e & 1) == 0);
    normal_order_word(p.sites(), c, std::move(word), &out);
  }
  out.prune();
  return out;
}

OperatorPolynomial fermion_word(
    int modes, cplx coeff, const std::vector<std::pair<int, bool>>& ops) {
  OperatorPolynomial out(Algebra::fermion, modes);
  std::vector<std::pair<std::uint32_t, bool>> word;
  word.reserve(ops.size());
  for (auto [idx, dag] : ops) word.emplace_back((std::uint32_t)idx, dag);
  normal_order_word(modes, coeff, std::move(word), &out);
  out.prune();
  return out;
}

OperatorPolynomial to_majorana(const OperatorPolynomial& p) {
  if (p.algebra() != Algebra::fermion)
    throw std::invalid_argument("to_majorana requires the fermion algebra");
  int nmaj = 2 * p.sites();
  OperatorPolynomial out(Algebra::majorana, nmaj);
  for (const auto& [k, c] : p.terms()) {
    // psi_a = (g_{2a} + i g_{2a+1})/2,  psi^dag_a = (g_{2a} - i g_{2a+1})/2.
    OperatorPolynomial acc = OperatorPolynomial::identity(Algebra::majorana,
                                                          nmaj);
    acc *= c;
    for (auto e : k) {
      std::uint32_t a = e >> 1;
      bool dag = (e & 1) == 0;
      OperatorPolynomial f(Algebra::majorana, nmaj);
      f.add_term(MonoKey{2 * a}, 0.5);
      f.add_term(MonoKey{2 * a + 1}, dag ? cplx{0, -0.5} : cplx{0, 0.5});
      acc = multiply(acc, f);
    }
    out += acc;
  }
  out.prune();
  return out;
}

OperatorPolynomial to_fermion(const OperatorPolynomial& p) {
  if (p.algebra() != Algebra::majorana)
    throw std::invalid_argument("to_fermion requires the majorana algebra");
  if (p.sites() % 2 != 0)
    throw std::invalid_argument("odd Majorana count has no mode mapping");
  int modes = p.sites() / 2;
  OperatorPolynomial out(Algebra::fermion, modes);
  for (const auto& [k, c] : p.terms()) {
    // g_{2a} = psi_a + psi^dag_a, g_{2a+1} = -i(psi_a - psi^dag_a).
    OperatorPolynomial acc = OperatorPolynomial::identity(Algebra::fermion,
                                                          modes);
    acc *= c;
    for (auto e : k) {
      std::uint32_t a = e >> 1;
      bool odd = (e & 1) != 0;
      OperatorPolynomial f(Algebra::fermion, modes);
      FermionMonomial ann, cre;
      ann.annihilators = {a};
      cre.creators = {a};
      if (!odd) {
        f.add_term(ann.key(), 1.0);
        f.add_term(cre.key(), 1.0);
      } else {
        f.add_term(ann.key(), cplx{0, -1.0});
        f.add_term(cre.key(), cplx{0, 1.0});
      }
      acc = multiply(acc, f);
    }
    out += acc;
  }
  out.prune();
  return out;
}

cplx majorana_hermitian_phase(int degree) {
  switch (((degree / 2) % 4 + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

OperatorPolynomial pauli_term(int qubits, cplx coeff,
                              const std::vector<std::pair<int, char>>& ops) {
  OperatorPolynomial out(Algebra::pauli, qubits);
  PauliString s;
  for (auto [site, letter] : ops) {
    int l = letter == 'X' ? 1 : letter == 'Y' ? 2 : 3;
    PauliString one{1.0, {static_cast<std::uint32_t>((site << 2) | l)}};
    s = pauli_mul(s, one);
  }
  out.add_term(s.letters, coeff * s.phase);
  return out;
}

OperatorPolynomial majorana_term(int majoranas, cplx coeff,
                                 const std::vector<int>& indices) {
  OperatorPolynomial out(Algebra::majorana, majoranas);
  MajoranaMonomial m;
  for (int i : indices) {
    MajoranaMonomial one{1.0, {static_cast<std::uint32_t>(i)}};
    m = majorana_mul(m, one);
  }
  out.add_term(m.indices, coeff * m.sign);
  return out;
}

}  // namespace qsos
