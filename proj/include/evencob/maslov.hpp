#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "evencob/symplectic.hpp"

namespace evencob {

/// Three Lagrangian subspaces of one symplectic space. Construction validates.
class LagrangianTriple {
 public:
  LagrangianTriple(SymplecticSpace space, RationalSubspace l1, RationalSubspace l2, RationalSubspace l3)
      : space_(std::move(space)), l_{std::move(l1), std::move(l2), std::move(l3)} {
    for (std::size_t i = 0; i < 3; ++i) {
      if (l_[i].ambient_dim() != space_.dim())
        throw DimensionMismatch("triple member " + std::to_string(i + 1) + " has ambient dimension " +
                                std::to_string(l_[i].ambient_dim()) + ", space has " +
                                std::to_string(space_.dim()));
      if (!is_lagrangian(space_, l_[i]))
        throw NotLagrangian("triple member " + std::to_string(i + 1) + " is not Lagrangian");
    }
  }

  const SymplecticSpace& space() const { return space_; }
  const RationalSubspace& l1() const { return l_[0]; }
  const RationalSubspace& l2() const { return l_[1]; }
  const RationalSubspace& l3() const { return l_[2]; }
  const RationalSubspace& operator[](std::size_t i) const { return l_[i]; }

 private:
  SymplecticSpace space_;
  RationalSubspace l_[3];
};

struct Decomposition {
  RationalVector first;   // in l1
  RationalVector second;  // in l2
};

/// Splits a = a1 + a2 with a1 in l1, a2 in l2. Solves [B1; B2]^T c = a and keeps the
/// solution whose free coefficients are zero, so l1 is preferred whenever the split is
/// not unique.
inline Decomposition decompose(const RationalSubspace& l1, const RationalSubspace& l2, const RationalVector& a) {
  RationalSubspace::require_same_ambient(l1, l2, "decompose");
  if (a.size() != l1.ambient_dim()) throw DimensionMismatch("decompose: vector length mismatch");
  const auto stacked = vstack(l1.basis(), l2.basis());
  auto coeffs = solve_first(stacked.transpose(), a);
  if (!coeffs) throw NotInSum("decompose: vector is not in l1 + l2");
  RationalVector a1(a.size(), 0), a2(a.size(), 0);
  for (std::size_t i = 0; i < l1.dim(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) a1[k] += (*coeffs)[i] * l1.basis()(i, k);
  for (std::size_t i = 0; i < l2.dim(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) a2[k] += (*coeffs)[l1.dim() + i] * l2.basis()(i, k);
  return {std::move(a1), std::move(a2)};
}

/// The symmetric form <a, b> = psi(a2, b) on (l1 + l2) ∩ l3.
struct MaslovForm {
  RationalMatrix domain_basis;  // rows are ambient vectors
  RationalMatrix gram;
};

inline RationalSubspace maslov_domain(const LagrangianTriple& t) {
  return intersect(sum(t.l1(), t.l2()), t.l3());
}

/// gram(i, j) = psi(second_parts[i], basis row j).
inline RationalMatrix pairing_gram(const SymplecticSpace& v, const RationalMatrix& domain_basis,
                                   const std::vector<RationalVector>& second_parts) {
  const std::size_t n = domain_basis.rows();
  RationalMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = v.evaluate(second_parts[i], domain_basis.row(j));
  return gram;
}

inline MaslovForm maslov_form(const LagrangianTriple& t) {
  const auto domain = maslov_domain(t);
  std::vector<RationalVector> seconds;
  seconds.reserve(domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i)
    seconds.push_back(decompose(t.l1(), t.l2(), domain.basis_vector(i)).second);
  auto gram = pairing_gram(t.space(), domain.basis(), seconds);
  return {domain.basis(), std::move(gram)};
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  int signature() const { return static_cast<int>(positive) - static_cast<int>(negative); }
  std::size_t rank() const { return positive + negative; }
};

/// Inertia by exact symmetric congruence diagonalization. When the remaining block
/// has a zero diagonal but some entry c = S(i, j) != 0, row and column j are added
/// into i, producing the diagonal entry 2c.
inline Inertia inertia(const RationalMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw NotSymmetric("inertia: matrix is not symmetric");
  RationalMatrix s = symmetric;
  const std::size_t n = s.rows();
  auto swap_index = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(s(a, k), s(b, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(s(k, a), s(k, b));
  };
  Inertia out;
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t p = k;
    while (p < n && s(p, p) == 0) ++p;
    if (p == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j) {
          if (s(i, j) == 0) continue;
          for (std::size_t c = 0; c < n; ++c) s(i, c) += s(j, c);
          for (std::size_t r = 0; r < n; ++r) s(r, i) += s(r, j);
          p = i;
          found = true;
        }
      if (!found) break;
    }
    swap_index(k, p);
    const Rational pivot = s(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (s(r, k) == 0) continue;
      const Rational f = s(r, k) / pivot;
      for (std::size_t c = k; c < n; ++c) s(r, c) -= f * s(k, c);
      for (std::size_t c = k; c < n; ++c) s(c, r) = s(r, c);
    }
    if (pivot > 0)
      ++out.positive;
    else
      ++out.negative;
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

inline int signature(const RationalMatrix& symmetric) { return inertia(symmetric).signature(); }

inline int maslov_index(const LagrangianTriple& t) { return signature(maslov_form(t).gram); }

/// Radical of the Maslov form, in ambient coordinates.
inline RationalSubspace form_annihilator(const LagrangianTriple& t) {
  const auto form = maslov_form(t);
  const auto coords = kernel(form.gram).basis();
  return RationalSubspace::span(coords * form.domain_basis);
}

/// (l1 ∩ l3) + (l2 ∩ l3)
inline RationalSubspace predicted_annihilator(const LagrangianTriple& t) {
  return sum(intersect(t.l1(), t.l3()), intersect(t.l2(), t.l3()));
}

/// Both closed-form predictions of the Maslov index mod 2.
struct ParityPrediction {
  int via_intersections = 0;  // dim l1 + sum_{i<j} dim(li ∩ lj)
  int via_sums = 0;           // dim l1 + sum_{i<j} dim(li + lj)
  bool agree() const { return via_intersections == via_sums; }
};

inline ParityPrediction parity_prediction(const LagrangianTriple& t) {
  std::size_t caps = t.l1().dim(), cups = t.l1().dim();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      caps += intersect(t[i], t[j]).dim();
      cups += sum(t[i], t[j]).dim();
    }
  return {static_cast<int>(caps % 2), static_cast<int>(cups % 2)};
}

/// dim((l1 + l2) ∩ l3) + dim((l1 ∩ l3) + (l2 ∩ l3)) mod 2
inline int corollary_parity(const LagrangianTriple& t) {
  return static_cast<int>((maslov_domain(t).dim() + predicted_annihilator(t).dim()) % 2);
}

struct DimSumParity {
  int sum_parity = 0;           // dim(l1 + l2 + l3) mod 2
  int intersection_parity = 0;  // dim(l1 ∩ l2 ∩ l3) mod 2
};

inline DimSumParity dim_sum_parity(const LagrangianTriple& t) {
  const auto all_sum = sum(sum(t.l1(), t.l2()), t.l3());
  const auto all_cap = intersect(intersect(t.l1(), t.l2()), t.l3());
  return {static_cast<int>(all_sum.dim() % 2), static_cast<int>(all_cap.dim() % 2)};
}

inline int mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace evencob
