#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "evencob/subspace.hpp"

namespace evencob {

/// A finite-dimensional rational vector space with a skew-symmetric bilinear
/// form psi(x, y) = x^T gram y. The form may be degenerate.
class SymplecticSpace {
 public:
  SymplecticSpace() = default;
  explicit SymplecticSpace(RationalMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square()) throw DimensionMismatch("gram matrix must be square, got " + gram_.shape());
    if (!gram_.is_skew_symmetric()) throw NotSymmetric("gram matrix is not skew-symmetric");
  }

  std::size_t dim() const { return gram_.rows(); }
  const RationalMatrix& gram() const { return gram_; }

  Rational evaluate(std::span<const Rational> x, std::span<const Rational> y) const {
    if (x.size() != dim() || y.size() != dim())
      throw DimensionMismatch("evaluate: vectors must have length " + std::to_string(dim()));
    Rational s(0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) s += x[i] * gram_(i, j) * y[j];
    }
    return s;
  }

  friend bool operator==(const SymplecticSpace&, const SymplecticSpace&) = default;

 private:
  RationalMatrix gram_;
};

/// Ann(A) = {x : psi(x, a) = 0 for all a in A}.
inline RationalSubspace annihilator(const SymplecticSpace& v, const RationalSubspace& a) {
  if (a.ambient_dim() != v.dim())
    throw DimensionMismatch("annihilator: subspace ambient " + std::to_string(a.ambient_dim()) +
                            " vs space dim " + std::to_string(v.dim()));
  return kernel(a.basis() * v.gram().transpose());
}

/// Ann(V), the degenerate directions of the form.
inline RationalSubspace radical(const SymplecticSpace& v) { return kernel(v.gram()); }

inline bool is_lagrangian(const SymplecticSpace& v, const RationalSubspace& a) {
  return annihilator(v, a) == a;
}

/// Topological type of a closed oriented surface: one genus per component.
struct Genera {
  std::vector<std::size_t> components;

  std::size_t beta0() const { return components.size(); }
  std::size_t beta1() const { return 2 * std::accumulate(components.begin(), components.end(), std::size_t{0}); }
  bool empty() const { return components.empty(); }

  friend bool operator==(const Genera&, const Genera&) = default;
};

inline Genera concat(const Genera& a, const Genera& b) {
  Genera g = a;
  g.components.insert(g.components.end(), b.components.begin(), b.components.end());
  return g;
}

/// J_g: g copies of [[0,1],[-1,0]] in basis order e1, f1, e2, f2, ...
inline RationalMatrix standard_form(std::size_t g) {
  RationalMatrix j(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

/// H_1 of the surface with its intersection form, one block per component.
inline SymplecticSpace standard_surface_space(const Genera& genera) {
  std::size_t g = 0;
  for (auto c : genera.components) g += c;
  return SymplecticSpace(standard_form(g));
}

/// span{e1, ..., eg} in the genus-g standard space.
inline RationalSubspace standard_lagrangian(std::size_t g) {
  RationalMatrix gens(g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) gens(i, 2 * i) = 1;
  return RationalSubspace::span(gens);
}

/// A^T J A == J
inline bool is_symplectic(const RationalMatrix& a, const RationalMatrix& j) {
  return a.is_square() && a.rows() == j.rows() && a.transpose() * j * a == j;
}

// Generating set of Sp(2g, Z), frozen so seeds reproduce across implementations.
// Index layout for genus g (columns are images of e1, f1, ..., eg, fg):
//   3i + 0  rotation      e_i -> f_i,        f_i -> -e_i
//   3i + 1  transvection  e_i -> e_i + f_i
//   3i + 2  transvection  f_i -> f_i + e_i
//   3g + k  handle mixing for the k-th ordered pair (i, j), i != j, in
//           lexicographic order: e_i -> e_i + e_j, f_j -> f_j - f_i
inline std::size_t generator_count(std::size_t g) { return 3 * g + g * (g - 1); }

inline RationalMatrix symplectic_generator(std::size_t g, std::size_t index) {
  if (g == 0) throw std::invalid_argument("symplectic generators need genus >= 1");
  if (index >= generator_count(g)) throw std::out_of_range("symplectic generator index out of range");
  auto a = RationalMatrix::identity(2 * g);
  if (index < 3 * g) {
    const std::size_t i = index / 3, e = 2 * i, f = 2 * i + 1;
    switch (index % 3) {
      case 0:
        a(e, e) = 0;
        a(f, e) = 1;
        a(e, f) = -1;
        a(f, f) = 0;
        break;
      case 1:
        a(f, e) = 1;
        break;
      default:
        a(e, f) = 1;
        break;
    }
    return a;
  }
  std::size_t k = index - 3 * g;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j) continue;
      if (k-- != 0) continue;
      a(2 * j, 2 * i) = 1;        // e_i -> e_i + e_j
      a(2 * i + 1, 2 * j + 1) = -1;  // f_j -> f_j - f_i
      return a;
    }
  throw std::logic_error("unreachable generator index");
}

inline constexpr std::size_t kDefaultWalkLength = 20;

/// Product G_1 G_2 ... G_length of generators with indices drawn from `rng`
/// (index = rng() mod generator_count).
inline RationalMatrix random_symplectic(std::size_t g, std::mt19937_64& rng,
                                        std::size_t length = kDefaultWalkLength) {
  if (g == 0) throw std::invalid_argument("random_symplectic: genus must be >= 1");
  auto a = RationalMatrix::identity(2 * g);
  const auto n = generator_count(g);
  for (std::size_t s = 0; s < length; ++s) a = a * symplectic_generator(g, rng() % n);
  return a;
}

inline RationalMatrix random_symplectic(std::size_t g, std::uint64_t seed,
                                        std::size_t length = kDefaultWalkLength) {
  std::mt19937_64 rng(seed);
  return random_symplectic(g, rng, length);
}

inline RationalSubspace random_lagrangian(std::size_t g, std::mt19937_64& rng,
                                          std::size_t length = kDefaultWalkLength) {
  return image(random_symplectic(g, rng, length), standard_lagrangian(g));
}

inline RationalSubspace random_lagrangian(std::size_t g, std::uint64_t seed,
                                          std::size_t length = kDefaultWalkLength) {
  std::mt19937_64 rng(seed);
  return random_lagrangian(g, rng, length);
}

/// V plus `extra` radical coordinates appended at the end.
inline SymplecticSpace pad_with_radical(const SymplecticSpace& v, std::size_t extra) {
  return SymplecticSpace(block_diag(v.gram(), RationalMatrix(extra, extra)));
}

/// S ⊕ (the appended radical); Lagrangians of the padded space are exactly these lifts.
inline RationalSubspace lift_with_radical(const RationalSubspace& s, std::size_t extra) {
  return RationalSubspace::span(block_diag(s.basis(), RationalMatrix::identity(extra)));
}

/// Direct sum of subspaces living in complementary coordinate blocks.
inline RationalSubspace direct_sum(const RationalSubspace& a, const RationalSubspace& b) {
  return RationalSubspace::span(block_diag(a.basis(), b.basis()));
}

}  // namespace evencob
