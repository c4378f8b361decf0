#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evencob/matrix.hpp"

namespace evencob {

template <typename T>
struct EchelonForm {
  Matrix<T> reduced;                 // full reduced row-echelon form, zero rows kept at the bottom
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row-echelon form.
template <typename T>
EchelonForm<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    const T inv = T(1) / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      const T f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// A subspace of T^n held as the nonzero rows of a reduced row-echelon basis.
/// The representation is canonical, so `==` is subspace equality.
template <typename T>
class Subspace {
 public:
  Subspace() = default;

  /// Span of the rows of `generators`.
  static Subspace span(const Matrix<T>& generators) {
    auto e = rref(generators);
    Subspace s;
    s.ambient_ = generators.cols();
    s.basis_ = e.reduced.row_block(0, e.pivots.size());
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace zero(std::size_t n) { return span(Matrix<T>(0, n)); }
  static Subspace full(std::size_t n) { return span(Matrix<T>::identity(n)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<T>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<T> basis_vector(std::size_t i) const { return basis_.row_vector(i); }

  bool contains(const std::vector<T>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector length does not match ambient dimension");
    // Reduce against the RREF basis using pivot coordinates; v is inside iff nothing remains.
    std::vector<T> r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      const T f = r[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < ambient_; ++k) r[k] -= f * basis_(i, k);
    }
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  bool is_subspace_of(const Subspace& o) const {
    require_same_ambient(*this, o, "inclusion test");
    for (std::size_t i = 0; i < dim(); ++i)
      if (!o.contains(basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  static void require_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
    if (a.ambient_ != b.ambient_)
      throw DimensionMismatch(std::string(what) + ": ambient dimensions " + std::to_string(a.ambient_) +
                              " and " + std::to_string(b.ambient_) + " differ");
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<T> basis_;
  std::vector<std::size_t> pivots_;
};

using RationalSubspace = Subspace<Rational>;

template <typename T>
Subspace<T> canonical_basis(const std::vector<std::vector<T>>& vectors, std::size_t ambient_dim) {
  return Subspace<T>::span(Matrix<T>::from_rows(vectors, ambient_dim));
}

template <typename T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b) {
  Subspace<T>::require_same_ambient(a, b, "sum");
  return Subspace<T>::span(vstack(a.basis(), b.basis()));
}

/// {x : f x = 0}, dimension cols - rank.
template <typename T>
Subspace<T> kernel(const Matrix<T>& f) {
  auto e = rref(f);
  const std::size_t n = f.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<T> gens(n - e.pivots.size(), n);
  std::size_t g = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    gens(g, free) = T(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) gens(g, e.pivots[i]) = -e.reduced(i, free);
    ++g;
  }
  return Subspace<T>::span(gens);
}

/// Column span of f.
template <typename T>
Subspace<T> image(const Matrix<T>& f) {
  return Subspace<T>::span(f.transpose());
}

/// f(S) for a subspace S of the domain.
template <typename T>
Subspace<T> image(const Matrix<T>& f, const Subspace<T>& s) {
  if (s.ambient_dim() != f.cols())
    throw DimensionMismatch("image: subspace ambient " + std::to_string(s.ambient_dim()) +
                            " does not match map " + f.shape());
  return Subspace<T>::span((f * s.basis().transpose()).transpose());
}

/// Rows spanning the linear equations cutting out S, so that S = kernel(equations(S)).
template <typename T>
Matrix<T> equations(const Subspace<T>& s) {
  return kernel(s.basis()).basis();
}

template <typename T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b) {
  Subspace<T>::require_same_ambient(a, b, "intersect");
  // Pairs (c, d) with c^T A = d^T B form the kernel of [A^T | -B^T].
  const auto coords = kernel(hstack(a.basis().transpose(), -b.basis().transpose()));
  const auto& k = coords.basis();
  Matrix<T> gens(0, a.ambient_dim());
  if (k.rows() > 0) {
    Matrix<T> c(k.rows(), a.dim());
    for (std::size_t r = 0; r < k.rows(); ++r)
      for (std::size_t i = 0; i < a.dim(); ++i) c(r, i) = k(r, i);
    gens = c * a.basis();
  }
  return Subspace<T>::span(gens);
}

/// {x : f x in B}; always contains kernel(f).
template <typename T>
Subspace<T> preimage(const Matrix<T>& f, const Subspace<T>& b) {
  if (b.ambient_dim() != f.rows())
    throw DimensionMismatch("preimage: subspace ambient " + std::to_string(b.ambient_dim()) +
                            " does not match codomain of " + f.shape());
  return kernel(equations(b) * f);
}

template <typename T>
struct Cokernel {
  std::size_t dim = 0;
  Matrix<T> projection;  // dim x rows(f), kernel exactly image(f)
};

/// Cokernel of f, presented on the coordinates left free by column reduction of f.
/// projection(x) subtracts the image component read off the pivot coordinates, then
/// keeps the non-pivot coordinates in increasing order.
template <typename T>
Cokernel<T> cokernel(const Matrix<T>& f) {
  const std::size_t n = f.rows();
  // Column echelon form of f is the transpose of the RREF of f^T.
  auto e = rref(f.transpose());
  const std::size_t r = e.pivots.size();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<T> proj(n - r, n);
  std::size_t out = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_pivot[k]) continue;
    proj(out, k) = T(1);
    for (std::size_t i = 0; i < r; ++i) proj(out, e.pivots[i]) = -e.reduced(i, k);
    ++out;
  }
  return {n - r, std::move(proj)};
}

/// Solution of m x = b with free variables set to zero, or nullopt if inconsistent.
template <typename T>
std::optional<std::vector<T>> solve_first(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length mismatch");
  auto e = rref(hstack(m, Matrix<T>::column(b)));
  const std::size_t n = m.cols();
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  std::vector<T> x(n, T(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, n);
  return x;
}

}  // namespace evencob
