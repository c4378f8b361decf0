#pragma once

// Independent reference computations used only by the test suites. Nothing here
// shares a code path with the routines it checks.

#include <cstddef>
#include <random>
#include <vector>

#include "evencob/matrix.hpp"

namespace evencob::oracle {

/// Characteristic polynomial det(xI - A) by Faddeev–LeVerrier; coefficients are
/// returned lowest degree first, leading coefficient 1.
inline std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, 0);
  c[n] = 1;
  RationalMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    const auto am = a * m;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

inline std::size_t sign_changes(const std::vector<Rational>& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : coeffs) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Signature of a real symmetric matrix from Descartes' rule of signs. Exact because
/// the characteristic polynomial of a symmetric matrix has only real roots.
inline int descartes_signature(const RationalMatrix& symmetric) {
  auto p = characteristic_polynomial(symmetric);
  // Strip the root at zero.
  std::size_t lowest = 0;
  while (lowest < p.size() && p[lowest] == 0) ++lowest;
  std::vector<Rational> q(p.begin() + static_cast<long>(lowest), p.end());
  const std::size_t positive = sign_changes(q);
  for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
  const std::size_t negative = sign_changes(q);
  return static_cast<int>(positive) - static_cast<int>(negative);
}

/// Rank by fraction-free Bareiss elimination on integer-scaled copies.
inline std::size_t bareiss_rank(RationalMatrix m) {
  std::size_t rank = 0;
  Rational prev = 1;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t p = m.rows();
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!used[r] && m(r, c) != 0) {
        p = r;
        break;
      }
    if (p == m.rows()) continue;
    used[p] = true;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (used[r]) continue;
      for (std::size_t k = c + 1; k < m.cols(); ++k) m(r, k) = (m(p, c) * m(r, k) - m(r, c) * m(p, k)) / prev;
      m(r, c) = 0;
    }
    prev = m(p, c);
    ++rank;
  }
  return rank;
}

inline RationalMatrix random_integer_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, long spread = 2) {
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rng() % (2 * spread + 1)) - spread;
  return m;
}

}  // namespace evencob::oracle
