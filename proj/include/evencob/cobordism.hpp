#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "evencob/maslov.hpp"

namespace evencob {

/// A closed surface with a Lagrangian subspace of its first rational homology.
class SurfaceObject {
 public:
  SurfaceObject() = default;
  SurfaceObject(Genera genera, RationalSubspace lagrangian)
      : genera_(std::move(genera)), lagrangian_(std::move(lagrangian)) {
    const auto space = standard_surface_space(genera_);
    if (lagrangian_.ambient_dim() != space.dim())
      throw DimensionMismatch("object Lagrangian lives in dimension " + std::to_string(lagrangian_.ambient_dim()) +
                              ", surface has beta1 = " + std::to_string(space.dim()));
    if (!is_lagrangian(space, lagrangian_)) throw NotLagrangian("object subspace is not Lagrangian");
  }

  /// The empty surface.
  static SurfaceObject empty() { return SurfaceObject({}, RationalSubspace::zero(0)); }

  const Genera& genera() const { return genera_; }
  const RationalSubspace& lagrangian() const { return lagrangian_; }
  SymplecticSpace space() const { return standard_surface_space(genera_); }
  std::size_t beta0() const { return genera_.beta0(); }
  std::size_t beta1() const { return genera_.beta1(); }
  bool is_empty() const { return genera_.empty(); }

  friend bool operator==(const SurfaceObject&, const SurfaceObject&) = default;

 private:
  Genera genera_;
  RationalSubspace lagrangian_ = RationalSubspace::zero(0);
};

/// A cobordism recorded by its weight and the homology it induces:
/// H_1(M) = Q^h1_dim and H_0(M) = Q^h0_dim, with the maps from the boundary.
struct CobordismMorphism {
  SurfaceObject source;
  SurfaceObject target;
  long weight = 0;
  std::size_t h1_dim = 0;
  std::size_t h0_dim = 0;
  RationalMatrix j_src_h1;  // h1_dim x beta1(source)
  RationalMatrix j_tgt_h1;  // h1_dim x beta1(target)
  RationalMatrix j_src_h0;  // h0_dim x beta0(source)
  RationalMatrix j_tgt_h0;  // h0_dim x beta0(target)

  friend bool operator==(const CobordismMorphism&, const CobordismMorphism&) = default;
};

/// (-psi_source) ⊕ psi_target on H_1(source) ⊕ H_1(target).
inline SymplecticSpace boundary_space(const CobordismMorphism& m) {
  return SymplecticSpace(block_diag(RationalMatrix(-m.source.space().gram()), m.target.space().gram()));
}

namespace detail {

inline bool columns_are_unit_vectors(const RationalMatrix& j) {
  for (std::size_t c = 0; c < j.cols(); ++c) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < j.rows(); ++r) {
      if (j(r, c) == 1)
        ++ones;
      else if (j(r, c) != 0)
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Lists every broken invariant; an empty result means the record is realizable
/// as far as the homological model can tell.
inline std::vector<std::string> validate(const CobordismMorphism& m) {
  std::vector<std::string> out;
  auto expect_shape = [&](const RationalMatrix& j, std::size_t r, std::size_t c, const char* name) {
    if (j.rows() != r || j.cols() != c)
      out.push_back(std::string(name) + " has shape " + j.shape() + ", expected " + std::to_string(r) + "x" +
                    std::to_string(c));
  };
  expect_shape(m.j_src_h1, m.h1_dim, m.source.beta1(), "jsrc_h1");
  expect_shape(m.j_tgt_h1, m.h1_dim, m.target.beta1(), "jtgt_h1");
  expect_shape(m.j_src_h0, m.h0_dim, m.source.beta0(), "jsrc_h0");
  expect_shape(m.j_tgt_h0, m.h0_dim, m.target.beta0(), "jtgt_h0");
  if (!out.empty()) return out;

  if (!detail::columns_are_unit_vectors(m.j_src_h0))
    out.push_back("jsrc_h0: some source component does not map to exactly one manifold component");
  if (!detail::columns_are_unit_vectors(m.j_tgt_h0))
    out.push_back("jtgt_h0: some target component does not map to exactly one manifold component");

  const auto k = kernel(hstack(m.j_src_h1, m.j_tgt_h1));
  const std::size_t half = (m.source.beta1() + m.target.beta1()) / 2;
  if (k.dim() != half)
    out.push_back("boundary kernel has dimension " + std::to_string(k.dim()) + ", expected " + std::to_string(half));
  else if (!is_lagrangian(boundary_space(m), k))
    out.push_back("boundary kernel is not Lagrangian in the boundary form");
  return out;
}

inline CobordismMorphism pseudo_cylinder(const SurfaceObject& s, const RationalSubspace& target_lagrangian, long w) {
  CobordismMorphism m;
  m.source = s;
  m.target = SurfaceObject(s.genera(), target_lagrangian);
  m.weight = w;
  m.h1_dim = s.beta1();
  m.h0_dim = s.beta0();
  m.j_src_h1 = m.j_tgt_h1 = RationalMatrix::identity(m.h1_dim);
  m.j_src_h0 = m.j_tgt_h0 = RationalMatrix::identity(m.h0_dim);
  return m;
}

/// Σ × I with weight zero.
inline CobordismMorphism identity(const SurfaceObject& s) { return pseudo_cylinder(s, s.lagrangian(), 0); }

inline bool is_pseudo_cylinder(const CobordismMorphism& m) {
  return m.source.genera() == m.target.genera() && m.h1_dim == m.source.beta1() && m.h0_dim == m.source.beta0() &&
         m.j_src_h1 == RationalMatrix::identity(m.h1_dim) && m.j_tgt_h1 == m.j_src_h1 &&
         m.j_src_h0 == RationalMatrix::identity(m.h0_dim) && m.j_tgt_h0 == m.j_src_h0;
}

inline CobordismMorphism inverse_pseudo_cylinder(const CobordismMorphism& c) {
  if (!is_pseudo_cylinder(c)) throw NotPseudoCylinder("inverse_pseudo_cylinder: not a pseudo-cylinder");
  return pseudo_cylinder(c.target, c.source.lagrangian(), -c.weight);
}

/// M_*(λ) = j_tgt^{-1}(j_src(λ)).
inline RationalSubspace push_forward(const CobordismMorphism& m, const RationalSubspace& l) {
  return preimage(m.j_tgt_h1, image(m.j_src_h1, l));
}

/// M^*(λ') = j_src^{-1}(j_tgt(λ')).
inline RationalSubspace pull_back(const CobordismMorphism& m, const RationalSubspace& l) {
  return preimage(m.j_src_h1, image(m.j_tgt_h1, l));
}

/// 1 iff exactly one of source and target is nonempty.
inline int epsilon(const CobordismMorphism& m) { return m.source.is_empty() != m.target.is_empty() ? 1 : 0; }

struct EvennessReport {
  int parity_rhs = 0;
  int weight_parity = 0;
  bool is_even = false;
  std::vector<std::pair<std::string, long>> term_breakdown;
};

/// Compares w(M) mod 2 against
///   dim(j_src(λ) + j_tgt(λ')) + β1(M) + β0(M) + β0(Σ) + β1(Σ')/2 + ε(M).
inline EvennessReport is_even(const CobordismMorphism& m) {
  EvennessReport r;
  const auto images = sum(image(m.j_src_h1, m.source.lagrangian()), image(m.j_tgt_h1, m.target.lagrangian()));
  r.term_breakdown = {
      {"dim_lagrangian_images", static_cast<long>(images.dim())},
      {"beta1_manifold", static_cast<long>(m.h1_dim)},
      {"beta0_manifold", static_cast<long>(m.h0_dim)},
      {"beta0_source", static_cast<long>(m.source.beta0())},
      {"half_beta1_target", static_cast<long>(m.target.beta1() / 2)},
      {"epsilon", epsilon(m)},
  };
  long total = 0;
  for (const auto& [_, v] : r.term_breakdown) total += v;
  r.parity_rhs = static_cast<int>(total % 2);
  r.weight_parity = static_cast<int>(((m.weight % 2) + 2) % 2);
  r.is_even = r.parity_rhs == r.weight_parity;
  return r;
}

/// μ(M1_*(λ), λ', M2^*(λ'')) in the middle surface.
inline int composition_maslov_term(const CobordismMorphism& m1, const CobordismMorphism& m2) {
  const LagrangianTriple t(m1.target.space(), push_forward(m1, m1.source.lagrangian()), m1.target.lagrangian(),
                           pull_back(m2, m2.target.lagrangian()));
  return maslov_index(t);
}

namespace detail {

inline RationalMatrix zeros(std::size_t r, std::size_t c) { return RationalMatrix(r, c); }

}  // namespace detail

/// Glues m1 : Σ -> Σ' and m2 : Σ' -> Σ'' along Σ' (m2 after m1).
///
/// Mayer–Vietoris over Q splits: H_1 = coker(α1) ⊕ ker(α0) and H_0 = coker(α0), where
/// α_i(x) = (m1.j_tgt(x), -m2.j_src(x)). The cokernel summand comes first. Boundary
/// classes land in the cokernel summand.
inline CobordismMorphism compose(const CobordismMorphism& m1, const CobordismMorphism& m2) {
  if (!(m1.target.genera() == m2.source.genera()))
    throw GeneraMismatch("compose: middle surfaces have different genera");
  if (!(m1.target.lagrangian() == m2.source.lagrangian()))
    throw LagrangianMismatch("compose: middle surfaces carry different Lagrangians");

  const std::size_t n1 = m1.h1_dim, n2 = m2.h1_dim, c1 = m1.h0_dim, c2 = m2.h0_dim;

  const auto alpha1 = vstack(m1.j_tgt_h1, RationalMatrix(-m2.j_src_h1));
  const auto alpha0 = vstack(m1.j_tgt_h0, RationalMatrix(-m2.j_src_h0));
  const auto coker1 = cokernel(alpha1);
  const auto coker0 = cokernel(alpha0);
  const std::size_t loops = kernel(alpha0).dim();

  CobordismMorphism out;
  out.source = m1.source;
  out.target = m2.target;
  out.weight = m1.weight + m2.weight - composition_maslov_term(m1, m2);
  out.h1_dim = coker1.dim + loops;
  out.h0_dim = coker0.dim;

  const std::size_t b_src = m1.source.beta1(), b_tgt = m2.target.beta1();
  out.j_src_h1 = vstack(coker1.projection * vstack(m1.j_src_h1, detail::zeros(n2, b_src)), detail::zeros(loops, b_src));
  out.j_tgt_h1 = vstack(coker1.projection * vstack(detail::zeros(n1, b_tgt), m2.j_tgt_h1), detail::zeros(loops, b_tgt));
  out.j_src_h0 = coker0.projection * vstack(m1.j_src_h0, detail::zeros(c2, m1.source.beta0()));
  out.j_tgt_h0 = coker0.projection * vstack(detail::zeros(c1, m2.target.beta0()), m2.j_tgt_h0);
  if (!detail::columns_are_unit_vectors(out.j_src_h0) || !detail::columns_are_unit_vectors(out.j_tgt_h0))
    throw std::logic_error("compose: H_0 projection did not produce unit columns");
  return out;
}

/// Same homological data with different boundary Lagrangians; the weight is kept.
inline CobordismMorphism with_endpoints(CobordismMorphism m, const SurfaceObject& source, const SurfaceObject& target) {
  if (!(source.genera() == m.source.genera())) throw GeneraMismatch("with_endpoints: source genera differ");
  if (!(target.genera() == m.target.genera())) throw GeneraMismatch("with_endpoints: target genera differ");
  m.source = source;
  m.target = target;
  return m;
}

/// Adjusts the weight by at most one so that the morphism is even.
inline CobordismMorphism make_even(CobordismMorphism m) {
  if (!is_even(m).is_even) m.weight += 1;
  return m;
}

}  // namespace evencob
