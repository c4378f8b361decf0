#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evencob/io.hpp"

namespace evencob {

// ---------------------------------------------------------------------------
// Seeded test corpora. Trial i of a campaign with base seed s uses seed s + i.

/// Elementary integer shears P and P^{-1}, used to hide the block structure of a form.
struct BasisChange {
  RationalMatrix forward;  // P
  RationalMatrix inverse;  // P^{-1}
};

inline BasisChange random_basis_change(std::size_t n, std::mt19937_64& rng, std::size_t shears) {
  BasisChange b{RationalMatrix::identity(n), RationalMatrix::identity(n)};
  if (n < 2) return b;
  for (std::size_t s = 0; s < shears; ++s) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    const long c = static_cast<long>(rng() % 5) - 2;
    auto e = RationalMatrix::identity(n), e_inv = RationalMatrix::identity(n);
    e(i, j) = c;
    e_inv(i, j) = -c;
    b.forward = b.forward * e;
    b.inverse = e_inv * b.inverse;
  }
  return b;
}

/// Re-expresses the form in the basis P: gram' = P^T gram P.
inline SymplecticSpace change_basis(const SymplecticSpace& v, const BasisChange& b) {
  return SymplecticSpace(b.forward.transpose() * v.gram() * b.forward);
}

/// Subspace coordinates in the basis P.
inline RationalSubspace change_basis(const RationalSubspace& s, const BasisChange& b) {
  return image(b.inverse, s);
}

struct TripleSample {
  std::size_t genus = 0;
  std::size_t radical_dim = 0;
  LagrangianTriple triple;
};

/// Random Lagrangian triple: genus in [1, genus_max], 0..2 radical directions, walk
/// lengths in [0, 20] (short walks make coincidences and nontrivial intersections
/// common), and half the time a shear basis change that mixes the radical in.
inline TripleSample random_triple(std::uint64_t seed, std::size_t genus_max) {
  std::mt19937_64 rng(seed);
  const std::size_t g = 1 + rng() % std::max<std::size_t>(genus_max, 1);
  const std::size_t r = rng() % 3;
  const auto base = SymplecticSpace(standard_form(g));
  RationalSubspace l[3];
  for (auto& x : l) x = random_lagrangian(g, rng, rng() % (kDefaultWalkLength + 1));
  if (rng() % 8 == 0) {
    const std::size_t to = rng() % 3;
    const std::size_t from = rng() % 3;
    l[to] = l[from];
  }
  auto space = pad_with_radical(base, r);
  for (auto& x : l) x = lift_with_radical(x, r);
  if (rng() % 2 == 0) {
    const auto b = random_basis_change(space.dim(), rng, 2 * space.dim());
    space = change_basis(space, b);
    for (auto& x : l) x = change_basis(x, b);
  }
  return {g, r, LagrangianTriple(space, l[0], l[1], l[2])};
}

/// Random subspace of Q^n spanned by up to n small integer vectors.
inline RationalSubspace random_subspace(std::size_t n, std::mt19937_64& rng) {
  const std::size_t k = rng() % (n + 1);
  RationalMatrix gens(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = static_cast<long>(rng() % 5) - 2;
  return RationalSubspace::span(gens);
}

struct PairSample {
  SymplecticSpace space;
  RationalSubspace a;
  RationalSubspace b;
};

/// Random (possibly degenerate) form with two random subspaces.
inline PairSample random_subspace_pair(std::uint64_t seed, std::size_t genus_max) {
  std::mt19937_64 rng(seed);
  const std::size_t g = rng() % (std::max<std::size_t>(genus_max, 1) + 1);
  const std::size_t r = rng() % 3;
  auto space = pad_with_radical(SymplecticSpace(standard_form(g)), r);
  const auto b = random_basis_change(space.dim(), rng, 2 * space.dim());
  space = change_basis(space, b);
  return {space, random_subspace(space.dim(), rng), random_subspace(space.dim(), rng)};
}

// ---------------------------------------------------------------------------
// Theorem checks. Each returns an empty string when the statement holds and a
// short description of the failure otherwise.

inline std::string check_parity(const LagrangianTriple& t) {
  const int mu = maslov_index(t);
  const auto p = parity_prediction(t);
  if (!p.agree()) return "intersection and sum forms of the parity formula disagree";
  if (mod2(mu) != p.via_intersections)
    return "maslov index " + std::to_string(mu) + " has parity " + std::to_string(mod2(mu)) + ", predicted " +
           std::to_string(p.via_intersections);
  return {};
}

inline std::string check_dim_sum(const LagrangianTriple& t) {
  const auto d = dim_sum_parity(t);
  if (d.sum_parity != d.intersection_parity) return "dim(l1+l2+l3) and dim(l1∩l2∩l3) differ in parity";
  return {};
}

inline std::string check_annihilator(const LagrangianTriple& t) {
  if (!(form_annihilator(t) == predicted_annihilator(t)))
    return "radical of the Maslov form differs from (l1∩l3)+(l2∩l3)";
  return {};
}

inline std::string check_corollary(const LagrangianTriple& t) {
  if (mod2(maslov_index(t)) != corollary_parity(t)) return "Maslov index parity differs from the rank parity";
  return {};
}

/// Gram is symmetric and unchanged when each second component a2 is shifted by an
/// element of l1 ∩ l2.
inline std::string check_well_defined(const LagrangianTriple& t, std::mt19937_64& rng) {
  const auto form = maslov_form(t);
  if (!form.gram.is_symmetric()) return "Maslov form gram is not symmetric";
  const auto common = intersect(t.l1(), t.l2());
  std::vector<RationalVector> seconds;
  for (std::size_t i = 0; i < form.domain_basis.rows(); ++i) {
    auto a2 = decompose(t.l1(), t.l2(), form.domain_basis.row_vector(i)).second;
    for (std::size_t k = 0; k < common.dim(); ++k) {
      const long num = static_cast<long>(rng() % 7) - 3;
      const long den = 1 + static_cast<long>(rng() % 3);
      const Rational c = Rational(num) / den;
      for (std::size_t x = 0; x < a2.size(); ++x) a2[x] += c * common.basis()(k, x);
    }
    seconds.push_back(std::move(a2));
  }
  if (!(pairing_gram(t.space(), form.domain_basis, seconds) == form.gram))
    return "Maslov form depends on the decomposition";
  return {};
}

inline std::string check_pair_dims(const SymplecticSpace& v, const RationalSubspace& a, const RationalSubspace& b) {
  if (a.dim() != b.dim()) return "two Lagrangians of one space have different dimensions";
  if (sum(a, b).dim() % 2 != intersect(a, b).dim() % 2) return "dim(l1+l2) and dim(l1∩l2) differ in parity";
  if (radical(v).dim() == 0 && 2 * a.dim() != v.dim()) return "Lagrangian of a nondegenerate space is not half-dimensional";
  return {};
}

/// Ann(A+B) = Ann(A) ∩ Ann(B) always; Ann(A∩B) = Ann(A) + Ann(B) once both contain
/// the radical (the statement is run on A + rad, B + rad).
inline std::string check_ann_identities(const SymplecticSpace& v, const RationalSubspace& a, const RationalSubspace& b) {
  if (!(annihilator(v, sum(a, b)) == intersect(annihilator(v, a), annihilator(v, b))))
    return "Ann(A+B) != Ann(A) ∩ Ann(B)";
  const auto rad = radical(v);
  const auto ar = sum(a, rad), br = sum(b, rad);
  if (!(annihilator(v, intersect(ar, br)) == sum(annihilator(v, ar), annihilator(v, br))))
    return "Ann(A∩B) != Ann(A) + Ann(B) for radical-containing A, B";
  return {};
}

/// V = Q^3 with radical span{z} and psi(x, y) = 1; A = span{x}, A' = span{x + z}.
/// Here Ann(A ∩ A') = V while Ann(A) + Ann(A') = span{x, z}.
inline Scenario degenerate_ann_counterexample() {
  Scenario sc;
  sc.space = SymplecticSpace(RationalMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  sc.subspaces = {{"A", RationalSubspace::span(RationalMatrix{{1, 0, 0}})},
                  {"B", RationalSubspace::span(RationalMatrix{{1, 0, 1}})}};
  return sc;
}

inline Scenario triple_scenario(const LagrangianTriple& t) {
  Scenario sc;
  sc.space = t.space();
  sc.subspaces = {{"L1", t.l1()}, {"L2", t.l2()}, {"L3", t.l3()}};
  sc.queries = {{"L1", "L2", "L3"}};
  return sc;
}

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t genus_max = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;  // trial index
  std::string failure_detail;
  std::string counterexample;  // replayable scenario or pipeline text

  bool holds() const { return failures == 0; }
};

enum class Theorem { parity, dim_sum, annihilator, pair_dims, ann_identities, corollary, well_defined };

inline std::optional<Theorem> theorem_from_name(std::string_view n) {
  if (n == "parity") return Theorem::parity;
  if (n == "dim-sum") return Theorem::dim_sum;
  if (n == "annihilator") return Theorem::annihilator;
  if (n == "pair-dims") return Theorem::pair_dims;
  if (n == "ann-identities") return Theorem::ann_identities;
  if (n == "corollary") return Theorem::corollary;
  if (n == "well-defined") return Theorem::well_defined;
  return std::nullopt;
}

/// One trial: empty detail on success, otherwise the failure and a replayable scenario.
inline std::pair<std::string, std::string> run_theorem_trial(Theorem th, std::uint64_t seed, std::size_t genus_max) {
  if (th == Theorem::ann_identities) {
    const auto s = random_subspace_pair(seed, genus_max);
    auto detail = check_ann_identities(s.space, s.a, s.b);
    if (detail.empty()) return {};
    Scenario sc;
    sc.space = s.space;
    sc.subspaces = {{"A", s.a}, {"B", s.b}};
    return {detail, serialize_scenario(sc)};
  }
  const auto sample = random_triple(seed, genus_max);
  const auto& t = sample.triple;
  std::string detail;
  switch (th) {
    case Theorem::parity: detail = check_parity(t); break;
    case Theorem::dim_sum: detail = check_dim_sum(t); break;
    case Theorem::annihilator: detail = check_annihilator(t); break;
    case Theorem::pair_dims:
      detail = check_pair_dims(t.space(), t.l1(), t.l2());
      if (detail.empty()) detail = check_pair_dims(t.space(), t.l2(), t.l3());
      break;
    case Theorem::corollary: detail = check_corollary(t); break;
    case Theorem::well_defined: {
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
      detail = check_well_defined(t, rng);
      break;
    }
    case Theorem::ann_identities: break;
  }
  if (detail.empty()) return {};
  return {detail, serialize_scenario(triple_scenario(t))};
}

inline CampaignResult run_theorem_campaign(Theorem th, std::string name, std::uint64_t seed, std::size_t trials,
                                           std::size_t genus_max) {
  CampaignResult r;
  r.name = std::move(name);
  r.seed = seed;
  r.trials = trials;
  r.genus_max = genus_max;
  for (std::size_t i = 0; i < trials; ++i) {
    auto [detail, replay] = run_theorem_trial(th, seed + i, genus_max);
    if (detail.empty()) continue;
    if (r.failures++ == 0) {
      r.first_failure = i;
      r.failure_detail = std::move(detail);
      r.counterexample = std::move(replay);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Even-closure campaign

inline Genera random_genera(std::mt19937_64& rng, std::size_t genus_max) {
  Genera g;
  const std::size_t n = rng() % 3;
  std::size_t total = 0;
  for (std::size_t i = 0; i < n && total < genus_max; ++i) {
    const std::size_t c = rng() % (genus_max - total + 1);
    g.components.push_back(c);
    total += c;
  }
  return g;
}

struct ComposablePair {
  CobordismMorphism first;
  CobordismMorphism second;
};

/// Two even generator-built morphisms with first.target == second.source.
inline ComposablePair random_even_pair(std::uint64_t seed, std::size_t genus_max) {
  std::mt19937_64 rng(seed);
  const auto src = random_genera(rng, genus_max);
  auto m1 = random_even_morphism(random_shape(src, rng, genus_max), rng());
  auto m2 = random_even_morphism(random_shape(m1.target.genera(), rng, genus_max), rng(), m1.target);
  return {std::move(m1), std::move(m2)};
}

/// A record built straight from a random Lagrangian K of the boundary form:
/// H_1(M) = boundary / K ⊕ Q^extra, so the boundary kernel is exactly K.
/// H_0 assigns each boundary component to a random manifold component.
inline CobordismMorphism random_abstract_morphism(const SurfaceObject& source, const SurfaceObject& target,
                                                  std::mt19937_64& rng) {
  CobordismMorphism m;
  m.source = source;
  m.target = target;
  const std::size_t bs = source.beta1(), bt = target.beta1(), n = (bs + bt) / 2;
  RationalSubspace k = RationalSubspace::zero(0);
  if (n > 0) {
    // Swapping e and f on source blocks carries the standard form to (-psi) ⊕ psi.
    auto swap = RationalMatrix::identity(2 * n);
    for (std::size_t i = 0; i < bs / 2; ++i) {
      swap(2 * i, 2 * i) = swap(2 * i + 1, 2 * i + 1) = 0;
      swap(2 * i, 2 * i + 1) = swap(2 * i + 1, 2 * i) = 1;
    }
    k = image(swap, random_lagrangian(n, rng, rng() % (kDefaultWalkLength + 1)));
  }
  const auto q = cokernel(k.ambient_dim() == 0 ? RationalMatrix(0, 0) : k.basis().transpose());
  const std::size_t extra = rng() % 3;
  const auto j = vstack(q.projection, RationalMatrix(extra, bs + bt));
  m.h1_dim = j.rows();
  m.j_src_h1 = RationalMatrix(m.h1_dim, bs);
  m.j_tgt_h1 = RationalMatrix(m.h1_dim, bt);
  for (std::size_t r = 0; r < m.h1_dim; ++r) {
    for (std::size_t c = 0; c < bs; ++c) m.j_src_h1(r, c) = j(r, c);
    for (std::size_t c = 0; c < bt; ++c) m.j_tgt_h1(r, c) = j(r, bs + c);
  }
  m.h0_dim = 1 + rng() % 2;
  m.j_src_h0 = RationalMatrix(m.h0_dim, source.beta0());
  m.j_tgt_h0 = RationalMatrix(m.h0_dim, target.beta0());
  for (std::size_t c = 0; c < source.beta0(); ++c) m.j_src_h0(rng() % m.h0_dim, c) = 1;
  for (std::size_t c = 0; c < target.beta0(); ++c) m.j_tgt_h0(rng() % m.h0_dim, c) = 1;
  m.weight = static_cast<long>(rng() % 7) - 3;
  return make_even(m);
}

inline ComposablePair random_abstract_pair(std::uint64_t seed, std::size_t genus_max) {
  std::mt19937_64 rng(seed);
  const auto a = random_object(random_genera(rng, genus_max), rng);
  const auto b = random_object(random_genera(rng, genus_max), rng);
  const auto c = random_object(random_genera(rng, genus_max), rng);
  auto m1 = random_abstract_morphism(a, b, rng);
  auto m2 = random_abstract_morphism(b, c, rng);
  return {std::move(m1), std::move(m2)};
}

struct ClosureResult {
  CampaignResult generator_built;
  std::size_t abstract_trials = 0;
  std::size_t abstract_even = 0;  // logged only
};

inline ClosureResult run_closure_campaign(std::uint64_t seed, std::size_t trials, std::size_t genus_max,
                                          std::size_t abstract_trials) {
  ClosureResult out;
  auto& r = out.generator_built;
  r.name = "even-closure";
  r.seed = seed;
  r.trials = trials;
  r.genus_max = genus_max;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto pair = random_even_pair(seed + i, genus_max);
    const auto c = compose(pair.first, pair.second);
    std::string detail;
    if (const auto v = validate(c); !v.empty())
      detail = "composite fails validation: " + v.front();
    else if (!is_even(c).is_even)
      detail = "composite of two even morphisms is odd";
    if (detail.empty()) continue;
    if (r.failures++ == 0) {
      r.first_failure = i;
      r.failure_detail = detail;
      r.counterexample = serialize_pipeline(pipeline_of({pair.first, pair.second}));
    }
  }
  out.abstract_trials = abstract_trials;
  for (std::size_t i = 0; i < abstract_trials; ++i) {
    const auto pair = random_abstract_pair(seed + i, genus_max);
    if (is_even(compose(pair.first, pair.second)).is_even) ++out.abstract_even;
  }
  return out;
}

}  // namespace evencob
