#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evencob/cobordism.hpp"

namespace evencob {

// ---------------------------------------------------------------------------
// Realizable building blocks

/// Mapping cylinder of a surface automorphism acting on H_1 by `a`:
/// push_forward(M, λ) = a·λ.
inline CobordismMorphism twisted_cylinder(const SurfaceObject& s, const RationalMatrix& a,
                                          const RationalSubspace& target_lagrangian, long w) {
  if (!is_symplectic(a, s.space().gram())) throw NotSymplectic("twisted_cylinder: twist is not symplectic");
  auto m = pseudo_cylinder(s, target_lagrangian, w);
  // A is integral and symplectic, so A^{-1} = -J A^T J.
  const RationalMatrix j = s.space().gram();
  m.j_tgt_h1 = RationalMatrix(-(j * a.transpose() * j));
  return m;
}

namespace detail {

/// e_i -> u_i, f_i -> 0: the genus-g handlebody's boundary inclusion on H_1.
inline RationalMatrix handlebody_inclusion(std::size_t g) {
  RationalMatrix h(g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) h(i, 2 * i) = 1;
  return h;
}

}  // namespace detail

/// ∅ -> Σ_g, killing the meridians f_1, ..., f_g.
inline CobordismMorphism handlebody(std::size_t g, const RationalSubspace& target_lagrangian, long w) {
  CobordismMorphism m;
  m.source = SurfaceObject::empty();
  m.target = SurfaceObject(Genera{{g}}, target_lagrangian);
  m.weight = w;
  m.h1_dim = g;
  m.h0_dim = 1;
  m.j_src_h1 = RationalMatrix(g, 0);
  m.j_tgt_h1 = detail::handlebody_inclusion(g);
  m.j_src_h0 = RationalMatrix(1, 0);
  m.j_tgt_h0 = RationalMatrix::identity(1);
  return m;
}

/// Σ_g -> ∅, a handlebody precomposed with `pre_twist`; kernel is pre_twist^{-1}·span{f_i}.
inline CobordismMorphism cap(std::size_t g, const RationalSubspace& source_lagrangian, long w,
                             const RationalMatrix& pre_twist) {
  if (!is_symplectic(pre_twist, standard_form(g))) throw NotSymplectic("cap: pre-twist is not symplectic");
  CobordismMorphism m;
  m.source = SurfaceObject(Genera{{g}}, source_lagrangian);
  m.target = SurfaceObject::empty();
  m.weight = w;
  m.h1_dim = g;
  m.h0_dim = 1;
  m.j_src_h1 = detail::handlebody_inclusion(g) * pre_twist;
  m.j_tgt_h1 = RationalMatrix(g, 0);
  m.j_src_h0 = RationalMatrix::identity(1);
  m.j_tgt_h0 = RationalMatrix(1, 0);
  return m;
}

inline CobordismMorphism disjoint_union(const CobordismMorphism& a, const CobordismMorphism& b) {
  CobordismMorphism m;
  m.source = SurfaceObject(concat(a.source.genera(), b.source.genera()),
                           direct_sum(a.source.lagrangian(), b.source.lagrangian()));
  m.target = SurfaceObject(concat(a.target.genera(), b.target.genera()),
                           direct_sum(a.target.lagrangian(), b.target.lagrangian()));
  m.weight = a.weight + b.weight;
  m.h1_dim = a.h1_dim + b.h1_dim;
  m.h0_dim = a.h0_dim + b.h0_dim;
  m.j_src_h1 = block_diag(a.j_src_h1, b.j_src_h1);
  m.j_tgt_h1 = block_diag(a.j_tgt_h1, b.j_tgt_h1);
  m.j_src_h0 = block_diag(a.j_src_h0, b.j_src_h0);
  m.j_tgt_h0 = block_diag(a.j_tgt_h0, b.j_tgt_h0);
  return m;
}

/// ∅ -> ∅ with no homology and weight zero.
inline CobordismMorphism empty_morphism() { return identity(SurfaceObject::empty()); }

// ---------------------------------------------------------------------------
// Generator specifications
//
// Text form is an S-expression:
//   (identity G) (pseudo_cylinder G) (twisted_cylinder G) (handlebody G) (cap G)
//   (disjoint_union SPEC SPEC) (composite SPEC SPEC ...)
// Leaf kinds accept `weight=<int>`, `twist=<seed>` and `length=<walk length>`.
// A missing weight or twist seed is drawn from the builder's RNG; `length=0`
// gives an untwisted piece.

enum class GeneratorKind { identity, pseudo_cylinder, twisted_cylinder, handlebody, cap, disjoint_union, composite };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::identity;
  std::size_t genus = 0;
  std::optional<long> weight;
  std::optional<std::uint64_t> twist_seed;
  std::size_t twist_length = kDefaultWalkLength;
  std::vector<GeneratorSpec> children;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

class SpecSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string_view kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::identity: return "identity";
    case GeneratorKind::pseudo_cylinder: return "pseudo_cylinder";
    case GeneratorKind::twisted_cylinder: return "twisted_cylinder";
    case GeneratorKind::handlebody: return "handlebody";
    case GeneratorKind::cap: return "cap";
    case GeneratorKind::disjoint_union: return "disjoint_union";
    case GeneratorKind::composite: return "composite";
  }
  return "?";
}

inline bool is_leaf(GeneratorKind k) { return k != GeneratorKind::disjoint_union && k != GeneratorKind::composite; }

inline std::string format_spec(const GeneratorSpec& s) {
  std::string out = "(" + std::string(kind_name(s.kind));
  if (is_leaf(s.kind)) {
    out += " " + std::to_string(s.genus);
    if (s.weight) out += " weight=" + std::to_string(*s.weight);
    if (s.twist_seed) out += " twist=" + std::to_string(*s.twist_seed);
    if (s.twist_length != kDefaultWalkLength) out += " length=" + std::to_string(s.twist_length);
  } else {
    for (const auto& c : s.children) out += " " + format_spec(c);
  }
  return out + ")";
}

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GeneratorSpec parse_all() {
    auto s = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecSyntaxError("generator spec: " + what + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view token() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    return text_.substr(start, pos_ - start);
  }
  template <typename Int>
  Int number(std::string_view t) {
    if (t.empty()) fail("expected a number");
    try {
      std::size_t used = 0;
      const std::string s(t);
      if constexpr (std::is_signed_v<Int>) {
        const long long v = std::stoll(s, &used);
        if (used != s.size()) fail("malformed number '" + s + "'");
        return static_cast<Int>(v);
      } else {
        if (s[0] == '-') fail("expected a non-negative number");
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) fail("malformed number '" + s + "'");
        return static_cast<Int>(v);
      }
    } catch (const std::logic_error&) {
      fail("malformed number '" + std::string(t) + "'");
    }
  }

  GeneratorSpec parse() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    ++pos_;
    const auto name = token();
    GeneratorSpec s;
    static constexpr GeneratorKind kinds[] = {GeneratorKind::identity,         GeneratorKind::pseudo_cylinder,
                                              GeneratorKind::twisted_cylinder, GeneratorKind::handlebody,
                                              GeneratorKind::cap,              GeneratorKind::disjoint_union,
                                              GeneratorKind::composite};
    bool known = false;
    for (auto k : kinds)
      if (kind_name(k) == name) {
        s.kind = k;
        known = true;
      }
    if (!known) fail("unknown generator kind '" + std::string(name) + "'");

    if (is_leaf(s.kind)) {
      s.genus = number<std::size_t>(token());
      for (;;) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ')') break;
        const auto opt = token();
        const auto eq = opt.find('=');
        if (opt.empty() || eq == std::string_view::npos) fail("expected key=value option");
        const auto key = opt.substr(0, eq), value = opt.substr(eq + 1);
        if (key == "weight")
          s.weight = number<long>(value);
        else if (key == "twist")
          s.twist_seed = number<std::uint64_t>(value);
        else if (key == "length")
          s.twist_length = number<std::size_t>(value);
        else
          fail("unknown option '" + std::string(key) + "'");
      }
    } else {
      for (;;) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ')') break;
        s.children.push_back(parse());
      }
      if (s.kind == GeneratorKind::disjoint_union && s.children.size() != 2)
        fail("disjoint_union takes exactly two children");
      if (s.kind == GeneratorKind::composite && s.children.empty()) fail("composite needs at least one child");
    }
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GeneratorSpec parse_spec(std::string_view text) { return detail::SpecParser(text).parse_all(); }

/// Source and target genera of the morphism a spec builds.
inline std::pair<Genera, Genera> spec_interface(const GeneratorSpec& s) {
  switch (s.kind) {
    case GeneratorKind::identity:
    case GeneratorKind::pseudo_cylinder:
    case GeneratorKind::twisted_cylinder:
      return {Genera{{s.genus}}, Genera{{s.genus}}};
    case GeneratorKind::handlebody:
      return {Genera{}, Genera{{s.genus}}};
    case GeneratorKind::cap:
      return {Genera{{s.genus}}, Genera{}};
    case GeneratorKind::disjoint_union: {
      auto [a_src, a_tgt] = spec_interface(s.children[0]);
      auto [b_src, b_tgt] = spec_interface(s.children[1]);
      return {concat(a_src, b_src), concat(a_tgt, b_tgt)};
    }
    case GeneratorKind::composite: {
      auto [src, tgt] = spec_interface(s.children.front());
      for (std::size_t i = 1; i < s.children.size(); ++i) {
        auto [next_src, next_tgt] = spec_interface(s.children[i]);
        if (!(next_src == tgt))
          throw ShapeError("composite: child " + std::to_string(i + 1) + " does not start where child " +
                           std::to_string(i) + " ends");
        tgt = std::move(next_tgt);
      }
      return {src, tgt};
    }
  }
  throw std::logic_error("unknown generator kind");
}

/// A Lagrangian of the block-standard space for `genera`, not necessarily split by component.
inline RationalSubspace random_surface_lagrangian(const Genera& genera, std::mt19937_64& rng,
                                                  std::size_t length = kDefaultWalkLength) {
  const std::size_t g = genera.beta1() / 2;
  if (g == 0) return RationalSubspace::zero(0);
  return random_lagrangian(g, rng, length);
}

inline SurfaceObject random_object(const Genera& genera, std::mt19937_64& rng) {
  return SurfaceObject(genera, random_surface_lagrangian(genera, rng, rng() % (kDefaultWalkLength + 1)));
}

namespace detail {

inline long draw_weight(std::mt19937_64& rng) { return static_cast<long>(rng() % 7) - 3; }

inline RationalMatrix draw_twist(const GeneratorSpec& s, std::mt19937_64& rng) {
  const std::uint64_t seed = s.twist_seed ? *s.twist_seed : rng();
  if (s.genus == 0) return RationalMatrix(0, 0);
  return random_symplectic(s.genus, seed, s.twist_length);
}

}  // namespace detail

/// Builds the morphism a spec describes. Unspecified weights, twists and all boundary
/// Lagrangians are drawn from `rng`; intermediate surfaces of composites get random
/// Lagrangians too.
inline CobordismMorphism build(const GeneratorSpec& s, std::mt19937_64& rng) {
  auto weight = [&] { return s.weight ? *s.weight : detail::draw_weight(rng); };
  switch (s.kind) {
    case GeneratorKind::identity:
      return identity(random_object(Genera{{s.genus}}, rng));
    case GeneratorKind::pseudo_cylinder: {
      const auto src = random_object(Genera{{s.genus}}, rng);
      const auto tgt = random_object(Genera{{s.genus}}, rng);
      return pseudo_cylinder(src, tgt.lagrangian(), weight());
    }
    case GeneratorKind::twisted_cylinder: {
      const auto twist = detail::draw_twist(s, rng);
      const auto src = random_object(Genera{{s.genus}}, rng);
      const auto tgt = random_object(Genera{{s.genus}}, rng);
      return twisted_cylinder(src, twist, tgt.lagrangian(), weight());
    }
    case GeneratorKind::handlebody: {
      const auto tgt = random_object(Genera{{s.genus}}, rng);
      return handlebody(s.genus, tgt.lagrangian(), weight());
    }
    case GeneratorKind::cap: {
      const auto twist = detail::draw_twist(s, rng);
      const auto src = random_object(Genera{{s.genus}}, rng);
      return cap(s.genus, src.lagrangian(), weight(), twist);
    }
    case GeneratorKind::disjoint_union:
      return disjoint_union(build(s.children[0], rng), build(s.children[1], rng));
    case GeneratorKind::composite: {
      spec_interface(s);
      auto acc = build(s.children.front(), rng);
      for (std::size_t i = 1; i < s.children.size(); ++i) {
        auto next = build(s.children[i], rng);
        const auto next_target = next.target;
        acc = compose(acc, with_endpoints(std::move(next), acc.target, next_target));
      }
      return acc;
    }
  }
  throw std::logic_error("unknown generator kind");
}

/// Builds `shape`, puts random Lagrangians on both ends (or `source` on the left end),
/// then fixes the weight parity so the result is even.
inline CobordismMorphism random_even_morphism(const GeneratorSpec& shape, std::uint64_t seed,
                                              const std::optional<SurfaceObject>& source = std::nullopt) {
  std::mt19937_64 rng(seed);
  const auto [src_genera, tgt_genera] = spec_interface(shape);
  if (source && !(source->genera() == src_genera))
    throw ShapeError("random_even_morphism: shape source does not match the given object");
  auto m = build(shape, rng);
  const auto src = source ? *source : random_object(src_genera, rng);
  const auto tgt = random_object(tgt_genera, rng);
  m = make_even(with_endpoints(std::move(m), src, tgt));
  if (!validate(m).empty()) throw std::logic_error("random_even_morphism produced an invalid record");
  return m;
}

/// An even pseudo-cylinder (Σ, from) -> (Σ, to).
inline CobordismMorphism even_pseudo_cylinder(const Genera& genera, const RationalSubspace& from,
                                              const RationalSubspace& to) {
  return make_even(pseudo_cylinder(SurfaceObject(genera, from), to, 0));
}

/// Random layered shape starting at `source`: each layer acts on every current
/// component by a cylinder or a cap and may add a new handlebody component.
/// Total genus stays at most `genus_max`, at most `max_layers` layers.
inline GeneratorSpec random_shape(const Genera& source, std::mt19937_64& rng, std::size_t genus_max,
                                  std::size_t max_layers = 5) {
  auto leaf = [](GeneratorKind k, std::size_t g) {
    GeneratorSpec s;
    s.kind = k;
    s.genus = g;
    return s;
  };
  auto join = [](std::optional<GeneratorSpec> acc, GeneratorSpec next) {
    if (!acc) return next;
    GeneratorSpec u;
    u.kind = GeneratorKind::disjoint_union;
    u.children = {std::move(*acc), std::move(next)};
    return u;
  };

  GeneratorSpec composite;
  composite.kind = GeneratorKind::composite;
  Genera current = source;
  const std::size_t layers = 1 + rng() % max_layers;
  for (std::size_t l = 0; l < layers; ++l) {
    std::optional<GeneratorSpec> layer;
    Genera next;
    for (auto g : current.components) {
      switch (rng() % 5) {
        case 0:
          layer = join(layer, leaf(GeneratorKind::cap, g));
          break;
        case 1:
          layer = join(layer, leaf(GeneratorKind::pseudo_cylinder, g));
          next.components.push_back(g);
          break;
        case 2:
          layer = join(layer, leaf(GeneratorKind::identity, g));
          next.components.push_back(g);
          break;
        default:
          layer = join(layer, leaf(GeneratorKind::twisted_cylinder, g));
          next.components.push_back(g);
          break;
      }
    }
    const std::size_t used = next.beta1() / 2;
    if ((!layer || rng() % 3 == 0) && used < genus_max) {
      const std::size_t g = rng() % (genus_max - used + 1);
      layer = join(layer, leaf(GeneratorKind::handlebody, g));
      next.components.push_back(g);
    }
    if (!layer) {
      layer = leaf(GeneratorKind::handlebody, 0);
      next.components.push_back(0);
    }
    composite.children.push_back(std::move(*layer));
    current = std::move(next);
  }
  return composite;
}

}  // namespace evencob
