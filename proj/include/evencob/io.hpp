#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evencob/generators.hpp"

namespace evencob {

// ---------------------------------------------------------------------------
// Errors. Every parse error carries the 1-based line it was detected on.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonSkewFormError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DanglingNameError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Well-formed input whose values break a domain rule (non-Lagrangian object,
/// non-composable pipeline, ...).
class InvalidValueError : public ParseError {
 public:
  using ParseError::ParseError;
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Splits into non-empty token lines; `#` starts a comment.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    auto raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line l{number, {}};
    for (std::string tok; in >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

class LineCursor {
 public:
  explicit LineCursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return next_ == lines_.size(); }
  const Line& peek() const { return lines_[next_]; }
  const Line& take(const char* expecting) {
    if (done()) throw SyntaxError(last_line(), std::string("unexpected end of file, expected ") + expecting);
    return lines_[next_++];
  }
  std::size_t last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw SyntaxError(line, "expected a non-negative integer, got '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw SyntaxError(line, "count out of range: '" + tok + "'");
  }
}

inline long parse_long(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw SyntaxError(line, "expected an integer, got '" + tok + "'");
}

inline Rational parse_entry(const std::string& tok, std::size_t line) {
  try {
    return parse_rational(tok);
  } catch (const RationalFormatError& e) {
    throw SyntaxError(line, e.what());
  }
}

/// `rows` lines of `cols` rationals each; no lines are read when cols == 0.
inline RationalMatrix read_rows(LineCursor& cur, std::size_t rows, std::size_t cols, const char* what) {
  RationalMatrix m(rows, cols);
  if (cols == 0) return m;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& l = cur.take(what);
    if (l.tokens.size() != cols)
      throw DimensionError(l.number, std::string(what) + " row has " + std::to_string(l.tokens.size()) +
                                         " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_entry(l.tokens[c], l.number);
  }
  return m;
}

inline void write_rows(std::ostream& out, const RationalMatrix& m) {
  if (m.cols() == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << format_rational(m(r, c));
    out << '\n';
  }
}

inline void require_arity(const Line& l, std::size_t n, const char* usage) {
  if (l.tokens.size() != n) throw SyntaxError(l.number, std::string("expected '") + usage + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scenario files (.ssf)
//
//   form <n>                 followed by n rows of n rationals
//   subspace <name> <k>      followed by k basis rows
//   triple <a> <b> <c>

struct Scenario {
  std::optional<SymplecticSpace> space;
  std::vector<std::pair<std::string, RationalSubspace>> subspaces;
  std::vector<std::array<std::string, 3>> queries;

  const RationalSubspace* find(std::string_view name) const {
    for (const auto& [n, s] : subspaces)
      if (n == name) return &s;
    return nullptr;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline Scenario parse_scenario(std::string_view text) {
  using namespace detail;
  LineCursor cur(tokenize(text));
  Scenario sc;
  std::vector<std::pair<std::size_t, std::array<std::string, 3>>> pending;
  while (!cur.done()) {
    const auto& l = cur.take("directive");
    const auto& kw = l.tokens[0];
    if (kw == "form") {
      require_arity(l, 2, "form <n>");
      if (sc.space) throw SyntaxError(l.number, "form declared twice");
      const auto n = parse_count(l.tokens[1], l.number);
      const auto gram = read_rows(cur, n, n, "form");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (gram(i, j) != -gram(j, i))
            throw NonSkewFormError(l.number, "form is not skew-symmetric at entry (" + std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1) + ")");
      sc.space = SymplecticSpace(gram);
    } else if (kw == "subspace") {
      require_arity(l, 3, "subspace <name> <k>");
      if (!sc.space) throw SyntaxError(l.number, "subspace declared before form");
      if (sc.find(l.tokens[1])) throw SyntaxError(l.number, "duplicate subspace name '" + l.tokens[1] + "'");
      const auto k = parse_count(l.tokens[2], l.number);
      const auto rows = read_rows(cur, k, sc.space->dim(), "subspace");
      sc.subspaces.emplace_back(l.tokens[1], RationalSubspace::span(rows));
    } else if (kw == "triple") {
      require_arity(l, 4, "triple <a> <b> <c>");
      pending.push_back({l.number, {l.tokens[1], l.tokens[2], l.tokens[3]}});
    } else {
      throw SyntaxError(l.number, "unknown directive '" + kw + "'");
    }
  }
  for (auto& [line, names] : pending) {
    for (const auto& n : names)
      if (!sc.find(n)) throw DanglingNameError(line, "undeclared subspace '" + n + "'");
    sc.queries.push_back(std::move(names));
  }
  return sc;
}

inline std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream out;
  if (sc.space) {
    out << "form " << sc.space->dim() << '\n';
    detail::write_rows(out, sc.space->gram());
  }
  for (const auto& [name, s] : sc.subspaces) {
    out << "subspace " << name << ' ' << s.dim() << '\n';
    detail::write_rows(out, s.basis());
  }
  for (const auto& q : sc.queries) out << "triple " << q[0] << ' ' << q[1] << ' ' << q[2] << '\n';
  return out.str();
}

/// Resolves a query to a validated triple.
inline LagrangianTriple scenario_triple(const Scenario& sc, const std::array<std::string, 3>& q) {
  if (!sc.space) throw DimensionMismatch("scenario has no form");
  return LagrangianTriple(*sc.space, *sc.find(q[0]), *sc.find(q[1]), *sc.find(q[2]));
}

// ---------------------------------------------------------------------------
// Pipeline files (.cbf)
//
//   object <name> genera <g1> <g2> ...
//   lagrangian <k>                                    followed by k rows
//   morphism <name> <src> <dst> weight <w> h1 <n> h0 <m>
//   jsrc_h1 / jtgt_h1 / jsrc_h0 / jtgt_h0             each followed by its rows
//   generator <name> <src> <dst> <spec>
//
// Generator declarations are built with an RNG seeded by base_seed + their
// position among the morphisms.

struct PipelineStep {
  std::string name;
  std::string source;
  std::string target;
  CobordismMorphism morphism;

  friend bool operator==(const PipelineStep&, const PipelineStep&) = default;
};

struct Pipeline {
  std::vector<std::pair<std::string, SurfaceObject>> objects;
  std::vector<PipelineStep> morphisms;

  const SurfaceObject* find(std::string_view name) const {
    for (const auto& [n, o] : objects)
      if (n == name) return &o;
    return nullptr;
  }

  friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

inline Pipeline parse_pipeline(std::string_view text, std::uint64_t base_seed = 0) {
  using namespace detail;
  LineCursor cur(tokenize(text));
  Pipeline p;
  auto lookup = [&](const std::string& name, std::size_t line) -> const SurfaceObject& {
    const auto* o = p.find(name);
    if (!o) throw DanglingNameError(line, "undeclared object '" + name + "'");
    return *o;
  };
  auto read_block = [&](const char* label, std::size_t rows, std::size_t cols) {
    const auto& l = cur.take(label);
    if (l.tokens.size() != 1 || l.tokens[0] != label)
      throw SyntaxError(l.number, std::string("expected block label '") + label + "'");
    return read_rows(cur, rows, cols, label);
  };

  while (!cur.done()) {
    const auto& l = cur.take("directive");
    const auto& kw = l.tokens[0];
    if (kw == "object") {
      if (l.tokens.size() < 3 || l.tokens[2] != "genera") throw SyntaxError(l.number, "expected 'object <name> genera ...'");
      if (p.find(l.tokens[1])) throw SyntaxError(l.number, "duplicate object name '" + l.tokens[1] + "'");
      Genera g;
      for (std::size_t i = 3; i < l.tokens.size(); ++i) g.components.push_back(parse_count(l.tokens[i], l.number));
      const auto& lag = cur.take("lagrangian");
      if (lag.tokens.size() != 2 || lag.tokens[0] != "lagrangian")
        throw SyntaxError(lag.number, "expected 'lagrangian <k>'");
      const auto rows = read_rows(cur, parse_count(lag.tokens[1], lag.number), g.beta1(), "lagrangian");
      try {
        p.objects.emplace_back(l.tokens[1], SurfaceObject(g, RationalSubspace::span(rows)));
      } catch (const NotLagrangian& e) {
        throw InvalidValueError(lag.number, e.what());
      }
    } else if (kw == "morphism") {
      require_arity(l, 10, "morphism <name> <src> <dst> weight <w> h1 <n> h0 <m>");
      if (l.tokens[4] != "weight" || l.tokens[6] != "h1" || l.tokens[8] != "h0")
        throw SyntaxError(l.number, "expected 'morphism <name> <src> <dst> weight <w> h1 <n> h0 <m>'");
      PipelineStep step{l.tokens[1], l.tokens[2], l.tokens[3], {}};
      auto& m = step.morphism;
      m.source = lookup(step.source, l.number);
      m.target = lookup(step.target, l.number);
      m.weight = parse_long(l.tokens[5], l.number);
      m.h1_dim = parse_count(l.tokens[7], l.number);
      m.h0_dim = parse_count(l.tokens[9], l.number);
      m.j_src_h1 = read_block("jsrc_h1", m.h1_dim, m.source.beta1());
      m.j_tgt_h1 = read_block("jtgt_h1", m.h1_dim, m.target.beta1());
      m.j_src_h0 = read_block("jsrc_h0", m.h0_dim, m.source.beta0());
      m.j_tgt_h0 = read_block("jtgt_h0", m.h0_dim, m.target.beta0());
      p.morphisms.push_back(std::move(step));
    } else if (kw == "generator") {
      if (l.tokens.size() < 5) throw SyntaxError(l.number, "expected 'generator <name> <src> <dst> <spec>'");
      std::string spec_text;
      for (std::size_t i = 4; i < l.tokens.size(); ++i) spec_text += (i > 4 ? " " : "") + l.tokens[i];
      GeneratorSpec spec;
      try {
        spec = parse_spec(spec_text);
      } catch (const SpecSyntaxError& e) {
        throw SyntaxError(l.number, e.what());
      }
      const auto& src = lookup(l.tokens[2], l.number);
      const auto& dst = lookup(l.tokens[3], l.number);
      std::mt19937_64 rng(base_seed + p.morphisms.size());
      CobordismMorphism m;
      try {
        const auto [sg, tg] = spec_interface(spec);
        if (!(sg == src.genera()) || !(tg == dst.genera()))
          throw DimensionError(l.number, "generator interface does not match the declared objects");
        m = with_endpoints(build(spec, rng), src, dst);
      } catch (const ShapeError& e) {
        throw DimensionError(l.number, e.what());
      }
      p.morphisms.push_back({l.tokens[1], l.tokens[2], l.tokens[3], std::move(m)});
    } else {
      throw SyntaxError(l.number, "unknown directive '" + kw + "'");
    }
  }
  for (std::size_t i = 1; i < p.morphisms.size(); ++i)
    if (!(p.morphisms[i - 1].morphism.target == p.morphisms[i].morphism.source))
      throw InvalidValueError(cur.last_line(), "morphisms '" + p.morphisms[i - 1].name + "' and '" +
                                                   p.morphisms[i].name + "' are not composable");
  return p;
}

inline void write_object(std::ostream& out, const std::string& name, const SurfaceObject& o) {
  out << "object " << name << " genera";
  for (auto g : o.genera().components) out << ' ' << g;
  out << "\nlagrangian " << o.lagrangian().dim() << '\n';
  detail::write_rows(out, o.lagrangian().basis());
}

inline void write_morphism(std::ostream& out, const PipelineStep& s) {
  const auto& m = s.morphism;
  out << "morphism " << s.name << ' ' << s.source << ' ' << s.target << " weight " << m.weight << " h1 " << m.h1_dim
      << " h0 " << m.h0_dim << '\n';
  out << "jsrc_h1\n";
  detail::write_rows(out, m.j_src_h1);
  out << "jtgt_h1\n";
  detail::write_rows(out, m.j_tgt_h1);
  out << "jsrc_h0\n";
  detail::write_rows(out, m.j_src_h0);
  out << "jtgt_h0\n";
  detail::write_rows(out, m.j_tgt_h0);
}

/// Generator declarations come back as explicit morphism records.
inline std::string serialize_pipeline(const Pipeline& p) {
  std::ostringstream out;
  for (const auto& [name, o] : p.objects) write_object(out, name, o);
  for (const auto& s : p.morphisms) write_morphism(out, s);
  return out.str();
}

/// A standalone pipeline file for a chain of morphisms; objects are named O0, O1, ...
inline Pipeline pipeline_of(const std::vector<CobordismMorphism>& chain) {
  Pipeline p;
  if (chain.empty()) return p;
  p.objects.emplace_back("O0", chain.front().source);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto obj = "O" + std::to_string(i + 1);
    p.objects.emplace_back(obj, chain[i].target);
    p.morphisms.push_back({"M" + std::to_string(i + 1), "O" + std::to_string(i), obj, chain[i]});
  }
  return p;
}

}  // namespace evencob
