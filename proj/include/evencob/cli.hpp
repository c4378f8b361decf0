#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evencob/campaign.hpp"

namespace evencob::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kCounterexample = 1, kInputError = 2 };

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::size_t genus_max = 4;
  std::size_t abstract_trials = 100;
  std::string input;
  std::string output = "text";
  std::string theorem;
  std::string spec;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  if (path.empty()) throw InputError("--in is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline nlohmann::json to_json(const RationalMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_rational(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const EvennessReport& r) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [k, v] : r.term_breakdown) terms[k] = v;
  return {{"is_even", r.is_even}, {"parity_rhs", r.parity_rhs}, {"weight_parity", r.weight_parity}, {"terms", terms}};
}

inline nlohmann::json to_json(const CampaignResult& r) {
  nlohmann::json j = {{"name", r.name},         {"seed", r.seed},         {"trials", r.trials},
                      {"genus_max", r.genus_max}, {"failures", r.failures}, {"holds", r.holds()}};
  if (r.first_failure) {
    j["counterexample"] = {{"trial", *r.first_failure}, {"detail", r.failure_detail}, {"file", r.counterexample}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline void emit(std::ostream& out, const Options& o, const nlohmann::json& j, const std::string& text) {
  if (o.output == "json")
    out << j.dump(2) << '\n';
  else
    out << text;
}

inline nlohmann::json report_header(const char* command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

inline int cmd_maslov(const Options& o, std::ostream& out) {
  const auto sc = parse_scenario(read_file(o.input));
  auto j = report_header("maslov");
  j["queries"] = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& q : sc.queries) {
    const auto t = scenario_triple(sc, q);
    const auto form = maslov_form(t);
    const auto in = inertia(form.gram);
    const int mu = in.signature();
    const auto parity = parity_prediction(t);
    const auto ann = form_annihilator(t);
    const auto ds = dim_sum_parity(t);
    j["queries"].push_back({{"triple", {q[0], q[1], q[2]}},
                            {"maslov_index", mu},
                            {"form_dim", form.gram.rows()},
                            {"form_rank", in.rank()},
                            {"gram", to_json(form.gram)},
                            {"parity_prediction", parity.via_intersections},
                            {"parity_prediction_sums", parity.via_sums},
                            {"annihilator_dim", ann.dim()},
                            {"annihilator_matches", ann == predicted_annihilator(t)},
                            {"dim_sum_parity", {ds.sum_parity, ds.intersection_parity}}});
    text << "triple " << q[0] << ' ' << q[1] << ' ' << q[2] << ": mu = " << mu << ", parity " << mod2(mu)
         << " (predicted " << parity.via_intersections << "), annihilator dim " << ann.dim() << ", form dim "
         << form.gram.rows() << ", rank " << in.rank() << '\n';
  }
  emit(out, o, j, text.str());
  return kOk;
}

inline std::string campaign_text(const CampaignResult& r) {
  std::ostringstream s;
  s << r.name << ": " << (r.holds() ? "holds" : "FAILS") << " on " << r.trials - r.failures << "/" << r.trials
    << " trials (seed " << r.seed << ", genus <= " << r.genus_max << ")\n";
  if (r.first_failure) {
    s << "first counterexample at trial " << *r.first_failure << ": " << r.failure_detail << "\n";
    s << "# replay file\n" << r.counterexample;
  }
  return s.str();
}

inline int cmd_check(const Options& o, std::ostream& out) {
  const auto th = theorem_from_name(o.theorem);
  if (!th) throw InputError("unknown theorem '" + o.theorem + "'");
  const auto r = run_theorem_campaign(*th, o.theorem, o.seed, o.trials, o.genus_max);
  auto j = report_header("check");
  j["campaign"] = to_json(r);
  emit(out, o, j, campaign_text(r));
  return r.holds() ? kOk : kCounterexample;
}

inline int cmd_compose(const Options& o, std::ostream& out) {
  const auto p = parse_pipeline(read_file(o.input), o.seed);
  if (p.morphisms.empty()) throw InputError("pipeline declares no morphisms");
  auto j = report_header("compose");
  j["steps"] = nlohmann::json::array();
  std::ostringstream text;
  auto acc = p.morphisms.front().morphism;
  for (std::size_t i = 1; i < p.morphisms.size(); ++i) {
    const auto& next = p.morphisms[i].morphism;
    const int mu = composition_maslov_term(acc, next);
    acc = compose(acc, next);
    j["steps"].push_back({{"glue", p.morphisms[i].source}, {"maslov_term", mu}, {"weight", acc.weight}});
    text << "glue along " << p.morphisms[i].source << ": maslov term " << mu << ", weight " << acc.weight << '\n';
  }
  const auto ev = is_even(acc);
  const auto violations = validate(acc);
  j["composite"] = {{"source", p.morphisms.front().source},
                    {"target", p.morphisms.back().target},
                    {"weight", acc.weight},
                    {"beta1", acc.h1_dim},
                    {"beta0", acc.h0_dim},
                    {"evenness", to_json(ev)},
                    {"violations", violations}};
  text << "composite " << p.morphisms.front().source << " -> " << p.morphisms.back().target << ": weight "
       << acc.weight << ", beta1 " << acc.h1_dim << ", beta0 " << acc.h0_dim << ", even=" << (ev.is_even ? "true" : "false")
       << '\n';
  for (const auto& v : violations) text << "violation: " << v << '\n';
  emit(out, o, j, text.str());
  return kOk;
}

inline int cmd_even(const Options& o, std::ostream& out) {
  const auto p = parse_pipeline(read_file(o.input), o.seed);
  auto j = report_header("even");
  j["morphisms"] = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& s : p.morphisms) {
    const auto ev = is_even(s.morphism);
    const auto violations = validate(s.morphism);
    j["morphisms"].push_back({{"name", s.name}, {"weight", s.morphism.weight}, {"evenness", to_json(ev)}, {"violations", violations}});
    text << s.name << ": weight " << s.morphism.weight << ", rhs parity " << ev.parity_rhs << ", "
         << (ev.is_even ? "even" : "odd") << " [";
    for (std::size_t k = 0; k < ev.term_breakdown.size(); ++k)
      text << (k ? ", " : "") << ev.term_breakdown[k].first << "=" << ev.term_breakdown[k].second;
    text << "]\n";
    for (const auto& v : violations) text << "  violation: " << v << '\n';
  }
  emit(out, o, j, text.str());
  return kOk;
}

inline int cmd_gen(const Options& o, std::ostream& out) {
  if (o.spec.empty()) throw InputError("--spec is required");
  const auto spec = parse_spec(o.spec);
  const auto m = random_even_morphism(spec, o.seed);
  const auto file = serialize_pipeline(pipeline_of({m}));
  auto j = report_header("gen");
  j["spec"] = format_spec(spec);
  j["seed"] = o.seed;
  j["weight"] = m.weight;
  j["beta1"] = m.h1_dim;
  j["beta0"] = m.h0_dim;
  j["evenness"] = to_json(is_even(m));
  j["file"] = file;
  emit(out, o, j, "# " + format_spec(spec) + " seed " + std::to_string(o.seed) + "\n" + file);
  return kOk;
}

inline int cmd_closure(const Options& o, std::ostream& out) {
  const auto r = run_closure_campaign(o.seed, o.trials, o.genus_max, o.abstract_trials);
  auto j = report_header("closure");
  j["campaign"] = to_json(r.generator_built);
  j["abstract_sample"] = {{"trials", r.abstract_trials}, {"even_composites", r.abstract_even}};
  auto text = campaign_text(r.generator_built);
  text += "abstract validated records (logged only): " + std::to_string(r.abstract_even) + "/" +
          std::to_string(r.abstract_trials) + " composites even\n";
  emit(out, o, j, text);
  return r.generator_built.holds() ? kOk : kCounterexample;
}

/// Runs one CLI invocation; args excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Maslov index and even cobordism toolkit"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "base seed; trial i uses seed + i");
    sub->add_option("--trials", o.trials, "number of randomized trials");
    sub->add_option("--genus-max", o.genus_max, "largest genus sampled")->check(CLI::Range(1, 6));
    sub->add_option("--in", o.input, "input file");
    sub->add_option("--output", o.output, "report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* maslov = app.add_subcommand("maslov", "Maslov index of every triple in a scenario file");
  auto* check = app.add_subcommand("check", "randomized theorem campaign");
  check->add_option("--theorem", o.theorem, "statement to check")
      ->required()
      ->check(CLI::IsMember({"parity", "dim-sum", "annihilator", "pair-dims", "ann-identities", "corollary",
                             "well-defined"}));
  auto* compose_cmd = app.add_subcommand("compose", "compose the morphisms of a pipeline file");
  auto* even = app.add_subcommand("even", "evenness report for each morphism of a pipeline file");
  auto* gen = app.add_subcommand("gen", "random even morphism from a generator spec");
  gen->add_option("--spec", o.spec, "generator spec, e.g. \"(composite (handlebody 1) (cap 1))\"")->required();
  auto* closure = app.add_subcommand("closure", "even-closure campaign over generator-built morphisms");
  closure->add_option("--abstract-trials", o.abstract_trials, "abstract validated pairs to sample (logged only)");
  for (auto* sub : {maslov, check, compose_cmd, even, gen, closure}) common(sub);

  std::vector<const char*> argv{"evencob"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (maslov->parsed()) return cmd_maslov(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (compose_cmd->parsed()) return cmd_compose(o, out);
    if (even->parsed()) return cmd_even(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (closure->parsed()) return cmd_closure(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace evencob::cli
