// Command-line front end. Exit codes: 0 pass, 1 I/O or schema error,
// 2 domain error (or a failed scenario verdict), 3 enumeration cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toy/condprep.hpp"
#include "toy/grid.hpp"
#include "toy/io.hpp"
#include "toy/oracle.hpp"
#include "toy/scenarios.hpp"

using namespace toy;

namespace {

struct CliConfig {
  std::string format = "text";
  int decimal = -1;  // -1: exact fractions
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t cap = 0;  // 0: keep TOY_ENUM_CAP / the default
  bool verify = false;
  bool exhaustive = false;
  std::uint32_t d = 2;
  bool rational = false;
};

struct Done {
  int code;
};

std::ostringstream out;  // written once at the end

bool json_out(const CliConfig& cfg) { return cfg.format == "json"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string p; std::getline(in, p, sep);) parts.push_back(p);
  return parts;
}

std::string probability(const Rational& r, const CliConfig& cfg) {
  if (cfg.decimal < 0) return to_string(r);
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(cfg.decimal);
  s << static_cast<long double>(r.num()) / static_cast<long double>(r.den());
  return s.str();
}

/// "toy+,toy0" is the product of presets; anything else is a JSON file
/// holding a state or an explicit support (which must be valid).
AnyState load_state(const std::string& arg, const CliConfig& cfg) {
  if (!std::filesystem::exists(arg) && arg.rfind("toy", 0) == 0) {
    auto build = [&]<class S>(const Field<S>& field) -> AnyState {
      std::vector<EpistemicState<S>> parts;
      for (const auto& name : split(arg, ',')) {
        if (name.rfind("toy", 0) != 0) throw Error(ErrorKind::Schema, "unknown preset '" + name + "'");
        try {
          parts.push_back(named_state(field, name.substr(3)));
        } catch (const Error& e) {
          throw Error(ErrorKind::Schema, e.what());
        }
      }
      return tensor(std::span<const EpistemicState<S>>(parts));
    };
    if (cfg.rational) return build(Field<Rational>{});
    return build(Field<Zp>{cfg.d});
  }
  const auto j = read_json_file(arg);
  if (j.contains("support")) {
    const auto s = is_valid_support(parse_support(j));
    if (!s) throw Error(ErrorKind::InvalidArgument, arg + " is not a valid epistemic state");
    return *s;
  }
  return parse_state(j);
}

template <class S>
std::string show(const EpistemicState<S>& s) {
  std::string text = to_string(s) + "\n";
  if constexpr (Field<S>::finite)
    if (s.field().p == 2 && s.systems() <= 2) text += render_grid(s).to_text();
  return text;
}

void print_state(const AnyState& s, const CliConfig& cfg) {
  if (json_out(cfg))
    out << state_json(s).dump(2) << "\n";
  else
    out << std::visit([](const auto& x) { return show(x); }, s);
}

std::vector<Index> one_based(const std::vector<std::string>& items, const std::string& what) {
  std::vector<Index> idx;
  for (const auto& item : items) {
    try {
      const auto v = std::stoll(item);
      if (v < 1) throw std::invalid_argument(item);
      idx.push_back(static_cast<Index>(v - 1));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Schema, what + ": expected 1-based system numbers, got '" + item + "'");
    }
  }
  return idx;
}

// ---------------------------------------------------------------------------
// state

int cmd_state(const std::string& action, const std::vector<std::string>& inputs, const std::string& keep,
              const CliConfig& cfg) {
  if (inputs.empty()) throw Error(ErrorKind::Schema, "state " + action + " needs an input");
  if (action == "validate") {
    if (std::filesystem::exists(inputs[0])) {
      const auto j = read_json_file(inputs[0]);
      if (j.contains("support")) {
        const auto sup = parse_support(j);
        const auto s = is_valid_support(sup);
        if (!s) {
          out << "not a valid epistemic state (" << sup.size() << " ontic states)\n";
          if (sup.space.field.p == 2 && sup.space.systems <= 2) out << render_grid(sup).to_text();
          return 2;
        }
        out << "valid\n";
        print_state(*s, cfg);
        return 0;
      }
    }
    const auto s = load_state(inputs[0], cfg);
    out << "valid\n";
    print_state(s, cfg);
    return 0;
  }
  if (action == "show") {
    print_state(load_state(inputs[0], cfg), cfg);
    return 0;
  }
  if (action == "marginal") {
    const auto s = load_state(inputs[0], cfg);
    const auto systems = one_based(split(keep, ','), "--keep");
    print_state(std::visit([&](const auto& x) { return AnyState(marginal(x, systems)); }, s), cfg);
    return 0;
  }
  if (action == "tensor") {
    auto acc = load_state(inputs[0], cfg);
    for (std::size_t i = 1; i < inputs.size(); ++i) {
      const auto next = load_state(inputs[i], cfg);
      acc = std::visit(
          [](const auto& a, const auto& b) -> AnyState {
            using A = std::decay_t<decltype(a)>;
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<A, B>)
              return tensor(a, b);
            else
              throw Error(ErrorKind::FieldMismatch, "tensor of states over different fields");
          },
          acc, next);
    }
    print_state(acc, cfg);
    return 0;
  }
  if (action == "mix") {
    std::vector<EpistemicState<Zp>> parts;
    for (const auto& in : inputs) {
      const auto s = load_state(in, cfg);
      if (!std::holds_alternative<EpistemicState<Zp>>(s))
        throw Error(ErrorKind::ContinuousNotEnumerable, "mixtures need a prime field");
      parts.push_back(std::get<EpistemicState<Zp>>(s));
    }
    const auto sup = mixture_support(parts);
    const auto valid = is_valid_support(sup);
    if (!valid) {
      out << "not a valid epistemic state (" << sup.size() << " ontic states)\n";
      if (json_out(cfg)) out << support_json(sup).dump(2) << "\n";
      return 2;
    }
    print_state(*valid, cfg);
    return 0;
  }
  throw Error(ErrorKind::Schema, "unknown state action '" + action + "'");
}

// ---------------------------------------------------------------------------
// evolve

template <class S>
SymplecticTransform<S> parse_gate(const std::string& spec, const PhaseSpace<S>& space) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  std::vector<Index> args;
  if (colon != std::string::npos) args = one_based(split(spec.substr(colon + 1), ','), "--gate " + name);
  return gate_library(name, space, args);
}

template <class S>
int evolve(const EpistemicState<S>& s, const std::vector<std::string>& gates, const std::string& transform_file,
           const CliConfig& cfg) {
  auto t = identity_transform(s.space());
  if (!transform_file.empty()) t = parse_transform(read_json_file(transform_file), s.space());
  for (const auto& g : gates) t = compose(parse_gate(g, s.space()), t);
  const auto result = apply_to_state(t, s);
  if constexpr (Field<S>::finite) {
    if (cfg.verify) {
      const auto sup = ontic_support(s);
      std::vector<std::uint64_t> pushed;
      for (std::size_t i = 0; i < sup.size(); ++i) pushed.push_back(pack(apply_to_ontic(t, sup.vector(i)), s.field().p));
      if (OnticSupport::from_codes(s.space(), pushed) != ontic_support(result))
        throw Error(ErrorKind::InvalidArgument, "verification failed: ontic pushforward differs");
      if (!json_out(cfg)) out << "verified: ontic pushforward matches (" << sup.size() << " states)\n";
    }
  } else if (cfg.verify) {
    throw Error(ErrorKind::ContinuousNotEnumerable, "--verify needs a prime field");
  }
  print_state(AnyState(result), cfg);
  return 0;
}

// ---------------------------------------------------------------------------
// measure

template <class S>
int measure(const EpistemicState<S>& s, const std::string& observables, const std::string& local_q_arg,
            const std::string& outcome_arg, bool sample, const CliConfig& cfg) {
  std::optional<Measurement<S>> m;
  if (!observables.empty()) m = parse_measurement(read_json_file(observables), s.space());
  if (!local_q_arg.empty()) {
    std::vector<Vec<S>> gens;
    for (auto sys : one_based(split(local_q_arg, ','), "--local-q"))
      gens.push_back(unit_vector(s.field(), s.space().dim(), 2 * sys));
    m = make_measurement(s.space(), std::span<const Vec<S>>(gens));
  }
  if (!m) throw Error(ErrorKind::Schema, "measure needs --observables or --local-q");
  if (sample && !outcome_arg.empty())
    throw Error(ErrorKind::Schema, "give --outcome or --sample, not both");

  Json doc;
  doc["measurement"] = measurement_json(*m);
  doc["probabilities"] = Json::array();
  std::vector<std::pair<std::string, std::string>> table;
  if constexpr (Field<S>::finite) {
    for (const auto& o : outcomes(*m)) {
      const auto p = outcome_probability(s, *m, o);
      if (cfg.verify && oracle_probability(s, *m, o) != p)
        throw Error(ErrorKind::InvalidArgument, "verification failed: oracle probability differs");
      table.emplace_back(to_string(o.label()), probability(p, cfg));
      doc["probabilities"].push_back({{"outcome", vector_json(o.label())}, {"p", probability(p, cfg)}});
    }
  }
  std::optional<Outcome<S>> chosen;
  if (sample) {
    if constexpr (Field<S>::finite)
      chosen = sample_outcome(s, *m, cfg.seed);
    else
      throw Error(ErrorKind::ContinuousNotEnumerable, "sampling needs a prime field");
  } else if (!outcome_arg.empty()) {
    std::vector<S> label;
    for (const auto& x : split(outcome_arg, ',')) label.push_back(detail::parse_scalar(s.field(), Json(x)));
    Vec<S> l(static_cast<Index>(label.size()));
    for (std::size_t i = 0; i < label.size(); ++i) l(static_cast<Index>(i)) = label[i];
    chosen = Outcome<S>(*m, l);
  } else {
    // no outcome requested: report the certain outcome if there is one
    if constexpr (Field<S>::finite)
      for (const auto& o : outcomes(*m))
        if (is_certain(s, *m, o)) chosen = o;
  }

  if (!json_out(cfg))
    for (const auto& [label, p] : table) out << "outcome " << label << ": " << p << "\n";
  if (chosen) {
    const auto p = outcome_probability(s, *m, *chosen);
    const auto post = update_state(s, *m, *chosen);
    // repeating the measurement must give the same outcome with certainty
    const bool repeat = outcome_probability(post, *m, *chosen) == Rational(1);
    if constexpr (Field<S>::finite)
      if (cfg.verify && ontic_support(post) != oracle_smallest_update(s, *m, *chosen))
        throw Error(ErrorKind::InvalidArgument, "verification failed: update differs from the oracle");
    if (json_out(cfg)) {
      doc["outcome"] = vector_json(chosen->label());
      doc["p"] = probability(p, cfg);
      doc["certain"] = is_certain(s, *m, *chosen);
      doc["post_state"] = state_json(post);
      doc["repeatable"] = repeat;
      out << doc.dump(2) << "\n";
    } else {
      out << (sample ? "sampled" : "outcome") << " " << to_string(chosen->label()) << " with p = " << probability(p, cfg)
          << (is_certain(s, *m, *chosen) ? " (certain)" : "") << "\n";
      out << "post-state " << show(post);
      out << "repeat check: " << (repeat ? "ok" : "FAILED") << "\n";
    }
    if (!repeat) return 2;
  } else if (json_out(cfg)) {
    out << doc.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// scenario

// Keys of an fr-search config file override the command-line flags.
void apply_config(const Json& j, FrSearchConfig& fc) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "scenario config must be an object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "d")
        fc.d = value.get<std::uint32_t>();
      else if (key == "exhaustive")
        fc.exhaustive = value.get<bool>();
      else if (key == "samples")
        fc.samples = value.get<std::uint64_t>();
      else if (key == "mixed")
        fc.mixed = value.get<bool>();
      else if (key == "seed")
        fc.seed = value.get<std::uint64_t>();
      else if (key == "workers")
        fc.workers = std::max(1u, value.get<unsigned>());
      else if (key == "spot_checks")
        fc.spot_checks = value.get<std::uint64_t>();
      else if (key == "weaken")
        fc.weaken_inference = value.get<bool>();
      else if (key == "blocks") {
        const auto b = value.get<std::vector<Index>>();
        if (b.size() != 4) throw Error(ErrorKind::Schema, "\"blocks\" lists the R, A, S, B system counts");
        fc.blocks = FrBlocks{b[0], b[1], b[2], b[3]};
      } else
        throw Error(ErrorKind::Schema, "unknown config key \"" + key + "\"");
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::Schema, "config key \"" + key + "\": " + e.what());
    }
  }
}

int cmd_scenario(const std::string& name, const std::string& targets, std::uint64_t samples, bool mixed,
                 bool weaken, bool d_given, const std::string& config_file, const CliConfig& cfg) {
  ScenarioReport r;
  if (name == "bell") {
    r = run_bell(cfg.d);
  } else if (name == "wigner") {
    r = run_wigner_friend();
  } else if (name == "forgetting") {
    r = run_forgetting();
  } else if (name == "condprep-search") {
    const auto t = split(targets, ',');
    if (t.size() != 2) throw Error(ErrorKind::Schema, "--targets needs two presets, e.g. toy0,toy+");
    r = run_condprep_search(t[0], t[1], cfg.exhaustive);
  } else if (name == "fr-search") {
    FrSearchConfig fc;
    fc.d = d_given ? cfg.d : 2;
    fc.exhaustive = cfg.exhaustive;
    fc.samples = samples;
    fc.mixed = mixed;
    fc.seed = cfg.seed;
    fc.workers = cfg.workers;
    fc.weaken_inference = weaken;
    if (!config_file.empty()) apply_config(read_json_file(config_file), fc);
    // progress goes to stderr in 10% steps; stdout is written once at the end
    fc.progress = [last = -1](std::uint64_t done, std::uint64_t total) mutable {
      const int pct = static_cast<int>(100 * done / std::max<std::uint64_t>(1, total)) / 10 * 10;
      if (pct == last) return;
      last = pct;
      std::cerr << "fr-search: " << pct << "% (" << done << "/" << total << ")\n";
    };
    r = search_fr_paradox(fc);
  } else {
    throw Error(ErrorKind::Schema, "unknown scenario '" + name + "'");
  }
  if (json_out(cfg))
    out << report_json(r).dump(2) << "\n";
  else
    out << to_text(r);
  return r.passed() ? 0 : 2;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Schema: return 1;
    case ErrorKind::CapExceeded: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toy: exact epistemic toy theory over Z_p and Q"};
  app.require_subcommand(1);
  CliConfig cfg;
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--decimal", cfg.decimal, "print probabilities as decimals with this many digits");
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--workers", cfg.workers, "worker threads for searches")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "enumeration cap (overrides TOY_ENUM_CAP)")->check(CLI::PositiveNumber);
  app.add_flag("--verify", cfg.verify, "cross-check against the brute-force oracle");
  app.add_flag("--exhaustive", cfg.exhaustive, "allow searches beyond the enumeration cap");
  auto* d_opt = app.add_option("--d", cfg.d, "prime for presets and scenarios (default 2)");
  app.add_flag("--rational", cfg.rational, "presets over Q instead of Z_d");

  auto* state = app.add_subcommand("state", "validate, show, marginal, tensor or mix states");
  std::string action, keep;
  std::vector<std::string> inputs;
  state->add_option("action", action, "validate|show|marginal|tensor|mix")
      ->required()
      ->check(CLI::IsMember({"validate", "show", "marginal", "tensor", "mix"}));
  state->add_option("inputs", inputs, "state files or presets such as toy+,toy0")->required();
  state->add_option("--keep", keep, "systems to keep (1-based, comma separated)");

  auto* evolve_cmd = app.add_subcommand("evolve", "apply gates or a transform to a state");
  std::string evolve_in, transform_file;
  std::vector<std::string> gates;
  evolve_cmd->add_option("state", evolve_in)->required();
  evolve_cmd->add_option("--gate", gates, "cnot:c,t | qp_swap:i | swap:i,j (1-based), applied in order");
  evolve_cmd->add_option("--transform", transform_file, "JSON transform file");

  auto* measure_cmd = app.add_subcommand("measure", "measure a state and update it");
  std::string measure_in, observables, local_q_arg, outcome_arg;
  bool sample = false;
  measure_cmd->add_option("state", measure_in)->required();
  measure_cmd->add_option("--observables", observables, "JSON measurement file");
  measure_cmd->add_option("--local-q", local_q_arg, "measure q on these systems (1-based)");
  measure_cmd->add_option("--outcome", outcome_arg, "outcome label, comma separated");
  measure_cmd->add_flag("--sample", sample, "draw the outcome with --seed");

  auto* scenario = app.add_subcommand("scenario", "run a canned experiment or search");
  std::string scenario_name, targets = "toy0,toy+", config_file;
  std::uint64_t samples = 0;
  bool mixed = false, weaken = false;
  scenario->add_option("name", scenario_name, "bell|wigner|forgetting|fr-search|condprep-search")
      ->required()
      ->check(CLI::IsMember({"bell", "wigner", "forgetting", "fr-search", "condprep-search"}));
  scenario->add_option("--targets", targets, "condprep-search target presets");
  scenario->add_option("--samples", samples, "fr-search: sampled mode with this many candidates");
  scenario->add_flag("--mixed", mixed, "fr-search sampled mode: include mixed initial states");
  scenario->add_flag("--weaken", weaken, "fr-search: drop the subset condition (mutation test)");
  scenario->add_option("--config", config_file, "fr-search: JSON config (d, samples, mixed, seed, workers, ...)");

  // options given after a subcommand belong to the app as well
  for (auto* sub : {state, evolve_cmd, measure_cmd, scenario}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  int code = 0;
  try {
    if (cfg.cap) set_enumeration_cap(cfg.cap);
    if (*state) {
      code = cmd_state(action, inputs, keep, cfg);
    } else if (*evolve_cmd) {
      const auto s = load_state(evolve_in, cfg);
      code = std::visit([&](const auto& x) { return evolve(x, gates, transform_file, cfg); }, s);
    } else if (*measure_cmd) {
      const auto s = load_state(measure_in, cfg);
      code = std::visit([&](const auto& x) { return measure(x, observables, local_q_arg, outcome_arg, sample, cfg); },
                        s);
    } else if (*scenario) {
      code = cmd_scenario(scenario_name, targets, samples, mixed, weaken, d_opt->count() > 0, config_file, cfg);
    }
  } catch (const Error& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out.str();
  return code;
}
