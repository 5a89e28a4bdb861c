// tempo_miner: command-line driver for the temporal pattern mining pipeline.
//
//   transform  raw CSV -> symbolic CSV + sequence database JSON
//   mine       sequence JSON or raw CSV -> patterns (JSON lines) + summary
//   compare    two pattern files -> accuracy report
//   bound      confidence lower bound over a (sigma, mu) grid, as CSV
//   generate   synthetic symbolic CSV from a generator spec
//   mi-graph   correlation graph as DOT or JSON
//
// Exit codes: 0 ok, 2 input error, 3 config error, 4 internal failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tempo/approx.hpp"
#include "tempo/error.hpp"
#include "tempo/htpgm.hpp"
#include "tempo/io.hpp"
#include "tempo/oracle.hpp"
#include "tempo/synth.hpp"
#include "tempo/transform.hpp"

using nlohmann::json;
using namespace tempo;

namespace {

struct RunConfig {
  std::string input;
  std::string out = "-";
  std::string summary;
  std::string symbolic_out;
  std::string sequences_out;
  std::string mode = "exact";

  std::string mapper = "passthrough";
  std::vector<double> cuts;
  std::vector<std::string> labels;
  std::size_t bins = 2;
  json per_variable = json::object();

  Tick window = 0;  // 0: whole grid
  Tick overlap = 0;

  double sigma = 0.5;
  double delta = 0.5;
  Tick epsilon = 0;
  Tick min_overlap = 1;
  Tick t_max = 0;  // 0: unbounded
  std::size_t k_max = 3;
  std::string prune = "all";
  std::optional<double> mu;
  int threads = 0;  // 0: TEMPO_MINER_THREADS or 1
};

// A flag bound to a RunConfig field plus its config-file key. Config values
// only fill fields whose flag was not given.
struct Setting {
  std::string key;
  CLI::Option* opt;
  std::function<void(const json&)> load;
};

class Settings {
 public:
  template <class T>
  void add(CLI::App& app, const std::string& flag, const std::string& key, T& field,
           const std::string& help) {
    auto* opt = app.add_option(flag, field, help);
    items_.push_back({key, opt, [&field](const json& j) { field = j.get<T>(); }});
  }

  void add_mu(CLI::App& app, std::optional<double>& field) {
    auto* opt = app.add_option_function<double>(
        "--mu", [&field](double v) { field = v; }, "NMI threshold override (approx mode)");
    items_.push_back({"mu", opt, [&field](const json& j) { field = j.get<double>(); }});
  }

  void add_mappers(CLI::App& app, RunConfig& rc) {
    add(app, "--mapper", "mapper", rc.mapper, "passthrough | threshold | quantile");
    add(app, "--cuts", "cuts", rc.cuts, "threshold cut points");
    add(app, "--labels", "labels", rc.labels, "symbol labels");
    add(app, "--bins", "bins", rc.bins, "quantile bin count");
    items_.push_back({"mappers", nullptr, [&rc](const json& j) { rc.per_variable = j; }});
  }

  void apply(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(path + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(path + ": config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      auto it = std::find_if(items_.begin(), items_.end(),
                             [&](const Setting& s) { return s.key == key; });
      if (it == items_.end()) throw ConfigError(path + ": unknown key '" + key + "'");
      if (it->opt != nullptr && it->opt->count() > 0) continue;
      try {
        it->load(value);
      } catch (const json::exception&) {
        throw ConfigError(path + ": key '" + key + "' has the wrong type");
      }
    }
  }

 private:
  std::vector<Setting> items_;
};

SymbolMapper make_mapper(const std::string& kind, const std::vector<double>& cuts,
                         std::vector<std::string> labels, std::size_t bins) {
  if (kind == "passthrough") return SymbolMapper::passthrough();
  if (kind == "threshold") {
    if (labels.empty()) {
      for (std::size_t i = 0; i <= cuts.size(); ++i) labels.push_back("s" + std::to_string(i));
    }
    return SymbolMapper::threshold(cuts, std::move(labels));
  }
  if (kind == "quantile") return SymbolMapper::quantile(bins, std::move(labels));
  throw ConfigError("unknown mapper '" + kind + "'");
}

MapperSet mappers_of(const RunConfig& rc) {
  MapperSet m;
  m.fallback = make_mapper(rc.mapper, rc.cuts, rc.labels, rc.bins);
  if (!rc.per_variable.is_object()) throw ConfigError("'mappers' must map variables to mappers");
  for (const auto& [var, spec] : rc.per_variable.items()) {
    try {
      m.per_variable.emplace(
          var, make_mapper(spec.value("kind", std::string("passthrough")),
                           spec.value("cuts", std::vector<double>{}),
                           spec.value("labels", std::vector<std::string>{}),
                           spec.value("bins", std::size_t{2})));
    } catch (const json::exception&) {
      throw ConfigError("mapper for " + var + " is malformed");
    }
  }
  return m;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

// Writes to `path`, or stdout for "-".
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  body(out);
}

SymbolicDatabase load_symbolic(const RunConfig& rc) {
  auto in = open_in(rc.input);
  const auto csv = read_wide_csv(in, rc.input);
  return symbolize_csv(csv, mappers_of(rc));
}

SplitConfig split_of(const RunConfig& rc, const SymbolicDatabase& db) {
  SplitConfig sc;
  sc.window_len = rc.window > 0 ? rc.window : std::max<Tick>(2, static_cast<Tick>(db.length()));
  sc.overlap = rc.overlap;
  sc.validate();
  return sc;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (flag < 0) throw ConfigError("--threads must be positive");
  if (const char* env = std::getenv("TEMPO_MINER_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError("TEMPO_MINER_THREADS must be a positive integer");
  }
  return 1;
}

MiningConfig mining_of(const RunConfig& rc) {
  MiningConfig cfg;
  cfg.sigma = rc.sigma;
  cfg.delta = rc.delta;
  cfg.epsilon = rc.epsilon;
  cfg.min_overlap = rc.min_overlap;
  if (rc.t_max > 0) cfg.t_max = rc.t_max;
  if (rc.t_max < 0) throw ConfigError("t_max must be positive");
  cfg.k_max = rc.k_max;
  cfg.prune = prune_level_from_string(rc.prune);
  cfg.threads = resolve_threads(rc.threads);
  cfg.validate();
  return cfg;
}

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

json counters_json(const MiningCounters& c) {
  return {{"candidate_nodes", c.candidate_nodes},
          {"relation_checks", c.relation_checks},
          {"pruned_by_apriori", c.pruned_by_apriori},
          {"pruned_by_transitivity", c.pruned_by_transitivity},
          {"pruned_by_confidence", c.pruned_by_confidence}};
}

int run_transform(const RunConfig& rc) {
  const auto db = load_symbolic(rc);
  const auto seq = split_sequences(db, split_of(rc, db), rc.epsilon);
  if (!rc.symbolic_out.empty()) {
    with_output(rc.symbolic_out, [&](std::ostream& o) { write_symbolic_csv(o, db); });
  }
  with_output(rc.sequences_out.empty() ? "-" : rc.sequences_out,
              [&](std::ostream& o) { write_sequence_db(o, seq); });
  return 0;
}

int run_mine(const RunConfig& rc) {
  const auto cfg = mining_of(rc);
  if (rc.mode != "exact" && rc.mode != "approx") {
    throw ConfigError("mode must be exact or approx");
  }
  const bool approx = rc.mode == "approx";
  if (approx && is_json_path(rc.input)) {
    throw ConfigError("approx mode needs the raw CSV; a sequence file has no symbolic database");
  }
  if (!approx && rc.mu) throw ConfigError("--mu only applies to approx mode");

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<SymbolicDatabase> sym;
  SequenceDatabase seq;
  if (is_json_path(rc.input)) {
    auto in = open_in(rc.input);
    seq = read_sequence_db(in, rc.input);
  } else {
    sym = load_symbolic(rc);
    seq = split_sequences(*sym, split_of(rc, *sym), rc.epsilon);
  }

  MiningResult result;
  json warnings = json::array();
  json graph;
  if (approx) {
    auto ccfg = CorrelationConfig::from(cfg, rc.mu);
    ccfg.validate();
    auto ar = a_htpgm(*sym, seq, cfg, ccfg);
    result = std::move(ar.mining);
    for (const auto& w : ar.graph.warnings) warnings.push_back(w);
    graph = {{"vertices", ar.graph.vertices.size()}, {"edges", ar.graph.edges.size()}};
  } else {
    result = htpgm(seq, cfg);
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  with_output(rc.out, [&](std::ostream& o) { write_patterns(o, result.patterns, seq); });

  json summary = {{"mode", rc.mode},
                  {"prune", std::string(to_string(cfg.prune))},
                  {"sequences", seq.size()},
                  {"events", seq.event_count()},
                  {"patterns", result.patterns.size()},
                  {"level_sizes", result.level_sizes},
                  {"counters", counters_json(result.counters)},
                  {"threads", cfg.threads},
                  {"wall_time_ms", wall_ms}};
  if (approx) summary["graph"] = graph;
  if (!warnings.empty()) summary["warnings"] = warnings;
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
  if (rc.summary.empty()) {
    std::cerr << summary.dump(2) << '\n';
  } else {
    with_output(rc.summary, [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
  }
  return 0;
}

int run_compare(const std::string& ref_path, const std::string& cand_path) {
  auto rin = open_in(ref_path);
  auto cin = open_in(cand_path);
  const auto ref = read_patterns(rin, ref_path);
  const auto cand = read_patterns(cin, cand_path);
  std::vector<PatternIdentity> a, b;
  for (const auto& r : ref) a.push_back(r.identity);
  for (const auto& r : cand) b.push_back(r.identity);
  const auto rep = compare(a, b);
  json j = {{"reference_count", rep.reference_count},
            {"candidate_count", rep.candidate_count},
            {"matched", rep.matched},
            {"accuracy", rep.accuracy}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

// "a:b:step" or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ConfigError(what + ": bad number '" + s + "'");
    return v;
  };
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto p1 = text.find(':');
    const auto p2 = text.find(':', p1 + 1);
    const double a = num(text.substr(0, p1));
    const double b = num(text.substr(p1 + 1, p2 - p1 - 1));
    const double step = num(text.substr(p2 + 1));
    if (!(step > 0.0) || b < a) throw ConfigError(what + ": need start <= stop and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(num(item));
  if (out.empty()) throw ConfigError(what + ": empty grid");
  return out;
}

int run_bound(const std::string& sigma_grid, const std::string& mu_grid, std::size_t n_x,
              double lambda1, double lambda2) {
  const auto sigmas = parse_grid(sigma_grid, "--sigma");
  const auto mus = parse_grid(mu_grid, "--mu-grid");
  std::cout << "sigma,mu,bound\n";
  char buf[128];
  for (double s : sigmas) {
    for (double m : mus) {
      try {
        const double b = conf_lower_bound(s, m, n_x, lambda1, lambda2);
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f\n", s, m, b);
      } catch (const DomainError& e) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,nan\n", s, m);
        std::cerr << "row sigma=" << s << " mu=" << m << ": " << e.what() << '\n';
      }
      std::cout << buf;
    }
  }
  return 0;
}

int run_mi_graph(const RunConfig& rc, const std::string& format) {
  const auto db = load_symbolic(rc);
  CorrelationConfig ccfg{rc.mu, rc.sigma, rc.delta};
  const auto g = build_correlation_graph(db, ccfg, resolve_threads(rc.threads));
  for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
  with_output(rc.out, [&](std::ostream& o) {
    if (format == "dot") {
      write_graph_dot(o, g);
    } else {
      write_graph_json(o, g);
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent temporal pattern mining from time series"};
  app.require_subcommand(1);
  RunConfig rc;
  Settings transform_s, mine_s, graph_s;
  std::string config_path;

  auto add_split = [&](CLI::App* c, Settings& s) {
    s.add(*c, "--window", "window", rc.window, "window length in samples (0: whole grid)");
    s.add(*c, "--overlap", "overlap", rc.overlap, "overlap between windows in samples");
    s.add(*c, "--epsilon", "epsilon", rc.epsilon, "endpoint tolerance in samples");
  };

  auto* tr = app.add_subcommand("transform", "raw CSV to symbolic CSV and sequence database");
  tr->add_option("--input,-i", rc.input, "input CSV")->required();
  tr->add_option("--config", config_path, "JSON config; flags win");
  transform_s.add(*tr, "--symbolic-out", "symbolic_out", rc.symbolic_out, "symbolic CSV output");
  transform_s.add(*tr, "--sequences-out", "sequences_out", rc.sequences_out,
                  "sequence JSON output (default stdout)");
  transform_s.add_mappers(*tr, rc);
  add_split(tr, transform_s);

  auto* mn = app.add_subcommand("mine", "mine frequent temporal patterns");
  mn->add_option("--input,-i", rc.input, "sequence JSON (.json) or raw CSV")->required();
  mn->add_option("--config", config_path, "JSON config; flags win");
  mine_s.add(*mn, "--out,-o", "out", rc.out, "patterns output (default stdout)");
  mine_s.add(*mn, "--summary", "summary", rc.summary, "summary JSON output (default stderr)");
  mine_s.add(*mn, "--mode", "mode", rc.mode, "exact | approx");
  mine_s.add(*mn, "--sigma", "sigma", rc.sigma, "relative support threshold");
  mine_s.add(*mn, "--delta", "delta", rc.delta, "confidence threshold");
  mine_s.add(*mn, "--min-overlap", "min_overlap", rc.min_overlap, "minimal overlap d_o");
  mine_s.add(*mn, "--t-max", "t_max", rc.t_max, "maximal pattern span (0: unbounded)");
  mine_s.add(*mn, "--k-max", "k_max", rc.k_max, "maximal pattern size");
  mine_s.add(*mn, "--prune", "prune", rc.prune, "none | apriori | trans | all");
  mine_s.add(*mn, "--threads", "threads", rc.threads, "worker threads");
  mine_s.add_mu(*mn, rc.mu);
  mine_s.add_mappers(*mn, rc);
  add_split(mn, mine_s);

  std::string ref_path, cand_path;
  auto* cmp = app.add_subcommand("compare", "accuracy of a candidate pattern file");
  cmp->add_option("reference", ref_path, "reference patterns")->required();
  cmp->add_option("candidate", cand_path, "candidate patterns")->required();

  std::string sigma_grid, mu_grid = "0:1:0.1";
  std::size_t n_x = 2;
  double lambda1 = 0.5, lambda2 = 0.0;
  auto* bd = app.add_subcommand("bound", "confidence lower bound grid as CSV");
  bd->add_option("--sigma", sigma_grid, "sigma value(s): a,b,c or start:stop:step")->required();
  bd->add_option("--mu-grid", mu_grid, "mu values: a,b,c or start:stop:step");
  bd->add_option("--nx", n_x, "alphabet size of X");
  bd->add_option("--lambda1", lambda1, "minimum symbol probability of X");
  bd->add_option("--lambda2", lambda2, "lambda2 joint probability");

  std::string spec_path, gen_out = "-";
  GeneratorSpec spec;
  auto* gen = app.add_subcommand("generate", "synthetic symbolic CSV");
  gen->add_option("--spec", spec_path, "generator spec JSON");
  auto* seed_opt = gen->add_option("--seed", spec.seed, "RNG seed");
  auto* nv_opt = gen->add_option("--n-vars", spec.n_vars, "number of variables");
  auto* len_opt = gen->add_option("--grid-len", spec.grid_len, "samples per variable");
  gen->add_option("--out,-o", gen_out, "output CSV (default stdout)");

  std::string graph_format = "json";
  auto* mg = app.add_subcommand("mi-graph", "correlation graph export");
  mg->add_option("--input,-i", rc.input, "raw CSV")->required();
  mg->add_option("--config", config_path, "JSON config; flags win");
  mg->add_option("--format", graph_format, "dot | json")
      ->check(CLI::IsMember({"dot", "json"}));
  graph_s.add(*mg, "--out,-o", "out", rc.out, "output (default stdout)");
  graph_s.add(*mg, "--sigma", "sigma", rc.sigma, "sigma for mu derivation");
  graph_s.add(*mg, "--delta", "delta", rc.delta, "delta for mu derivation");
  graph_s.add(*mg, "--threads", "threads", rc.threads, "worker threads");
  graph_s.add_mu(*mg, rc.mu);
  graph_s.add_mappers(*mg, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (tr->parsed()) {
      transform_s.apply(config_path);
      return run_transform(rc);
    }
    if (mn->parsed()) {
      mine_s.apply(config_path);
      return run_mine(rc);
    }
    if (cmp->parsed()) return run_compare(ref_path, cand_path);
    if (bd->parsed()) return run_bound(sigma_grid, mu_grid, n_x, lambda1, lambda2);
    if (gen->parsed()) {
      if (!spec_path.empty()) {
        const GeneratorSpec flags = spec;
        auto in = open_in(spec_path);
        spec = read_generator_spec(in, spec_path);
        if (seed_opt->count() > 0) spec.seed = flags.seed;
        if (nv_opt->count() > 0) spec.n_vars = flags.n_vars;
        if (len_opt->count() > 0) spec.grid_len = flags.grid_len;
      }
      const auto db = generate(spec);
      with_output(gen_out, [&](std::ostream& o) { write_symbolic_csv(o, db); });
      return 0;
    }
    if (mg->parsed()) {
      graph_s.apply(config_path);
      return run_mi_graph(rc, graph_format);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 4;
}
