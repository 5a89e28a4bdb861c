#include "tempo/synth.hpp"

#include "tempo/error.hpp"

namespace tempo {

void GeneratorSpec::validate() const {
  if (n_vars == 0) throw ConfigError("generator needs at least one variable");
  if (grid_len < 4) throw ConfigError("grid_len must be at least 4");
  if (alphabet.size() != 1 && alphabet.size() != n_vars) {
    throw ConfigError("alphabet must be shared or given per variable");
  }
  for (const auto& a : alphabet) {
    if (a.empty()) throw ConfigError("alphabet must not be empty");
    for (const auto& s : a) {
      if (s.empty()) throw ConfigError("alphabet symbols must not be empty");
    }
  }
  if (run_p.size() != 1 && run_p.size() != n_vars) {
    throw ConfigError("run_p must be shared or given per variable");
  }
  for (double p : run_p) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("run_p must lie in (0, 1]");
  }
  if (!names.empty() && names.size() != n_vars) throw ConfigError("one name per variable");
  std::vector<bool> grouped(n_vars, false);
  for (const auto& g : correlation_groups) {
    if (!(g.copy_probability >= 0.0 && g.copy_probability <= 1.0)) {
      throw ConfigError("copy_probability must lie in [0, 1]");
    }
    for (auto m : g.members) {
      if (m >= n_vars) throw ConfigError("group member out of range");
      if (grouped[m]) throw ConfigError("a variable may belong to one group only");
      grouped[m] = true;
    }
  }
}

const std::vector<std::string>& GeneratorSpec::alphabet_of(std::size_t v) const {
  return alphabet.size() == 1 ? alphabet[0] : alphabet[v];
}

double GeneratorSpec::run_p_of(std::size_t v) const {
  return run_p.size() == 1 ? run_p[0] : run_p[v];
}

std::string GeneratorSpec::name_of(std::size_t v) const {
  return names.empty() ? "V" + std::to_string(v) : names[v];
}

namespace {

// Symbol indices of one run process.
std::vector<std::size_t> run_process(Rng& rng, std::size_t len, std::size_t symbols, double p) {
  std::vector<std::size_t> out;
  out.reserve(len);
  while (out.size() < len) {
    const std::size_t run = rng.geometric(p);
    const std::size_t sym = rng.uniform(symbols);
    for (std::size_t i = 0; i < run && out.size() < len; ++i) out.push_back(sym);
  }
  return out;
}

}  // namespace

SymbolicDatabase generate(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t n = spec.grid_len;
  std::vector<std::vector<std::size_t>> idx(spec.n_vars);
  for (std::size_t v = 0; v < spec.n_vars; ++v) {
    idx[v] = run_process(rng, n, spec.alphabet_of(v).size(), spec.run_p_of(v));
  }
  for (const auto& g : spec.correlation_groups) {
    if (g.members.empty()) continue;
    const auto& lead = idx[g.members[0]];
    for (std::size_t m = 1; m < g.members.size(); ++m) {
      const std::size_t v = g.members[m];
      const std::size_t symbols = spec.alphabet_of(v).size();
      std::size_t t = 0;
      while (t < n) {
        const std::size_t run = rng.geometric(spec.run_p_of(v));
        const bool copy = rng.bernoulli(g.copy_probability);
        for (std::size_t i = 0; i < run && t < n; ++i, ++t) {
          if (copy) idx[v][t] = lead[t] % symbols;
        }
      }
    }
  }
  std::vector<SymbolicSeries> series;
  for (std::size_t v = 0; v < spec.n_vars; ++v) {
    SymbolicSeries s;
    s.variable = spec.name_of(v);
    s.times.resize(n);
    s.symbols.resize(n);
    const auto& labels = spec.alphabet_of(v);
    for (std::size_t t = 0; t < n; ++t) {
      s.times[t] = static_cast<Tick>(t);
      s.symbols[t] = labels[idx[v][t]];
    }
    series.push_back(std::move(s));
  }
  return SymbolicDatabase(std::move(series));
}

}  // namespace tempo
