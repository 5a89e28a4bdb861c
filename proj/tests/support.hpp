#ifndef TEMPO_TEST_SUPPORT_HPP
#define TEMPO_TEST_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tempo/approx.hpp"
#include "tempo/io.hpp"
#include "tempo/oracle.hpp"
#include "tempo/synth.hpp"
#include "tempo/transform.hpp"

namespace tempo {

inline std::ostream& operator<<(std::ostream& o, Relation r) { return o << to_string(r); }
inline std::ostream& operator<<(std::ostream& o, const Interval& iv) {
  return o << '[' << iv.start << ',' << iv.end << ')';
}
inline std::ostream& operator<<(std::ostream& o, const EventInstance& e) {
  return o << e.event.label() << e.interval;
}
inline std::ostream& operator<<(std::ostream& o, const Bitmap& b) {
  for (int v : b.to_vector()) o << v;
  return o;
}
inline std::ostream& operator<<(std::ostream& o, PruneLevel p) { return o << to_string(p); }

}  // namespace tempo

namespace tempo::test {

inline std::string data_path(const std::string& name) {
  return std::string(TEMPO_DATA_DIR) + "/" + name;
}

// Table 1 of the running example, six appliances over 36 five-minute samples.
inline SymbolicDatabase table1() {
  std::ifstream in(data_path("table1.csv"));
  return symbolize_csv(read_wide_csv(in, "table1.csv"), MapperSet{});
}

// The four 45-minute sequences.
inline SequenceDatabase table3() { return split_sequences(table1(), SplitConfig{9, 0}); }

inline EventCode code(const SequenceDatabase& db, const std::string& var, const std::string& sym) {
  return db.find({var, sym}).value();
}

struct RandomDbSpec {
  std::size_t max_sequences = 8;
  std::size_t max_instances = 9;
  std::size_t variables = 3;
  std::size_t symbols = 2;
  Tick horizon = 24;
  Tick max_len = 8;
  Tick min_len = 1;
};

// Small random sequence database inside the oracle guard.
inline SequenceDatabase random_db(Rng& rng, const RandomDbSpec& spec = {}) {
  const std::size_t n = 1 + rng.uniform(spec.max_sequences);
  std::vector<RawSequence> raw;
  for (std::size_t s = 0; s < n; ++s) {
    RawSequence seq{{0, spec.horizon}, {}};
    const std::size_t m = 1 + rng.uniform(spec.max_instances);
    std::set<std::tuple<std::string, std::string, Tick, Tick>> seen;
    for (std::size_t i = 0; i < m; ++i) {
      const std::string var(1, static_cast<char>('A' + rng.uniform(spec.variables)));
      const std::string sym = std::to_string(rng.uniform(spec.symbols));
      const Tick len = spec.min_len + static_cast<Tick>(rng.uniform(spec.max_len - spec.min_len + 1));
      const Tick start = static_cast<Tick>(rng.uniform(static_cast<std::size_t>(spec.horizon - len + 1)));
      if (!seen.insert({var, sym, start, start + len}).second) continue;
      seq.instances.push_back({{var, sym}, {start, start + len}});
    }
    raw.push_back(std::move(seq));
  }
  return SequenceDatabase(std::move(raw));
}

inline MiningConfig random_config(Rng& rng) {
  static const double levels[] = {0.2, 0.3, 0.4, 0.5, 0.6};
  MiningConfig cfg;
  cfg.sigma = levels[rng.uniform(5)];
  cfg.delta = levels[rng.uniform(5)];
  cfg.k_max = 2 + rng.uniform(3);
  cfg.min_overlap = 1 + static_cast<Tick>(rng.uniform(3));
  cfg.t_max = rng.bernoulli(0.5) ? 1000 : 6 + static_cast<Tick>(rng.uniform(12));
  return cfg;
}

inline bool same_patterns(const std::vector<MinedPattern>& a, const std::vector<MinedPattern>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].pattern != b[i].pattern || a[i].sequences != b[i].sequences ||
        a[i].stats.support != b[i].stats.support ||
        std::abs(a[i].stats.confidence - b[i].stats.confidence) > 1e-12) {
      return false;
    }
  }
  return true;
}

// Number of sequences in which both events occur.
inline std::size_t seq_pair_support(const SequenceDatabase& db, const EventId& a, const EventId& b) {
  const auto ca = db.find(a);
  const auto cb = db.find(b);
  if (!ca || !cb) return 0;
  return bitmap_and(db.bitmap(*ca), db.bitmap(*cb)).count();
}

inline std::size_t seq_event_support(const SequenceDatabase& db, const EventId& a) {
  const auto c = db.find(a);
  return c ? db.support(*c) : 0;
}

inline std::set<PatternIdentity> identity_set(const std::vector<MinedPattern>& p,
                                              const SequenceDatabase& db) {
  const auto ids = identities(p, db);
  return {ids.begin(), ids.end()};
}

inline bool single_series(const PatternIdentity& id) {
  return std::all_of(id.events.begin(), id.events.end(),
                     [&](const EventId& e) { return e.variable == id.events.front().variable; });
}

// Two-variable generator draw: V1 follows V0 with the given copy probability.
inline GeneratorSpec pair_spec(std::uint64_t seed, std::size_t grid_len, std::size_t symbols,
                               double copy_probability, double run_p = 0.3) {
  GeneratorSpec spec;
  spec.seed = seed;
  spec.n_vars = 2;
  spec.grid_len = grid_len;
  spec.alphabet.clear();
  spec.alphabet.emplace_back();
  for (std::size_t i = 0; i < symbols; ++i) spec.alphabet[0].push_back("s" + std::to_string(i));
  spec.correlation_groups = {CorrelationGroup{{0, 1}, copy_probability}};
  spec.run_p = {run_p};
  return spec;
}

inline const PruneLevel kPruneLevels[] = {PruneLevel::None, PruneLevel::Apriori, PruneLevel::Trans,
                                          PruneLevel::All};

}  // namespace tempo::test

#endif  // TEMPO_TEST_SUPPORT_HPP
