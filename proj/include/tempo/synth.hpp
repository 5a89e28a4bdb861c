#ifndef TEMPO_SYNTH_HPP
#define TEMPO_SYNTH_HPP

// Seeded synthetic symbolic databases.
//
// Each variable is a run process: run lengths are geometric (success
// probability run_p, minimum 1) and each run draws a symbol uniformly from
// the variable's alphabet. In a correlation group the first member leads;
// every other member follows a second run process that switches between
// "copy" (take the leader's symbol index, modulo its own alphabet) and
// "own" (keep its independent value). A run is "copy" with probability
// copy_probability.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tempo/transform.hpp"

namespace tempo {

struct CorrelationGroup {
  std::vector<std::size_t> members;  // members[0] leads
  double copy_probability = 1.0;
};

struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t n_vars = 2;
  std::size_t grid_len = 100;
  // One alphabet per variable, or a single alphabet shared by all.
  std::vector<std::vector<std::string>> alphabet{{"Off", "On"}};
  std::vector<CorrelationGroup> correlation_groups;
  // One geometric parameter per variable, or a single shared value.
  std::vector<double> run_p{0.3};
  // Variable names; defaults to V0, V1, ...
  std::vector<std::string> names;

  void validate() const;  // throws ConfigError

  const std::vector<std::string>& alphabet_of(std::size_t v) const;
  double run_p_of(std::size_t v) const;
  std::string name_of(std::size_t v) const;
};

/// Portable draws over mt19937_64; the standard distributions are not
/// reproducible across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t uniform(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }
  std::size_t geometric(double p) {
    std::size_t n = 1;
    while (!bernoulli(p)) ++n;
    return n;
  }

 private:
  std::mt19937_64 engine_;
};

SymbolicDatabase generate(const GeneratorSpec& spec);

}  // namespace tempo

#endif  // TEMPO_SYNTH_HPP
