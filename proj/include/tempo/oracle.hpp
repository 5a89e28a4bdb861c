#ifndef TEMPO_ORACLE_HPP
#define TEMPO_ORACLE_HPP

// Brute-force reference miner for small databases, and pattern-set
// comparison.

#include <vector>

#include "tempo/core.hpp"

namespace tempo {

struct OracleGuard {
  std::size_t max_events = 8;
  std::size_t max_sequences = 12;
  std::size_t max_instances = 12;  // per sequence
  std::size_t max_k = 4;
};

/// Every pattern of 2..k_max events with rel-supp >= sigma and conf >= delta,
/// found by enumerating all instance combinations of every sequence. Output
/// order matches htpgm(). Throws GuardViolation outside `guard`.
std::vector<MinedPattern> brute_force_mine(const SequenceDatabase& db, const MiningConfig& cfg,
                                           const OracleGuard& guard = {});

struct AccuracyReport {
  std::size_t reference_count = 0;
  std::size_t candidate_count = 0;
  std::size_t matched = 0;
  double accuracy = 1.0;  // matched / reference_count, 1 for an empty reference
};

AccuracyReport compare(const std::vector<PatternIdentity>& reference,
                       const std::vector<PatternIdentity>& candidate);
AccuracyReport compare(const std::vector<MinedPattern>& reference,
                       const std::vector<MinedPattern>& candidate, const SequenceDatabase& db);

std::vector<PatternIdentity> identities(const std::vector<MinedPattern>& patterns,
                                        const SequenceDatabase& db);

}  // namespace tempo

#endif  // TEMPO_ORACLE_HPP
