#ifndef TEMPO_HTPGM_HPP
#define TEMPO_HTPGM_HPP

// Exact level-wise temporal pattern miner over a Hierarchical Pattern Graph.
//
// Level 1 holds frequent single events. Level k holds nodes keyed by an
// ordered list of k events; each node carries the bitmap of sequences that
// contain all of its events and the frequent, confident k-event patterns
// realised over those events. Level k candidates are built from level k-1
// keys extended by one level-1 event.
//
// Pruning (selected by MiningConfig::prune):
//   apriori  group support/confidence filter on candidate nodes
//   trans    level-1 events restricted to those present at level k-1, and
//            each extension checked against the level-2 relations of every
//            (E_i, E_k) pair before instances are touched
// All levels emit the same pattern set; pruning only changes the work done.

#include <functional>
#include <vector>

#include "tempo/core.hpp"

namespace tempo {

struct MiningCounters {
  std::size_t candidate_nodes = 0;         // nodes whose patterns were verified on instances
  std::size_t relation_checks = 0;         // classify() calls
  std::size_t pruned_by_apriori = 0;       // candidate nodes failing group support/confidence
  std::size_t pruned_by_transitivity = 0;  // level-1 events filtered + extensions lacking an L2 relation
  std::size_t pruned_by_confidence = 0;    // extensions whose support bound fails delta

  MiningCounters& operator+=(const MiningCounters& o);
};

struct HpgNode {
  std::vector<EventCode> events;  // node key
  Bitmap bitmap;                  // sequences containing every event of the key
  std::size_t group_support = 0;
  std::vector<MinedPattern> patterns;  // sorted by relation list
};

struct Hpg {
  std::vector<std::vector<HpgNode>> levels;  // levels[0] is L1
  MiningCounters counters;

  const HpgNode* find(const std::vector<EventCode>& key) const;
};

/// Optional screening used by the approximate miner: events outside
/// `admit_event` never enter L1, and pairs failing `admit_pair` never form
/// a node or a triple.
struct Screening {
  std::function<bool(EventCode)> admit_event;
  std::function<bool(EventCode, EventCode)> admit_pair;
};

struct MiningResult {
  std::vector<MinedPattern> patterns;  // by level, node key, relation list
  Hpg hpg;
  MiningCounters counters;
  std::vector<std::size_t> level_sizes;  // node count per level, L1 first
};

std::vector<HpgNode> mine_single_events(const SequenceDatabase& db, const MiningConfig& cfg);

/// Step 2.1: all ordered pairs (self-pairs included) of level-1 events,
/// filtered by group support and confidence when Apriori pruning is on.
std::vector<HpgNode> mine_event_pairs(const std::vector<HpgNode>& level1, const SequenceDatabase& db,
                                      const MiningConfig& cfg, MiningCounters& counters,
                                      const Screening& screen = {});

/// Step 2.2: realises the relations of a candidate pair node. Returns the
/// node with its frequent patterns, or an empty node when none survive.
HpgNode mine_pair_patterns(const HpgNode& node, const SequenceDatabase& db, const MiningConfig& cfg,
                           MiningCounters& counters);

std::vector<HpgNode> filtered_one_freq(const std::vector<HpgNode>& level1,
                                       const std::vector<HpgNode>& level_prev,
                                       const MiningConfig& cfg);

std::vector<HpgNode> mine_k_patterns(const std::vector<HpgNode>& level_prev,
                                     const std::vector<HpgNode>& filtered1,
                                     const std::vector<HpgNode>& level2, const SequenceDatabase& db,
                                     const MiningConfig& cfg, MiningCounters& counters,
                                     const Screening& screen = {});

MiningResult htpgm(const SequenceDatabase& db, const MiningConfig& cfg, const Screening& screen = {});

/// Exact support and confidence of a pattern given its supporting bitmap.
PatternStats pattern_stats(const TemporalPattern& p, const Bitmap& support,
                           const SequenceDatabase& db);

}  // namespace tempo

#endif  // TEMPO_HTPGM_HPP
