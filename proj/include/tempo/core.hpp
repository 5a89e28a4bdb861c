#ifndef TEMPO_CORE_HPP
#define TEMPO_CORE_HPP

// Domain model shared by every stage of the pipeline: event instances,
// temporal sequences, the bitmap-indexed sequence database, patterns and
// the support/confidence arithmetic.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/bitmap.hpp"

namespace tempo {

/// Position on the sampling grid. One unit is one sample interval; the
/// wall-clock meaning of a unit lives in TimeGrid.
using Tick = std::int64_t;

struct Interval {
  Tick start = 0;
  Tick end = 0;

  Tick duration() const noexcept { return end - start; }
  bool within(const Interval& outer) const noexcept {
    return outer.start <= start && end <= outer.end;
  }
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct EventId {
  std::string variable;
  std::string symbol;

  std::string label() const { return variable + symbol; }
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

struct EventInstance {
  EventId event;
  Interval interval;

  friend bool operator==(const EventInstance&, const EventInstance&) = default;
};

// Ordering of instances inside a sequence: start, then end, then event.
bool canonical_less(const EventInstance& a, const EventInstance& b);

struct TemporalEvent {
  EventId event;
  std::vector<Interval> intervals;  // sorted, pairwise disjoint
};

enum class Relation : std::uint8_t { Follows = 0, Contains = 1, Overlaps = 2 };

inline constexpr std::size_t kRelationCount = 3;

std::string_view to_string(Relation r);
// Accepts "follows", "contains", "overlaps" (any case). Throws InputError.
Relation relation_from_string(std::string_view s);

/// Maps grid ticks back to wall-clock labels for files and reports.
struct TimeGrid {
  enum class Format { Index, Clock, DateTime };

  Format format = Format::Index;
  std::int64_t origin_seconds = 0;
  std::int64_t step_seconds = 1;

  std::string label(Tick t) const;
  std::string_view format_name() const;
  static Format format_from_name(std::string_view name);
};

/// Interned event handle. Codes follow the lexicographic order of EventId,
/// so comparing codes is equivalent to comparing the events themselves.
using EventCode = std::uint32_t;

struct CodedInstance {
  EventCode event = 0;
  Interval interval;
};

struct TemporalSequence {
  std::size_t id = 0;
  Interval window;
  std::vector<CodedInstance> instances;  // canonical order
};

struct RawSequence {
  Interval window;
  std::vector<EventInstance> instances;
};

/// Temporal sequence database with its vertical (bitmap) index and a
/// per-sequence instance index.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  // Sorts instances canonically and builds the indices. Throws InputError
  // when an instance has non-positive duration or escapes its window.
  explicit SequenceDatabase(std::vector<RawSequence> sequences, TimeGrid grid = {});

  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }

  const std::vector<TemporalSequence>& sequences() const noexcept { return sequences_; }
  const TemporalSequence& sequence(std::size_t i) const { return sequences_[i]; }

  std::size_t event_count() const noexcept { return events_.size(); }
  const std::vector<EventId>& events() const noexcept { return events_; }
  const EventId& event(EventCode c) const { return events_[c]; }
  std::optional<EventCode> find(const EventId& e) const;

  const Bitmap& bitmap(EventCode c) const { return bitmaps_[c]; }
  std::size_t support(EventCode c) const { return supports_[c]; }

  // Positions (into sequence(seq).instances) of the instances of `c`,
  // ascending, hence in canonical order.
  std::span<const std::uint32_t> positions(EventCode c, std::size_t seq) const {
    const auto& off = offsets_[seq];
    return {positions_[seq].data() + off[c], positions_[seq].data() + off[c + 1]};
  }

  EventInstance instance(std::size_t seq, std::size_t pos) const;
  std::size_t max_instances_per_sequence() const noexcept;
  const TimeGrid& grid() const noexcept { return grid_; }

 private:
  TimeGrid grid_;
  std::vector<EventId> events_;
  std::vector<TemporalSequence> sequences_;
  std::vector<Bitmap> bitmaps_;
  std::vector<std::size_t> supports_;
  std::vector<std::vector<std::uint32_t>> offsets_;    // per sequence, size events+1
  std::vector<std::vector<std::uint32_t>> positions_;  // per sequence
};

struct Triple {
  Relation relation;
  std::size_t first;   // index into the pattern's event list
  std::size_t second;  // first < second
};

/// k events plus one relation for every index pair i < j. Relations are
/// stored column by column: (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
/// so extending a (k-1)-pattern by one event appends k-1 relations.
struct TemporalPattern {
  std::vector<EventCode> events;
  std::vector<Relation> relations;

  static constexpr std::size_t relation_index(std::size_t i, std::size_t j) {
    return j * (j - 1) / 2 + i;
  }
  std::size_t size() const noexcept { return events.size(); }
  Relation relation(std::size_t i, std::size_t j) const {
    return relations[relation_index(i, j)];
  }
  std::vector<Triple> triples() const;

  friend auto operator<=>(const TemporalPattern&, const TemporalPattern&) = default;
};

struct PatternStats {
  std::size_t support = 0;
  double rel_support = 0.0;
  double confidence = 0.0;
};

struct MinedPattern {
  TemporalPattern pattern;
  PatternStats stats;
  Bitmap sequences;  // supporting sequences
};

/// Database-independent pattern identity: event names plus relations.
struct PatternIdentity {
  std::vector<EventId> events;
  std::vector<Relation> relations;

  friend auto operator<=>(const PatternIdentity&, const PatternIdentity&) = default;
};

PatternIdentity identity_of(const TemporalPattern& p, const SequenceDatabase& db);
std::string describe(const TemporalPattern& p, const SequenceDatabase& db);

enum class PruneLevel { None, Apriori, Trans, All };

std::string_view to_string(PruneLevel p);
PruneLevel prune_level_from_string(std::string_view s);  // throws ConfigError
inline bool apriori_enabled(PruneLevel p) {
  return p == PruneLevel::Apriori || p == PruneLevel::All;
}
inline bool transitivity_enabled(PruneLevel p) {
  return p == PruneLevel::Trans || p == PruneLevel::All;
}

struct MiningConfig {
  double sigma = 0.5;   // relative support threshold
  double delta = 0.5;   // confidence threshold
  Tick epsilon = 0;     // endpoint tolerance
  Tick min_overlap = 1; // d_o, must exceed 2*epsilon
  Tick t_max = std::numeric_limits<Tick>::max() / 4;
  std::size_t k_max = 3;
  PruneLevel prune = PruneLevel::All;
  int threads = 1;

  // Throws ConfigError on violated invariants.
  void validate() const;
};

// Thresholds compare with this much slack so that e.g. 0.7 * 10 sequences
// accepts a support of exactly 7.
inline constexpr double kThresholdSlack = 1e-12;

/// Smallest absolute support satisfying sigma on n sequences (at least 1).
std::size_t min_support_count(std::size_t n, double sigma);
bool meets_threshold(double value, double threshold);

double pair_confidence(std::size_t supp_pair, std::size_t supp_i, std::size_t supp_j);
double pattern_confidence(std::size_t supp_pattern, std::span<const std::size_t> event_supports);

}  // namespace tempo

#endif  // TEMPO_CORE_HPP
