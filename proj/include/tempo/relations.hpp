#ifndef TEMPO_RELATIONS_HPP
#define TEMPO_RELATIONS_HPP

#include <optional>
#include <utility>

#include "tempo/core.hpp"

namespace tempo {

/// Endpoint tolerance and minimal overlap. min_overlap > 2*epsilon keeps the
/// three relations mutually exclusive on instances longer than 2*epsilon.
struct RelationConfig {
  Tick epsilon = 0;
  Tick min_overlap = 1;

  void validate() const;  // throws ConfigError
  static RelationConfig from(const MiningConfig& cfg) { return {cfg.epsilon, cfg.min_overlap}; }
};

std::pair<EventInstance, EventInstance> canonical_order(const EventInstance& a,
                                                        const EventInstance& b);

/// Relation between two intervals given in canonical order (first.start <=
/// second.start, ties broken by end). Returns nullopt in the dead zone where
/// the overlap is too short to count. Throws ContractViolation when the
/// arguments are not canonically ordered.
///
///   Follows   second.start >= first.end - eps
///   Contains  first.start <= second.start && second.end <= first.end + eps
///   Overlaps  first.start < second.start && second.end > first.end + eps
///             && first.end - second.start >= d_o - eps
std::optional<Relation> classify(const Interval& first, const Interval& second,
                                 const RelationConfig& cfg);

inline std::optional<Relation> classify(const EventInstance& first, const EventInstance& second,
                                        const RelationConfig& cfg) {
  return classify(first.interval, second.interval, cfg);
}

// Predicates without the canonical-order guard; used by exhaustive checks.
bool follows(const Interval& first, const Interval& second, Tick epsilon);
bool contains(const Interval& first, const Interval& second, Tick epsilon);
bool overlaps(const Interval& first, const Interval& second, Tick epsilon, Tick min_overlap);

}  // namespace tempo

#endif  // TEMPO_RELATIONS_HPP
