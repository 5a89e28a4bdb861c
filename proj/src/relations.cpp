#include "tempo/relations.hpp"

#include "tempo/error.hpp"

namespace tempo {

void RelationConfig::validate() const {
  if (epsilon < 0) throw ConfigError("epsilon must be non-negative");
  if (min_overlap <= 2 * epsilon) throw ConfigError("min_overlap must exceed 2*epsilon");
}

std::pair<EventInstance, EventInstance> canonical_order(const EventInstance& a,
                                                        const EventInstance& b) {
  if (canonical_less(b, a)) return {b, a};
  return {a, b};
}

bool follows(const Interval& first, const Interval& second, Tick epsilon) {
  return second.start >= first.end - epsilon;
}

bool contains(const Interval& first, const Interval& second, Tick epsilon) {
  return first.start <= second.start && second.end <= first.end + epsilon;
}

bool overlaps(const Interval& first, const Interval& second, Tick epsilon, Tick min_overlap) {
  return first.start < second.start && second.end > first.end + epsilon &&
         first.end - second.start >= min_overlap - epsilon;
}

std::optional<Relation> classify(const Interval& first, const Interval& second,
                                 const RelationConfig& cfg) {
  if (first.start > second.start || (first.start == second.start && first.end > second.end)) {
    throw ContractViolation("classify expects instances in canonical order");
  }
  if (follows(first, second, cfg.epsilon)) return Relation::Follows;
  if (contains(first, second, cfg.epsilon)) return Relation::Contains;
  if (overlaps(first, second, cfg.epsilon, cfg.min_overlap)) return Relation::Overlaps;
  return std::nullopt;
}

}  // namespace tempo
