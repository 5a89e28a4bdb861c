#include "tempo/core.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "tempo/error.hpp"

namespace tempo {

bool canonical_less(const EventInstance& a, const EventInstance& b) {
  return std::tie(a.interval.start, a.interval.end, a.event) <
         std::tie(b.interval.start, b.interval.end, b.event);
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Follows: return "follows";
    case Relation::Contains: return "contains";
    case Relation::Overlaps: return "overlaps";
  }
  return "?";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Relation relation_from_string(std::string_view s) {
  const auto l = lower(s);
  if (l == "follows") return Relation::Follows;
  if (l == "contains") return Relation::Contains;
  if (l == "overlaps") return Relation::Overlaps;
  throw InputError("unknown relation '" + std::string(s) + "'");
}

std::string TimeGrid::label(Tick t) const {
  const std::int64_t secs = origin_seconds + t * step_seconds;
  if (format == Format::Index) return std::to_string(secs);

  using namespace std::chrono;
  const bool show_seconds = (origin_seconds % 60 != 0) || (step_seconds % 60 != 0);
  const auto tp = sys_seconds{seconds{secs}};
  const auto day = floor<days>(tp);
  const auto tod = hh_mm_ss{tp - day};
  char buf[64];
  if (format == Format::Clock) {
    // clock labels wrap at midnight
    if (show_seconds) {
      std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", static_cast<int>(tod.hours().count()),
                    static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
    } else {
      std::snprintf(buf, sizeof buf, "%02d:%02d", static_cast<int>(tod.hours().count()),
                    static_cast<int>(tod.minutes().count()));
    }
    return buf;
  }
  const year_month_day ymd{day};
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

std::string_view TimeGrid::format_name() const {
  switch (format) {
    case Format::Index: return "index";
    case Format::Clock: return "clock";
    case Format::DateTime: return "datetime";
  }
  return "index";
}

TimeGrid::Format TimeGrid::format_from_name(std::string_view name) {
  if (name == "index") return Format::Index;
  if (name == "clock") return Format::Clock;
  if (name == "datetime") return Format::DateTime;
  throw InputError("unknown time format '" + std::string(name) + "'");
}

SequenceDatabase::SequenceDatabase(std::vector<RawSequence> sequences, TimeGrid grid)
    : grid_(grid) {
  for (const auto& s : sequences) {
    if (s.window.duration() <= 0) throw InputError("sequence window must have positive length");
    for (const auto& inst : s.instances) {
      if (inst.interval.duration() <= 0) {
        throw InputError("instance " + inst.event.label() + " has non-positive duration");
      }
      if (!inst.interval.within(s.window)) {
        throw InputError("instance " + inst.event.label() + " lies outside its sequence window");
      }
      events_.push_back(inst.event);
    }
  }
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());

  const std::size_t n = sequences.size();
  const std::size_t m = events_.size();
  bitmaps_.assign(m, Bitmap(n));
  supports_.assign(m, 0);
  sequences_.reserve(n);
  offsets_.resize(n);
  positions_.resize(n);

  for (std::size_t si = 0; si < n; ++si) {
    auto& raw = sequences[si];
    std::sort(raw.instances.begin(), raw.instances.end(), canonical_less);
    TemporalSequence seq;
    seq.id = si;
    seq.window = raw.window;
    seq.instances.reserve(raw.instances.size());
    for (const auto& inst : raw.instances) {
      const auto code = static_cast<EventCode>(
          std::lower_bound(events_.begin(), events_.end(), inst.event) - events_.begin());
      if (!seq.instances.empty()) {
        const auto& prev = seq.instances.back();
        if (prev.event == code && prev.interval == inst.interval) {
          throw InputError("duplicate instance of " + inst.event.label() + " in sequence " +
                           std::to_string(si));
        }
      }
      seq.instances.push_back({code, inst.interval});
    }

    // counting sort of positions by event; stable, so positions stay ascending
    auto& off = offsets_[si];
    off.assign(m + 1, 0);
    for (const auto& ci : seq.instances) ++off[ci.event + 1];
    for (std::size_t c = 0; c < m; ++c) off[c + 1] += off[c];
    auto& pos = positions_[si];
    pos.resize(seq.instances.size());
    std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
    for (std::uint32_t p = 0; p < seq.instances.size(); ++p) {
      pos[cursor[seq.instances[p].event]++] = p;
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (off[c + 1] > off[c]) {
        bitmaps_[c].set(si);
        ++supports_[c];
      }
    }
    sequences_.push_back(std::move(seq));
  }
}

std::optional<EventCode> SequenceDatabase::find(const EventId& e) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), e);
  if (it == events_.end() || *it != e) return std::nullopt;
  return static_cast<EventCode>(it - events_.begin());
}

EventInstance SequenceDatabase::instance(std::size_t seq, std::size_t pos) const {
  const auto& ci = sequences_[seq].instances[pos];
  return {events_[ci.event], ci.interval};
}

std::size_t SequenceDatabase::max_instances_per_sequence() const noexcept {
  std::size_t best = 0;
  for (const auto& s : sequences_) best = std::max(best, s.instances.size());
  return best;
}

std::vector<Triple> TemporalPattern::triples() const {
  std::vector<Triple> out;
  out.reserve(relations.size());
  for (std::size_t j = 1; j < events.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) out.push_back({relation(i, j), i, j});
  }
  return out;
}

PatternIdentity identity_of(const TemporalPattern& p, const SequenceDatabase& db) {
  PatternIdentity id;
  id.events.reserve(p.events.size());
  for (auto c : p.events) id.events.push_back(db.event(c));
  id.relations = p.relations;
  return id;
}

std::string describe(const TemporalPattern& p, const SequenceDatabase& db) {
  std::string out = "<";
  bool first = true;
  for (const auto& t : p.triples()) {
    if (!first) out += ", ";
    first = false;
    out += "(";
    out += to_string(t.relation);
    out += ", " + db.event(p.events[t.first]).label() + ", " +
           db.event(p.events[t.second]).label() + ")";
  }
  return out + ">";
}

std::string_view to_string(PruneLevel p) {
  switch (p) {
    case PruneLevel::None: return "none";
    case PruneLevel::Apriori: return "apriori";
    case PruneLevel::Trans: return "trans";
    case PruneLevel::All: return "all";
  }
  return "all";
}

PruneLevel prune_level_from_string(std::string_view s) {
  const auto l = lower(s);
  if (l == "none" || l == "noprune") return PruneLevel::None;
  if (l == "apriori") return PruneLevel::Apriori;
  if (l == "trans") return PruneLevel::Trans;
  if (l == "all") return PruneLevel::All;
  throw ConfigError("unknown prune level '" + std::string(s) + "'");
}

void MiningConfig::validate() const {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ConfigError("sigma must lie in [0, 1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  if (epsilon < 0) throw ConfigError("epsilon must be non-negative");
  if (min_overlap <= 2 * epsilon) throw ConfigError("min_overlap must exceed 2*epsilon");
  if (t_max < 0) throw ConfigError("t_max must be non-negative");
  if (k_max < 2) throw ConfigError("k_max must be at least 2");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

std::size_t min_support_count(std::size_t n, double sigma) {
  const double need = std::ceil(sigma * static_cast<double>(n) - 1e-9);
  return std::max<std::size_t>(1, need > 0 ? static_cast<std::size_t>(need) : 0);
}

bool meets_threshold(double value, double threshold) {
  return value >= threshold - kThresholdSlack;
}

double pair_confidence(std::size_t supp_pair, std::size_t supp_i, std::size_t supp_j) {
  if (supp_i == 0 || supp_j == 0) throw DomainError("pair confidence with zero event support");
  if (supp_pair > std::min(supp_i, supp_j)) {
    throw ContractViolation("pair support exceeds an event support");
  }
  return static_cast<double>(supp_pair) / static_cast<double>(std::max(supp_i, supp_j));
}

double pattern_confidence(std::size_t supp_pattern, std::span<const std::size_t> event_supports) {
  if (event_supports.empty()) throw DomainError("pattern confidence needs event supports");
  const auto top = *std::max_element(event_supports.begin(), event_supports.end());
  if (top == 0) throw DomainError("pattern confidence with zero event support");
  if (supp_pattern > top) throw ContractViolation("pattern support exceeds event support");
  return static_cast<double>(supp_pattern) / static_cast<double>(top);
}

}  // namespace tempo
