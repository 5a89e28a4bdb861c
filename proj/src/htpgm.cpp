#include "tempo/htpgm.hpp"

#include <algorithm>
#include <exception>
#include <unordered_map>

#include "tempo/error.hpp"
#include "tempo/relations.hpp"

namespace tempo {

MiningCounters& MiningCounters::operator+=(const MiningCounters& o) {
  candidate_nodes += o.candidate_nodes;
  relation_checks += o.relation_checks;
  pruned_by_apriori += o.pruned_by_apriori;
  pruned_by_transitivity += o.pruned_by_transitivity;
  pruned_by_confidence += o.pruned_by_confidence;
  return *this;
}

const HpgNode* Hpg::find(const std::vector<EventCode>& key) const {
  if (key.empty() || key.size() > levels.size()) return nullptr;
  const auto& level = levels[key.size() - 1];
  auto it = std::lower_bound(level.begin(), level.end(), key,
                             [](const HpgNode& n, const std::vector<EventCode>& k) {
                               return n.events < k;
                             });
  if (it == level.end() || it->events != key) return nullptr;
  return &*it;
}

PatternStats pattern_stats(const TemporalPattern& p, const Bitmap& support,
                           const SequenceDatabase& db) {
  PatternStats st;
  st.support = support.count();
  st.rel_support = db.empty() ? 0.0 : static_cast<double>(st.support) / static_cast<double>(db.size());
  std::vector<std::size_t> supports;
  supports.reserve(p.events.size());
  for (auto e : p.events) supports.push_back(db.support(e));
  st.confidence = pattern_confidence(st.support, supports);
  return st;
}

namespace {

constexpr int kMaxPatternEvents = 32;

std::size_t max_event_support(const std::vector<EventCode>& key, const SequenceDatabase& db) {
  std::size_t top = 0;
  for (auto e : key) top = std::max(top, db.support(e));
  return top;
}

bool confident(std::size_t supp, std::size_t top, double delta) {
  return top > 0 && meets_threshold(static_cast<double>(supp) / static_cast<double>(top), delta);
}

// Relations observed for a frequent (E_i, E_k) pair at level 2.
struct PairRelations {
  std::uint8_t mask = 0;  // bit r set when relation r has a frequent pattern
  Bitmap sequences;       // union of the supporting bitmaps
};

using PairIndex = std::unordered_map<std::uint64_t, PairRelations>;

std::uint64_t pair_key(EventCode a, EventCode b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

PairIndex index_pairs(const std::vector<HpgNode>& level2) {
  PairIndex idx;
  for (const auto& node : level2) {
    PairRelations pr;
    pr.sequences = Bitmap(node.bitmap.size());
    for (const auto& mp : node.patterns) {
      pr.mask |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(mp.pattern.relations[0]));
      pr.sequences |= mp.sequences;
    }
    idx.emplace(pair_key(node.events[0], node.events[1]), std::move(pr));
  }
  return idx;
}

/// Enumerates, inside one sequence, every realisation of a prefix pattern and
/// every instance of `next` that can follow it, collecting the relation
/// suffixes (E_i, next) for i = m-1 .. 0 as base-4 codes.
class Extender {
 public:
  Extender(const SequenceDatabase& db, const MiningConfig& cfg)
      : db_(db), rel_(RelationConfig::from(cfg)), t_max_(cfg.t_max) {}

  void run(const TemporalPattern& prefix, EventCode next, std::size_t seq,
           const std::uint8_t* admissible, std::vector<std::uint64_t>& codes,
           std::size_t& checks) {
    prefix_ = &prefix;
    next_ = next;
    seq_ = seq;
    admissible_ = admissible;
    codes_ = &codes;
    checks_ = &checks;
    inst_ = &db_.sequence(seq).instances;
    chosen_.assign(prefix.events.size(), 0);
    descend(0, 0, 0);
  }

 private:
  const Interval& at(std::uint32_t pos) const { return (*inst_)[pos].interval; }

  void descend(std::size_t d, Tick start0, Tick max_end) {
    const std::size_t m = prefix_->events.size();
    if (d == m) {
      finish(start0, max_end);
      return;
    }
    const auto cand = db_.positions(prefix_->events[d], seq_);
    auto it = cand.begin();
    if (d > 0) it = std::upper_bound(cand.begin(), cand.end(), chosen_[d - 1]);
    for (; it != cand.end(); ++it) {
      const Interval& iv = at(*it);
      const Tick s0 = d == 0 ? iv.start : start0;
      if (iv.start - s0 > t_max_) break;
      const Tick me = std::max(d == 0 ? iv.end : max_end, iv.end);
      if (me - s0 > t_max_) continue;
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        ++*checks_;
        const auto r = classify(at(chosen_[i]), iv, rel_);
        ok = r && *r == prefix_->relation(i, d);
      }
      if (!ok) continue;
      chosen_[d] = *it;
      descend(d + 1, s0, me);
    }
  }

  void finish(Tick start0, Tick max_end) {
    const std::size_t m = prefix_->events.size();
    const auto cand = db_.positions(next_, seq_);
    for (auto it = std::upper_bound(cand.begin(), cand.end(), chosen_[m - 1]); it != cand.end();
         ++it) {
      const Interval& iv = at(*it);
      if (iv.start - start0 > t_max_) break;
      if (std::max(max_end, iv.end) - start0 > t_max_) continue;
      std::uint64_t code = 0;
      bool ok = true;
      // nearest event first: (E_{m-1}, next) down to (E_0, next)
      for (std::size_t i = m; i-- > 0;) {
        ++*checks_;
        const auto r = classify(at(chosen_[i]), iv, rel_);
        if (!r || (admissible_ && !((admissible_[i] >> static_cast<unsigned>(*r)) & 1u))) {
          ok = false;
          break;
        }
        code |= static_cast<std::uint64_t>(*r) << (2 * i);
      }
      if (ok) codes_->push_back(code);
    }
  }

  const SequenceDatabase& db_;
  RelationConfig rel_;
  Tick t_max_;
  const TemporalPattern* prefix_ = nullptr;
  EventCode next_ = 0;
  std::size_t seq_ = 0;
  const std::uint8_t* admissible_ = nullptr;
  std::vector<std::uint64_t>* codes_ = nullptr;
  std::size_t* checks_ = nullptr;
  const std::vector<CodedInstance>* inst_ = nullptr;
  std::vector<std::uint32_t> chosen_;
};

struct PrefixPattern {
  const TemporalPattern* pattern;
  const Bitmap* sequences;
};

/// Verifies one candidate node: extends each prefix pattern by `next` and
/// keeps the frequent, confident results.
HpgNode verify_node(std::vector<EventCode> key, Bitmap bitmap,
                    const std::vector<PrefixPattern>& prefixes, const SequenceDatabase& db,
                    const MiningConfig& cfg, const PairIndex* pairs, MiningCounters& counters) {
  HpgNode node;
  node.events = std::move(key);
  node.group_support = bitmap.count();
  node.bitmap = std::move(bitmap);

  const EventCode next = node.events.back();
  const std::size_t m = node.events.size() - 1;
  const std::size_t min_count = min_support_count(db.size(), cfg.sigma);
  const std::size_t top = max_event_support(node.events, db);
  Extender ext(db, cfg);
  std::vector<std::uint8_t> admissible(m, 0);
  std::vector<std::uint64_t> codes;

  for (const auto& pre : prefixes) {
    Bitmap cand = bitmap_and(*pre.sequences, db.bitmap(next));
    const std::uint8_t* adm = nullptr;
    if (pairs != nullptr) {
      bool abort = false;
      for (std::size_t i = m; i-- > 0 && !abort;) {
        auto it = pairs->find(pair_key(pre.pattern->events[i], next));
        if (it == pairs->end()) {
          ++counters.pruned_by_transitivity;
          abort = true;
          break;
        }
        admissible[i] = it->second.mask;
        cand &= it->second.sequences;
        const std::size_t c = cand.count();
        if (c < min_count) {
          ++counters.pruned_by_transitivity;
          abort = true;
        } else if (!confident(c, top, cfg.delta)) {
          ++counters.pruned_by_confidence;
          abort = true;
        }
      }
      if (abort) continue;
      adm = admissible.data();
    }
    if (cand.none()) continue;

    std::vector<std::pair<std::uint64_t, std::size_t>> hits;  // (code, sequence)
    cand.for_each_set([&](std::size_t s) {
      codes.clear();
      ext.run(*pre.pattern, next, s, adm, codes, counters.relation_checks);
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      for (auto c : codes) hits.emplace_back(c, s);
    });
    std::sort(hits.begin(), hits.end());
    for (std::size_t i = 0; i < hits.size();) {
      std::size_t j = i;
      Bitmap support(db.size());
      while (j < hits.size() && hits[j].first == hits[i].first) support.set(hits[j++].second);
      if (support.count() >= min_count && confident(support.count(), top, cfg.delta)) {
        MinedPattern mp;
        mp.pattern.events = node.events;
        mp.pattern.relations = pre.pattern->relations;
        for (std::size_t r = 0; r < m; ++r) {
          mp.pattern.relations.push_back(static_cast<Relation>((hits[i].first >> (2 * r)) & 3u));
        }
        mp.stats = pattern_stats(mp.pattern, support, db);
        mp.sequences = std::move(support);
        node.patterns.push_back(std::move(mp));
      }
      i = j;
    }
  }
  std::sort(node.patterns.begin(), node.patterns.end(),
            [](const MinedPattern& a, const MinedPattern& b) { return a.pattern < b.pattern; });
  return node;
}

struct Candidate {
  std::vector<EventCode> key;
  Bitmap bitmap;
  const HpgNode* prefix;
};

// Group-level Apriori filter shared by every level >= 2. Returns true when the
// candidate should be verified.
bool admit_candidate(const Candidate& c, const SequenceDatabase& db, const MiningConfig& cfg,
                     MiningCounters& counters) {
  if (!apriori_enabled(cfg.prune)) return true;
  const std::size_t supp = c.bitmap.count();
  if (supp < min_support_count(db.size(), cfg.sigma) ||
      !confident(supp, max_event_support(c.key, db), cfg.delta)) {
    ++counters.pruned_by_apriori;
    return false;
  }
  return true;
}

/// Verifies candidates, in parallel when cfg.threads > 1. Output order and
/// counters do not depend on the schedule.
std::vector<HpgNode> verify_level(const std::vector<Candidate>& cands, bool from_level1,
                                  const SequenceDatabase& db, const MiningConfig& cfg,
                                  const PairIndex* pairs, MiningCounters& counters) {
  std::vector<HpgNode> out(cands.size());
  std::vector<MiningCounters> local(cands.size());
  std::vector<std::exception_ptr> errors(cands.size());
  const auto n = static_cast<long>(cands.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.threads) if (cfg.threads > 1)
  for (long i = 0; i < n; ++i) {
    try {
      const auto& c = cands[static_cast<std::size_t>(i)];
      std::vector<PrefixPattern> prefixes;
      TemporalPattern single;
      if (from_level1) {
        single.events = c.prefix->events;
        prefixes.push_back({&single, &c.prefix->bitmap});
      } else {
        for (const auto& mp : c.prefix->patterns) prefixes.push_back({&mp.pattern, &mp.sequences});
      }
      out[static_cast<std::size_t>(i)] =
          verify_node(c.key, c.bitmap, prefixes, db, cfg, pairs, local[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<HpgNode> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    counters += local[i];
    if (!out[i].patterns.empty()) kept.push_back(std::move(out[i]));
  }
  return kept;
}

bool admitted_pair(const Screening& screen, EventCode a, EventCode b) {
  return !screen.admit_pair || screen.admit_pair(a, b);
}

std::vector<Candidate> pair_candidates(const std::vector<HpgNode>& level1,
                                       const SequenceDatabase& db, const MiningConfig& cfg,
                                       MiningCounters& counters, const Screening& screen) {
  std::vector<Candidate> cands;
  for (const auto& a : level1) {
    for (const auto& b : level1) {
      const EventCode ea = a.events[0];
      const EventCode eb = b.events[0];
      if (!admitted_pair(screen, ea, eb)) continue;
      Candidate c{{ea, eb}, bitmap_and(a.bitmap, b.bitmap), &a};
      if (!admit_candidate(c, db, cfg, counters)) continue;
      ++counters.candidate_nodes;
      cands.push_back(std::move(c));
    }
  }
  return cands;
}

}  // namespace

std::vector<HpgNode> mine_single_events(const SequenceDatabase& db, const MiningConfig& cfg) {
  std::vector<HpgNode> level1;
  if (db.empty()) return level1;
  const std::size_t min_count = min_support_count(db.size(), cfg.sigma);
  for (EventCode c = 0; c < db.event_count(); ++c) {
    const std::size_t supp = bitmap_count(db.bitmap(c));
    if (supp >= min_count) level1.push_back({{c}, db.bitmap(c), supp, {}});
  }
  return level1;
}

std::vector<HpgNode> mine_event_pairs(const std::vector<HpgNode>& level1, const SequenceDatabase& db,
                                      const MiningConfig& cfg, MiningCounters& counters,
                                      const Screening& screen) {
  std::vector<HpgNode> nodes;
  for (auto& c : pair_candidates(level1, db, cfg, counters, screen)) {
    const std::size_t supp = c.bitmap.count();
    nodes.push_back({std::move(c.key), std::move(c.bitmap), supp, {}});
  }
  return nodes;
}

HpgNode mine_pair_patterns(const HpgNode& node, const SequenceDatabase& db, const MiningConfig& cfg,
                           MiningCounters& counters) {
  if (node.events.size() != 2) throw ContractViolation("pair node must have two events");
  TemporalPattern single{{node.events[0]}, {}};
  const Bitmap& first = db.bitmap(node.events[0]);
  return verify_node(node.events, node.bitmap, {{&single, &first}}, db, cfg, nullptr, counters);
}

std::vector<HpgNode> filtered_one_freq(const std::vector<HpgNode>& level1,
                                       const std::vector<HpgNode>& level_prev,
                                       const MiningConfig& cfg) {
  if (!transitivity_enabled(cfg.prune)) return level1;
  std::vector<bool> present;
  for (const auto& n : level_prev) {
    for (auto e : n.events) {
      if (e >= present.size()) present.resize(e + 1, false);
      present[e] = true;
    }
  }
  std::vector<HpgNode> out;
  for (const auto& n : level1) {
    const auto e = n.events[0];
    if (e < present.size() && present[e]) out.push_back(n);
  }
  return out;
}

std::vector<HpgNode> mine_k_patterns(const std::vector<HpgNode>& level_prev,
                                     const std::vector<HpgNode>& filtered1,
                                     const std::vector<HpgNode>& level2, const SequenceDatabase& db,
                                     const MiningConfig& cfg, MiningCounters& counters,
                                     const Screening& screen) {
  if (level_prev.empty() || filtered1.empty()) return {};
  if (level_prev.front().events.size() + 1 > kMaxPatternEvents) {
    throw ConfigError("patterns are limited to 32 events");
  }
  PairIndex pairs;
  const bool trans = transitivity_enabled(cfg.prune);
  if (trans) pairs = index_pairs(level2);

  std::vector<Candidate> cands;
  for (const auto& prev : level_prev) {
    for (const auto& one : filtered1) {
      const EventCode next = one.events[0];
      bool screened_out = false;
      for (auto e : prev.events) screened_out = screened_out || !admitted_pair(screen, e, next);
      if (screened_out) continue;
      Candidate c{prev.events, bitmap_and(prev.bitmap, one.bitmap), &prev};
      c.key.push_back(next);
      if (!admit_candidate(c, db, cfg, counters)) continue;
      ++counters.candidate_nodes;
      cands.push_back(std::move(c));
    }
  }
  return verify_level(cands, false, db, cfg, trans ? &pairs : nullptr, counters);
}

MiningResult htpgm(const SequenceDatabase& db, const MiningConfig& cfg, const Screening& screen) {
  cfg.validate();
  MiningResult result;
  auto& levels = result.hpg.levels;
  MiningCounters& counters = result.counters;

  auto level1 = mine_single_events(db, cfg);
  if (screen.admit_event) {
    std::erase_if(level1, [&](const HpgNode& n) { return !screen.admit_event(n.events[0]); });
  }
  levels.push_back(level1);
  if (level1.empty()) {
    result.level_sizes = {0};
    return result;
  }

  auto cands = pair_candidates(level1, db, cfg, counters, screen);
  levels.push_back(verify_level(cands, true, db, cfg, nullptr, counters));

  for (std::size_t k = 3; k <= cfg.k_max && !levels.back().empty(); ++k) {
    auto filtered1 = filtered_one_freq(levels[0], levels.back(), cfg);
    counters.pruned_by_transitivity += levels[0].size() - filtered1.size();
    auto next = mine_k_patterns(levels.back(), filtered1, levels[1], db, cfg, counters, screen);
    levels.push_back(std::move(next));
  }
  while (levels.size() > 2 && levels.back().empty()) levels.pop_back();

  for (const auto& level : levels) {
    result.level_sizes.push_back(level.size());
    for (const auto& node : level) {
      for (const auto& mp : node.patterns) result.patterns.push_back(mp);
    }
  }
  result.hpg.counters = counters;
  return result;
}

}  // namespace tempo
