#include "tempo/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tempo/error.hpp"
#include "tempo/relations.hpp"

namespace tempo {

namespace {

struct Found {
  std::vector<EventCode> events;
  std::vector<Relation> relations;  // column-major, as TemporalPattern
  auto operator<=>(const Found&) const = default;
};

// All patterns realised in one sequence by some increasing choice of
// instance positions of size 2..k_max within t_max.
void realise(const TemporalSequence& seq, const MiningConfig& cfg, std::set<Found>& out) {
  const auto rc = RelationConfig::from(cfg);
  const auto& inst = seq.instances;
  std::vector<std::size_t> pick;
  // iterative combination enumeration over every size
  for (std::size_t k = 2; k <= cfg.k_max && k <= inst.size(); ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      Tick lo = inst[pick[0]].interval.start;
      Tick hi = lo;
      for (auto p : pick) hi = std::max(hi, inst[p].interval.end);
      if (hi - lo <= cfg.t_max) {
        Found f;
        bool ok = true;
        for (std::size_t j = 1; j < k && ok; ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            auto r = classify(inst[pick[i]].interval, inst[pick[j]].interval, rc);
            if (!r) {
              ok = false;
              break;
            }
            f.relations.push_back(*r);
          }
        }
        if (ok) {
          for (auto p : pick) f.events.push_back(inst[p].event);
          out.insert(std::move(f));
        }
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == inst.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace

std::vector<MinedPattern> brute_force_mine(const SequenceDatabase& db, const MiningConfig& cfg,
                                           const OracleGuard& guard) {
  cfg.validate();
  if (db.event_count() > guard.max_events) throw GuardViolation("too many events for the oracle");
  if (db.size() > guard.max_sequences) throw GuardViolation("too many sequences for the oracle");
  if (cfg.k_max > guard.max_k) throw GuardViolation("k_max too large for the oracle");
  for (const auto& s : db.sequences()) {
    if (s.instances.size() > guard.max_instances) {
      throw GuardViolation("too many instances in a sequence for the oracle");
    }
  }
  const std::size_t n = db.size();
  if (n == 0) return {};

  std::vector<std::size_t> event_support(db.event_count(), 0);
  std::map<Found, std::vector<std::size_t>> where;
  for (std::size_t s = 0; s < n; ++s) {
    const auto& seq = db.sequence(s);
    std::set<EventCode> present;
    for (const auto& ci : seq.instances) present.insert(ci.event);
    for (auto e : present) ++event_support[e];
    std::set<Found> found;
    realise(seq, cfg, found);
    for (const auto& f : found) where[f].push_back(s);
  }

  std::vector<MinedPattern> out;
  for (const auto& [f, seqs] : where) {
    const std::size_t supp = seqs.size();
    const double rel = static_cast<double>(supp) / static_cast<double>(n);
    std::size_t top = 0;
    for (auto e : f.events) top = std::max(top, event_support[e]);
    const double conf = static_cast<double>(supp) / static_cast<double>(top);
    if (rel < cfg.sigma - 1e-9 || conf < cfg.delta - 1e-12) continue;
    MinedPattern mp;
    mp.pattern = {f.events, f.relations};
    mp.stats = {supp, rel, conf};
    mp.sequences = Bitmap(n);
    for (auto s : seqs) mp.sequences.set(s);
    out.push_back(std::move(mp));
  }
  std::sort(out.begin(), out.end(), [](const MinedPattern& a, const MinedPattern& b) {
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.pattern < b.pattern;
  });
  return out;
}

std::vector<PatternIdentity> identities(const std::vector<MinedPattern>& patterns,
                                        const SequenceDatabase& db) {
  std::vector<PatternIdentity> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) out.push_back(identity_of(p.pattern, db));
  return out;
}

AccuracyReport compare(const std::vector<PatternIdentity>& reference,
                       const std::vector<PatternIdentity>& candidate) {
  std::set<PatternIdentity> ref(reference.begin(), reference.end());
  std::set<PatternIdentity> cand(candidate.begin(), candidate.end());
  AccuracyReport r;
  r.reference_count = ref.size();
  r.candidate_count = cand.size();
  for (const auto& p : cand) r.matched += ref.count(p);
  r.accuracy = ref.empty() ? 1.0 : static_cast<double>(r.matched) / static_cast<double>(ref.size());
  return r;
}

AccuracyReport compare(const std::vector<MinedPattern>& reference,
                       const std::vector<MinedPattern>& candidate, const SequenceDatabase& db) {
  return compare(identities(reference, db), identities(candidate, db));
}

}  // namespace tempo
