#define BOOST_TEST_MODULE htpgm
#include <boost/test/unit_test.hpp>

#include <algorithm>

#include "support.hpp"
#include "tempo/htpgm.hpp"
#include "tempo/oracle.hpp"

using namespace tempo;
using namespace tempo::test;

namespace {

MiningConfig table_config(double sigma = 0.7, double delta = 0.7) {
  MiningConfig cfg;
  cfg.sigma = sigma;
  cfg.delta = delta;
  cfg.t_max = 9;
  return cfg;
}

bool has_event(const std::vector<HpgNode>& level, EventCode c) {
  return std::any_of(level.begin(), level.end(), [&](const HpgNode& n) {
    return std::find(n.events.begin(), n.events.end(), c) != n.events.end();
  });
}

// Sub-pattern of p without event `drop`.
TemporalPattern without(const TemporalPattern& p, std::size_t drop) {
  TemporalPattern q;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != drop) keep.push_back(i);
  }
  for (auto i : keep) q.events.push_back(p.events[i]);
  for (std::size_t j = 1; j < keep.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) q.relations.push_back(p.relation(keep[i], keep[j]));
  }
  return q;
}

}  // namespace

BOOST_AUTO_TEST_SUITE(single_events)

BOOST_AUTO_TEST_CASE(table3_sigma_07_keeps_eleven_events) {
  const auto db = table3();
  const auto l1 = mine_single_events(db, table_config());
  BOOST_TEST(l1.size() == 11u);
  BOOST_TEST(!has_event(l1, code(db, "D", "On")));
}

BOOST_AUTO_TEST_CASE(sigma_one_keeps_events_in_every_sequence) {
  const auto db = table3();
  const auto l1 = mine_single_events(db, table_config(1.0));
  BOOST_TEST(l1.size() == 10u);
  BOOST_TEST(!has_event(l1, code(db, "D", "On")));
  BOOST_TEST(!has_event(l1, code(db, "I", "On")));
}

BOOST_AUTO_TEST_CASE(tiny_sigma_keeps_every_event) {
  const auto db = table3();
  BOOST_TEST(mine_single_events(db, table_config(1e-9)).size() == db.event_count());
}

BOOST_AUTO_TEST_CASE(ion_bitmap) {
  const auto db = table3();
  BOOST_TEST(db.bitmap(code(db, "I", "On")).to_vector() == (std::vector<int>{1, 0, 1, 1}),
             boost::test_tools::per_element());
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(pairs)

BOOST_AUTO_TEST_CASE(son_ton_candidate_kept) {
  const auto db = table3();
  const auto cfg = table_config();
  MiningCounters c;
  const auto l2 = mine_event_pairs(mine_single_events(db, cfg), db, cfg, c);
  const std::vector<EventCode> key{code(db, "S", "On"), code(db, "T", "On")};
  auto it = std::find_if(l2.begin(), l2.end(), [&](const HpgNode& n) { return n.events == key; });
  BOOST_REQUIRE(it != l2.end());
  BOOST_TEST(it->group_support == 4u);
}

BOOST_AUTO_TEST_CASE(son_ton_contains) {
  const auto db = table3();
  auto cfg = table_config();
  MiningCounters c;
  const std::vector<EventCode> key{code(db, "S", "On"), code(db, "T", "On")};
  HpgNode node{key, bitmap_and(db.bitmap(key[0]), db.bitmap(key[1])), 4, {}};
  const auto out = mine_pair_patterns(node, db, cfg, c);
  auto it = std::find_if(out.patterns.begin(), out.patterns.end(), [](const MinedPattern& p) {
    return p.pattern.relations == std::vector<Relation>{Relation::Contains};
  });
  BOOST_REQUIRE(it != out.patterns.end());
  BOOST_TEST(it->stats.support == 4u);
  BOOST_TEST(it->stats.confidence == 1.0);

  cfg.t_max = 0;
  BOOST_TEST(mine_pair_patterns(node, db, cfg, c).patterns.empty());
}

BOOST_AUTO_TEST_CASE(disjoint_events_pruned) {
  SequenceDatabase db({{{0, 10}, {{{"A", "x"}, {0, 3}}}}, {{0, 10}, {{{"B", "x"}, {0, 3}}}}});
  MiningConfig cfg;
  cfg.sigma = 0.5;
  cfg.delta = 0.1;
  MiningCounters c;
  const auto l2 = mine_event_pairs(mine_single_events(db, cfg), db, cfg, c);
  for (const auto& n : l2) BOOST_TEST(n.events[0] == n.events[1]);
  BOOST_TEST(c.pruned_by_apriori == 2u);
}

BOOST_AUTO_TEST_CASE(self_pair_needs_two_instances) {
  SequenceDatabase db({{{0, 10}, {{{"A", "x"}, {0, 2}}, {{"A", "x"}, {4, 6}}}},
                       {{0, 10}, {{{"A", "x"}, {1, 3}}}}});
  MiningConfig cfg;
  cfg.sigma = 0.5;
  cfg.delta = 0.5;
  const auto r = htpgm(db, cfg);
  BOOST_REQUIRE(r.patterns.size() == 1u);
  BOOST_TEST(r.patterns[0].stats.support == 1u);
  BOOST_TEST(r.patterns[0].pattern.relations[0] == Relation::Follows);
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(levels)

BOOST_AUTO_TEST_CASE(filtered_one_freq_drops_events_missing_from_level2) {
  const auto db = table3();
  const auto cfg = table_config();
  const auto r = htpgm(db, cfg);
  const auto& l1 = r.hpg.levels[0];
  const auto& l2 = r.hpg.levels[1];
  const auto f = filtered_one_freq(l1, l2, cfg);
  for (const auto& n : l1) {
    const bool kept = std::any_of(f.begin(), f.end(), [&](const HpgNode& m) { return m.events == n.events; });
    BOOST_TEST(kept == has_event(l2, n.events[0]));
  }
  BOOST_TEST(filtered_one_freq(l1, l1, cfg).size() == l1.size());
  BOOST_TEST(filtered_one_freq(l1, {}, cfg).empty());
  auto none = cfg;
  none.prune = PruneLevel::None;
  BOOST_TEST(filtered_one_freq(l1, {}, none).size() == l1.size());
}

BOOST_AUTO_TEST_CASE(ion_never_reaches_level3_in_fig5_scenario) {
  // IOn is frequent on its own but pairs with nothing confidently when
  // delta is high.
  const auto db = table3();
  const auto cfg = table_config(0.7, 0.9);
  const auto r = htpgm(db, cfg);
  const auto ion = code(db, "I", "On");
  BOOST_TEST(has_event(r.hpg.levels[0], ion));
  BOOST_TEST(!has_event(r.hpg.levels[1], ion));
  if (r.hpg.levels.size() > 2) BOOST_TEST(!has_event(r.hpg.levels[2], ion));
}

BOOST_AUTO_TEST_CASE(empty_previous_level_stops) {
  const auto db = table3();
  const auto cfg = table_config();
  MiningCounters c;
  BOOST_TEST(mine_k_patterns({}, mine_single_events(db, cfg), {}, db, cfg, c).empty());
}

BOOST_AUTO_TEST_CASE(single_sequence_gives_full_support) {
  SequenceDatabase db({{{0, 10}, {{{"A", "x"}, {0, 4}}, {{"B", "y"}, {1, 3}}, {{"C", "z"}, {5, 7}}}}});
  MiningConfig cfg;
  cfg.sigma = 1.0;
  cfg.delta = 1.0;
  const auto r = htpgm(db, cfg);
  BOOST_TEST(!r.patterns.empty());
  for (const auto& p : r.patterns) BOOST_TEST(p.stats.rel_support == 1.0);
}

BOOST_AUTO_TEST_CASE(output_ordered_by_level_key_relations) {
  const auto r = htpgm(table3(), table_config(0.5, 0.5));
  for (std::size_t i = 1; i < r.patterns.size(); ++i) {
    const auto& a = r.patterns[i - 1].pattern;
    const auto& b = r.patterns[i].pattern;
    BOOST_TEST((a.size() < b.size() || (a.size() == b.size() && a < b)));
  }
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(properties)

BOOST_AUTO_TEST_CASE(matches_oracle_for_every_prune_level) {
  Rng rng(20240611);
  for (int seed = 0; seed < 60; ++seed) {
    const auto db = random_db(rng);
    const auto cfg0 = random_config(rng);
    const auto ref = brute_force_mine(db, cfg0);
    for (auto level : kPruneLevels) {
      auto cfg = cfg0;
      cfg.prune = level;
      const auto got = htpgm(db, cfg).patterns;
      BOOST_TEST(same_patterns(got, ref), "seed " << seed << " prune " << to_string(level));
    }
  }
}

BOOST_AUTO_TEST_CASE(matches_oracle_with_tolerance) {
  Rng rng(99);
  RandomDbSpec spec;
  spec.min_len = 3;
  for (int seed = 0; seed < 30; ++seed) {
    const auto db = random_db(rng, spec);
    auto cfg = random_config(rng);
    cfg.epsilon = 1;
    cfg.min_overlap = std::max<Tick>(cfg.min_overlap, 3);
    BOOST_TEST(same_patterns(htpgm(db, cfg).patterns, brute_force_mine(db, cfg)), "seed " << seed);
  }
}

BOOST_AUTO_TEST_CASE(counters_follow_prune_level) {
  Rng rng(7);
  for (int seed = 0; seed < 40; ++seed) {
    const auto db = random_db(rng);
    auto cfg = random_config(rng);
    std::size_t nodes[4];
    for (int l = 0; l < 4; ++l) {
      cfg.prune = kPruneLevels[l];
      const auto r = htpgm(db, cfg);
      nodes[l] = r.counters.candidate_nodes;
      if (cfg.prune == PruneLevel::None) {
        BOOST_TEST(r.counters.pruned_by_apriori == 0u);
        BOOST_TEST(r.counters.pruned_by_transitivity == 0u);
        BOOST_TEST(r.counters.pruned_by_confidence == 0u);
      }
    }
    BOOST_TEST(nodes[3] <= nodes[1]);
    BOOST_TEST(nodes[1] <= nodes[0]);
  }
}

BOOST_AUTO_TEST_CASE(anti_monotone_sub_patterns) {
  Rng rng(31);
  for (int seed = 0; seed < 30; ++seed) {
    const auto db = random_db(rng);
    auto cfg = random_config(rng);
    cfg.k_max = 4;
    // the oracle at the thresholds' floor gives every realised pattern
    auto all_cfg = cfg;
    all_cfg.sigma = 1e-9;
    all_cfg.delta = 1e-9;
    const auto everything = brute_force_mine(db, all_cfg);
    std::map<TemporalPattern, PatternStats> stats;
    for (const auto& p : everything) stats[p.pattern] = p.stats;
    for (const auto& p : htpgm(db, cfg).patterns) {
      if (p.pattern.size() < 3) continue;
      for (std::size_t d = 0; d < p.pattern.size(); ++d) {
        const auto sub = without(p.pattern, d);
        BOOST_REQUIRE(stats.count(sub));
        BOOST_TEST(stats[sub].support >= p.stats.support);
        BOOST_TEST(stats[sub].confidence >= p.stats.confidence - 1e-12);
      }
    }
  }
}

BOOST_AUTO_TEST_CASE(stats_within_node_bounds) {
  Rng rng(12);
  for (int seed = 0; seed < 20; ++seed) {
    const auto db = random_db(rng);
    const auto cfg = random_config(rng);
    const auto r = htpgm(db, cfg);
    for (std::size_t k = 0; k < r.hpg.levels.size(); ++k) {
      for (const auto& n : r.hpg.levels[k]) {
        BOOST_TEST(n.events.size() == k + 1);
        BOOST_TEST(n.group_support == n.bitmap.count());
        for (const auto& p : n.patterns) {
          BOOST_TEST(p.stats.support <= n.group_support);
          BOOST_TEST(p.pattern.events == n.events);
          BOOST_TEST(p.stats.confidence <= 1.0);
        }
      }
      if (k >= 2) {
        BOOST_TEST(r.hpg.levels[k].size() <= r.hpg.levels[k - 1].size() * r.hpg.levels[0].size());
      }
    }
  }
}

BOOST_AUTO_TEST_CASE(parallel_matches_serial) {
  Rng rng(5);
  for (int seed = 0; seed < 15; ++seed) {
    const auto db = random_db(rng);
    auto cfg = random_config(rng);
    const auto serial = htpgm(db, cfg);
    cfg.threads = 4;
    const auto par = htpgm(db, cfg);
    BOOST_TEST(same_patterns(serial.patterns, par.patterns));
    BOOST_TEST(serial.counters.candidate_nodes == par.counters.candidate_nodes);
    BOOST_TEST(serial.counters.relation_checks == par.counters.relation_checks);
    BOOST_TEST(serial.level_sizes == par.level_sizes, boost::test_tools::per_element());
  }
}

BOOST_AUTO_TEST_SUITE_END()
