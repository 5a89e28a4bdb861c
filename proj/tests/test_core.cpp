#define BOOST_TEST_MODULE core
#include <boost/test/unit_test.hpp>

#include "support.hpp"
#include "tempo/error.hpp"

using namespace tempo;
using namespace tempo::test;
namespace tt = boost::test_tools;

BOOST_AUTO_TEST_SUITE(bitmap)

BOOST_AUTO_TEST_CASE(and_examples) {
  const Bitmap ion{1, 0, 1, 1};
  BOOST_TEST(bitmap_and(ion, Bitmap(4, true)).to_vector() == ion.to_vector(), tt::per_element());
  BOOST_TEST(bitmap_and(ion, ion) == ion);
  BOOST_TEST(bitmap_and(ion, Bitmap{0, 1, 0, 0}).none());
}

BOOST_AUTO_TEST_CASE(count_examples) {
  BOOST_TEST(bitmap_count(Bitmap{1, 0, 1, 1}) == 3u);
  BOOST_TEST(bitmap_count(Bitmap(130)) == 0u);
  BOOST_TEST(bitmap_count(Bitmap(4, true)) == 4u);
  BOOST_TEST(bitmap_count(Bitmap(130, true)) == 130u);
}

BOOST_AUTO_TEST_CASE(length_mismatch) {
  BOOST_CHECK_THROW(bitmap_and(Bitmap(3), Bitmap(4)), ConfigError);
  Bitmap a(3);
  BOOST_CHECK_THROW(a |= Bitmap(65), ConfigError);
}

BOOST_AUTO_TEST_CASE(count_of_and_bounded) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.uniform(200);
    Bitmap a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (rng.bernoulli(0.5)) a.set(k);
      if (rng.bernoulli(0.5)) b.set(k);
    }
    BOOST_TEST(bitmap_and(a, b).count() <= std::min(a.count(), b.count()));
  }
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(confidence)

BOOST_AUTO_TEST_CASE(pair_examples) {
  BOOST_TEST(pair_confidence(4, 4, 4) == 1.0);
  BOOST_TEST(pair_confidence(7, 7, 7) == 1.0);
  BOOST_TEST(pair_confidence(2, 4, 2) == 0.5);
  BOOST_CHECK_THROW(pair_confidence(0, 0, 3), DomainError);
}

BOOST_AUTO_TEST_CASE(pattern_examples) {
  const std::vector<std::size_t> a{4, 4, 3}, b{4, 4}, c{4};
  BOOST_TEST(pattern_confidence(3, a) == 0.75);
  BOOST_TEST(pattern_confidence(4, b) == 1.0);
  BOOST_TEST(pattern_confidence(0, c) == 0.0);
  BOOST_CHECK_THROW(pattern_confidence(1, std::vector<std::size_t>{}), DomainError);
}

BOOST_AUTO_TEST_CASE(pair_confidence_at_least_rel_support) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t si = 1; si <= n; ++si) {
      for (std::size_t sj = 1; sj <= n; ++sj) {
        for (std::size_t p = 0; p <= std::min(si, sj); ++p) {
          const double conf = pair_confidence(p, si, sj);
          BOOST_TEST(conf <= 1.0);
          BOOST_TEST(conf >= static_cast<double>(p) / static_cast<double>(n));
        }
      }
    }
  }
}

BOOST_AUTO_TEST_CASE(thresholds) {
  BOOST_TEST(min_support_count(10, 0.7) == 7u);
  BOOST_TEST(min_support_count(4, 0.7) == 3u);
  BOOST_TEST(min_support_count(4, 0.0) == 1u);
  BOOST_TEST(min_support_count(3, 1.0) == 3u);
  BOOST_TEST(meets_threshold(0.7, 7.0 / 10.0));
  BOOST_TEST(!meets_threshold(0.69, 0.7));
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(database)

BOOST_AUTO_TEST_CASE(canonical_order_and_index) {
  SequenceDatabase db({{{0, 10},
                        {{{"B", "x"}, {2, 5}}, {{"A", "y"}, {2, 5}}, {{"A", "y"}, {0, 9}},
                         {{"A", "x"}, {2, 4}}}}});
  const auto& inst = db.sequence(0).instances;
  BOOST_REQUIRE(inst.size() == 4u);
  BOOST_TEST(db.instance(0, 0).interval == (Interval{0, 9}));
  BOOST_TEST(db.instance(0, 1).event.label() == "Ax");
  BOOST_TEST(db.instance(0, 2).event.label() == "Ay");
  BOOST_TEST(db.instance(0, 3).event.label() == "Bx");
  const auto ay = code(db, "A", "y");
  const auto pos = db.positions(ay, 0);
  BOOST_TEST(std::vector<std::uint32_t>(pos.begin(), pos.end()) == (std::vector<std::uint32_t>{0, 2}),
             tt::per_element());
  BOOST_TEST(db.support(ay) == 1u);
  BOOST_TEST(db.max_instances_per_sequence() == 4u);
}

BOOST_AUTO_TEST_CASE(rejects_bad_instances) {
  BOOST_CHECK_THROW(SequenceDatabase({{{0, 10}, {{{"A", "x"}, {3, 3}}}}}), InputError);
  BOOST_CHECK_THROW(SequenceDatabase({{{0, 10}, {{{"A", "x"}, {8, 12}}}}}), InputError);
  BOOST_CHECK_THROW(SequenceDatabase({{{0, 10}, {{{"A", "x"}, {1, 2}}, {{"A", "x"}, {1, 2}}}}}),
                    InputError);
  BOOST_CHECK_THROW(SequenceDatabase(std::vector<RawSequence>{RawSequence{{5, 5}, {}}}), InputError);
}

BOOST_AUTO_TEST_CASE(bitmap_bits_mark_presence) {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto db = random_db(rng);
    for (EventCode c = 0; c < db.event_count(); ++c) {
      BOOST_TEST(db.bitmap(c).size() == db.size());
      for (std::size_t s = 0; s < db.size(); ++s) {
        BOOST_TEST(db.bitmap(c).test(s) == !db.positions(c, s).empty());
      }
    }
  }
}

BOOST_AUTO_TEST_CASE(pattern_layout) {
  TemporalPattern p{{0, 1, 2},
                    {Relation::Contains, Relation::Follows, Relation::Overlaps}};
  BOOST_TEST(TemporalPattern::relation_index(0, 1) == 0u);
  BOOST_TEST(TemporalPattern::relation_index(0, 2) == 1u);
  BOOST_TEST(TemporalPattern::relation_index(1, 2) == 2u);
  BOOST_TEST(TemporalPattern::relation_index(2, 3) == 5u);
  const auto t = p.triples();
  BOOST_REQUIRE(t.size() == 3u);
  BOOST_TEST(t[2].relation == Relation::Overlaps);
  BOOST_TEST(t[2].first == 1u);
  BOOST_TEST(t[2].second == 2u);
}

BOOST_AUTO_TEST_CASE(config_validation) {
  MiningConfig cfg;
  BOOST_CHECK_NO_THROW(cfg.validate());
  cfg.epsilon = 1;
  cfg.min_overlap = 2;
  BOOST_CHECK_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.k_max = 1;
  BOOST_CHECK_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.sigma = 1.5;
  BOOST_CHECK_THROW(cfg.validate(), ConfigError);
  BOOST_CHECK_THROW(prune_level_from_string("most"), ConfigError);
  BOOST_TEST(prune_level_from_string("NoPrune") == PruneLevel::None);
}

BOOST_AUTO_TEST_CASE(grid_labels) {
  TimeGrid g{TimeGrid::Format::Clock, 10 * 3600, 300};
  BOOST_TEST(g.label(0) == "10:00");
  BOOST_TEST(g.label(9) == "10:45");
  TimeGrid d{TimeGrid::Format::DateTime, 86400, 3600};
  BOOST_TEST(d.label(1) == "1970-01-02 01:00:00");
  BOOST_TEST(TimeGrid{}.label(7) == "7");
}

BOOST_AUTO_TEST_SUITE_END()
