#define BOOST_TEST_MODULE io
#include <boost/test/unit_test.hpp>

#include <sstream>

#include <json.hpp>

#include "support.hpp"
#include "tempo/error.hpp"
#include "tempo/htpgm.hpp"

using namespace tempo;
using namespace tempo::test;

namespace {

WideCsv csv(const std::string& text) {
  std::istringstream in(text);
  return read_wide_csv(in, "t.csv");
}

std::string error_of(const std::string& text) {
  try {
    csv(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

bool starts(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

BOOST_AUTO_TEST_SUITE(wide_csv)

BOOST_AUTO_TEST_CASE(time_formats) {
  BOOST_TEST(parse_time("17").first == 17);
  BOOST_TEST((parse_time("10:05").second == TimeGrid::Format::Clock));
  BOOST_TEST(parse_time("10:05").first == 36300);
  BOOST_TEST(parse_time("10:05:30").first == 36330);
  const auto dt = parse_time("1970-01-02T00:01");
  BOOST_TEST((dt.second == TimeGrid::Format::DateTime));
  BOOST_TEST(dt.first == 86460);
  BOOST_TEST(parse_time("2024-03-01 12:00").first - parse_time("2024-02-28 12:00").first == 2 * 86400);
  BOOST_CHECK_THROW(parse_time("25:00"), InputError);
  BOOST_CHECK_THROW(parse_time("2023-02-30 10:00"), InputError);
  BOOST_CHECK_THROW(parse_time("noon"), InputError);
}

BOOST_AUTO_TEST_CASE(table1_grid) {
  std::ifstream in(data_path("table1.csv"));
  const auto c = read_wide_csv(in);
  BOOST_TEST(c.length() == 36u);
  BOOST_TEST(c.variables == (std::vector<std::string>{"S", "T", "M", "W", "D", "I"}),
             boost::test_tools::per_element());
  BOOST_TEST(c.grid.step_seconds == 300);
  BOOST_TEST(c.grid.label(35) == "12:55");
}

BOOST_AUTO_TEST_CASE(quoting_bom_and_blank_lines) {
  const auto c = csv("\xEF\xBB\xBFtime,\"A,1\",B\r\n\n0,\"x\"\"y\", z \r\n1,\" q \",w\n");
  BOOST_TEST(c.variables[0] == "A,1");
  BOOST_TEST(c.columns[0][0] == "x\"y");
  BOOST_TEST(c.columns[0][1] == " q ");
  BOOST_TEST(c.columns[1][0] == "z");
  BOOST_TEST(c.lines == (std::vector<std::size_t>{3, 4}), boost::test_tools::per_element());
}

BOOST_AUTO_TEST_CASE(errors_carry_line_numbers) {
  BOOST_TEST(starts(error_of(""), "t.csv: empty CSV"));
  BOOST_TEST(starts(error_of("time,A\n"), "t.csv: CSV has no data rows"));
  BOOST_TEST(starts(error_of("time\n0\n"), "t.csv:1:"));
  BOOST_TEST(starts(error_of("time,A,A\n0,1,2\n"), "t.csv:1:"));
  BOOST_TEST(starts(error_of("time,A\n0,1\n1,2,3\n"), "t.csv:3:"));
  BOOST_TEST(starts(error_of("time,A\n0,1\n1,\n"), "t.csv:3: missing value"));
  BOOST_TEST(starts(error_of("time,A\n0,1\n2,1\n3,1\n"), "t.csv:4: non-uniform"));
  BOOST_TEST(starts(error_of("time,A\n1,1\n0,1\n"), "t.csv:3: timestamps must strictly increase"));
  BOOST_TEST(starts(error_of("time,A\n10:00,1\n2,1\n"), "t.csv:3: timestamp format"));
  BOOST_TEST(starts(error_of("time,A\nlater,1\n"), "t.csv:2:"));
  BOOST_TEST(starts(error_of("time,A\n0,\"open\n"), "t.csv:2: unterminated"));
}

BOOST_AUTO_TEST_CASE(threshold_mapping_per_variable) {
  MapperSet m;
  m.per_variable.emplace("P", SymbolMapper::threshold({0.5}, {"Off", "On"}));
  const auto db = symbolize_csv(csv("t,P,Q\n0,0.1,a\n1,0.9,b\n2,0.5,a\n"), m);
  BOOST_TEST(db.find("P").symbols == (std::vector<std::string>{"Off", "On", "On"}),
             boost::test_tools::per_element());
  BOOST_TEST(db.find("Q").symbols == (std::vector<std::string>{"a", "b", "a"}),
             boost::test_tools::per_element());
  MapperSet bad;
  bad.fallback = SymbolMapper::threshold({0.5}, {"Off", "On"});
  BOOST_CHECK_THROW(symbolize_csv(csv("t,Q\n0,a\n"), bad), InputError);
}

BOOST_AUTO_TEST_CASE(symbolic_csv_round_trip) {
  const auto db = table1();
  std::ostringstream out;
  write_symbolic_csv(out, db);
  const auto again = symbolize_csv(csv(out.str()), MapperSet{});
  BOOST_TEST(again.variables() == db.variables(), boost::test_tools::per_element());
  for (std::size_t v = 0; v < db.series().size(); ++v) {
    BOOST_TEST(again.series(v).symbols == db.series(v).symbols);
  }
  BOOST_TEST(out.str().substr(0, 21) == "time,S,T,M,W,D,I\n10:0");
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(sequence_json)

BOOST_AUTO_TEST_CASE(round_trip) {
  const auto db = table3();
  std::ostringstream out;
  write_sequence_db(out, db);
  std::istringstream in(out.str());
  const auto back = read_sequence_db(in);
  BOOST_TEST(back.size() == db.size());
  BOOST_TEST(back.events() == db.events());
  for (std::size_t s = 0; s < db.size(); ++s) {
    BOOST_TEST(back.sequence(s).window == db.sequence(s).window);
    BOOST_REQUIRE(back.sequence(s).instances.size() == db.sequence(s).instances.size());
    for (std::size_t i = 0; i < db.sequence(s).instances.size(); ++i) {
      BOOST_TEST(back.instance(s, i) == db.instance(s, i));
    }
  }
  BOOST_TEST(back.grid().label(9) == "10:45");
  std::ostringstream again;
  write_sequence_db(again, back);
  BOOST_TEST(again.str() == out.str());
}

BOOST_AUTO_TEST_CASE(schema_header) {
  std::ostringstream out;
  write_sequence_db(out, table3());
  const auto j = nlohmann::json::parse(out.str());
  BOOST_TEST(j["grid_unit"].get<int>() == 300);
  BOOST_TEST(j["origin_label"].get<std::string>() == "10:00");
  BOOST_TEST(j["sequences"].size() == 4u);
  BOOST_TEST(j["sequences"][1]["window"][0].get<int>() == 9);
}

BOOST_AUTO_TEST_CASE(rejects_malformed) {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    BOOST_CHECK_THROW(read_sequence_db(in, "s.json"), InputError);
  };
  bad("{");
  bad("{\"sequences\":[]}");
  bad("{\"grid_unit\":0,\"sequences\":[]}");
  bad("{\"grid_unit\":1,\"sequences\":{}}");
  bad("{\"grid_unit\":1,\"sequences\":[{\"id\":1,\"window\":[0,5],\"instances\":[]}]}");
  bad("{\"grid_unit\":1,\"sequences\":[{\"id\":0,\"window\":[0],\"instances\":[]}]}");
  bad("{\"grid_unit\":1,\"sequences\":[{\"id\":0,\"window\":[0,5],\"instances\":"
      "[{\"var\":\"A\",\"symbol\":\"1\",\"start\":3,\"end\":9}]}]}");
  bad("{\"grid_unit\":1,\"sequences\":[{\"id\":0,\"window\":[0,5],\"instances\":"
      "[{\"var\":\"A\",\"start\":0,\"end\":2}]}]}");
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(pattern_files)

BOOST_AUTO_TEST_CASE(round_trip_and_format) {
  const auto db = table3();
  MiningConfig cfg;
  cfg.sigma = cfg.delta = 0.7;
  cfg.t_max = 9;
  const auto mined = htpgm(db, cfg).patterns;
  BOOST_REQUIRE(!mined.empty());
  std::ostringstream out;
  write_patterns(out, mined, db);
  std::istringstream in(out.str());
  const auto back = read_patterns(in);
  BOOST_REQUIRE(back.size() == mined.size());
  const auto ids = identities(mined, db);
  for (std::size_t i = 0; i < back.size(); ++i) {
    BOOST_TEST((back[i].identity == ids[i]));
    BOOST_TEST(back[i].stats.support == mined[i].stats.support);
    BOOST_TEST(back[i].stats.confidence == mined[i].stats.confidence,
               boost::test_tools::tolerance(1e-6));
  }
  const std::string first = out.str().substr(0, out.str().find('\n'));
  BOOST_TEST(first.find("\"rel_support\":") != std::string::npos);
  BOOST_TEST(first.find("0.") != std::string::npos);
  BOOST_TEST(first.find("\"triples\":[{\"rel\":\"") != std::string::npos);
}

BOOST_AUTO_TEST_CASE(rejects_malformed) {
  auto bad = [](const std::string& line) {
    std::istringstream in("\n" + line + "\n");
    try {
      read_patterns(in, "p.jsonl");
      BOOST_ERROR("accepted " << line);
    } catch (const InputError& e) {
      BOOST_TEST(starts(e.what(), "p.jsonl:2:"), e.what());
    }
  };
  const std::string ev = "\"events\":[{\"var\":\"A\",\"symbol\":\"1\"},{\"var\":\"B\",\"symbol\":\"1\"}]";
  const std::string tail = ",\"support\":1,\"rel_support\":0.5,\"confidence\":0.5}";
  bad("{" + ev + ",\"triples\":[]" + tail);
  bad("{" + ev + ",\"triples\":[{\"rel\":\"before\",\"i\":0,\"j\":1}]" + tail);
  bad("{" + ev + ",\"triples\":[{\"rel\":\"follows\",\"i\":1,\"j\":0}]" + tail);
  bad("{" + ev + ",\"triples\":[{\"rel\":\"follows\",\"i\":0,\"j\":1},"
      "{\"rel\":\"follows\",\"i\":0,\"j\":1}]" + tail);
  bad("{\"events\":[{\"var\":\"A\",\"symbol\":\"1\"}],\"triples\":[]" + tail);
  bad("{" + ev + ",\"triples\":[{\"rel\":\"follows\",\"i\":0,\"j\":1}]}");
  bad("not json");
}

BOOST_AUTO_TEST_SUITE_END()

BOOST_AUTO_TEST_SUITE(exports)

BOOST_AUTO_TEST_CASE(graph_json_and_dot) {
  const auto g = build_correlation_graph(table1(), CorrelationConfig{0.3, 0.7, 0.7});
  std::ostringstream js;
  write_graph_json(js, g);
  const auto j = nlohmann::json::parse(js.str());
  BOOST_TEST(j["vertices"].size() == g.vertices.size());
  BOOST_TEST(j["edges"].size() == g.edges.size());
  BOOST_TEST(j["edges"][0].contains("nmi_ab"));
  BOOST_TEST(j["edges"][0]["mu"].get<double>() == 0.3);
  std::ostringstream dot;
  write_graph_dot(dot, g);
  BOOST_TEST(starts(dot.str(), "graph correlation {"));
  BOOST_TEST(dot.str().find("\"S\" -- \"T\"") != std::string::npos);
}

BOOST_AUTO_TEST_CASE(generator_spec_round_trip) {
  GeneratorSpec spec;
  spec.seed = 99;
  spec.n_vars = 3;
  spec.grid_len = 64;
  spec.alphabet = {{"a"}, {"b", "c"}, {"d", "e", "f"}};
  spec.run_p = {0.2, 0.3, 0.4};
  spec.names = {"X", "Y", "Z"};
  spec.correlation_groups = {CorrelationGroup{{0, 2}, 0.25}};
  std::ostringstream out;
  write_generator_spec(out, spec);
  std::istringstream in(out.str());
  const auto back = read_generator_spec(in);
  BOOST_TEST(back.seed == 99u);
  BOOST_TEST(back.alphabet == spec.alphabet);
  BOOST_TEST(back.run_p == spec.run_p);
  BOOST_TEST(back.correlation_groups[0].copy_probability == 0.25);
  const auto a = generate(spec);
  const auto b = generate(back);
  for (std::size_t v = 0; v < 3; ++v) BOOST_TEST(a.series(v).symbols == b.series(v).symbols);
}

BOOST_AUTO_TEST_CASE(generator_spec_shorthands) {
  std::istringstream in(R"({"alphabet":["x","y"],"run_p":0.5,"n_vars":4})");
  const auto spec = read_generator_spec(in);
  BOOST_TEST(spec.alphabet.size() == 1u);
  BOOST_TEST(spec.run_p_of(3) == 0.5);
  std::istringstream bad("[1,2]");
  BOOST_CHECK_THROW(read_generator_spec(bad), InputError);
}

BOOST_AUTO_TEST_SUITE_END()
