#include "tempo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>

#include <json.hpp>

#include "tempo/error.hpp"

namespace tempo {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

// Fixed-width digit field.
bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    out = out * 10 + (s[i] - '0');
  }
  return true;
}

// HH:MM[:SS] starting at pos and running to the end of s.
bool clock_seconds(std::string_view s, std::size_t pos, std::int64_t& out) {
  int h = 0, m = 0, sec = 0;
  const std::size_t len = s.size() - pos;
  if (len != 5 && len != 8) return false;
  if (!digits(s, pos, 2, h) || s[pos + 2] != ':' || !digits(s, pos + 3, 2, m)) return false;
  if (len == 8 && (s[pos + 5] != ':' || !digits(s, pos + 6, 2, sec))) return false;
  if (h > 23 || m > 59 || sec > 59) return false;
  out = h * 3600 + m * 60 + sec;
  return true;
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& source,
                                        std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      out.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) fail(source, lineno, "unterminated quoted field");
  out.push_back(was_quoted ? cur : trim(cur));
  return out;
}

}  // namespace

std::pair<std::int64_t, TimeGrid::Format> parse_time(const std::string& raw) {
  const std::string s = trim(raw);
  std::int64_t v = 0;
  if (parse_int(s, v)) return {v, TimeGrid::Format::Index};
  if (clock_seconds(s, 0, v)) return {v, TimeGrid::Format::Clock};
  int y = 0, mo = 0, d = 0;
  if (s.size() >= 16 && digits(s, 0, 4, y) && s[4] == '-' && digits(s, 5, 2, mo) && s[7] == '-' &&
      digits(s, 8, 2, d) && (s[10] == ' ' || s[10] == 'T') && clock_seconds(s, 11, v)) {
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw InputError("invalid date '" + s + "'");
    const auto days_since = sys_days{ymd}.time_since_epoch().count();
    return {static_cast<std::int64_t>(days_since) * 86400 + v, TimeGrid::Format::DateTime};
  }
  throw InputError("unrecognised timestamp '" + s + "'");
}

WideCsv read_wide_csv(std::istream& in, const std::string& source) {
  WideCsv csv;
  csv.source = source;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::vector<std::int64_t> secs;
  std::optional<TimeGrid::Format> fmt;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line, source, lineno);
    if (!have_header) {
      if (cells.size() < 2) fail(source, lineno, "header needs a time column and a variable");
      for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].empty()) fail(source, lineno, "empty variable name in header");
        if (std::find(csv.variables.begin(), csv.variables.end(), cells[i]) != csv.variables.end()) {
          fail(source, lineno, "duplicate variable " + cells[i]);
        }
        csv.variables.push_back(cells[i]);
      }
      csv.columns.resize(csv.variables.size());
      have_header = true;
      continue;
    }
    if (cells.size() != csv.variables.size() + 1) {
      fail(source, lineno, "expected " + std::to_string(csv.variables.size() + 1) +
                               " fields, found " + std::to_string(cells.size()));
    }
    std::pair<std::int64_t, TimeGrid::Format> t;
    try {
      t = parse_time(cells[0]);
    } catch (const InputError& e) {
      fail(source, lineno, e.what());
    }
    if (fmt && *fmt != t.second) fail(source, lineno, "timestamp format changes");
    fmt = t.second;
    if (!secs.empty()) {
      const std::int64_t step = secs.size() >= 2 ? secs[1] - secs[0] : t.first - secs.back();
      if (t.first <= secs.back()) fail(source, lineno, "timestamps must strictly increase");
      if (t.first - secs.back() != step) fail(source, lineno, "non-uniform time grid");
    }
    secs.push_back(t.first);
    for (std::size_t v = 0; v < csv.variables.size(); ++v) {
      if (cells[v + 1].empty()) {
        fail(source, lineno, "missing value for " + csv.variables[v]);
      }
      csv.columns[v].push_back(std::move(cells[v + 1]));
    }
    csv.lines.push_back(lineno);
  }
  if (!have_header) throw InputError(source + ": empty CSV, header row required");
  if (secs.empty()) throw InputError(source + ": CSV has no data rows");
  csv.grid.format = *fmt;
  csv.grid.origin_seconds = secs.front();
  csv.grid.step_seconds = secs.size() >= 2 ? secs[1] - secs[0] : 1;
  return csv;
}

const SymbolMapper& MapperSet::for_variable(const std::string& v) const {
  auto it = per_variable.find(v);
  return it == per_variable.end() ? fallback : it->second;
}

SymbolicDatabase symbolize_csv(const WideCsv& csv, const MapperSet& mappers) {
  std::vector<SymbolicSeries> series;
  std::vector<Tick> ticks(csv.length());
  for (std::size_t i = 0; i < ticks.size(); ++i) ticks[i] = static_cast<Tick>(i);
  for (std::size_t v = 0; v < csv.variables.size(); ++v) {
    const auto& name = csv.variables[v];
    const auto& mapper = mappers.for_variable(name);
    if (mapper.kind() == SymbolMapper::Kind::Passthrough) {
      series.push_back({name, ticks, csv.columns[v]});
      continue;
    }
    TimeSeries ts{name, ticks, {}};
    for (std::size_t i = 0; i < csv.length(); ++i) {
      const auto& cell = csv.columns[v][i];
      double x = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc{} || p != cell.data() + cell.size()) {
        fail(csv.source, csv.lines[i], "value '" + cell + "' of " + name + " is not a number");
      }
      if (!std::isfinite(x)) fail(csv.source, csv.lines[i], "value of " + name + " is not finite");
      ts.values.push_back(x);
    }
    series.push_back(symbolize(ts, mapper));
  }
  return SymbolicDatabase(std::move(series), csv.grid);
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_symbolic_csv(std::ostream& out, const SymbolicDatabase& db) {
  out << "time";
  for (const auto& s : db.series()) out << ',' << csv_cell(s.variable);
  out << '\n';
  for (std::size_t t = 0; t < db.length(); ++t) {
    out << db.grid().label(static_cast<Tick>(t));
    for (const auto& s : db.series()) out << ',' << csv_cell(s.symbols[t]);
    out << '\n';
  }
}

void write_sequence_db(std::ostream& out, const SequenceDatabase& db) {
  const auto& g = db.grid();
  out << "{\"grid_unit\":" << g.step_seconds << ",\"origin\":" << g.origin_seconds
      << ",\"time_format\":" << json(std::string(g.format_name())).dump()
      << ",\"origin_label\":" << json(g.label(0)).dump() << ",\"sequences\":[";
  for (std::size_t s = 0; s < db.size(); ++s) {
    const auto& seq = db.sequence(s);
    out << (s ? ",\n" : "\n") << "{\"id\":" << seq.id << ",\"window\":[" << seq.window.start << ','
        << seq.window.end << "],\"instances\":[";
    for (std::size_t i = 0; i < seq.instances.size(); ++i) {
      const auto& ci = seq.instances[i];
      const auto& e = db.event(ci.event);
      out << (i ? "," : "") << "{\"var\":" << json(e.variable).dump()
          << ",\"symbol\":" << json(e.symbol).dump() << ",\"start\":" << ci.interval.start
          << ",\"end\":" << ci.interval.end << '}';
    }
    out << "]}";
  }
  out << "\n]}\n";
}

namespace {

json parse_json(std::istream& in, const std::string& source) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

SequenceDatabase read_sequence_db(std::istream& in, const std::string& source) {
  const json doc = parse_json(in, source);
  TimeGrid grid;
  grid.step_seconds = field<std::int64_t>(doc, "grid_unit", source);
  if (grid.step_seconds <= 0) throw InputError(source + ": grid_unit must be positive");
  if (doc.contains("origin")) grid.origin_seconds = field<std::int64_t>(doc, "origin", source);
  if (doc.contains("time_format")) {
    grid.format = TimeGrid::format_from_name(field<std::string>(doc, "time_format", source));
  }
  const auto seqs = field<json>(doc, "sequences", source);
  if (!seqs.is_array()) throw InputError(source + ": 'sequences' must be an array");
  std::vector<RawSequence> raw;
  for (std::size_t s = 0; s < seqs.size(); ++s) {
    const std::string where = source + ": sequence " + std::to_string(s);
    const auto& js = seqs[s];
    const auto window = field<std::vector<Tick>>(js, "window", where);
    if (window.size() != 2) throw InputError(where + ": window needs [start, end]");
    if (field<std::size_t>(js, "id", where) != s) {
      throw InputError(where + ": ids must run 0, 1, 2, ...");
    }
    RawSequence seq{{window[0], window[1]}, {}};
    for (const auto& ji : field<json>(js, "instances", where)) {
      seq.instances.push_back({{field<std::string>(ji, "var", where),
                                field<std::string>(ji, "symbol", where)},
                               {field<Tick>(ji, "start", where), field<Tick>(ji, "end", where)}});
    }
    raw.push_back(std::move(seq));
  }
  return SequenceDatabase(std::move(raw), grid);
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_patterns(std::ostream& out, const std::vector<MinedPattern>& patterns,
                    const SequenceDatabase& db) {
  for (const auto& mp : patterns) {
    out << "{\"events\":[";
    for (std::size_t i = 0; i < mp.pattern.events.size(); ++i) {
      const auto& e = db.event(mp.pattern.events[i]);
      out << (i ? "," : "") << "{\"var\":" << json(e.variable).dump()
          << ",\"symbol\":" << json(e.symbol).dump() << '}';
    }
    out << "],\"triples\":[";
    const auto triples = mp.pattern.triples();
    for (std::size_t t = 0; t < triples.size(); ++t) {
      out << (t ? "," : "") << "{\"rel\":\"" << to_string(triples[t].relation)
          << "\",\"i\":" << triples[t].first << ",\"j\":" << triples[t].second << '}';
    }
    out << "],\"support\":" << mp.stats.support << ",\"rel_support\":" << fixed6(mp.stats.rel_support)
        << ",\"confidence\":" << fixed6(mp.stats.confidence) << "}\n";
  }
}

std::vector<PatternRecord> read_patterns(std::istream& in, const std::string& source) {
  std::vector<PatternRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": " + e.what());
    }
    PatternRecord r;
    for (const auto& je : field<json>(j, "events", where)) {
      r.identity.events.push_back(
          {field<std::string>(je, "var", where), field<std::string>(je, "symbol", where)});
    }
    const std::size_t k = r.identity.events.size();
    if (k < 2) throw InputError(where + ": a pattern needs at least two events");
    r.identity.relations.assign(k * (k - 1) / 2, Relation::Follows);
    std::vector<bool> seen(r.identity.relations.size(), false);
    for (const auto& jt : field<json>(j, "triples", where)) {
      const auto i = field<std::size_t>(jt, "i", where);
      const auto jj = field<std::size_t>(jt, "j", where);
      if (!(i < jj && jj < k)) throw InputError(where + ": triple indices out of range");
      const auto idx = TemporalPattern::relation_index(i, jj);
      if (seen[idx]) throw InputError(where + ": repeated triple");
      seen[idx] = true;
      try {
        r.identity.relations[idx] = relation_from_string(field<std::string>(jt, "rel", where));
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw InputError(where + ": triples must cover every event pair");
    }
    r.stats.support = field<std::size_t>(j, "support", where);
    r.stats.rel_support = field<double>(j, "rel_support", where);
    r.stats.confidence = field<double>(j, "confidence", where);
    out.push_back(std::move(r));
  }
  return out;
}

void write_graph_dot(std::ostream& out, const CorrelationGraph& g) {
  out << "graph correlation {\n";
  for (const auto& v : g.vertices) out << "  " << json(v).dump() << ";\n";
  for (const auto& e : g.edges) {
    out << "  " << json(e.a).dump() << " -- " << json(e.b).dump() << " [label=\""
        << fixed6(std::max(e.nmi_ab, e.nmi_ba)) << "\", nmi_ab=" << fixed6(e.nmi_ab)
        << ", nmi_ba=" << fixed6(e.nmi_ba) << ", mu=" << fixed6(e.mu) << "];\n";
  }
  out << "}\n";
}

void write_graph_json(std::ostream& out, const CorrelationGraph& g) {
  json j;
  j["vertices"] = g.vertices;
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    j["edges"].push_back(
        {{"a", e.a}, {"b", e.b}, {"nmi_ab", e.nmi_ab}, {"nmi_ba", e.nmi_ba}, {"mu", e.mu}});
  }
  j["warnings"] = g.warnings;
  out << j.dump(2) << '\n';
}

GeneratorSpec read_generator_spec(std::istream& in, const std::string& source) {
  const json j = parse_json(in, source);
  GeneratorSpec spec;
  if (!j.is_object()) throw InputError(source + ": generator spec must be an object");
  if (j.contains("seed")) spec.seed = field<std::uint64_t>(j, "seed", source);
  if (j.contains("n_vars")) spec.n_vars = field<std::size_t>(j, "n_vars", source);
  if (j.contains("grid_len")) spec.grid_len = field<std::size_t>(j, "grid_len", source);
  if (j.contains("alphabet")) {
    const auto& a = j.at("alphabet");
    if (a.is_array() && !a.empty() && a.front().is_string()) {
      spec.alphabet = {field<std::vector<std::string>>(j, "alphabet", source)};
    } else {
      spec.alphabet = field<std::vector<std::vector<std::string>>>(j, "alphabet", source);
    }
  }
  if (j.contains("run_p")) {
    if (j.at("run_p").is_number()) {
      spec.run_p = {field<double>(j, "run_p", source)};
    } else {
      spec.run_p = field<std::vector<double>>(j, "run_p", source);
    }
  }
  if (j.contains("names")) spec.names = field<std::vector<std::string>>(j, "names", source);
  if (j.contains("correlation_groups")) {
    for (const auto& jg : j.at("correlation_groups")) {
      CorrelationGroup g;
      g.members = field<std::vector<std::size_t>>(jg, "members", source);
      if (jg.contains("copy_probability")) {
        g.copy_probability = field<double>(jg, "copy_probability", source);
      }
      spec.correlation_groups.push_back(std::move(g));
    }
  }
  return spec;
}

void write_generator_spec(std::ostream& out, const GeneratorSpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["n_vars"] = spec.n_vars;
  j["grid_len"] = spec.grid_len;
  j["alphabet"] = spec.alphabet;
  j["run_p"] = spec.run_p;
  if (!spec.names.empty()) j["names"] = spec.names;
  j["correlation_groups"] = json::array();
  for (const auto& g : spec.correlation_groups) {
    j["correlation_groups"].push_back(
        {{"members", g.members}, {"copy_probability", g.copy_probability}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace tempo
