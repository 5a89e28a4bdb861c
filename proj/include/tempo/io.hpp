#ifndef TEMPO_IO_HPP
#define TEMPO_IO_HPP

// File formats: wide CSV (one timestamp column, one column per variable),
// the sequence-database JSON, JSON-lines pattern files and graph exports.
// Parse failures throw InputError prefixed with "source:line:".

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tempo/approx.hpp"
#include "tempo/core.hpp"
#include "tempo/synth.hpp"
#include "tempo/transform.hpp"

namespace tempo {

struct WideCsv {
  TimeGrid grid;
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> columns;  // columns[v][sample]
  std::vector<std::size_t> lines;                 // source line of each sample
  std::string source;

  std::size_t length() const noexcept { return lines.size(); }
};

/// Parses a timestamp: an integer (index ticks), HH:MM[:SS], or
/// YYYY-MM-DD[ T]HH:MM[:SS]. Returns seconds and the detected format.
/// Throws InputError.
std::pair<std::int64_t, TimeGrid::Format> parse_time(const std::string& text);

/// Header row mandatory. Timestamps must be strictly increasing on a uniform
/// step and share one format; empty cells are rejected.
WideCsv read_wide_csv(std::istream& in, const std::string& source = "<input>");

/// Per-variable mapping; variables without an entry use `fallback`. With a
/// passthrough mapper the cell text is taken verbatim as the symbol.
struct MapperSet {
  SymbolMapper fallback = SymbolMapper::passthrough();
  std::map<std::string, SymbolMapper> per_variable;

  const SymbolMapper& for_variable(const std::string& v) const;
};

SymbolicDatabase symbolize_csv(const WideCsv& csv, const MapperSet& mappers);

void write_symbolic_csv(std::ostream& out, const SymbolicDatabase& db);

void write_sequence_db(std::ostream& out, const SequenceDatabase& db);
SequenceDatabase read_sequence_db(std::istream& in, const std::string& source = "<input>");

struct PatternRecord {
  PatternIdentity identity;
  PatternStats stats;
};

/// One JSON object per line, floats fixed at 6 decimals.
void write_patterns(std::ostream& out, const std::vector<MinedPattern>& patterns,
                    const SequenceDatabase& db);
std::vector<PatternRecord> read_patterns(std::istream& in, const std::string& source = "<input>");

void write_graph_dot(std::ostream& out, const CorrelationGraph& g);
void write_graph_json(std::ostream& out, const CorrelationGraph& g);

GeneratorSpec read_generator_spec(std::istream& in, const std::string& source = "<input>");
void write_generator_spec(std::ostream& out, const GeneratorSpec& spec);

}  // namespace tempo

#endif  // TEMPO_IO_HPP
