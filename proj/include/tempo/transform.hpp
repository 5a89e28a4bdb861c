#ifndef TEMPO_TRANSFORM_HPP
#define TEMPO_TRANSFORM_HPP

// Raw time series -> symbolic series -> temporal sequence database.

#include <string>
#include <vector>

#include "tempo/core.hpp"

namespace tempo {

struct TimeSeries {
  std::string variable;
  std::vector<Tick> times;  // strictly increasing, uniform step
  std::vector<double> values;
};

/// Value -> symbol mapping for one variable.
///
/// threshold:   cuts c_0 < c_1 < ... and labels l_0..l_n; v maps to l_i where
///              i is the number of cuts <= v (so {Off, On} with cut 0.5 gives
///              On for v >= 0.5).
/// quantile:    cuts fitted from the series' empirical quantiles.
/// passthrough: the symbol is the value's shortest decimal rendering.
class SymbolMapper {
 public:
  enum class Kind { Threshold, Quantile, Passthrough };

  static SymbolMapper threshold(std::vector<double> cuts, std::vector<std::string> labels);
  static SymbolMapper quantile(std::size_t bins, std::vector<std::string> labels = {});
  static SymbolMapper passthrough();

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& cuts() const noexcept { return cuts_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t bins() const noexcept { return bins_; }

  // A quantile mapper resolved into a threshold mapper for these values.
  SymbolMapper fitted(const std::vector<double>& values) const;
  // Throws InputError for NaN/inf or an unfitted quantile mapper.
  std::string map(double value) const;

 private:
  Kind kind_ = Kind::Passthrough;
  std::vector<double> cuts_;
  std::vector<std::string> labels_;
  std::size_t bins_ = 0;
};

struct SymbolicSeries {
  std::string variable;
  std::vector<Tick> times;
  std::vector<std::string> symbols;
};

/// Symbolic series sharing one time grid. Ticks are sample indices
/// 0..length-1; `grid` maps them back to wall-clock labels.
class SymbolicDatabase {
 public:
  SymbolicDatabase() = default;
  // Throws InputError if series disagree on timestamps or are not on a
  // unit-step grid, or if a variable name repeats.
  SymbolicDatabase(std::vector<SymbolicSeries> series, TimeGrid grid = {});

  std::size_t length() const noexcept { return length_; }
  const std::vector<SymbolicSeries>& series() const noexcept { return series_; }
  const SymbolicSeries& series(std::size_t i) const { return series_[i]; }
  const SymbolicSeries& find(const std::string& variable) const;  // throws InputError
  const TimeGrid& grid() const noexcept { return grid_; }
  std::vector<std::string> variables() const;

 private:
  std::vector<SymbolicSeries> series_;
  TimeGrid grid_;
  std::size_t length_ = 0;
};

struct SplitConfig {
  Tick window_len = 2;  // grid units
  Tick overlap = 0;     // t_ov

  void validate() const;  // throws ConfigError
};

/// Throws InputError on a non-uniform grid or an unmappable value.
SymbolicSeries symbolize(const TimeSeries& ts, const SymbolMapper& mapper);

/// Merges runs of identical symbols. A run of n samples starting at t maps to
/// the half-open interval [t, t + n*step). Events are ordered by symbol.
std::vector<TemporalEvent> extract_events(const SymbolicSeries& s);

/// Inverse of extract_events over the series' grid.
SymbolicSeries expand_events(const std::string& variable, const std::vector<TemporalEvent>& events,
                             Tick first, Tick step, std::size_t samples);

/// Windows start at tick 0 and advance by window_len - overlap. The last
/// window may be shorter; it is kept when it holds at least two samples.
/// Instances are clipped to their window and fragments shorter than
/// 2*epsilon + 1 are dropped.
SequenceDatabase split_sequences(const SymbolicDatabase& db, const SplitConfig& cfg,
                                 Tick epsilon = 0);

/// Window boundaries split_sequences would use for `length` samples.
std::vector<Interval> split_windows(std::size_t length, const SplitConfig& cfg);

}  // namespace tempo

#endif  // TEMPO_TRANSFORM_HPP
