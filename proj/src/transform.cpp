#include "tempo/transform.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "tempo/error.hpp"

namespace tempo {

SymbolMapper SymbolMapper::threshold(std::vector<double> cuts, std::vector<std::string> labels) {
  if (labels.size() != cuts.size() + 1) {
    throw ConfigError("threshold mapper needs exactly one more label than cuts");
  }
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i - 1] < cuts[i])) throw ConfigError("threshold cuts must be strictly increasing");
  }
  for (double c : cuts) {
    if (!std::isfinite(c)) throw ConfigError("threshold cuts must be finite");
  }
  SymbolMapper m;
  m.kind_ = Kind::Threshold;
  m.cuts_ = std::move(cuts);
  m.labels_ = std::move(labels);
  return m;
}

SymbolMapper SymbolMapper::quantile(std::size_t bins, std::vector<std::string> labels) {
  if (bins == 0) throw ConfigError("quantile mapper needs at least one bin");
  if (labels.empty()) {
    for (std::size_t i = 0; i < bins; ++i) labels.push_back("q" + std::to_string(i));
  }
  if (labels.size() != bins) throw ConfigError("quantile mapper needs one label per bin");
  SymbolMapper m;
  m.kind_ = Kind::Quantile;
  m.bins_ = bins;
  m.labels_ = std::move(labels);
  return m;
}

SymbolMapper SymbolMapper::passthrough() { return SymbolMapper{}; }

SymbolMapper SymbolMapper::fitted(const std::vector<double>& values) const {
  if (kind_ != Kind::Quantile) return *this;
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("cannot fit quantiles over non-finite values");
    sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  SymbolMapper m;
  m.kind_ = Kind::Threshold;
  m.labels_ = labels_;
  if (sorted.empty()) {
    m.labels_.resize(1);
    return m;
  }
  for (std::size_t k = 1; k < bins_; ++k) {
    m.cuts_.push_back(sorted[std::min(sorted.size() - 1, k * sorted.size() / bins_)]);
  }
  return m;
}

std::string SymbolMapper::map(double value) const {
  if (!std::isfinite(value)) throw InputError("value is not finite and cannot be symbolized");
  switch (kind_) {
    case Kind::Threshold: {
      const auto idx = std::upper_bound(cuts_.begin(), cuts_.end(), value) - cuts_.begin();
      return labels_[static_cast<std::size_t>(idx)];
    }
    case Kind::Quantile:
      throw InputError("quantile mapper must be fitted before mapping values");
    case Kind::Passthrough: {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, value);
      return std::string(buf, res.ptr);
    }
  }
  return {};
}

namespace {

void check_uniform(const std::vector<Tick>& times, const std::string& variable) {
  if (times.size() < 2) return;
  const Tick step = times[1] - times[0];
  if (step <= 0) throw InputError("series " + variable + ": timestamps must strictly increase");
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (times[i] - times[i - 1] != step) {
      throw InputError("series " + variable + ": non-uniform grid at sample " + std::to_string(i));
    }
  }
}

}  // namespace

SymbolicSeries symbolize(const TimeSeries& ts, const SymbolMapper& mapper) {
  if (ts.times.size() != ts.values.size()) {
    throw InputError("series " + ts.variable + ": times and values differ in length");
  }
  check_uniform(ts.times, ts.variable);
  const SymbolMapper m = mapper.fitted(ts.values);
  SymbolicSeries out{ts.variable, ts.times, {}};
  out.symbols.reserve(ts.values.size());
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    try {
      out.symbols.push_back(m.map(ts.values[i]));
    } catch (const InputError& e) {
      throw InputError("series " + ts.variable + ", sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

SymbolicDatabase::SymbolicDatabase(std::vector<SymbolicSeries> series, TimeGrid grid)
    : series_(std::move(series)), grid_(grid) {
  std::set<std::string> names;
  for (const auto& s : series_) {
    if (!names.insert(s.variable).second) throw InputError("duplicate variable " + s.variable);
    if (s.times.size() != s.symbols.size()) {
      throw InputError("series " + s.variable + ": times and symbols differ in length");
    }
    for (std::size_t i = 0; i < s.symbols.size(); ++i) {
      if (s.symbols[i].empty()) {
        throw InputError("series " + s.variable + ": missing value at sample " + std::to_string(i));
      }
    }
  }
  if (series_.empty()) return;
  const auto& ref = series_.front().times;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i] != static_cast<Tick>(i)) {
      throw InputError("symbolic database expects sample-index ticks 0..n-1");
    }
  }
  for (const auto& s : series_) {
    if (s.times != ref) throw InputError("series " + s.variable + " is not on the shared grid");
  }
  length_ = ref.size();
}

const SymbolicSeries& SymbolicDatabase::find(const std::string& variable) const {
  for (const auto& s : series_) {
    if (s.variable == variable) return s;
  }
  throw InputError("unknown variable " + variable);
}

std::vector<std::string> SymbolicDatabase::variables() const {
  std::vector<std::string> out;
  for (const auto& s : series_) out.push_back(s.variable);
  return out;
}

void SplitConfig::validate() const {
  if (window_len < 2) throw ConfigError("window must span at least 2 samples");
  if (overlap < 0) throw ConfigError("overlap must be non-negative");
  if (overlap >= window_len) throw ConfigError("overlap must be shorter than the window");
}

namespace {

Tick grid_step(const std::vector<Tick>& times) {
  return times.size() >= 2 ? times[1] - times[0] : 1;
}

// Runs over samples [from, to) of the series.
std::vector<TemporalEvent> runs(const SymbolicSeries& s, std::size_t from, std::size_t to) {
  std::vector<TemporalEvent> events;
  const Tick step = grid_step(s.times);
  auto slot = [&](const std::string& symbol) -> TemporalEvent& {
    auto it = std::lower_bound(events.begin(), events.end(), symbol,
                               [](const TemporalEvent& e, const std::string& sym) {
                                 return e.event.symbol < sym;
                               });
    if (it == events.end() || it->event.symbol != symbol) {
      it = events.insert(it, TemporalEvent{{s.variable, symbol}, {}});
    }
    return *it;
  };
  std::size_t i = from;
  while (i < to) {
    std::size_t j = i + 1;
    while (j < to && s.symbols[j] == s.symbols[i]) ++j;
    slot(s.symbols[i]).intervals.push_back({s.times[i], s.times[j - 1] + step});
    i = j;
  }
  return events;
}

}  // namespace

std::vector<TemporalEvent> extract_events(const SymbolicSeries& s) {
  return runs(s, 0, s.symbols.size());
}

SymbolicSeries expand_events(const std::string& variable, const std::vector<TemporalEvent>& events,
                             Tick first, Tick step, std::size_t samples) {
  SymbolicSeries out;
  out.variable = variable;
  out.times.resize(samples);
  out.symbols.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) out.times[i] = first + static_cast<Tick>(i) * step;
  for (const auto& e : events) {
    for (const auto& iv : e.intervals) {
      for (Tick t = iv.start; t < iv.end; t += step) {
        out.symbols[static_cast<std::size_t>((t - first) / step)] = e.event.symbol;
      }
    }
  }
  return out;
}

std::vector<Interval> split_windows(std::size_t length, const SplitConfig& cfg) {
  cfg.validate();
  std::vector<Interval> windows;
  if (length == 0) return windows;
  const auto n = static_cast<Tick>(length);
  const Tick stride = cfg.window_len - cfg.overlap;
  for (Tick s = 0;; s += stride) {
    const Tick e = std::min(s + cfg.window_len, n);
    if (e - s >= 2 || windows.empty()) windows.push_back({s, e});
    if (e == n) break;
  }
  return windows;
}

SequenceDatabase split_sequences(const SymbolicDatabase& db, const SplitConfig& cfg, Tick epsilon) {
  if (epsilon < 0) throw ConfigError("epsilon must be non-negative");
  const auto windows = split_windows(db.length(), cfg);
  std::vector<RawSequence> raw;
  raw.reserve(windows.size());
  for (const auto& w : windows) {
    RawSequence seq{w, {}};
    for (const auto& s : db.series()) {
      for (auto& ev : runs(s, static_cast<std::size_t>(w.start), static_cast<std::size_t>(w.end))) {
        for (const auto& iv : ev.intervals) {
          if (iv.duration() > 2 * epsilon) seq.instances.push_back({ev.event, iv});
        }
      }
    }
    raw.push_back(std::move(seq));
  }
  return SequenceDatabase(std::move(raw), db.grid());
}

}  // namespace tempo
