#include "tempo/approx.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>

#include "tempo/error.hpp"

namespace tempo {

namespace {

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& s) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
  if (it == sorted.end() || *it != s) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

std::vector<std::string> alphabet(const SymbolicSeries& s) {
  std::vector<std::string> out = s.symbols;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double JointDistribution::px(const std::string& symbol) const {
  const auto i = index_of(x_symbols, symbol);
  return i < p_x.size() ? p_x[i] : 0.0;
}

double JointDistribution::py(const std::string& symbol) const {
  const auto i = index_of(y_symbols, symbol);
  return i < p_y.size() ? p_y[i] : 0.0;
}

double JointDistribution::pxy(const std::string& xs, const std::string& ys) const {
  const auto i = index_of(x_symbols, xs);
  const auto k = index_of(y_symbols, ys);
  return i < p_x.size() && k < p_y.size() ? p_xy[i][k] : 0.0;
}

JointDistribution estimate_joint(const SymbolicDatabase& db, const std::string& x_var,
                                 const std::string& y_var) {
  const auto& x = db.find(x_var);
  const auto& y = db.find(y_var);
  if (db.length() == 0) throw DomainError("cannot estimate probabilities over an empty grid");
  JointDistribution j;
  j.x_var = x_var;
  j.y_var = y_var;
  j.x_symbols = alphabet(x);
  j.y_symbols = alphabet(y);
  j.p_x.assign(j.x_symbols.size(), 0.0);
  j.p_y.assign(j.y_symbols.size(), 0.0);
  j.p_xy.assign(j.x_symbols.size(), std::vector<double>(j.y_symbols.size(), 0.0));
  std::vector<std::vector<std::size_t>> counts(j.x_symbols.size(),
                                               std::vector<std::size_t>(j.y_symbols.size(), 0));
  for (std::size_t t = 0; t < db.length(); ++t) {
    ++counts[index_of(j.x_symbols, x.symbols[t])][index_of(j.y_symbols, y.symbols[t])];
  }
  const double n = static_cast<double>(db.length());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    std::size_t row = 0;
    for (std::size_t b = 0; b < counts[a].size(); ++b) {
      j.p_xy[a][b] = static_cast<double>(counts[a][b]) / n;
      row += counts[a][b];
    }
    j.p_x[a] = static_cast<double>(row) / n;
  }
  for (std::size_t b = 0; b < j.y_symbols.size(); ++b) {
    std::size_t col = 0;
    for (std::size_t a = 0; a < counts.size(); ++a) col += counts[a][b];
    j.p_y[b] = static_cast<double>(col) / n;
  }
  return j;
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double conditional_entropy_x_given_y(const JointDistribution& j) {
  double h = 0.0;
  for (std::size_t a = 0; a < j.p_x.size(); ++a) {
    for (std::size_t b = 0; b < j.p_y.size(); ++b) {
      const double pab = j.p_xy[a][b];
      if (pab > 0.0 && j.p_y[b] > 0.0) h -= pab * std::log(pab / j.p_y[b]);
    }
  }
  return h;
}

double mutual_information(const JointDistribution& j) {
  double mi = 0.0;
  for (std::size_t a = 0; a < j.p_x.size(); ++a) {
    for (std::size_t b = 0; b < j.p_y.size(); ++b) {
      const double pab = j.p_xy[a][b];
      if (pab > 0.0) mi += pab * std::log(pab / (j.p_x[a] * j.p_y[b]));
    }
  }
  return std::max(0.0, mi);
}

std::pair<double, double> nmi(const JointDistribution& j) {
  const double hx = entropy(j.p_x);
  const double hy = entropy(j.p_y);
  if (hx <= 0.0) throw DegenerateSeriesError("series " + j.x_var + " has zero entropy");
  if (hy <= 0.0) throw DegenerateSeriesError("series " + j.y_var + " has zero entropy");
  const double mi = mutual_information(j);
  return {std::min(1.0, mi / hx), std::min(1.0, mi / hy)};
}

MiReport mi_report(const JointDistribution& j) {
  MiReport r;
  r.entropy_x = entropy(j.p_x);
  r.entropy_y = entropy(j.p_y);
  r.cond_entropy_x_given_y = conditional_entropy_x_given_y(j);
  r.mi = mutual_information(j);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.nmi_x_given_y = r.entropy_x > 0.0 ? std::min(1.0, r.mi / r.entropy_x) : nan;
  r.nmi_y_given_x = r.entropy_y > 0.0 ? std::min(1.0, r.mi / r.entropy_y) : nan;
  return r;
}

namespace {

void check_bound_args(double sigma, std::size_t n_x, double lambda1, double lambda2) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  if (n_x < 2) throw DerivationError("a series needs at least two symbols");
  if (lambda1 >= 1.0) throw DerivationError("lambda1 = 1 leaves the logarithm base degenerate");
  if (!(lambda1 > 0.0)) throw DomainError("lambda1 must lie in (0, 1)");
  if (!(lambda2 >= 0.0 && lambda2 < 1.0)) throw DomainError("lambda2 must lie in [0, 1)");
  if (sigma == 1.0 && lambda2 > 0.0) throw DomainError("sigma = 1 requires lambda2 = 0");
}

// ((1 - sigma) / (n_x - 1))^(lambda2 / sigma), with 0^0 = 1.
double correction(double sigma, std::size_t n_x, double lambda2) {
  if (lambda2 == 0.0) return 1.0;
  return std::pow((1.0 - sigma) / static_cast<double>(n_x - 1), lambda2 / sigma);
}

}  // namespace

double mu_for_pair_unclamped(double sigma, double delta, std::size_t n_x, double lambda1,
                             double lambda2) {
  check_bound_args(sigma, n_x, lambda1, lambda2);
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  const double arg = (delta / sigma) * correction(sigma, n_x, lambda2);
  return 1.0 - sigma * std::log(arg) / std::log(lambda1);
}

double mu_for_pair(double sigma, double delta, std::size_t n_x, double lambda1, double lambda2) {
  return std::clamp(mu_for_pair_unclamped(sigma, delta, n_x, lambda1, lambda2), kMinMu, 1.0);
}

double conf_lower_bound(double sigma, double mu, std::size_t n_x, double lambda1,
                        double lambda2) {
  check_bound_args(sigma, n_x, lambda1, lambda2);
  const double inv = lambda2 == 0.0
                         ? 1.0
                         : std::pow(static_cast<double>(n_x - 1) / (1.0 - sigma), lambda2 / sigma);
  return sigma * std::pow(lambda1, (1.0 - mu) / sigma) * inv;
}

BoundParameters bound_parameters(const JointDistribution& j, std::size_t x_index,
                                 std::size_t y_index) {
  BoundParameters bp;
  bp.n_x = j.p_x.size();
  bp.lambda1 = j.p_x.empty() ? 0.0 : *std::min_element(j.p_x.begin(), j.p_x.end());
  double best_cond = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < j.p_x.size(); ++m) {
    if (m == x_index) continue;
    for (std::size_t n = 0; n < j.p_y.size(); ++n) {
      if (n == y_index || j.p_y[n] <= 0.0) continue;
      const double mass = j.p_xy[m][n];
      const double cond = mass / j.p_y[n];
      if (cond < best_cond || (cond == best_cond && mass < bp.lambda2)) {
        best_cond = cond;
        bp.lambda2 = mass;
      }
    }
  }
  return bp;
}

void CorrelationConfig::validate() const {
  if (mu_override && !(*mu_override > 0.0 && *mu_override <= 1.0)) {
    throw ConfigError("mu override must lie in (0, 1]");
  }
  if (!(sigma > 0.0 && sigma <= 1.0)) throw ConfigError("sigma must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
}

double mu_for_series_pair(const SymbolicDatabase& db, const std::string& x_var,
                          const std::string& y_var, const CorrelationConfig& cfg) {
  const auto j = estimate_joint(db, x_var, y_var);
  double mu = 1.0;
  for (std::size_t a = 0; a < j.p_x.size(); ++a) {
    for (std::size_t b = 0; b < j.p_y.size(); ++b) {
      const auto bp = bound_parameters(j, a, b);
      mu = std::min(mu, mu_for_pair(cfg.sigma, cfg.delta, bp.n_x, bp.lambda1, bp.lambda2));
    }
  }
  return mu;
}

bool CorrelationGraph::has_vertex(const std::string& v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool CorrelationGraph::has_edge(const std::string& a, const std::string& b) const {
  const auto& lo = std::min(a, b);
  const auto& hi = std::max(a, b);
  return std::binary_search(edges.begin(), edges.end(), CorrelationEdge{lo, hi},
                            [](const CorrelationEdge& l, const CorrelationEdge& r) {
                              return std::tie(l.a, l.b) < std::tie(r.a, r.b);
                            });
}

CorrelationGraph build_correlation_graph(const SymbolicDatabase& db, const CorrelationConfig& cfg,
                                         int threads) {
  cfg.validate();
  CorrelationGraph g;
  std::vector<std::string> names = db.variables();
  std::sort(names.begin(), names.end());

  std::vector<std::string> usable;
  for (const auto& v : names) {
    if (db.length() == 0 || entropy(estimate_joint(db, v, v).p_x) <= 0.0) {
      g.warnings.push_back("series " + v + " has zero entropy and is excluded");
    } else {
      usable.push_back(v);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < usable.size(); ++a) {
    for (std::size_t b = a + 1; b < usable.size(); ++b) pairs.emplace_back(a, b);
  }
  struct Outcome {
    std::optional<CorrelationEdge> edge;
    std::string warning;
    std::exception_ptr error;
  };
  std::vector<Outcome> out(pairs.size());
  const auto n = static_cast<long>(pairs.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (long i = 0; i < n; ++i) {
    auto& o = out[static_cast<std::size_t>(i)];
    const auto& a = usable[pairs[static_cast<std::size_t>(i)].first];
    const auto& b = usable[pairs[static_cast<std::size_t>(i)].second];
    try {
      const auto j = estimate_joint(db, a, b);
      const auto [ab, ba] = nmi(j);
      double mu = 0.0;
      if (cfg.mu_override) {
        mu = *cfg.mu_override;
      } else {
        try {
          mu = mu_for_series_pair(db, a, b, cfg);
        } catch (const DomainError& e) {
          o.warning = "pair (" + a + ", " + b + "): " + e.what();
          continue;
        }
      }
      if (std::max(ab, ba) >= mu) o.edge = CorrelationEdge{a, b, ab, ba, mu};
    } catch (...) {
      o.error = std::current_exception();
    }
  }
  for (auto& o : out) {
    if (o.error) std::rethrow_exception(o.error);
    if (!o.warning.empty()) g.warnings.push_back(std::move(o.warning));
    if (o.edge) {
      g.vertices.push_back(o.edge->a);
      g.vertices.push_back(o.edge->b);
      g.edges.push_back(std::move(*o.edge));
    }
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  return g;
}

ApproxResult a_htpgm(const SymbolicDatabase& ts_db, const SequenceDatabase& seq_db,
                     const MiningConfig& cfg, const CorrelationConfig& ccfg) {
  cfg.validate();
  ApproxResult r;
  r.graph = build_correlation_graph(ts_db, ccfg, cfg.threads);
  if (r.graph.edges.empty()) r.graph.warnings.push_back("correlation graph is empty");

  const auto& events = seq_db.events();
  std::vector<bool> connected(events.size());
  for (std::size_t c = 0; c < events.size(); ++c) {
    connected[c] = r.graph.has_vertex(events[c].variable);
  }
  std::vector<std::vector<bool>> admit(events.size(), std::vector<bool>(events.size()));
  for (std::size_t a = 0; a < events.size(); ++a) {
    for (std::size_t b = 0; b < events.size(); ++b) {
      admit[a][b] = events[a].variable == events[b].variable ||
                    r.graph.has_edge(events[a].variable, events[b].variable);
    }
  }
  Screening screen;
  screen.admit_event = [&](EventCode c) { return static_cast<bool>(connected[c]); };
  screen.admit_pair = [&](EventCode a, EventCode b) { return static_cast<bool>(admit[a][b]); };
  r.mining = htpgm(seq_db, cfg, screen);
  return r;
}

double syb_pair_support(const SymbolicDatabase& db, const EventId& a, const EventId& b) {
  if (db.length() == 0) throw DomainError("cannot measure support over an empty grid");
  const auto& x = db.find(a.variable);
  const auto& y = db.find(b.variable);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < db.length(); ++t) {
    if (x.symbols[t] == a.symbol && y.symbols[t] == b.symbol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(db.length());
}

}  // namespace tempo
