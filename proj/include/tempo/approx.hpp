#ifndef TEMPO_APPROX_HPP
#define TEMPO_APPROX_HPP

// Mutual-information screening over the symbolic database and the
// approximate miner built on it.
//
// All logarithms are natural. Probabilities are sample relative frequencies
// over the shared grid.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempo/htpgm.hpp"
#include "tempo/transform.hpp"

namespace tempo {

struct JointDistribution {
  std::string x_var;
  std::string y_var;
  std::vector<std::string> x_symbols;  // sorted
  std::vector<std::string> y_symbols;  // sorted
  std::vector<double> p_x;
  std::vector<double> p_y;
  std::vector<std::vector<double>> p_xy;  // [x][y]

  double px(const std::string& symbol) const;  // 0 for an unseen symbol
  double py(const std::string& symbol) const;
  double pxy(const std::string& xs, const std::string& ys) const;
};

struct MiReport {
  double entropy_x = 0.0;
  double entropy_y = 0.0;
  double cond_entropy_x_given_y = 0.0;
  double mi = 0.0;
  double nmi_x_given_y = 0.0;  // I / H(X)
  double nmi_y_given_x = 0.0;  // I / H(Y)
};

/// Throws DomainError on an empty grid, InputError on an unknown variable.
JointDistribution estimate_joint(const SymbolicDatabase& db, const std::string& x_var,
                                 const std::string& y_var);

double entropy(const std::vector<double>& p);
double conditional_entropy_x_given_y(const JointDistribution& j);
double mutual_information(const JointDistribution& j);

/// (I/H(X), I/H(Y)). Throws DegenerateSeriesError when either entropy is 0.
std::pair<double, double> nmi(const JointDistribution& j);

/// Every field of MiReport; NMI directions with a zero normaliser are NaN.
MiReport mi_report(const JointDistribution& j);

inline constexpr double kMinMu = 1e-12;

/// NMI threshold at which a pair meeting sigma is guaranteed confidence
/// delta, clamped to [kMinMu, 1]. Throws DerivationError when lambda1 is 1
/// (or n_x < 2), DomainError on other out-of-range arguments.
double mu_for_pair(double sigma, double delta, std::size_t n_x, double lambda1, double lambda2);
double mu_for_pair_unclamped(double sigma, double delta, std::size_t n_x, double lambda1,
                             double lambda2);

/// Lower bound on pair confidence for NMI >= mu. Throws DomainError when
/// sigma = 1 and lambda2 > 0.
double conf_lower_bound(double sigma, double mu, std::size_t n_x, double lambda1, double lambda2);

/// n_x, lambda1 and lambda2 for the event pair (x_symbol, y_symbol) taken as
/// the designated pair. lambda2 is the joint mass of the cell (m, n),
/// m != x, n != y, with the smallest p(X_m | Y_n), ties to the smallest mass;
/// 0 when no such cell exists.
struct BoundParameters {
  std::size_t n_x = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};
BoundParameters bound_parameters(const JointDistribution& j, std::size_t x_index,
                                 std::size_t y_index);

struct CorrelationConfig {
  std::optional<double> mu_override;
  double sigma = 0.5;
  double delta = 0.5;

  void validate() const;  // throws ConfigError
  static CorrelationConfig from(const MiningConfig& cfg, std::optional<double> mu = {}) {
    return {mu, cfg.sigma, cfg.delta};
  }
};

/// Minimum of mu_for_pair over every event pair of (x_var, y_var).
double mu_for_series_pair(const SymbolicDatabase& db, const std::string& x_var,
                          const std::string& y_var, const CorrelationConfig& cfg);

struct CorrelationEdge {
  std::string a;
  std::string b;
  double nmi_ab = 0.0;
  double nmi_ba = 0.0;
  double mu = 0.0;
};

struct CorrelationGraph {
  std::vector<std::string> vertices;  // series with at least one edge, sorted
  std::vector<CorrelationEdge> edges;  // a < b, sorted
  std::vector<std::string> warnings;

  bool has_vertex(const std::string& v) const;
  bool has_edge(const std::string& a, const std::string& b) const;
};

/// Edge iff max(NMI(a;b), NMI(b;a)) >= mu for the pair. Series with zero
/// entropy are skipped with a warning; pairs whose mu cannot be derived are
/// left unconnected with a warning.
CorrelationGraph build_correlation_graph(const SymbolicDatabase& db, const CorrelationConfig& cfg,
                                         int threads = 1);

struct ApproxResult {
  MiningResult mining;
  CorrelationGraph graph;
};

/// Mines only events of connected series; event pairs must share a series
/// or an edge, at level 2 and in every longer pattern.
ApproxResult a_htpgm(const SymbolicDatabase& ts_db, const SequenceDatabase& seq_db,
                     const MiningConfig& cfg, const CorrelationConfig& ccfg);

/// Fraction of grid samples at which both symbols hold.
double syb_pair_support(const SymbolicDatabase& db, const EventId& a, const EventId& b);

}  // namespace tempo

#endif  // TEMPO_APPROX_HPP
