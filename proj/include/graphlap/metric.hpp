#ifndef GRAPHLAP_METRIC_HPP
#define GRAPHLAP_METRIC_HPP

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphlap/graph.hpp"

namespace graphlap {

/// Positive edge lengths sigma, one entry per unordered edge (stored u < v).
struct EdgeLength {
    std::map<std::pair<std::size_t, std::size_t>, double> sigma;

    double at(std::size_t x, std::size_t y) const;
    static EdgeLength constant(const WeightedGraph& g, double value);
};

/// Pseudo metric materialized as a full distance table; +inf across
/// components. Table-kind inputs are validated (symmetry, zero diagonal,
/// triangle inequality); path/embedding kinds satisfy these by construction.
struct PseudoMetric {
    enum class Kind { Table, Path, Embedding };
    Kind kind;
    Eigen::MatrixXd dist;

    double operator()(std::size_t x, std::size_t y) const {
        return dist(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
    std::size_t size() const { return static_cast<std::size_t>(dist.rows()); }

    static PseudoMetric from_table(const Eigen::MatrixXd& table);
};

/// All-pairs shortest path with edge costs sigma (Dijkstra per source).
PseudoMetric path_metric(const WeightedGraph& g, const EdgeLength& sigma);

/// sigma_H(x,y) = min(mu(x)/deg(x), mu(y)/deg(y))^(1/2).
EdgeLength huang_sigma(const MeasuredGraph& mg);

/// mu(x) - sum_y b(x,y) sigma(x,y)^2; nonnegative everywhere iff the path
/// metric of sigma is strongly intrinsic.
Eigen::VectorXd strongly_intrinsic_slack(const MeasuredGraph& mg, const EdgeLength& sigma);

/// mu(x) - sum_y b(x,y) rho(x,y)^2.
Eigen::VectorXd intrinsic_slack(const MeasuredGraph& mg, const PseudoMetric& rho);

struct EmbeddingResult {
    PseudoMetric metric; ///< d_iota(x,y) = |iota(x) - iota(y)|
    Eigen::VectorXd mu_iota;
    std::vector<std::string> warnings; ///< image collisions (non-injective iota)
};

EmbeddingResult embedding_metric(const WeightedGraph& g,
                                 const std::vector<Eigen::VectorXd>& iota);

struct BallResult {
    std::vector<std::size_t> members;
    /// True when the ball exhausts the loaded finite section; finiteness on an
    /// infinite host is not decidable from the truncation.
    bool saturated;
};

BallResult ball(const PseudoMetric& rho, std::size_t o, double r);

/// Distance from each vertex image to the nearest listed boundary point;
/// +inf everywhere when the list is empty.
Eigen::VectorXd boundary_distance(const std::vector<Eigen::VectorXd>& iota,
                                  const std::vector<Eigen::VectorXd>& boundary);

/// Explicit distance-to-boundary table, validated nonnegative.
Eigen::VectorXd boundary_distance_table(const Eigen::VectorXd& table);

/// w_min(x) - 1/(2 D(x)^2) - V_ref(x), with 1/(2 inf^2) = 0.
Eigen::VectorXd metric_criterion_slack(const Eigen::VectorXd& w_min_values,
                                       const Eigen::VectorXd& D, const Eigen::VectorXd& V_ref);

struct FunctionMetricResult {
    PseudoMetric metric; ///< d_f(x,y) = |f(x) - f(y)|
    Eigen::VectorXd mu_f;
    double total_mass; ///< mu_f(X)
    double two_q0;     ///< 2 Q_0(f); equals total_mass on finite graphs
};

FunctionMetricResult intrinsic_from_function(const WeightedGraph& g, const Eigen::VectorXd& f);

} // namespace graphlap

#endif
