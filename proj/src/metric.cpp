#include "graphlap/metric.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace graphlap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMetricTol = 1e-12;

std::pair<std::size_t, std::size_t> ordered(std::size_t x, std::size_t y) {
    return x < y ? std::pair{x, y} : std::pair{y, x};
}
} // namespace

double EdgeLength::at(std::size_t x, std::size_t y) const {
    auto it = sigma.find(ordered(x, y));
    if (it == sigma.end())
        throw Error(ErrorCode::SigmaEdgeMismatch,
                    "no sigma for pair " + std::to_string(x) + "," + std::to_string(y));
    return it->second;
}

EdgeLength EdgeLength::constant(const WeightedGraph& g, double value) {
    EdgeLength out;
    for (const auto& e : g.edges()) out.sigma[{e.u, e.v}] = value;
    return out;
}

PseudoMetric PseudoMetric::from_table(const Eigen::MatrixXd& table) {
    const Eigen::Index n = table.rows();
    if (table.cols() != n) throw Error(ErrorCode::ValidationFailure, "distance table not square");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (table(i, i) != 0.0)
            throw Error(ErrorCode::ValidationFailure, "nonzero diagonal in distance table");
        for (Eigen::Index j = 0; j < n; ++j) {
            if (table(i, j) < 0.0)
                throw Error(ErrorCode::NegativeDistance, "negative distance in table");
            if (std::abs(table(i, j) - table(j, i)) > kMetricTol)
                throw Error(ErrorCode::ValidationFailure, "asymmetric distance table");
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                if (table(i, j) > table(i, k) + table(k, j) + kMetricTol)
                    throw Error(ErrorCode::ValidationFailure, "triangle inequality violated");
    return {Kind::Table, table};
}

PseudoMetric path_metric(const WeightedGraph& g, const EdgeLength& sigma) {
    const auto n = static_cast<Eigen::Index>(g.size());
    // sigma must live exactly on the edge set, positively
    for (const auto& [key, value] : sigma.sigma) {
        if (!g.adjacent(key.first, key.second) || value <= 0.0)
            throw Error(ErrorCode::SigmaEdgeMismatch,
                        "sigma entry off the edge set or nonpositive at " +
                            std::to_string(key.first) + "," + std::to_string(key.second));
    }
    for (const auto& e : g.edges())
        if (sigma.sigma.find({e.u, e.v}) == sigma.sigma.end())
            throw Error(ErrorCode::SigmaEdgeMismatch,
                        "missing sigma for edge " + std::to_string(e.u) + "," +
                            std::to_string(e.v));

    Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, kInf);
    for (std::size_t src = 0; src < g.size(); ++src) {
        auto row = dist.row(static_cast<Eigen::Index>(src));
        std::priority_queue<std::pair<double, std::size_t>,
                            std::vector<std::pair<double, std::size_t>>, std::greater<>>
            heap;
        row[static_cast<Eigen::Index>(src)] = 0.0;
        heap.push({0.0, src});
        while (!heap.empty()) {
            auto [d, x] = heap.top();
            heap.pop();
            if (d > row[static_cast<Eigen::Index>(x)]) continue;
            for (const auto& [y, b] : g.neighbors(x)) {
                (void)b;
                double cand = d + sigma.at(x, y);
                if (cand < row[static_cast<Eigen::Index>(y)]) {
                    row[static_cast<Eigen::Index>(y)] = cand;
                    heap.push({cand, y});
                }
            }
        }
    }
    return {PseudoMetric::Kind::Path, dist};
}

EdgeLength huang_sigma(const MeasuredGraph& mg) {
    EdgeLength out;
    for (const auto& e : mg.graph.edges()) {
        double du = mg.graph.degree(e.u);
        double dv = mg.graph.degree(e.v);
        if (du <= 0.0 || dv <= 0.0)
            throw Error(ErrorCode::IsolatedEndpoint, "zero degree at an edge endpoint");
        out.sigma[{e.u, e.v}] = std::sqrt(std::min(mg.mu[e.u] / du, mg.mu[e.v] / dv));
    }
    return out;
}

Eigen::VectorXd strongly_intrinsic_slack(const MeasuredGraph& mg, const EdgeLength& sigma) {
    Eigen::VectorXd slack = mg.mu;
    for (const auto& e : mg.graph.edges()) {
        double s = sigma.at(e.u, e.v);
        slack[e.u] -= e.weight * s * s;
        slack[e.v] -= e.weight * s * s;
    }
    return slack;
}

Eigen::VectorXd intrinsic_slack(const MeasuredGraph& mg, const PseudoMetric& rho) {
    if (rho.size() != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "metric size vs graph");
    Eigen::VectorXd slack = mg.mu;
    for (const auto& e : mg.graph.edges()) {
        double d = rho(e.u, e.v);
        slack[e.u] -= e.weight * d * d;
        slack[e.v] -= e.weight * d * d;
    }
    return slack;
}

EmbeddingResult embedding_metric(const WeightedGraph& g,
                                 const std::vector<Eigen::VectorXd>& iota) {
    if (iota.size() != g.size())
        throw Error(ErrorCode::MissingCoordinate, "iota not defined on every vertex");
    for (std::size_t x = 1; x < iota.size(); ++x)
        if (iota[x].size() != iota[0].size())
            throw Error(ErrorCode::MissingCoordinate, "inconsistent embedding dimension");

    const auto n = static_cast<Eigen::Index>(g.size());
    EmbeddingResult out;
    out.metric.kind = PseudoMetric::Kind::Embedding;
    out.metric.dist.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.metric.dist(i, j) = (iota[static_cast<std::size_t>(i)] -
                                     iota[static_cast<std::size_t>(j)])
                                        .norm();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (out.metric.dist(i, j) == 0.0)
                out.warnings.push_back("iota collision: vertices " + g.vertex_name(i) + " and " +
                                       g.vertex_name(j));

    out.mu_iota = Eigen::VectorXd::Zero(n);
    for (const auto& e : g.edges()) {
        double d = out.metric.dist(static_cast<Eigen::Index>(e.u),
                                   static_cast<Eigen::Index>(e.v));
        out.mu_iota[e.u] += e.weight * d * d;
        out.mu_iota[e.v] += e.weight * d * d;
    }
    return out;
}

BallResult ball(const PseudoMetric& rho, std::size_t o, double r) {
    BallResult out;
    for (std::size_t x = 0; x < rho.size(); ++x)
        if (rho(o, x) <= r) out.members.push_back(x);
    out.saturated = out.members.size() == rho.size();
    return out;
}

Eigen::VectorXd boundary_distance(const std::vector<Eigen::VectorXd>& iota,
                                  const std::vector<Eigen::VectorXd>& boundary) {
    Eigen::VectorXd D =
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(iota.size()), kInf);
    for (std::size_t x = 0; x < iota.size(); ++x)
        for (const auto& p : boundary) {
            if (p.size() != iota[x].size())
                throw Error(ErrorCode::MissingCoordinate, "boundary point dimension mismatch");
            D[static_cast<Eigen::Index>(x)] =
                std::min(D[static_cast<Eigen::Index>(x)], (iota[x] - p).norm());
        }
    return D;
}

Eigen::VectorXd boundary_distance_table(const Eigen::VectorXd& table) {
    if ((table.array() < 0.0).any())
        throw Error(ErrorCode::NegativeDistance, "negative boundary distance");
    return table;
}

Eigen::VectorXd metric_criterion_slack(const Eigen::VectorXd& w_min_values,
                                       const Eigen::VectorXd& D, const Eigen::VectorXd& V_ref) {
    if (D.size() != w_min_values.size() || V_ref.size() != w_min_values.size())
        throw Error(ErrorCode::DimensionMismatch, "metric criterion input lengths");
    Eigen::VectorXd slack(w_min_values.size());
    for (Eigen::Index x = 0; x < D.size(); ++x) {
        if (!(D[x] > 0.0))
            throw Error(ErrorCode::NonPositiveD,
                        "boundary distance must be positive or infinite at index " +
                            std::to_string(x));
        double barrier = std::isinf(D[x]) ? 0.0 : 1.0 / (2.0 * D[x] * D[x]);
        slack[x] = w_min_values[x] - barrier - V_ref[x];
    }
    return slack;
}

FunctionMetricResult intrinsic_from_function(const WeightedGraph& g, const Eigen::VectorXd& f) {
    if (static_cast<std::size_t>(f.size()) != g.size())
        throw Error(ErrorCode::DimensionMismatch, "function length vs vertex count");
    for (Eigen::Index i = 0; i < f.size(); ++i)
        for (Eigen::Index j = i + 1; j < f.size(); ++j)
            if (f[i] == f[j])
                throw Error(ErrorCode::NotInjective,
                            "f takes equal values at " + g.vertex_name(i) + " and " +
                                g.vertex_name(j));

    FunctionMetricResult out;
    out.metric.kind = PseudoMetric::Kind::Embedding;
    out.metric.dist = (f.replicate(1, f.size()) - f.transpose().replicate(f.size(), 1)).cwiseAbs();
    out.mu_f = Eigen::VectorXd::Zero(f.size());
    double q0 = 0.0; // Q_0(f) = sum over unordered edges of b (f(x)-f(y))^2
    for (const auto& e : g.edges()) {
        double d = f[static_cast<Eigen::Index>(e.u)] - f[static_cast<Eigen::Index>(e.v)];
        out.mu_f[e.u] += e.weight * d * d;
        out.mu_f[e.v] += e.weight * d * d;
        q0 += e.weight * d * d;
    }
    out.two_q0 = 2.0 * q0;
    out.total_mass = out.mu_f.sum();
    return out;
}

} // namespace graphlap
