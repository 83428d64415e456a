#include "graphlap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace graphlap {

namespace {
constexpr double kMinWeight = 1e-300; // positivity must survive squaring and sums
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::OverlappingCircles: return "OverlappingCircles";
        case ErrorCode::NegativeFunction: return "NegativeFunction";
        case ErrorCode::AsymmetricTheta: return "AsymmetricTheta";
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ValidationFailure: return "ValidationFailure";
        case ErrorCode::AlignmentViolated: return "AlignmentViolated";
        case ErrorCode::NotSubsolution: return "NotSubsolution";
        case ErrorCode::AlphaTooSmall: return "AlphaTooSmall";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::SigmaEdgeMismatch: return "SigmaEdgeMismatch";
        case ErrorCode::IsolatedEndpoint: return "IsolatedEndpoint";
        case ErrorCode::MissingCoordinate: return "MissingCoordinate";
        case ErrorCode::NegativeDistance: return "NegativeDistance";
        case ErrorCode::NonPositiveD: return "NonPositiveD";
        case ErrorCode::NotInjective: return "NotInjective";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::SolveFailure: return "SolveFailure";
        case ErrorCode::NotExcessive: return "NotExcessive";
        case ErrorCode::NegativeH: return "NegativeH";
        case ErrorCode::NegativeF: return "NegativeF";
        case ErrorCode::InvalidPath: return "InvalidPath";
        case ErrorCode::ZeroDegree: return "ZeroDegree";
        case ErrorCode::SupportViolation: return "SupportViolation";
        case ErrorCode::UnknownExample: return "UnknownExample";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "UnknownError";
}

WeightedGraph::WeightedGraph(std::vector<std::string> vertices,
                             const std::vector<NamedEdge>& edges)
    : vertices_(std::move(vertices)) {
    index_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        auto [it, inserted] = index_.emplace(vertices_[i], i);
        if (!inserted)
            throw Error(ErrorCode::DuplicateEdge, "duplicate vertex id '" + vertices_[i] + "'");
    }
    adjacency_.resize(vertices_.size());
    degree_.assign(vertices_.size(), 0.0);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges) {
        std::size_t u = index_of(e.u);
        std::size_t v = index_of(e.v);
        if (u == v)
            throw Error(ErrorCode::SelfLoop, "edge (" + e.u + "," + e.u + ")");
        if (!(e.weight >= kMinWeight) || !std::isfinite(e.weight))
            throw Error(ErrorCode::NonPositiveWeight,
                        "edge (" + e.u + "," + e.v + ") weight " + std::to_string(e.weight));
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw Error(ErrorCode::DuplicateEdge, "edge (" + e.u + "," + e.v + ") stored twice");
        edges_.push_back({key.first, key.second, e.weight});
        adjacency_[u].emplace_back(v, e.weight);
        adjacency_[v].emplace_back(u, e.weight);
        degree_[u] += e.weight;
        degree_[v] += e.weight;
    }
    for (auto& nbrs : adjacency_)
        std::sort(nbrs.begin(), nbrs.end());
}

std::size_t WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw Error(ErrorCode::UnknownVertex, "'" + id + "'");
    return it->second;
}

double WeightedGraph::weight(std::size_t x, std::size_t y) const {
    if (x >= size() || y >= size())
        throw Error(ErrorCode::UnknownVertex, "index out of range");
    const auto& nbrs = adjacency_[x];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(),
                               std::make_pair(y, -std::numeric_limits<double>::infinity()));
    if (it != nbrs.end() && it->first == y) return it->second;
    return 0.0;
}

double WeightedGraph::total_edge_weight() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.weight;
    return total;
}

std::vector<std::size_t> WeightedGraph::component_of() const {
    std::vector<std::size_t> comp(size(), SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t s = 0; s < size(); ++s) {
        if (comp[s] != SIZE_MAX) continue;
        std::deque<std::size_t> queue{s};
        comp[s] = next;
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (const auto& [y, w] : adjacency_[x]) {
                (void)w;
                if (comp[y] == SIZE_MAX) {
                    comp[y] = next;
                    queue.push_back(y);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::size_t WeightedGraph::component_count() const {
    auto comp = component_of();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

MeasuredGraph::MeasuredGraph(WeightedGraph g, Eigen::VectorXd mu_in, Eigen::VectorXd v_in)
    : graph(std::move(g)), mu(std::move(mu_in)), V(std::move(v_in)) {
    if (static_cast<std::size_t>(mu.size()) != graph.size() ||
        static_cast<std::size_t>(V.size()) != graph.size())
        throw Error(ErrorCode::DimensionMismatch, "mu/V length vs vertex count");
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (!(mu[i] > 0.0) || !std::isfinite(mu[i]))
            throw Error(ErrorCode::BadParameter,
                        "mu must be strictly positive at " + graph.vertex_name(i));
}

bool validate_path(const WeightedGraph& g, const Path& p) {
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
        if (!g.adjacent(p[j], p[j + 1])) return false;
    return true;
}

std::vector<std::size_t> combinatorial_neighborhood(const WeightedGraph& g,
                                                    const std::vector<std::size_t>& subset) {
    std::set<std::size_t> out;
    for (std::size_t x : subset) {
        if (x >= g.size()) throw Error(ErrorCode::UnknownVertex, "index out of range");
        out.insert(x);
        for (const auto& [y, w] : g.neighbors(x)) {
            (void)w;
            out.insert(y);
        }
    }
    return {out.begin(), out.end()};
}

Exhaustion::Exhaustion(std::vector<std::vector<std::size_t>> levels) : levels_(std::move(levels)) {
    for (auto& level : levels_) std::sort(level.begin(), level.end());
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
        if (!std::includes(levels_[i + 1].begin(), levels_[i + 1].end(), levels_[i].begin(),
                           levels_[i].end()))
            throw Error(ErrorCode::BadParameter, "exhaustion levels must be nested");
}

Exhaustion bfs_exhaustion(const WeightedGraph& g, std::size_t seed,
                          const std::vector<std::size_t>& radii) {
    if (seed >= g.size()) throw Error(ErrorCode::UnknownVertex, "seed index out of range");
    std::vector<std::size_t> hop(g.size(), SIZE_MAX);
    hop[seed] = 0;
    std::deque<std::size_t> queue{seed};
    while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        for (const auto& [y, w] : g.neighbors(x)) {
            (void)w;
            if (hop[y] == SIZE_MAX) {
                hop[y] = hop[x] + 1;
                queue.push_back(y);
            }
        }
    }
    std::vector<std::vector<std::size_t>> levels;
    for (std::size_t r : radii) {
        std::vector<std::size_t> ball;
        for (std::size_t x = 0; x < g.size(); ++x)
            if (hop[x] <= r) ball.push_back(x);
        levels.push_back(std::move(ball));
    }
    return Exhaustion(std::move(levels));
}

MeasuredGraph gen_line_z(long n, MuRule mu_rule, double alpha, PotentialRule v_rule) {
    if (n < 1) throw Error(ErrorCode::BadParameter, "line truncation needs N >= 1");
    std::vector<std::string> vertices;
    for (long k = -n; k <= n; ++k) vertices.push_back(std::to_string(k));
    std::vector<NamedEdge> edges;
    for (long k = -n; k < n; ++k)
        edges.push_back({std::to_string(k), std::to_string(k + 1), 1.0});
    WeightedGraph g(std::move(vertices), edges);

    Eigen::VectorXd mu(2 * n + 1), V(2 * n + 1);
    for (long k = -n; k <= n; ++k) {
        Eigen::Index i = k + n;
        switch (mu_rule) {
            case MuRule::Uniform: mu[i] = 1.0; break;
            case MuRule::NuAlpha:
                mu[i] = (k == 0) ? 1.0 : std::pow(std::abs(static_cast<double>(k)), -alpha);
                break;
            case MuRule::NuQuartic: {
                double kd = static_cast<double>(k);
                mu[i] = (k == 0) ? 2.0 : 2.0 / (kd * kd * kd * kd);
                break;
            }
        }
        V[i] = (v_rule == PotentialRule::HalfSquare)
                   ? 0.5 * static_cast<double>(k) * static_cast<double>(k)
                   : 0.0;
    }
    return MeasuredGraph(std::move(g), std::move(mu), std::move(V));
}

MeasuredGraph gen_complete_union(long n_max, bool connect) {
    if (n_max < 1) throw Error(ErrorCode::BadParameter, "complete union needs n_max >= 1");
    std::vector<std::string> vertices;
    std::vector<NamedEdge> edges;
    auto name = [](long block, long i) {
        std::ostringstream os;
        os << block << ":" << i;
        return os.str();
    };
    for (long block = 1; block <= n_max; ++block) {
        for (long i = 0; i < block; ++i) vertices.push_back(name(block, i));
        for (long i = 0; i < block; ++i)
            for (long j = i + 1; j < block; ++j)
                edges.push_back({name(block, i), name(block, j), 1.0});
        if (connect && block > 1)
            edges.push_back({name(block - 1, block - 2), name(block, 0), 1.0});
    }
    std::size_t count = vertices.size();
    WeightedGraph g(std::move(vertices), edges);
    return MeasuredGraph(std::move(g), Eigen::VectorXd::Ones(count),
                         Eigen::VectorXd::Zero(count));
}

CirclePackingResult gen_circle_packing_nerve(const std::vector<Circle>& circles,
                                             double tangency_tol) {
    if (tangency_tol <= 0.0) throw Error(ErrorCode::BadParameter, "tangency_tol must be > 0");
    const std::size_t n = circles.size();
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back("c" + std::to_string(i));
    std::vector<NamedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = circles[i].x - circles[j].x;
            double dy = circles[i].y - circles[j].y;
            double dist = std::hypot(dx, dy);
            double touch = circles[i].radius + circles[j].radius;
            if (dist < touch - tangency_tol)
                throw Error(ErrorCode::OverlappingCircles,
                            "circles " + std::to_string(i) + " and " + std::to_string(j));
            if (dist <= touch + tangency_tol)
                edges.push_back({vertices[i], vertices[j], 1.0});
        }
    }
    WeightedGraph g(std::move(vertices), edges);

    // mu_iota of the identity embedding of the centers.
    CirclePackingResult result{
        MeasuredGraph(g, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n)), {}};
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : g.neighbors(i)) {
            double dx = circles[i].x - circles[j].x;
            double dy = circles[i].y - circles[j].y;
            mu[i] += w * (dx * dx + dy * dy);
        }
        if (mu[i] == 0.0) {
            result.warnings.push_back("DegenerateMeasure: isolated center " +
                                      g.vertex_name(i) + ", mu set to 1");
            mu[i] = 1.0;
        }
    }
    result.mg.mu = mu;
    return result;
}

WeightedGraph ground_state_graph(const WeightedGraph& g, const Eigen::VectorXd& f) {
    if (static_cast<std::size_t>(f.size()) != g.size())
        throw Error(ErrorCode::DimensionMismatch, "function length vs vertex count");
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (f[i] < 0.0)
            throw Error(ErrorCode::NegativeFunction, "f(" + g.vertex_name(i) + ") < 0");
    std::vector<NamedEdge> edges;
    for (const auto& e : g.edges()) {
        double w = f[e.u] * f[e.v] * e.weight;
        if (w > 0.0)
            edges.push_back({g.vertex_name(e.u), g.vertex_name(e.v), w});
    }
    return WeightedGraph(g.vertices(), edges);
}

} // namespace graphlap
