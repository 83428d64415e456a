#ifndef GRAPHLAP_TEST_HELPERS_HPP
#define GRAPHLAP_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "graphlap/bundle.hpp"
#include "graphlap/graph.hpp"

namespace graphlap::testing {

/// Connected random graph: spanning tree plus a few chords, weights in
/// (0.1, 2], mu in [0.5, 2].
inline MeasuredGraph random_measured_graph(std::mt19937_64& rng, int max_vertices = 50,
                                           bool nonnegative_potential = false) {
    std::uniform_int_distribution<int> size_dist(2, max_vertices);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = size_dist(rng);
    std::vector<std::string> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back(std::to_string(i));
    std::vector<NamedEdge> edges;
    std::set<std::pair<int, int>> used;
    for (int i = 1; i < n; ++i) {
        int j = static_cast<int>(unit(rng) * i);
        edges.push_back({vertices[j], vertices[i], 0.1 + 1.9 * unit(rng)});
        used.insert({j, i});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            if (unit(rng) < 0.9 / n && used.insert({i, j}).second)
                edges.push_back({vertices[i], vertices[j], 0.1 + unit(rng)});
    WeightedGraph g(vertices, edges);
    Eigen::VectorXd mu(n), V(n);
    for (int i = 0; i < n; ++i) {
        mu[i] = 0.5 + 1.5 * unit(rng);
        V[i] = nonnegative_potential ? 2.0 * unit(rng) : -1.0 + 2.0 * unit(rng);
    }
    return {std::move(g), std::move(mu), std::move(V)};
}

/// Random antisymmetric edge phases.
inline ScalarField random_theta(const WeightedGraph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    ScalarField theta;
    for (const auto& e : g.edges()) {
        double t = angle(rng);
        theta.theta[{e.u, e.v}] = t;
        theta.theta[{e.v, e.u}] = -t;
    }
    return theta;
}

/// Simple path graph 0-1-...-(n-1) with unit weights, mu = 1, V = 0.
inline MeasuredGraph chain(int n) {
    std::vector<std::string> vertices;
    std::vector<NamedEdge> edges;
    for (int i = 0; i < n; ++i) vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back({vertices[i], vertices[i + 1], 1.0});
    WeightedGraph g(vertices, edges);
    return {std::move(g), Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n)};
}

/// Complete graph on n vertices, unit weights, counting measure, V = 0.
inline MeasuredGraph complete(int n) {
    std::vector<std::string> vertices;
    std::vector<NamedEdge> edges;
    for (int i = 0; i < n; ++i) vertices.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({vertices[i], vertices[j], 1.0});
    WeightedGraph g(vertices, edges);
    return {std::move(g), Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n)};
}

/// Cycle graph 0-1-...-(n-1)-0 with unit weights: every degree is 2.
inline MeasuredGraph cycle(int n, double mu_value) {
    std::vector<std::string> vertices;
    std::vector<NamedEdge> edges;
    for (int i = 0; i < n; ++i) vertices.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
        edges.push_back({vertices[i], vertices[(i + 1) % n], 1.0});
    WeightedGraph g(vertices, edges);
    return {std::move(g), mu_value * Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n)};
}

} // namespace graphlap::testing

#endif
