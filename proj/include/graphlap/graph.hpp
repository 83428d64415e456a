#ifndef GRAPHLAP_GRAPH_HPP
#define GRAPHLAP_GRAPH_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graphlap/errors.hpp"

namespace graphlap {

/// One undirected edge, endpoints stored as vertex indices with u < v.
struct Edge {
    std::size_t u;
    std::size_t v;
    double weight;
};

/// Edge given by vertex ids, as it appears in input files.
struct NamedEdge {
    std::string u;
    std::string v;
    double weight;
};

/// Finite weighted graph (X,b): symmetric nonnegative edge weights, zero
/// diagonal. Immutable after construction; b(x,y)=0 for absent pairs.
class WeightedGraph {
public:
    WeightedGraph(std::vector<std::string> vertices, const std::vector<NamedEdge>& edges);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_name(std::size_t i) const { return vertices_[i]; }

    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }
    std::size_t index_of(const std::string& id) const;

    /// b(x,y); zero when not adjacent.
    double weight(std::size_t x, std::size_t y) const;
    bool adjacent(std::size_t x, std::size_t y) const { return weight(x, y) > 0.0; }

    /// deg(x) = sum_y b(x,y).
    double degree(std::size_t x) const { return degree_[x]; }

    const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t x) const {
        return adjacency_[x];
    }

    /// Edges with u < v, each unordered pair once.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Total edge weight sum over unordered pairs.
    double total_edge_weight() const;

    std::size_t component_count() const;
    std::vector<std::size_t> component_of() const;

private:
    std::vector<std::string> vertices_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
    std::vector<double> degree_;
};

/// Weighted graph together with a strictly positive vertex measure mu and a
/// real potential V, both indexed like the vertex list.
struct MeasuredGraph {
    WeightedGraph graph;
    Eigen::VectorXd mu;
    Eigen::VectorXd V;

    MeasuredGraph(WeightedGraph g, Eigen::VectorXd mu_in, Eigen::VectorXd v_in);

    std::size_t size() const { return graph.size(); }
    /// Deg(x) = deg(x)/mu(x).
    double weighted_degree(std::size_t x) const { return graph.degree(x) / mu[x]; }
};

/// Vertex sequence; valid when consecutive vertices are adjacent.
using Path = std::vector<std::size_t>;

bool validate_path(const WeightedGraph& g, const Path& p);

/// N(U) = U plus all neighbors of U.
std::vector<std::size_t> combinatorial_neighborhood(const WeightedGraph& g,
                                                    const std::vector<std::size_t>& subset);

/// Nested finite vertex sets K_1 <= K_2 <= ... used for finite-section runs.
class Exhaustion {
public:
    explicit Exhaustion(std::vector<std::vector<std::size_t>> levels);
    const std::vector<std::vector<std::size_t>>& levels() const { return levels_; }

private:
    std::vector<std::vector<std::size_t>> levels_;
};

/// BFS balls around a seed vertex, one level per radius (hop count).
Exhaustion bfs_exhaustion(const WeightedGraph& g, std::size_t seed,
                          const std::vector<std::size_t>& radii);

// ---- example families -------------------------------------------------------

enum class MuRule {
    Uniform,   ///< mu = 1
    NuAlpha,   ///< mu(k) = |k|^-alpha, mu(0) = 1
    NuQuartic, ///< mu(k) = 2 k^-4, mu(0) = 2
};

enum class PotentialRule {
    Zero,
    HalfSquare, ///< V(k) = k^2 / 2
};

/// Truncated integer line {-N..N} with unit nearest-neighbor weights.
MeasuredGraph gen_line_z(long n, MuRule mu_rule, double alpha = 0.0,
                         PotentialRule v_rule = PotentialRule::Zero);

/// Disjoint union of complete graphs K_1..K_n with counting measure; when
/// `connect`, one unit bridge edge between consecutive blocks.
MeasuredGraph gen_complete_union(long n_max, bool connect);

struct Circle {
    double x;
    double y;
    double radius;
};

struct CirclePackingResult {
    MeasuredGraph mg;
    std::vector<std::string> warnings;
};

/// Nerve (contact graph) of a circle packing: vertices at centers, unit edges
/// between tangent circles; measure is mu_iota of the identity embedding.
/// Vertices with mu_iota = 0 get measure 1 and a DegenerateMeasure warning.
CirclePackingResult gen_circle_packing_nerve(const std::vector<Circle>& circles,
                                             double tangency_tol = 1e-9);

/// Ground-state transform weights b^(f)(x,y) = f(x) f(y) b(x,y); edges whose
/// product vanishes are dropped.
WeightedGraph ground_state_graph(const WeightedGraph& g, const Eigen::VectorXd& f);

} // namespace graphlap

#endif
