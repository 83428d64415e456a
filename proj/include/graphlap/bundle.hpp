#ifndef GRAPHLAP_BUNDLE_HPP
#define GRAPHLAP_BUNDLE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "graphlap/graph.hpp"

namespace graphlap {

using Complex = std::complex<double>;

/// Tolerance for hermiticity/unitarity defects, measured by the largest
/// absolute entry of the defect matrix.
inline constexpr double kBundleTol = 1e-10;

/// Antisymmetric edge phases theta(x,y) = -theta(y,x) mod 2*pi, one entry per
/// ordered edge.
struct ScalarField {
    std::map<std::pair<std::size_t, std::size_t>, double> theta;

    static ScalarField constant(const WeightedGraph& g, double value);
};

/// Per-vertex fiber with a Hermitian endomorphism W_x and a unitary connection
/// Phi_{x,y} stored for both orientations of every edge.
struct HermitianBundle {
    std::vector<Eigen::Index> dim;
    std::vector<Eigen::MatrixXcd> W;
    std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXcd> Phi;

    Eigen::Index total_dim() const;
    /// First coordinate of vertex x in the direct sum of fibers.
    std::vector<Eigen::Index> offsets() const;

    const Eigen::MatrixXcd& phi(std::size_t x, std::size_t y) const;

    /// Bundle with the connection negated, realizing -Phi.
    HermitianBundle flipped_connection() const;
};

/// Complex vector per vertex, sized by the fiber dimension.
using Section = std::vector<Eigen::VectorXcd>;

Section zero_section(const HermitianBundle& bundle);
void check_section(const HermitianBundle& bundle, const Section& f);

/// Flat view of a section in the direct sum ordering, and back.
Eigen::VectorXcd flatten(const HermitianBundle& bundle, const Section& f);
Section unflatten(const HermitianBundle& bundle, const Eigen::VectorXcd& v);

/// |f| as a scalar vertex function.
Eigen::VectorXd section_abs(const Section& f);

/// Rank-one bundle with Phi_{x,y} = exp(i theta(x,y)) and W_x = V(x).
HermitianBundle scalar_to_bundle(const WeightedGraph& g, const ScalarField& theta,
                                 const Eigen::VectorXd& V);

/// Smallest eigenvalue of W_x per vertex.
Eigen::VectorXd w_min(const HermitianBundle& bundle);

struct ConnectionViolation {
    enum class Kind { NotHermitian, NotUnitary, InverseMismatch, MissingPhi, ExtraPhi, DimMismatch };
    Kind kind;
    std::size_t x;
    std::size_t y; // == x for per-vertex violations
    double defect;
};

/// Report-style validation of the bundle invariants at kBundleTol; empty means
/// the bundle is consistent with its graph.
std::vector<ConnectionViolation> validate_connection(const WeightedGraph& g,
                                                     const HermitianBundle& bundle);

/// Reproducible random Hermitian endomorphisms (Gaussian, symmetrized) and
/// unitary connections (QR of a random complex matrix).
HermitianBundle random_bundle(const WeightedGraph& g, Eigen::Index dim, std::uint64_t seed);

} // namespace graphlap

#endif
