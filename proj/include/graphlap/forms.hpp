#ifndef GRAPHLAP_FORMS_HPP
#define GRAPHLAP_FORMS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphlap/graph.hpp"

namespace graphlap {

/// Quadratic form on a vertex subset, relative to the mu-weighted inner
/// product on the subset: value(f) = f^T A f with the real stiffness A.
struct FiniteForm {
    enum class Mode { Dirichlet, Neumann };

    std::vector<std::size_t> subset; ///< host vertex indices, ascending
    Mode mode;
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd mu; ///< restricted to the subset

    Eigen::Index size() const { return A.rows(); }
    double value(const Eigen::VectorXd& f) const;
    /// Form norm squared |f|_Q^2 = Q(f) + |f|^2_mu.
    double norm_sq(const Eigen::VectorXd& f) const;
    /// Smallest eigenvalue of D^-1/2 A D^-1/2.
    double lambda0() const;
};

/// Q^(N)_U with the killing term d_U(x) = mu(x)^-1 sum_{y not in U} b(x,y).
FiniteForm neumann_form(const MeasuredGraph& mg, const std::vector<std::size_t>& U);

/// Host form on functions extended by zero off U (principal submatrix of the
/// full stiffness). On finite hosts this matrix coincides with neumann_form's;
/// the two constructions serve as mutual cross-checks.
FiniteForm dirichlet_form(const MeasuredGraph& mg, const std::vector<std::size_t>& U);

/// Wrap an externally assembled real stiffness (e.g. a scalar magnetic form).
FiniteForm form_from_stiffness(Eigen::SparseMatrix<double> A, Eigen::VectorXd mu,
                               FiniteForm::Mode mode = FiniteForm::Mode::Neumann);

/// g = (L + alpha)^-1 f in the mu-weighted sense: solves (A + alpha D) g = D f.
Eigen::VectorXd resolvent(const FiniteForm& form, double alpha, const Eigen::VectorXd& f);

/// q^(alpha)(f) = alpha <f - alpha G_alpha f, f>_mu.
double approximating_form(const FiniteForm& form, double alpha, const Eigen::VectorXd& f);

struct BeurlingDenyReport {
    double max_negative_entry; ///< worst negative entry of G_alpha f over f >= 0
    double max_excess_over_one; ///< worst excess of alpha G_alpha f over 1, 0 <= f <= 1
    bool positivity_preserving;
    bool markovian;
};

BeurlingDenyReport beurling_deny_check(const FiniteForm& form, int trials, std::uint64_t seed);

struct ExcessiveCertificate {
    Eigen::VectorXd h; ///< on the form's subset
    std::vector<double> tested_betas;
    double max_violation; ///< max over betas, vertices of beta G_{beta+1} h - h
    bool valid() const { return max_violation <= 1e-9; }
};

/// Checks beta (H^(N) + beta + 1)^-1 h <= h on the Neumann form of U.
ExcessiveCertificate excessive_check(const MeasuredGraph& mg, const std::vector<std::size_t>& U,
                                     const Eigen::VectorXd& h, const std::vector<double>& betas);

/// Strictly positive 1-excessive function h = (H^(N) + 1)^-1 g for a strictly
/// positive g (reproducible in [0.5, 1.5] from the seed).
Eigen::VectorXd auto_excessive_h(const MeasuredGraph& mg, const std::vector<std::size_t>& U,
                                 std::uint64_t seed);

struct CapacityResult {
    double value;
    Eigen::VectorXd equilibrium; ///< h_U on the form domain
    double sandwich_violation;   ///< max breach of 0 <= h_U <= h and h_U = h on U
};

/// cap_h(U) = inf { Q^(N)(f) + |f|^2 : f >= 1_U h } on the Neumann form of
/// `domain`; solved by fixing f = h on U (the minimizer property) and
/// least-norm elimination of the free variables.
CapacityResult capacity(const MeasuredGraph& mg, const std::vector<std::size_t>& domain,
                        const Eigen::VectorXd& h, const std::vector<std::size_t>& U);

/// Same value via inf { |h - f|_Q^2 : f 1_U = 0 }, an independent code path.
double capacity_alt(const MeasuredGraph& mg, const std::vector<std::size_t>& domain,
                    const Eigen::VectorXd& h, const std::vector<std::size_t>& U);

/// cap_h(X \ K_n) along the exhaustion; nonincreasing by monotonicity.
std::vector<double> boundary_capacity(const MeasuredGraph& mg, const Eigen::VectorXd& h,
                                      const Exhaustion& ex);

/// Energies Q_0(1 - e_n) of the cutoffs e_n = ((n+1-f)_+ ^ 1) per level.
std::vector<double> recurrence_probe(const MeasuredGraph& mg, const Eigen::VectorXd& f,
                                     const std::vector<double>& levels);

/// Partial sums S_1..S_N of
/// sum_n mu(x_n) prod_{j<n} (1 + mu(x_j)(w(x_j) - alpha)/deg(x_j))^2.
std::vector<double> measure_criterion_partial_sums(const MeasuredGraph& mg,
                                                   const Eigen::VectorXd& w_min_values,
                                                   double alpha, const Path& p, std::size_t N);

/// (dirichlet value, neumann value) of f supported in U.
std::pair<double, double> form_comparison(const MeasuredGraph& mg,
                                          const std::vector<std::size_t>& U,
                                          const Eigen::VectorXd& f);

} // namespace graphlap

#endif
