#ifndef GRAPHLAP_OPERATORS_HPP
#define GRAPHLAP_OPERATORS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphlap/bundle.hpp"
#include "graphlap/graph.hpp"

namespace graphlap {

/// H f(x) = mu(x)^-1 sum_y b(x,y) (f(x) - f(y)) + V(x) f(x).
Eigen::VectorXd apply_H(const MeasuredGraph& mg, const Eigen::VectorXd& f);

/// Same with a custom potential in place of mg.V.
Eigen::VectorXd apply_H_with_potential(const MeasuredGraph& mg, const Eigen::VectorXd& potential,
                                       const Eigen::VectorXd& f);

/// M f(x) = mu(x)^-1 sum_y b(x,y) (f(x) - Phi_{x,y} f(y)) + W_x f(x).
Section apply_M(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& f);

/// mu-weighted inner product of sections, conjugate-linear in the first slot.
Complex inner_E(const MeasuredGraph& mg, const Section& f, const Section& g);

/// Finite-section matrix of M on the direct sum of fibers. The stored
/// stiffness matrix A satisfies (phi, M f)_E = phi^H A f, so M = D^-1 A with
/// D = diag(mu per coordinate).
struct AssembledOperator {
    Eigen::SparseMatrix<Complex> A;
    Eigen::VectorXd mu_coord;
    std::vector<Eigen::Index> offsets;
    std::vector<Eigen::Index> dim;

    Eigen::Index rows() const { return A.rows(); }

    /// Operator action D^-1 A f.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;

    /// D^1/2 M D^-1/2 = D^-1/2 A D^-1/2, Hermitian; shares the spectrum of M.
    Eigen::SparseMatrix<Complex> symmetrized() const;

    /// Max absolute entry of A - A^H; self-adjointness in the mu-weighted
    /// inner product is exactly hermiticity of A.
    double self_adjoint_defect() const;
};

AssembledOperator assemble(const MeasuredGraph& mg, const HermitianBundle& bundle);

/// Sesquilinear form value Q(phi, psi); for phi == psi the value is real and
/// splits into kinetic + endomorphism.
struct FormValue {
    Complex value;
    double kinetic;
    double endomorphism;
};

FormValue form_qc(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& phi,
                  const Section& psi);

struct GreenResidual {
    double form_residual;     ///< |(phi, M f)_E - Q(phi, f)|
    double symmetry_residual; ///< |(phi, M f)_E - (M phi, f)_E|
};

GreenResidual greens_residual(const MeasuredGraph& mg, const HermitianBundle& bundle,
                              const Section& phi, const Section& f);

/// Re (phi, M f)_E - (|phi|, H_{mu, w_min} |f|)_mu under the pointwise
/// alignment <f(x), phi(x)> = |f(x)||phi(x)| (checked at tolerance 1e-9).
double kato_gap(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& f,
                const Section& phi);

/// RHS - LHS of the ground-state transform inequality for a scalar
/// subsolution H f <= lambda f: Q^c(f phi) <= Q^{c,f}(phi) + lambda |f phi|^2.
double ground_state_inequality(const MeasuredGraph& mg, const Eigen::VectorXd& f, double lambda,
                               const Eigen::VectorXd& phi);

/// B(x) = max |spec(Deg(x) I + W_x)|.
Eigen::VectorXd B_function(const MeasuredGraph& mg, const HermitianBundle& bundle);

struct BoundednessReport {
    double B_max;
    double lambda_min_plus;  ///< extreme eigenvalues for the connection Phi
    double lambda_max_plus;
    double lambda_min_minus; ///< same for -Phi
    double lambda_max_minus;
    double heart_residual;   ///< max |Q_Phi(phi) - (2 q_{Deg+W}(phi) - Q_{-Phi}(phi))|
};

BoundednessReport boundedness_report(const MeasuredGraph& mg, const HermitianBundle& bundle,
                                     int trials = 20, std::uint64_t seed = 0);

/// Smallest eigenvalue of the symmetrized matrix; dense below 2000 rows,
/// shifted power iteration at tolerance 1e-8 above.
double lambda0_estimate(const AssembledOperator& op);
double lambda0_of_symmetrized(const Eigen::SparseMatrix<Complex>& S);

struct ResolventTable {
    std::vector<long> n_values;
    Eigen::MatrixXd G; ///< row i = G^{n_i}_alpha f
    double max_monotonicity_violation;
};

/// Resolvents of the truncated potentials V_n = max(V, -n), scalar case;
/// checks the entrywise monotone increase in n.
ResolventTable monotone_resolvent_experiment(const MeasuredGraph& mg, double alpha,
                                             const Eigen::VectorXd& f,
                                             const std::vector<long>& n_list);

/// (passes, margin): margin is the smallest eigenvalue of the form of the
/// potential-free energy minus q_w; passes iff margin >= -1e-9. Requires V = 0.
std::pair<bool, double> hardy_weight_check(const MeasuredGraph& mg, const Eigen::VectorXd& w);

/// Reproducible random section, complex standard Gaussian per fiber coordinate.
Section random_section(const HermitianBundle& bundle, std::uint64_t seed);

} // namespace graphlap

#endif
