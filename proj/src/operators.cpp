#include "graphlap/operators.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace graphlap {

namespace {

constexpr double kAlignTol = 1e-9;
constexpr double kSubsolutionTol = 1e-9;

void check_scalar_sizes(const MeasuredGraph& mg, const Eigen::VectorXd& f) {
    if (static_cast<std::size_t>(f.size()) != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "vertex function length");
}

/// Scalar stiffness matrix L + diag(potential .* mu): phi^T A f = (phi, H f)_mu.
Eigen::SparseMatrix<double> scalar_stiffness(const MeasuredGraph& mg,
                                             const Eigen::VectorXd& potential) {
    const auto n = static_cast<Eigen::Index>(mg.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mg.graph.edges().size() * 2 + n);
    for (Eigen::Index x = 0; x < n; ++x)
        trip.emplace_back(x, x, mg.graph.degree(x) + potential[x] * mg.mu[x]);
    for (const auto& e : mg.graph.edges()) {
        trip.emplace_back(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v),
                          -e.weight);
        trip.emplace_back(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u),
                          -e.weight);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

double lambda0_dense(const Eigen::MatrixXcd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::ConvergenceFailure, "dense eigensolve failed");
    return solver.eigenvalues().minCoeff();
}

/// Largest eigenvalue of a Hermitian sparse matrix by power iteration.
double power_extreme(const Eigen::SparseMatrix<Complex>& M, double tol) {
    const Eigen::Index n = M.rows();
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXcd w = M * v;
        double norm = w.norm();
        if (norm == 0.0) return 0.0;
        w /= norm;
        double next = std::real(w.dot(M * w));
        if (std::abs(next - lambda) <= tol * (1.0 + std::abs(next))) return next;
        lambda = next;
        v = w;
    }
    throw Error(ErrorCode::ConvergenceFailure, "power iteration did not converge");
}

} // namespace

Eigen::VectorXd apply_H_with_potential(const MeasuredGraph& mg, const Eigen::VectorXd& potential,
                                       const Eigen::VectorXd& f) {
    check_scalar_sizes(mg, f);
    check_scalar_sizes(mg, potential);
    const auto n = static_cast<Eigen::Index>(mg.size());
    Eigen::VectorXd out(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        double acc = 0.0;
        for (const auto& [y, b] : mg.graph.neighbors(x)) acc += b * (f[x] - f[y]);
        out[x] = acc / mg.mu[x] + potential[x] * f[x];
    }
    return out;
}

Eigen::VectorXd apply_H(const MeasuredGraph& mg, const Eigen::VectorXd& f) {
    return apply_H_with_potential(mg, mg.V, f);
}

Section apply_M(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& f) {
    check_section(bundle, f);
    if (bundle.dim.size() != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "bundle vertex count");
    Section out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(bundle.dim[x]);
        for (const auto& [y, b] : mg.graph.neighbors(x))
            acc += b * (f[x] - bundle.phi(x, y) * f[y]);
        out[x] = acc / mg.mu[x] + bundle.W[x] * f[x];
    }
    return out;
}

Complex inner_E(const MeasuredGraph& mg, const Section& f, const Section& g) {
    if (f.size() != g.size() || f.size() != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "section sizes in inner product");
    Complex acc = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) acc += f[x].dot(g[x]) * mg.mu[x];
    return acc;
}

Eigen::VectorXcd AssembledOperator::apply(const Eigen::VectorXcd& f) const {
    if (f.size() != A.rows())
        throw Error(ErrorCode::DimensionMismatch, "flat section length vs operator");
    return mu_coord.cwiseInverse().asDiagonal() * (A * f).eval();
}

Eigen::SparseMatrix<Complex> AssembledOperator::symmetrized() const {
    Eigen::VectorXd inv_sqrt = mu_coord.cwiseSqrt().cwiseInverse();
    Eigen::SparseMatrix<Complex> S = A;
    for (Eigen::Index k = 0; k < S.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(S, k); it; ++it)
            it.valueRef() *= inv_sqrt[it.row()] * inv_sqrt[it.col()];
    return S;
}

double AssembledOperator::self_adjoint_defect() const {
    Eigen::SparseMatrix<Complex> defect = A - Eigen::SparseMatrix<Complex>(A.adjoint());
    double m = 0.0;
    for (Eigen::Index k = 0; k < defect.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(defect, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

AssembledOperator assemble(const MeasuredGraph& mg, const HermitianBundle& bundle) {
    if (bundle.dim.size() != mg.size())
        throw Error(ErrorCode::ValidationFailure, "bundle vertex count vs graph");
    AssembledOperator op;
    op.dim = bundle.dim;
    op.offsets = bundle.offsets();
    const Eigen::Index total = bundle.total_dim();
    op.mu_coord.resize(total);
    for (std::size_t x = 0; x < mg.size(); ++x)
        op.mu_coord.segment(op.offsets[x], bundle.dim[x]).setConstant(mg.mu[x]);

    std::vector<Eigen::Triplet<Complex>> trip;
    for (std::size_t x = 0; x < mg.size(); ++x) {
        // diagonal block deg(x) I + mu(x) W_x
        const Eigen::Index d = bundle.dim[x];
        Eigen::MatrixXcd block = mg.mu[x] * bundle.W[x];
        block.diagonal().array() += mg.graph.degree(x);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                if (block(i, j) != Complex(0.0))
                    trip.emplace_back(op.offsets[x] + i, op.offsets[x] + j, block(i, j));
        for (const auto& [y, b] : mg.graph.neighbors(x)) {
            const Eigen::MatrixXcd& P = bundle.phi(x, y);
            for (Eigen::Index i = 0; i < P.rows(); ++i)
                for (Eigen::Index j = 0; j < P.cols(); ++j)
                    if (P(i, j) != Complex(0.0))
                        trip.emplace_back(op.offsets[x] + i, op.offsets[y] + j, -b * P(i, j));
        }
    }
    op.A.resize(total, total);
    op.A.setFromTriplets(trip.begin(), trip.end());
    double scale = op.A.nonZeros() > 0 ? op.A.coeffs().cwiseAbs().maxCoeff() : 0.0;
    if (op.self_adjoint_defect() > 1e-10 * (1.0 + scale))
        throw Error(ErrorCode::ValidationFailure, "assembled matrix not self-adjoint");
    return op;
}

FormValue form_qc(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& phi,
                  const Section& psi) {
    check_section(bundle, phi);
    check_section(bundle, psi);
    Complex kinetic = 0.0;
    for (std::size_t x = 0; x < mg.size(); ++x)
        for (const auto& [y, b] : mg.graph.neighbors(x)) {
            const Eigen::MatrixXcd& P = bundle.phi(x, y);
            kinetic += 0.5 * b * (phi[x] - P * phi[y]).dot(psi[x] - P * psi[y]);
        }
    Complex endo = 0.0;
    for (std::size_t x = 0; x < mg.size(); ++x)
        endo += mg.mu[x] * phi[x].dot(bundle.W[x] * psi[x]);
    return {kinetic + endo, std::real(kinetic), std::real(endo)};
}

GreenResidual greens_residual(const MeasuredGraph& mg, const HermitianBundle& bundle,
                              const Section& phi, const Section& f) {
    Complex lhs = inner_E(mg, phi, apply_M(mg, bundle, f));
    Complex form = form_qc(mg, bundle, phi, f).value;
    Complex sym = inner_E(mg, apply_M(mg, bundle, phi), f);
    return {std::abs(lhs - form), std::abs(lhs - sym)};
}

double kato_gap(const MeasuredGraph& mg, const HermitianBundle& bundle, const Section& f,
                const Section& phi) {
    check_section(bundle, f);
    check_section(bundle, phi);
    for (std::size_t x = 0; x < f.size(); ++x) {
        double prod = f[x].norm() * phi[x].norm();
        if (std::abs(f[x].dot(phi[x]) - Complex(prod)) > kAlignTol * (1.0 + prod))
            throw Error(ErrorCode::AlignmentViolated,
                        "sections not aligned at vertex " + std::to_string(x));
    }
    double lhs = std::real(inner_E(mg, phi, apply_M(mg, bundle, f)));
    Eigen::VectorXd af = section_abs(f);
    Eigen::VectorXd aphi = section_abs(phi);
    Eigen::VectorXd Haf = apply_H_with_potential(mg, w_min(bundle), af);
    double rhs = (aphi.array() * Haf.array() * mg.mu.array()).sum();
    return lhs - rhs;
}

double ground_state_inequality(const MeasuredGraph& mg, const Eigen::VectorXd& f, double lambda,
                               const Eigen::VectorXd& phi) {
    check_scalar_sizes(mg, f);
    check_scalar_sizes(mg, phi);
    if ((f.array() < 0.0).any())
        throw Error(ErrorCode::NegativeFunction, "ground state function must be nonnegative");
    Eigen::VectorXd Hf = apply_H(mg, f);
    for (Eigen::Index x = 0; x < f.size(); ++x)
        if (Hf[x] > lambda * f[x] + kSubsolutionTol)
            throw Error(ErrorCode::NotSubsolution,
                        "H f > lambda f at vertex " + std::to_string(x) + " by " +
                            std::to_string(Hf[x] - lambda * f[x]));

    Eigen::VectorXd fphi = f.cwiseProduct(phi);
    double lhs = 0.0;
    for (const auto& e : mg.graph.edges()) {
        double diff = fphi[e.u] - fphi[e.v];
        lhs += e.weight * diff * diff;
    }
    lhs += (mg.V.array() * fphi.array().square() * mg.mu.array()).sum();

    double rhs = 0.0;
    for (const auto& e : mg.graph.edges()) {
        double diff = phi[e.u] - phi[e.v];
        rhs += f[e.u] * f[e.v] * e.weight * diff * diff;
    }
    rhs += lambda * (fphi.array().square() * mg.mu.array()).sum();
    return rhs - lhs;
}

Eigen::VectorXd B_function(const MeasuredGraph& mg, const HermitianBundle& bundle) {
    Eigen::VectorXd out(mg.size());
    for (std::size_t x = 0; x < mg.size(); ++x) {
        Eigen::MatrixXcd M = bundle.W[x];
        double defect = (M - M.adjoint()).cwiseAbs().maxCoeff();
        if (defect > kBundleTol)
            throw Error(ErrorCode::NonHermitian, "W at vertex " + std::to_string(x));
        M.diagonal().array() += mg.weighted_degree(x);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M, Eigen::EigenvaluesOnly);
        out[x] = solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    return out;
}

double lambda0_of_symmetrized(const Eigen::SparseMatrix<Complex>& S) {
    if (S.rows() < 2000) return lambda0_dense(Eigen::MatrixXcd(S));
    // Gershgorin upper bound, then power iteration on cI - S.
    Eigen::VectorXd row_abs = Eigen::VectorXd::Zero(S.rows());
    for (Eigen::Index k = 0; k < S.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(S, k); it; ++it)
            row_abs[it.row()] += std::abs(it.value());
    double c = row_abs.maxCoeff();
    Eigen::SparseMatrix<Complex> shifted = -S;
    Eigen::SparseMatrix<Complex> eye(S.rows(), S.cols());
    eye.setIdentity();
    shifted += Complex(c) * eye;
    return c - power_extreme(shifted, 1e-8);
}

double lambda0_estimate(const AssembledOperator& op) {
    return lambda0_of_symmetrized(op.symmetrized());
}

BoundednessReport boundedness_report(const MeasuredGraph& mg, const HermitianBundle& bundle,
                                     int trials, std::uint64_t seed) {
    BoundednessReport rep{};
    rep.B_max = B_function(mg, bundle).maxCoeff();

    HermitianBundle flipped = bundle.flipped_connection();
    auto extremes = [&](const HermitianBundle& b) {
        Eigen::MatrixXcd S(assemble(mg, b).symmetrized());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
        return std::pair{solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
    };
    std::tie(rep.lambda_min_plus, rep.lambda_max_plus) = extremes(bundle);
    std::tie(rep.lambda_min_minus, rep.lambda_max_minus) = extremes(flipped);

    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Section phi = random_section(bundle, seed + static_cast<std::uint64_t>(t));
        double q_plus = std::real(form_qc(mg, bundle, phi, phi).value);
        double q_minus = std::real(form_qc(mg, flipped, phi, phi).value);
        double q_mid = 0.0;
        for (std::size_t x = 0; x < mg.size(); ++x) {
            Eigen::MatrixXcd M = bundle.W[x];
            M.diagonal().array() += mg.weighted_degree(x);
            q_mid += mg.mu[x] * std::real(phi[x].dot(M * phi[x]));
        }
        worst = std::max(worst, std::abs(q_plus - (2.0 * q_mid - q_minus)));
    }
    rep.heart_residual = worst;
    return rep;
}

ResolventTable monotone_resolvent_experiment(const MeasuredGraph& mg, double alpha,
                                             const Eigen::VectorXd& f,
                                             const std::vector<long>& n_list) {
    check_scalar_sizes(mg, f);
    if ((f.array() < 0.0).any())
        throw Error(ErrorCode::NegativeFunction, "resolvent experiment requires f >= 0");
    ResolventTable table;
    table.n_values = n_list;
    table.G.resize(static_cast<Eigen::Index>(n_list.size()), static_cast<Eigen::Index>(mg.size()));
    Eigen::VectorXd Df = mg.mu.cwiseProduct(f);
    Eigen::VectorXd inv_sqrt = mg.mu.cwiseSqrt().cwiseInverse();

    for (std::size_t i = 0; i < n_list.size(); ++i) {
        Eigen::VectorXd Vn = mg.V.cwiseMax(-static_cast<double>(n_list[i]));
        Eigen::SparseMatrix<double> A = scalar_stiffness(mg, Vn);
        Eigen::SparseMatrix<double> S = A;
        for (Eigen::Index k = 0; k < S.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
                it.valueRef() *= inv_sqrt[it.row()] * inv_sqrt[it.col()];
        double lambda0 = lambda0_of_symmetrized(S.cast<Complex>());
        if (alpha <= -lambda0 + 1e-6)
            throw Error(ErrorCode::AlphaTooSmall,
                        "alpha must exceed " + std::to_string(-lambda0 + 1e-6) +
                            " for truncation n=" + std::to_string(n_list[i]));
        Eigen::SparseMatrix<double> shifted = A;
        for (Eigen::Index x = 0; x < shifted.rows(); ++x)
            shifted.coeffRef(x, x) += alpha * mg.mu[x];
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::SolveFailure, "resolvent factorization failed");
        table.G.row(static_cast<Eigen::Index>(i)) = solver.solve(Df).transpose();
    }

    double violation = 0.0;
    for (Eigen::Index i = 1; i < table.G.rows(); ++i)
        violation = std::max(violation, (table.G.row(i - 1) - table.G.row(i)).maxCoeff());
    table.max_monotonicity_violation = std::max(violation, 0.0);
    return table;
}

std::pair<bool, double> hardy_weight_check(const MeasuredGraph& mg, const Eigen::VectorXd& w) {
    check_scalar_sizes(mg, w);
    if ((mg.V.array() != 0.0).any())
        throw Error(ErrorCode::BadParameter, "Hardy check requires zero potential");
    if ((w.array() < 0.0).any())
        throw Error(ErrorCode::NegativeWeight, "Hardy weight must be nonnegative");
    Eigen::SparseMatrix<double> A = scalar_stiffness(mg, (-w).eval());
    Eigen::VectorXd inv_sqrt = mg.mu.cwiseSqrt().cwiseInverse();
    for (Eigen::Index k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
            it.valueRef() *= inv_sqrt[it.row()] * inv_sqrt[it.col()];
    double margin = lambda0_of_symmetrized(A.cast<Complex>());
    return {margin >= -1e-9, margin};
}

Section random_section(const HermitianBundle& bundle, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Section f(bundle.dim.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        f[x].resize(bundle.dim[x]);
        for (Eigen::Index i = 0; i < bundle.dim[x]; ++i)
            f[x][i] = Complex(gauss(rng), gauss(rng));
    }
    return f;
}

} // namespace graphlap
