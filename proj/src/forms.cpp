#include "graphlap/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "graphlap/operators.hpp"

namespace graphlap {

namespace {

std::vector<std::size_t> checked_subset(const MeasuredGraph& mg,
                                        const std::vector<std::size_t>& U) {
    if (U.empty()) throw Error(ErrorCode::EmptySubset, "subset must be nonempty");
    std::vector<std::size_t> out = U;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.back() >= mg.size())
        throw Error(ErrorCode::UnknownVertex, "subset index out of range");
    return out;
}

Eigen::SparseMatrix<double> full_stiffness(const MeasuredGraph& mg) {
    const auto n = static_cast<Eigen::Index>(mg.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index x = 0; x < n; ++x)
        trip.emplace_back(x, x, mg.graph.degree(x) + mg.V[x] * mg.mu[x]);
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

/// Unconstrained minimization of r^T M r with r fixed on the indices `fixed`:
/// returns the full minimizing r and its value.
std::pair<Eigen::VectorXd, double> constrained_min(const Eigen::SparseMatrix<double>& M,
                                                   const std::vector<Eigen::Index>& fixed,
                                                   const Eigen::VectorXd& fixed_values) {
    const Eigen::Index n = M.rows();
    std::vector<char> is_fixed(n, 0);
    for (std::size_t i = 0; i < fixed.size(); ++i) is_fixed[fixed[i]] = 1;
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!is_fixed[i]) free.push_back(i);

    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < fixed.size(); ++i) r[fixed[i]] = fixed_values[i];

    if (!free.empty()) {
        Eigen::MatrixXd Md(M);
        Eigen::MatrixXd Mff(free.size(), free.size());
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(free.size());
        for (std::size_t i = 0; i < free.size(); ++i) {
            for (std::size_t j = 0; j < free.size(); ++j) Mff(i, j) = Md(free[i], free[j]);
            for (std::size_t k = 0; k < fixed.size(); ++k)
                rhs[i] -= Md(free[i], fixed[k]) * fixed_values[k];
        }
        Eigen::LDLT<Eigen::MatrixXd> solver(Mff);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::SolveFailure, "constrained least-norm factorization failed");
        Eigen::VectorXd rf = solver.solve(rhs);
        for (std::size_t i = 0; i < free.size(); ++i) r[free[i]] = rf[i];
    }
    double value = r.dot(M * r);
    return {r, value};
}

ExcessiveCertificate check_excessive_on_form(const FiniteForm& form, const Eigen::VectorXd& h,
                                             const std::vector<double>& betas) {
    if (h.size() != form.size())
        throw Error(ErrorCode::DimensionMismatch, "h length vs form size");
    if ((h.array() < 0.0).any())
        throw Error(ErrorCode::NegativeH, "excessive candidate must be nonnegative");
    ExcessiveCertificate cert;
    cert.h = h;
    cert.tested_betas = betas;
    cert.max_violation = 0.0;
    for (double beta : betas) {
        if (beta <= 0.0) throw Error(ErrorCode::BadParameter, "beta must be positive");
        Eigen::VectorXd g = resolvent(form, beta + 1.0, h);
        cert.max_violation = std::max(cert.max_violation, (beta * g - h).maxCoeff());
    }
    return cert;
}

const std::vector<double> kDefaultBetas = {0.5, 1.0, 2.0, 10.0};

CapacityResult capacity_impl(const MeasuredGraph& mg, const std::vector<std::size_t>& domain,
                             const Eigen::VectorXd& h, const std::vector<std::size_t>& U) {
    if (U.empty()) return {0.0, Eigen::VectorXd::Zero(h.size()), 0.0};
    FiniteForm form = neumann_form(mg, domain);
    if (h.size() != form.size())
        throw Error(ErrorCode::DimensionMismatch, "h length vs capacity domain");

    std::vector<std::size_t> target = U;
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());
    std::vector<Eigen::Index> fixed;
    {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < form.subset.size(); ++i) {
            while (pos < target.size() && target[pos] < form.subset[i]) ++pos;
            if (pos < target.size() && target[pos] == form.subset[i])
                fixed.push_back(static_cast<Eigen::Index>(i));
        }
        if (fixed.size() != target.size())
            throw Error(ErrorCode::BadParameter, "capacity target not contained in the domain");
    }
    Eigen::VectorXd fixed_values(fixed.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) fixed_values[i] = h[fixed[i]];

    Eigen::SparseMatrix<double> M = form.A;
    for (Eigen::Index i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += form.mu[i];

    auto [r, value] = constrained_min(M, fixed, fixed_values);

    CapacityResult out;
    out.value = value;
    out.equilibrium = r;
    double breach = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
        breach = std::max({breach, -r[i], r[i] - h[i]});
    out.sandwich_violation = std::max(breach, 0.0);
    return out;
}

} // namespace

double FiniteForm::value(const Eigen::VectorXd& f) const {
    if (f.size() != A.rows()) throw Error(ErrorCode::DimensionMismatch, "f length vs form size");
    return f.dot(A * f);
}

double FiniteForm::norm_sq(const Eigen::VectorXd& f) const {
    return value(f) + f.dot(mu.cwiseProduct(f));
}

double FiniteForm::lambda0() const {
    Eigen::VectorXd inv_sqrt = mu.cwiseSqrt().cwiseInverse();
    Eigen::SparseMatrix<double> S = A;
    for (Eigen::Index k = 0; k < S.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
            it.valueRef() *= inv_sqrt[it.row()] * inv_sqrt[it.col()];
    return lambda0_of_symmetrized(S.cast<Complex>());
}

FiniteForm neumann_form(const MeasuredGraph& mg, const std::vector<std::size_t>& U) {
    FiniteForm form;
    form.subset = checked_subset(mg, U);
    form.mode = FiniteForm::Mode::Neumann;
    const auto m = static_cast<Eigen::Index>(form.subset.size());
    std::vector<Eigen::Index> local(mg.size(), -1);
    for (Eigen::Index i = 0; i < m; ++i) local[form.subset[i]] = i;

    form.mu.resize(m);
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index i = 0; i < m; ++i) {
        std::size_t x = form.subset[i];
        form.mu[i] = mg.mu[x];
        double inside_deg = 0.0;
        double killing = 0.0; // d_U(x) * mu(x)
        for (const auto& [y, b] : mg.graph.neighbors(x)) {
            if (local[y] >= 0) {
                inside_deg += b;
                trip.emplace_back(i, local[y], -b);
            } else {
                killing += b;
            }
        }
        trip.emplace_back(i, i, inside_deg + (mg.V[x] * mg.mu[x] + killing));
    }
    form.A.resize(m, m);
    form.A.setFromTriplets(trip.begin(), trip.end());
    return form;
}

FiniteForm dirichlet_form(const MeasuredGraph& mg, const std::vector<std::size_t>& U) {
    FiniteForm form;
    form.subset = checked_subset(mg, U);
    form.mode = FiniteForm::Mode::Dirichlet;
    const auto m = static_cast<Eigen::Index>(form.subset.size());
    std::vector<Eigen::Index> idx(form.subset.begin(), form.subset.end());
    Eigen::SparseMatrix<double> full = full_stiffness(mg);
    Eigen::MatrixXd dense(full);
    Eigen::MatrixXd sub(m, m);
    form.mu.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        form.mu[i] = mg.mu[idx[i]];
        for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = dense(idx[i], idx[j]);
    }
    form.A = sub.sparseView();
    return form;
}

FiniteForm form_from_stiffness(Eigen::SparseMatrix<double> A, Eigen::VectorXd mu,
                               FiniteForm::Mode mode) {
    if (A.rows() != A.cols() || A.rows() != mu.size())
        throw Error(ErrorCode::DimensionMismatch, "stiffness/measure sizes");
    FiniteForm form;
    form.subset.resize(static_cast<std::size_t>(A.rows()));
    for (std::size_t i = 0; i < form.subset.size(); ++i) form.subset[i] = i;
    form.mode = mode;
    form.A = std::move(A);
    form.mu = std::move(mu);
    return form;
}

Eigen::VectorXd resolvent(const FiniteForm& form, double alpha, const Eigen::VectorXd& f) {
    if (f.size() != form.size())
        throw Error(ErrorCode::DimensionMismatch, "f length vs form size");
    double lambda0 = form.lambda0();
    if (alpha <= -lambda0 + 1e-6)
        throw Error(ErrorCode::AlphaTooSmall,
                    "alpha must exceed " + std::to_string(-lambda0 + 1e-6));
    Eigen::SparseMatrix<double> M = form.A;
    for (Eigen::Index i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += alpha * form.mu[i];
    Eigen::VectorXd rhs = form.mu.cwiseProduct(f);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(M);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::SolveFailure, "resolvent factorization failed");
    Eigen::VectorXd g = solver.solve(rhs);
    g += solver.solve(rhs - M * g); // one step of iterative refinement
    double scale = rhs.norm() + 1.0;
    if ((M * g - rhs).norm() > 1e-8 * scale)
        throw Error(ErrorCode::SolveFailure, "resolvent residual too large");
    return g;
}

double approximating_form(const FiniteForm& form, double alpha, const Eigen::VectorXd& f) {
    Eigen::VectorXd g = resolvent(form, alpha, f);
    Eigen::VectorXd diff = f - alpha * g;
    return alpha * diff.dot(form.mu.cwiseProduct(f));
}

BeurlingDenyReport beurling_deny_check(const FiniteForm& form, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double base_alpha = std::max(1.0, -form.lambda0() + 1.0);
    BeurlingDenyReport rep{0.0, 0.0, true, true};
    for (int t = 0; t < trials; ++t) {
        double alpha = base_alpha + 9.0 * unit(rng);
        Eigen::VectorXd f(form.size());
        for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = unit(rng);
        Eigen::VectorXd g = resolvent(form, alpha, f);
        rep.max_negative_entry = std::max(rep.max_negative_entry, -g.minCoeff());
        rep.max_excess_over_one = std::max(rep.max_excess_over_one,
                                           (alpha * g).maxCoeff() - 1.0);
    }
    rep.positivity_preserving = rep.max_negative_entry <= 1e-9;
    rep.markovian = rep.max_excess_over_one <= 1e-9;
    return rep;
}

ExcessiveCertificate excessive_check(const MeasuredGraph& mg, const std::vector<std::size_t>& U,
                                     const Eigen::VectorXd& h, const std::vector<double>& betas) {
    return check_excessive_on_form(neumann_form(mg, U), h, betas);
}

Eigen::VectorXd auto_excessive_h(const MeasuredGraph& mg, const std::vector<std::size_t>& U,
                                 std::uint64_t seed) {
    FiniteForm form = neumann_form(mg, U);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Eigen::VectorXd g(form.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = unif(rng);
    return resolvent(form, 1.0, g);
}

CapacityResult capacity(const MeasuredGraph& mg, const std::vector<std::size_t>& domain,
                        const Eigen::VectorXd& h, const std::vector<std::size_t>& U) {
    FiniteForm form = neumann_form(mg, domain);
    ExcessiveCertificate cert = check_excessive_on_form(form, h, kDefaultBetas);
    if (!cert.valid())
        throw Error(ErrorCode::NotExcessive,
                    "h is not 1-excessive, violation " + std::to_string(cert.max_violation));
    return capacity_impl(mg, domain, h, U);
}

double capacity_alt(const MeasuredGraph& mg, const std::vector<std::size_t>& domain,
                    const Eigen::VectorXd& h, const std::vector<std::size_t>& U) {
    FiniteForm form = neumann_form(mg, domain);
    ExcessiveCertificate cert = check_excessive_on_form(form, h, kDefaultBetas);
    if (!cert.valid())
        throw Error(ErrorCode::NotExcessive,
                    "h is not 1-excessive, violation " + std::to_string(cert.max_violation));
    if (U.empty()) return 0.0;

    // minimize |h - f|_Q^2 over f vanishing on U; with r = h - f this is the
    // least-norm problem with r pinned to h on U
    std::vector<std::size_t> target = U;
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());
    std::vector<Eigen::Index> fixed;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < form.subset.size(); ++i) {
        while (pos < target.size() && target[pos] < form.subset[i]) ++pos;
        if (pos < target.size() && target[pos] == form.subset[i])
            fixed.push_back(static_cast<Eigen::Index>(i));
    }
    if (fixed.size() != target.size())
        throw Error(ErrorCode::BadParameter, "capacity target not contained in the domain");
    Eigen::VectorXd fixed_values(fixed.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) fixed_values[i] = h[fixed[i]];

    Eigen::SparseMatrix<double> M = form.A;
    for (Eigen::Index i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += form.mu[i];
    return constrained_min(M, fixed, fixed_values).second;
}

std::vector<double> boundary_capacity(const MeasuredGraph& mg, const Eigen::VectorXd& h,
                                      const Exhaustion& ex) {
    std::vector<std::size_t> domain(mg.size());
    for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = i;
    FiniteForm form = neumann_form(mg, domain);
    ExcessiveCertificate cert = check_excessive_on_form(form, h, kDefaultBetas);
    if (!cert.valid())
        throw Error(ErrorCode::NotExcessive,
                    "h is not 1-excessive, violation " + std::to_string(cert.max_violation));

    std::vector<double> caps;
    for (const auto& level : ex.levels()) {
        std::set<std::size_t> inside(level.begin(), level.end());
        std::vector<std::size_t> complement;
        for (std::size_t x = 0; x < mg.size(); ++x)
            if (!inside.count(x)) complement.push_back(x);
        caps.push_back(capacity_impl(mg, domain, h, complement).value);
    }
    return caps;
}

std::vector<double> recurrence_probe(const MeasuredGraph& mg, const Eigen::VectorXd& f,
                                     const std::vector<double>& levels) {
    if (static_cast<std::size_t>(f.size()) != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "f length vs vertex count");
    if ((mg.V.array() != 0.0).any())
        throw Error(ErrorCode::BadParameter, "recurrence probe requires zero potential");
    if ((f.array() < 0.0).any())
        throw Error(ErrorCode::NegativeF, "recurrence probe requires f >= 0");
    std::vector<double> energies;
    for (double n : levels) {
        // 1 - e_n with e_n = ((n + 1 - f)_+ ^ 1) is clamp(f - n, 0, 1)
        Eigen::VectorXd u =
            (f.array() - n).cwiseMax(0.0).cwiseMin(1.0).matrix();
        double q = 0.0;
        for (const auto& e : mg.graph.edges()) {
            double d = u[static_cast<Eigen::Index>(e.u)] - u[static_cast<Eigen::Index>(e.v)];
            q += e.weight * d * d;
        }
        energies.push_back(q);
    }
    return energies;
}

std::vector<double> measure_criterion_partial_sums(const MeasuredGraph& mg,
                                                   const Eigen::VectorXd& w_min_values,
                                                   double alpha, const Path& p, std::size_t N) {
    if (N == 0 || p.size() < N + 1)
        throw Error(ErrorCode::InvalidPath, "path must contain at least N+1 vertices");
    if (!validate_path(mg.graph, p))
        throw Error(ErrorCode::InvalidPath, "consecutive path vertices must be adjacent");
    if (static_cast<std::size_t>(w_min_values.size()) != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "w_min length vs vertex count");

    std::vector<double> sums;
    double running_product = 1.0;
    double s = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        std::size_t prev = p[n - 1];
        double deg = mg.graph.degree(prev);
        if (deg <= 0.0)
            throw Error(ErrorCode::ZeroDegree, "zero degree along the path at step " +
                                                   std::to_string(n - 1));
        double factor = 1.0 + mg.mu[prev] * (w_min_values[prev] - alpha) / deg;
        running_product *= factor * factor;
        s += mg.mu[p[n]] * running_product;
        sums.push_back(s);
    }
    return sums;
}

std::pair<double, double> form_comparison(const MeasuredGraph& mg,
                                          const std::vector<std::size_t>& U,
                                          const Eigen::VectorXd& f) {
    if (static_cast<std::size_t>(f.size()) != mg.size())
        throw Error(ErrorCode::DimensionMismatch, "f length vs vertex count");
    std::vector<std::size_t> subset = checked_subset(mg, U);
    std::vector<char> inside(mg.size(), 0);
    for (std::size_t x : subset) inside[x] = 1;
    for (std::size_t x = 0; x < mg.size(); ++x)
        if (!inside[x] && f[static_cast<Eigen::Index>(x)] != 0.0)
            throw Error(ErrorCode::SupportViolation,
                        "f must vanish outside U, violated at " + mg.graph.vertex_name(x));

    Eigen::VectorXd fu(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
        fu[static_cast<Eigen::Index>(i)] = f[static_cast<Eigen::Index>(subset[i])];
    return {dirichlet_form(mg, subset).value(fu), neumann_form(mg, subset).value(fu)};
}

} // namespace graphlap
