#include "graphlap/bundle.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace graphlap {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}
} // namespace

ScalarField ScalarField::constant(const WeightedGraph& g, double value) {
    ScalarField field;
    for (const auto& e : g.edges()) {
        field.theta[{e.u, e.v}] = wrap_angle(value);
        field.theta[{e.v, e.u}] = wrap_angle(-value);
    }
    return field;
}

Eigen::Index HermitianBundle::total_dim() const {
    Eigen::Index total = 0;
    for (auto d : dim) total += d;
    return total;
}

std::vector<Eigen::Index> HermitianBundle::offsets() const {
    std::vector<Eigen::Index> off(dim.size() + 1, 0);
    for (std::size_t i = 0; i < dim.size(); ++i) off[i + 1] = off[i] + dim[i];
    return off;
}

const Eigen::MatrixXcd& HermitianBundle::phi(std::size_t x, std::size_t y) const {
    auto it = Phi.find({x, y});
    if (it == Phi.end())
        throw Error(ErrorCode::ValidationFailure,
                    "missing Phi for edge " + std::to_string(x) + "->" + std::to_string(y));
    return it->second;
}

HermitianBundle HermitianBundle::flipped_connection() const {
    HermitianBundle out = *this;
    for (auto& [key, mat] : out.Phi) mat = -mat;
    return out;
}

Section zero_section(const HermitianBundle& bundle) {
    Section f(bundle.dim.size());
    for (std::size_t x = 0; x < bundle.dim.size(); ++x)
        f[x] = Eigen::VectorXcd::Zero(bundle.dim[x]);
    return f;
}

void check_section(const HermitianBundle& bundle, const Section& f) {
    if (f.size() != bundle.dim.size())
        throw Error(ErrorCode::DimensionMismatch, "section vertex count");
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f[x].size() != bundle.dim[x])
            throw Error(ErrorCode::DimensionMismatch,
                        "section fiber size at vertex " + std::to_string(x));
}

Eigen::VectorXcd flatten(const HermitianBundle& bundle, const Section& f) {
    check_section(bundle, f);
    auto off = bundle.offsets();
    Eigen::VectorXcd v(bundle.total_dim());
    for (std::size_t x = 0; x < f.size(); ++x) v.segment(off[x], bundle.dim[x]) = f[x];
    return v;
}

Section unflatten(const HermitianBundle& bundle, const Eigen::VectorXcd& v) {
    if (v.size() != bundle.total_dim())
        throw Error(ErrorCode::DimensionMismatch, "flat section length");
    auto off = bundle.offsets();
    Section f(bundle.dim.size());
    for (std::size_t x = 0; x < f.size(); ++x) f[x] = v.segment(off[x], bundle.dim[x]);
    return f;
}

Eigen::VectorXd section_abs(const Section& f) {
    Eigen::VectorXd out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[x].norm();
    return out;
}

HermitianBundle scalar_to_bundle(const WeightedGraph& g, const ScalarField& theta,
                                 const Eigen::VectorXd& V) {
    if (static_cast<std::size_t>(V.size()) != g.size())
        throw Error(ErrorCode::DimensionMismatch, "potential length vs vertex count");
    HermitianBundle bundle;
    bundle.dim.assign(g.size(), 1);
    bundle.W.resize(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        bundle.W[x] = Eigen::MatrixXcd::Constant(1, 1, Complex(V[x], 0.0));
    }
    for (const auto& e : g.edges()) {
        auto fwd = theta.theta.find({e.u, e.v});
        auto bwd = theta.theta.find({e.v, e.u});
        double t_uv = fwd != theta.theta.end() ? fwd->second : 0.0;
        double t_vu = bwd != theta.theta.end() ? bwd->second : 0.0;
        if (std::abs(wrap_angle(t_uv + t_vu)) > 1e-12 &&
            std::abs(wrap_angle(t_uv + t_vu) - kTwoPi) > 1e-12)
            throw Error(ErrorCode::AsymmetricTheta,
                        "theta(" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") not antisymmetric");
        bundle.Phi[{e.u, e.v}] =
            Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, t_uv));
        bundle.Phi[{e.v, e.u}] =
            Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, -t_uv));
    }
    return bundle;
}

Eigen::VectorXd w_min(const HermitianBundle& bundle) {
    Eigen::VectorXd out(bundle.W.size());
    for (std::size_t x = 0; x < bundle.W.size(); ++x) {
        const auto& W = bundle.W[x];
        double defect = (W - W.adjoint()).cwiseAbs().maxCoeff();
        if (defect > kBundleTol)
            throw Error(ErrorCode::NonHermitian,
                        "W at vertex " + std::to_string(x) + ", defect " + std::to_string(defect));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(W, Eigen::EigenvaluesOnly);
        out[x] = solver.eigenvalues().minCoeff();
    }
    return out;
}

std::vector<ConnectionViolation> validate_connection(const WeightedGraph& g,
                                                     const HermitianBundle& bundle) {
    std::vector<ConnectionViolation> out;
    using Kind = ConnectionViolation::Kind;

    for (std::size_t x = 0; x < bundle.W.size(); ++x) {
        if (bundle.W[x].rows() != bundle.dim[x] || bundle.W[x].cols() != bundle.dim[x]) {
            out.push_back({Kind::DimMismatch, x, x, 0.0});
            continue;
        }
        double defect = (bundle.W[x] - bundle.W[x].adjoint()).cwiseAbs().maxCoeff();
        if (defect > kBundleTol) out.push_back({Kind::NotHermitian, x, x, defect});
    }

    for (const auto& e : g.edges()) {
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            auto it = bundle.Phi.find({x, y});
            if (it == bundle.Phi.end()) {
                out.push_back({Kind::MissingPhi, x, y, 0.0});
                continue;
            }
            const auto& P = it->second;
            if (P.rows() != bundle.dim[x] || P.cols() != bundle.dim[y]) {
                out.push_back({Kind::DimMismatch, x, y, 0.0});
                continue;
            }
            if (P.rows() != P.cols()) {
                // unequal fiber dims across an edge are rejected outright
                out.push_back({Kind::DimMismatch, x, y, 0.0});
                continue;
            }
            double unitary_defect =
                (P.adjoint() * P - Eigen::MatrixXcd::Identity(P.cols(), P.cols()))
                    .cwiseAbs()
                    .maxCoeff();
            if (unitary_defect > kBundleTol)
                out.push_back({Kind::NotUnitary, x, y, unitary_defect});
        }
        auto fwd = bundle.Phi.find({e.u, e.v});
        auto bwd = bundle.Phi.find({e.v, e.u});
        if (fwd != bundle.Phi.end() && bwd != bundle.Phi.end() &&
            fwd->second.rows() == bwd->second.cols() &&
            fwd->second.cols() == bwd->second.rows()) {
            double inv_defect =
                (fwd->second * bwd->second -
                 Eigen::MatrixXcd::Identity(fwd->second.rows(), fwd->second.rows()))
                    .cwiseAbs()
                    .maxCoeff();
            if (inv_defect > kBundleTol)
                out.push_back({Kind::InverseMismatch, e.u, e.v, inv_defect});
        }
    }

    for (const auto& [key, P] : bundle.Phi) {
        (void)P;
        if (!g.adjacent(key.first, key.second))
            out.push_back({Kind::ExtraPhi, key.first, key.second, 0.0});
    }
    return out;
}

HermitianBundle random_bundle(const WeightedGraph& g, Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw Error(ErrorCode::BadParameter, "fiber dimension must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        return m;
    };

    HermitianBundle bundle;
    bundle.dim.assign(g.size(), dim);
    bundle.W.resize(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        Eigen::MatrixXcd A = random_matrix(dim, dim);
        bundle.W[x] = 0.5 * (A + A.adjoint());
    }
    for (const auto& e : g.edges()) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(dim, dim));
        Eigen::MatrixXcd Q = qr.householderQ();
        bundle.Phi[{e.u, e.v}] = Q;
        bundle.Phi[{e.v, e.u}] = Q.adjoint();
    }
    return bundle;
}

} // namespace graphlap
