#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphlap/bundle.hpp"
#include "test_helpers.hpp"

using namespace graphlap;

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

TEST_CASE("scalar_to_bundle") {
    MeasuredGraph mg = testing::chain(3);

    HermitianBundle flat =
        scalar_to_bundle(mg.graph, ScalarField::constant(mg.graph, 0.0), mg.V);
    CHECK(flat.phi(0, 1)(0, 0) == Complex(1.0, 0.0));
    CHECK(flat.W[0](0, 0) == Complex(0.0, 0.0));

    HermitianBundle pi_bundle =
        scalar_to_bundle(mg.graph, ScalarField::constant(mg.graph, -kPi), mg.V);
    for (const auto& e : mg.graph.edges()) {
        CHECK(std::abs(pi_bundle.phi(e.u, e.v)(0, 0) - Complex(-1.0, 0.0)) < 1e-12);
        CHECK(std::abs(pi_bundle.phi(e.v, e.u)(0, 0) - Complex(-1.0, 0.0)) < 1e-12);
    }

    ScalarField quarter;
    quarter.theta[{0, 1}] = kPi / 2.0;
    quarter.theta[{1, 0}] = -kPi / 2.0;
    quarter.theta[{1, 2}] = 0.0;
    quarter.theta[{2, 1}] = 0.0;
    HermitianBundle qb = scalar_to_bundle(mg.graph, quarter, mg.V);
    CHECK(std::abs(qb.phi(0, 1)(0, 0) - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(qb.phi(1, 0)(0, 0) - Complex(0.0, -1.0)) < 1e-12);

    ScalarField bad;
    bad.theta[{0, 1}] = 1.0;
    bad.theta[{1, 0}] = 1.0; // not antisymmetric
    CHECK_THROWS_AS(scalar_to_bundle(mg.graph, bad, mg.V), Error);
}

TEST_CASE("w_min") {
    MeasuredGraph mg = testing::chain(2);
    HermitianBundle b;
    b.dim = {2, 2};
    b.W.resize(2);
    b.W[0] = Eigen::Vector2cd(1.0, -2.0).asDiagonal();
    b.W[1] = (Eigen::MatrixXcd(2, 2) << 0, 1, 1, 0).finished();
    b.Phi[{0, 1}] = Eigen::MatrixXcd::Identity(2, 2);
    b.Phi[{1, 0}] = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::VectorXd w = w_min(b);
    CHECK(w[0] == doctest::Approx(-2.0));
    CHECK(w[1] == doctest::Approx(-1.0));

    Eigen::VectorXd V(2);
    V << 3.5, -0.25;
    HermitianBundle scalar = scalar_to_bundle(mg.graph, ScalarField::constant(mg.graph, 0.0), V);
    Eigen::VectorXd ws = w_min(scalar);
    CHECK(ws[0] == 3.5); // exact reduction to the potential
    CHECK(ws[1] == -0.25);

    b.W[0](0, 1) = Complex(1.0, 0.0); // now non-Hermitian
    CHECK_THROWS_AS(w_min(b), Error);
}

TEST_CASE("validate_connection") {
    MeasuredGraph mg = testing::chain(2);
    HermitianBundle ok = scalar_to_bundle(mg.graph, ScalarField::constant(mg.graph, 0.0), mg.V);
    CHECK(validate_connection(mg.graph, ok).empty());
    // idempotent and side-effect free
    CHECK(validate_connection(mg.graph, ok).empty());

    HermitianBundle stretched = ok;
    stretched.Phi[{0, 1}](0, 0) = Complex(2.0, 0.0);
    auto v1 = validate_connection(mg.graph, stretched);
    bool has_unitary = false;
    for (const auto& v : v1)
        if (v.kind == ConnectionViolation::Kind::NotUnitary) has_unitary = true;
    CHECK(has_unitary);

    HermitianBundle mismatched = ok;
    mismatched.Phi[{0, 1}](0, 0) = Complex(0.0, 1.0);
    mismatched.Phi[{1, 0}](0, 0) = Complex(0.0, 1.0); // i * i != 1
    auto v2 = validate_connection(mg.graph, mismatched);
    bool has_inverse = false;
    for (const auto& v : v2)
        if (v.kind == ConnectionViolation::Kind::InverseMismatch) has_inverse = true;
    CHECK(has_inverse);

    HermitianBundle missing = ok;
    missing.Phi.erase({1, 0});
    auto v3 = validate_connection(mg.graph, missing);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0].kind == ConnectionViolation::Kind::MissingPhi);

    HermitianBundle extra = ok;
    extra.Phi[{0, 0}] = Eigen::MatrixXcd::Identity(1, 1);
    auto v4 = validate_connection(mg.graph, extra);
    REQUIRE(v4.size() == 1);
    CHECK(v4[0].kind == ConnectionViolation::Kind::ExtraPhi);
}

TEST_CASE("random_bundle determinism and unitarity") {
    std::mt19937_64 rng(3);
    MeasuredGraph mg = testing::random_measured_graph(rng, 12);
    HermitianBundle a = random_bundle(mg.graph, 3, 42);
    HermitianBundle b = random_bundle(mg.graph, 3, 42);
    for (std::size_t x = 0; x < mg.size(); ++x)
        CHECK((a.W[x] - b.W[x]).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& [key, mat] : a.Phi)
        CHECK((mat - b.Phi.at(key)).cwiseAbs().maxCoeff() == 0.0);

    CHECK(validate_connection(mg.graph, a).empty());

    HermitianBundle scalar = random_bundle(mg.graph, 1, 7);
    for (const auto& [key, mat] : scalar.Phi)
        CHECK(std::abs(std::abs(mat(0, 0)) - 1.0) < 1e-12);

    // unitaries are isometries on random fibers
    std::normal_distribution<double> gauss;
    for (const auto& e : mg.graph.edges()) {
        Eigen::VectorXcd xi(3);
        for (int i = 0; i < 3; ++i) xi[i] = Complex(gauss(rng), gauss(rng));
        CHECK(std::abs((a.phi(e.u, e.v) * xi).norm() - xi.norm()) < 1e-10);
    }
}

TEST_CASE("sections flatten and unflatten") {
    std::mt19937_64 rng(5);
    MeasuredGraph mg = testing::random_measured_graph(rng, 8);
    HermitianBundle b = random_bundle(mg.graph, 2, 9);
    Section f = zero_section(b);
    for (std::size_t x = 0; x < f.size(); ++x) f[x].setConstant(Complex(x, -1.0));
    Section back = unflatten(b, flatten(b, f));
    for (std::size_t x = 0; x < f.size(); ++x)
        CHECK((f[x] - back[x]).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd mag = section_abs(f);
    for (std::size_t x = 0; x < f.size(); ++x)
        CHECK(mag[static_cast<Eigen::Index>(x)] == doctest::Approx(f[x].norm()));

    Section wrong = f;
    wrong[0] = Eigen::VectorXcd::Zero(5);
    CHECK_THROWS_AS(check_section(b, wrong), Error);
}
