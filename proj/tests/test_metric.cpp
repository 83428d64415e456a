#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "graphlap/metric.hpp"
#include "test_helpers.hpp"

using namespace graphlap;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Embedding of the truncated integer line: iota(k) = 2 - 1/k, iota(0) = 0.
std::vector<Eigen::VectorXd> z_embedding(const WeightedGraph& g) {
    std::vector<Eigen::VectorXd> iota(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        long k = std::stol(g.vertex_name(x));
        Eigen::VectorXd c(1);
        c[0] = k == 0 ? 0.0 : 2.0 - 1.0 / static_cast<double>(k);
        iota[x] = c;
    }
    return iota;
}
} // namespace

TEST_CASE("path_metric") {
    MeasuredGraph chain = testing::chain(4);
    PseudoMetric rho = path_metric(chain.graph, EdgeLength::constant(chain.graph, 1.0));
    CHECK(rho(0, 3) == doctest::Approx(3.0));
    CHECK(rho(1, 1) == 0.0);

    // triangle with one heavy edge: two-hop shortcut wins
    WeightedGraph tri({"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "c", 1.0}, {"a", "c", 1.0}});
    EdgeLength sigma;
    sigma.sigma[{0, 1}] = 1.0;
    sigma.sigma[{1, 2}] = 1.0;
    sigma.sigma[{0, 2}] = 3.0;
    PseudoMetric rt = path_metric(tri, sigma);
    CHECK(rt(0, 2) == doctest::Approx(2.0));

    WeightedGraph lonely({"x"}, {});
    CHECK(path_metric(lonely, EdgeLength{})(0, 0) == 0.0);

    // disconnected pairs sit at +inf
    WeightedGraph pair({"x", "y"}, {});
    CHECK(path_metric(pair, EdgeLength{})(0, 1) == kInf);

    EdgeLength missing;
    missing.sigma[{0, 1}] = 1.0;
    CHECK_THROWS_AS(path_metric(tri, missing), Error);
    EdgeLength offgraph = EdgeLength::constant(chain.graph, 1.0);
    CHECK_THROWS_AS(path_metric(tri, offgraph), Error);
}

TEST_CASE("path metric respects edge bound and triangle inequality") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> len(0.1, 2.0);
    for (int t = 0; t < 10; ++t) {
        MeasuredGraph mg = testing::random_measured_graph(rng, 15);
        EdgeLength sigma;
        for (const auto& e : mg.graph.edges()) sigma.sigma[{e.u, e.v}] = len(rng);
        PseudoMetric rho = path_metric(mg.graph, sigma);
        for (const auto& e : mg.graph.edges())
            CHECK(rho(e.u, e.v) <= sigma.at(e.u, e.v) + 1e-12);
        for (std::size_t i = 0; i < mg.size(); ++i)
            for (std::size_t j = 0; j < mg.size(); ++j) {
                CHECK(std::abs(rho(i, j) - rho(j, i)) <= 1e-12);
                for (std::size_t k = 0; k < mg.size(); ++k)
                    CHECK(rho(i, j) <= rho(i, k) + rho(k, j) + 1e-12);
            }
    }
}

TEST_CASE("huang_sigma and strong intrinsicity") {
    MeasuredGraph cyc = testing::cycle(6, 1.0); // mu=1, deg=2 everywhere
    EdgeLength h = huang_sigma(cyc);
    for (const auto& [key, v] : h.sigma) CHECK(v == doctest::Approx(std::sqrt(0.5)));

    // mu = deg gives sigma = 1
    MeasuredGraph cyc2(cyc.graph, 2.0 * Eigen::VectorXd::Ones(6), cyc.V);
    for (const auto& [key, v] : huang_sigma(cyc2).sigma) CHECK(v == doctest::Approx(1.0));

    // mixed ratio takes the min before the square root
    WeightedGraph two({"x", "y"}, {{"x", "y", 1.0}});
    Eigen::VectorXd mu(2);
    mu << 0.25, 1.0; // ratios 1/4 and 1
    MeasuredGraph m2(two, mu, Eigen::VectorXd::Zero(2));
    CHECK(huang_sigma(m2).sigma.begin()->second == doctest::Approx(0.5));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        MeasuredGraph mg = testing::random_measured_graph(rng, 25);
        Eigen::VectorXd slack = strongly_intrinsic_slack(mg, huang_sigma(mg));
        CHECK(slack.minCoeff() >= -1e-12);

        EdgeLength big = huang_sigma(mg);
        for (auto& [key, v] : big.sigma) v *= 10.0;
        CHECK(strongly_intrinsic_slack(mg, big).minCoeff() < 0.0);
    }

    // edgeless vertex keeps its full measure as slack
    WeightedGraph sparse({"a", "b", "c"}, {{"a", "b", 1.0}});
    MeasuredGraph ms(sparse, Eigen::VectorXd::Constant(3, 2.0), Eigen::VectorXd::Zero(3));
    EdgeLength s;
    s.sigma[{0, 1}] = 1.0;
    CHECK(strongly_intrinsic_slack(ms, s)[2] == doctest::Approx(2.0));
}

TEST_CASE("intrinsic_slack") {
    MeasuredGraph mg = testing::chain(5);
    PseudoMetric zero{PseudoMetric::Kind::Table,
                      Eigen::MatrixXd::Zero(5, 5)};
    Eigen::VectorXd slack = intrinsic_slack(mg, zero);
    for (Eigen::Index i = 0; i < 5; ++i) CHECK(slack[i] == doctest::Approx(mg.mu[i]));

    std::mt19937_64 rng(19);
    for (int t = 0; t < 10; ++t) {
        MeasuredGraph r = testing::random_measured_graph(rng, 20);
        PseudoMetric rho = path_metric(r.graph, huang_sigma(r));
        Eigen::VectorXd is = intrinsic_slack(r, rho);
        Eigen::VectorXd ss = strongly_intrinsic_slack(r, huang_sigma(r));
        CHECK(is.minCoeff() >= -1e-12);
        // path metric <= sigma on edges, so intrinsic slack dominates
        for (Eigen::Index i = 0; i < is.size(); ++i) CHECK(is[i] >= ss[i] - 1e-12);
    }
}

TEST_CASE("embedding_metric") {
    WeightedGraph two({"x", "y"}, {{"x", "y", 1.0}});
    std::vector<Eigen::VectorXd> centers(2, Eigen::VectorXd::Zero(2));
    centers[1][0] = 2.0;
    EmbeddingResult res = embedding_metric(two, centers);
    CHECK(res.metric(0, 1) == doctest::Approx(2.0));
    CHECK(res.mu_iota[0] == doctest::Approx(4.0));
    CHECK(res.mu_iota[1] == doctest::Approx(4.0));
    CHECK(res.warnings.empty());

    std::vector<Eigen::VectorXd> constant(2, Eigen::VectorXd::Zero(2));
    EmbeddingResult collapsed = embedding_metric(two, constant);
    CHECK_FALSE(collapsed.warnings.empty());
    CHECK(collapsed.metric(0, 1) == 0.0);

    CHECK_THROWS_AS(embedding_metric(two, std::vector<Eigen::VectorXd>(1)), Error);
}

TEST_CASE("z-line embedding measure from the defining sum") {
    MeasuredGraph line = gen_line_z(10, MuRule::Uniform);
    EmbeddingResult res = embedding_metric(line.graph, z_embedding(line.graph));
    // interior k with 2 <= |k| <= 9: mu_iota(k) = (1/(k(k-1)))^2 + (1/(k(k+1)))^2
    for (long k = 2; k <= 9; ++k) {
        double a = 1.0 / (static_cast<double>(k) * (k - 1));
        double b = 1.0 / (static_cast<double>(k) * (k + 1));
        double expect = a * a + b * b;
        std::size_t x = line.graph.index_of(std::to_string(k));
        CHECK(res.mu_iota[static_cast<Eigen::Index>(x)] ==
              doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("ball") {
    MeasuredGraph chain = testing::chain(5);
    PseudoMetric rho = path_metric(chain.graph, EdgeLength::constant(chain.graph, 1.0));
    BallResult b0 = ball(rho, 2, 0.0);
    CHECK(b0.members == std::vector<std::size_t>{2});
    CHECK_FALSE(b0.saturated);

    BallResult b1 = ball(rho, 2, 1.5);
    CHECK(b1.members == std::vector<std::size_t>{1, 2, 3});

    BallResult all = ball(rho, 2, kInf);
    CHECK(all.saturated);
    CHECK(all.members.size() == 5);
}

TEST_CASE("boundary_distance") {
    MeasuredGraph line = gen_line_z(10, MuRule::Uniform);
    auto iota = z_embedding(line.graph);

    Eigen::VectorXd none = boundary_distance(iota, {});
    CHECK(none.minCoeff() == kInf);

    Eigen::VectorXd b(1);
    b[0] = 2.0;
    Eigen::VectorXd D = boundary_distance(iota, {b});
    for (long k = -10; k <= 10; ++k) {
        std::size_t x = line.graph.index_of(std::to_string(k));
        double expect = k == 0 ? 2.0 : 1.0 / std::abs(static_cast<double>(k));
        CHECK(D[static_cast<Eigen::Index>(x)] == doctest::Approx(expect).epsilon(1e-14));
    }

    // boundary point sitting on a vertex image gives distance zero there
    Eigen::VectorXd onv(1);
    onv[0] = 0.0;
    CHECK(boundary_distance(iota, {onv})[line.graph.index_of("0")] == 0.0);

    CHECK_THROWS_AS(boundary_distance_table(Eigen::VectorXd::Constant(3, -1.0)), Error);
}

TEST_CASE("metric_criterion_slack") {
    Eigen::VectorXd w(3), vref(3);
    w << 1.0, 2.0, 3.0;
    vref = w;
    Eigen::VectorXd Dinf = Eigen::VectorXd::Constant(3, kInf);
    Eigen::VectorXd slack = metric_criterion_slack(w, Dinf, vref);
    CHECK(slack.cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd D = Eigen::VectorXd::Constant(3, 0.5);
    Eigen::VectorXd s2 = metric_criterion_slack(w, D, Eigen::VectorXd::Zero(3));
    CHECK(s2[0] == doctest::Approx(1.0 - 2.0)); // 1/(2*0.25) = 2
    CHECK(s2[2] == doctest::Approx(3.0 - 2.0));

    Eigen::VectorXd bad = D;
    bad[1] = 0.0;
    CHECK_THROWS_AS(metric_criterion_slack(w, bad, vref), Error);
}

TEST_CASE("intrinsic_from_function") {
    MeasuredGraph chain = testing::chain(5);
    Eigen::VectorXd id(5);
    id << 0, 1, 2, 3, 4;
    FunctionMetricResult res = intrinsic_from_function(chain.graph, id);
    CHECK(res.metric(0, 4) == doctest::Approx(4.0));
    for (Eigen::Index i = 1; i <= 3; ++i) CHECK(res.mu_f[i] == doctest::Approx(2.0));
    CHECK(res.total_mass == doctest::Approx(res.two_q0).epsilon(1e-12));

    CHECK_THROWS_AS(intrinsic_from_function(chain.graph, Eigen::VectorXd::Ones(5)), Error);

    // g_alpha with alpha=2 at n=1: mu = 1/8 + 1/2
    MeasuredGraph line = gen_line_z(5, MuRule::Uniform);
    Eigen::VectorXd g(static_cast<Eigen::Index>(line.size()));
    for (std::size_t x = 0; x < line.size(); ++x) {
        long n = std::stol(line.graph.vertex_name(x));
        double f = 1.0;
        for (long k = 1; k <= std::labs(n); ++k) f += std::pow(static_cast<double>(k), -1.0);
        if (n < 0) f = 2.0 - f; // sgn variant keeps the function injective
        g[static_cast<Eigen::Index>(x)] = f / std::sqrt(2.0);
    }
    FunctionMetricResult zres = intrinsic_from_function(line.graph, g);
    CHECK(zres.mu_f[static_cast<Eigen::Index>(line.graph.index_of("1"))] ==
          doctest::Approx(0.625).epsilon(1e-13));
    CHECK(zres.total_mass == doctest::Approx(zres.two_q0).epsilon(1e-12));
}

TEST_CASE("table metric validation") {
    Eigen::MatrixXd good(3, 3);
    good << 0, 1, 2, 1, 0, 1, 2, 1, 0;
    PseudoMetric t = PseudoMetric::from_table(good);
    CHECK(t(0, 2) == 2.0);

    Eigen::MatrixXd asym = good;
    asym(0, 1) = 5.0;
    CHECK_THROWS_AS(PseudoMetric::from_table(asym), Error);

    Eigen::MatrixXd tri = good;
    tri(0, 2) = 10.0;
    tri(2, 0) = 10.0;
    CHECK_THROWS_AS(PseudoMetric::from_table(tri), Error);

    Eigen::MatrixXd negd = good;
    negd(0, 1) = -1.0;
    negd(1, 0) = -1.0;
    CHECK_THROWS_AS(PseudoMetric::from_table(negd), Error);
}
