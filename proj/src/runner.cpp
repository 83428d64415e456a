#include "graphlap/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include <Eigen/Dense>
#include <json.hpp>

#include "graphlap/forms.hpp"
#include "graphlap/io.hpp"
#include "graphlap/metric.hpp"
#include "graphlap/operators.hpp"

namespace graphlap {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string get_param(const std::map<std::string, std::string>& params, const std::string& key,
                      const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double param_double(const std::map<std::string, std::string>& params, const std::string& key,
                    double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameter, key + " must be a number, got " + it->second);
    }
}

long param_long(const std::map<std::string, std::string>& params, const std::string& key,
                long fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stol(it->second);
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameter, key + " must be an integer, got " + it->second);
    }
}

bool param_bool(const std::map<std::string, std::string>& params, const std::string& key,
                bool fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return it->second == "1" || it->second == "true" || it->second == "yes";
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> param_double_list(const std::map<std::string, std::string>& params,
                                      const std::string& key,
                                      const std::vector<double>& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::vector<double> out;
    for (const auto& tok : split_list(it->second)) out.push_back(std::stod(tok));
    return out;
}

HermitianBundle default_bundle(const MeasuredGraph& mg) {
    return scalar_to_bundle(mg.graph, ScalarField::constant(mg.graph, 0.0), mg.V);
}

std::optional<long> numeric_name(const std::string& name) {
    try {
        std::size_t pos = 0;
        long v = std::stol(name, &pos);
        if (pos == name.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

/// Greedy path: from the start vertex repeatedly move to the unvisited
/// neighbor with the largest numeric name (lexicographically largest as a
/// fallback). Matches the canonical 0,1,2,... walk on integer lines.
Path auto_path(const WeightedGraph& g, const std::string& start) {
    std::size_t at = g.has_vertex(start) ? g.index_of(start) : 0;
    Path p{at};
    std::vector<char> seen(g.size(), 0);
    seen[at] = 1;
    while (true) {
        std::optional<std::size_t> best;
        for (const auto& [y, b] : g.neighbors(p.back())) {
            (void)b;
            if (seen[y]) continue;
            if (!best) {
                best = y;
                continue;
            }
            auto ny = numeric_name(g.vertex_name(y));
            auto nb = numeric_name(g.vertex_name(*best));
            bool better = (ny && nb) ? *ny > *nb : g.vertex_name(y) > g.vertex_name(*best);
            if (better) best = y;
        }
        if (!best) break;
        p.push_back(*best);
        seen[*best] = 1;
    }
    return p;
}

/// f_alpha(n) = 1 + sum_{k=1}^{|n|} k^-alpha on integer-named vertices;
/// the symmetric variant is nonnegative and grows in both directions.
Eigen::VectorXd f_alpha_on_names(const WeightedGraph& g, double alpha) {
    Eigen::VectorXd f(static_cast<Eigen::Index>(g.size()));
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto n = numeric_name(g.vertex_name(x));
        if (!n)
            throw Error(ErrorCode::BadParameter,
                        "vertex names must be integers for this analysis: " + g.vertex_name(x));
        double acc = 1.0;
        for (long k = 1; k <= std::abs(*n); ++k) acc += std::pow(static_cast<double>(k), -alpha);
        f[static_cast<Eigen::Index>(x)] = acc;
    }
    return f;
}

struct RandomInstance {
    MeasuredGraph mg;
    HermitianBundle bundle;
};

RandomInstance random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size_dist(2, 50);
    std::uniform_int_distribution<int> dim_dist(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = size_dist(rng);
    std::vector<std::string> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back(std::to_string(i));
    std::vector<NamedEdge> edges;
    std::set<std::pair<int, int>> used;
    // random spanning tree plus extra edges keeps every instance connected
    for (int i = 1; i < n; ++i) {
        int j = static_cast<int>(unit(rng) * i);
        edges.push_back({vertices[j], vertices[i], 0.1 + 1.9 * unit(rng)});
        used.insert({j, i});
    }
    double p = std::min(1.0, 3.0 / n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            if (unit(rng) < p * 0.3 && used.insert({i, j}).second)
                edges.push_back({vertices[i], vertices[j], 0.1 + unit(rng)});
    WeightedGraph g(vertices, edges);
    Eigen::VectorXd mu(n), V(n);
    for (int i = 0; i < n; ++i) {
        mu[i] = 0.5 + 1.5 * unit(rng);
        V[i] = -1.0 + 2.0 * unit(rng);
    }
    MeasuredGraph mg(std::move(g), std::move(mu), std::move(V));
    HermitianBundle bundle = random_bundle(mg.graph, dim_dist(rng), rng());
    return {std::move(mg), std::move(bundle)};
}

std::string timestamp_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json finite_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    if (std::isnan(v)) return json("nan");
    return json(v);
}

} // namespace

std::vector<std::string> emit_example(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> files;
    auto out = [&](const std::string& f) {
        files.push_back((fs::path(out_dir) / f).string());
        return files.back();
    };

    if (name == "z-line") {
        long N = param_long(params, "N", 50);
        std::string v_rule = get_param(params, "v", "zero");
        MeasuredGraph mg = gen_line_z(N, MuRule::Uniform, 0.0,
                                      v_rule == "half-square" ? PotentialRule::HalfSquare
                                                              : PotentialRule::Zero);
        save_graph(out("graph.json"), mg);
        // embedding iota(k) = 2 - 1/k, iota(0) = 0, with boundary point 2
        std::vector<Eigen::VectorXd> iota(mg.size());
        for (std::size_t x = 0; x < mg.size(); ++x) {
            long k = *numeric_name(mg.graph.vertex_name(x));
            Eigen::VectorXd c(1);
            c[0] = k == 0 ? 0.0 : 2.0 - 1.0 / static_cast<double>(k);
            iota[x] = c;
        }
        Eigen::VectorXd b(1);
        b[0] = 2.0;
        save_metric_embedding(out("metric.json"), mg.graph, iota, {b});
    } else if (name == "z-line-nu") {
        long N = param_long(params, "N", 50);
        MeasuredGraph mg =
            params.count("alpha")
                ? gen_line_z(N, MuRule::NuAlpha, param_double(params, "alpha", 2.0))
                : gen_line_z(N, MuRule::NuQuartic);
        save_graph(out("graph.json"), mg);
    } else if (name == "complete-union") {
        long n_max = param_long(params, "n_max", 6);
        bool connect = param_bool(params, "connect", false);
        MeasuredGraph mg = gen_complete_union(n_max, connect);
        save_graph(out("graph.json"), mg);
        // adjacency encoding: theta = -pi on every edge, W = -Deg
        HermitianBundle bundle = scalar_to_bundle(
            mg.graph, ScalarField::constant(mg.graph, -3.14159265358979323846),
            [&] {
                Eigen::VectorXd W(static_cast<Eigen::Index>(mg.size()));
                for (std::size_t x = 0; x < mg.size(); ++x)
                    W[static_cast<Eigen::Index>(x)] = -mg.weighted_degree(x);
                return W;
            }());
        save_bundle(out("bundle.json"), mg.graph, bundle);
    } else if (name == "circle-packing") {
        // hexagonal patch: one unit circle surrounded by six tangent ones
        const double s3 = std::sqrt(3.0);
        std::vector<Circle> circles = {{0, 0, 1},    {2, 0, 1},   {1, s3, 1}, {-1, s3, 1},
                                       {-2, 0, 1},   {-1, -s3, 1}, {1, -s3, 1}};
        CirclePackingResult res = gen_circle_packing_nerve(circles);
        save_graph(out("graph.json"), res.mg);
        std::vector<Eigen::VectorXd> iota(res.mg.size());
        for (std::size_t x = 0; x < res.mg.size(); ++x) {
            Eigen::VectorXd c(2);
            c[0] = circles[x].x;
            c[1] = circles[x].y;
            iota[x] = c;
        }
        save_metric_embedding(out("metric.json"), res.mg.graph, iota, {});
    } else if (name == "hardy-stub") {
        long N = param_long(params, "N", 50);
        std::vector<std::string> vertices;
        std::vector<NamedEdge> edges;
        for (long k = 0; k <= N; ++k) vertices.push_back(std::to_string(k));
        for (long k = 0; k < N; ++k)
            edges.push_back({std::to_string(k), std::to_string(k + 1), 1.0});
        WeightedGraph g(vertices, edges);
        Eigen::VectorXd mu = Eigen::VectorXd::Ones(N + 1);
        Eigen::VectorXd V = Eigen::VectorXd::Zero(N + 1);
        MeasuredGraph mg(std::move(g), std::move(mu), std::move(V));
        save_graph(out("graph.json"), mg);
        json w = json::object();
        for (long k = 0; k <= N; ++k)
            w[std::to_string(k)] = k == 0 ? 0.0 : 1.0 / (4.0 * k * k);
        std::ofstream ws(out("weight.json"));
        ws << json{{"w", w}}.dump(2) << '\n';
    } else {
        throw Error(ErrorCode::UnknownExample, "no example named " + name);
    }
    return files;
}

int run(const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    if (const char* t = std::getenv("GRAPHLAP_THREADS")) {
        try {
            Eigen::setNbThreads(std::max(1, std::stoi(t)));
        } catch (const std::exception&) {
        }
    }

    json report;
    report["version"] = kVersion;
    report["timestamp"] = timestamp_now();
    report["analysis"] = config.analysis;
    report["config"] = {{"graph", config.graph_path},
                        {"bundle", config.bundle_path},
                        {"metric", config.metric_path},
                        {"out", config.out_dir},
                        {"seed", config.seed},
                        {"params", config.params}};
    report["residuals"] = json::object();
    report["verdicts"] = json::object();
    report["outputs"] = json::array();

    int exit_code = 0;
    try {
        fs::create_directories(config.out_dir);
        auto out_file = [&](const std::string& f) {
            std::string p = (fs::path(config.out_dir) / f).string();
            report["outputs"].push_back(p);
            return p;
        };
        auto need_graph = [&] {
            if (config.graph_path.empty())
                throw Error(ErrorCode::BadInput, "analysis requires --graph");
            return load_graph(config.graph_path);
        };
        auto bundle_or_default = [&](const MeasuredGraph& mg) {
            return config.bundle_path.empty() ? default_bundle(mg)
                                              : load_bundle(config.bundle_path, mg.graph);
        };

        const std::string& analysis = config.analysis;
        if (analysis == "validate") {
            MeasuredGraph mg = need_graph();
            json violations = json::array();
            if (!config.bundle_path.empty()) {
                HermitianBundle bundle = load_bundle(config.bundle_path, mg.graph);
                for (const auto& v : validate_connection(mg.graph, bundle)) {
                    static const char* names[] = {"NotHermitian",    "NotUnitary",
                                                  "InverseMismatch", "MissingPhi",
                                                  "ExtraPhi",        "DimMismatch"};
                    violations.push_back({{"kind", names[static_cast<int>(v.kind)]},
                                          {"x", mg.graph.vertex_name(v.x)},
                                          {"y", mg.graph.vertex_name(v.y)},
                                          {"defect", v.defect}});
                }
            }
            report["verdicts"]["violations"] = violations;
            report["verdicts"]["valid"] = violations.empty();
            if (!violations.empty())
                throw Error(ErrorCode::ValidationFailure,
                            std::to_string(violations.size()) + " connection violations");
        } else if (analysis == "assemble") {
            MeasuredGraph mg = need_graph();
            HermitianBundle bundle = bundle_or_default(mg);
            AssembledOperator op = assemble(mg, bundle);
            double consistency = 0.0;
            for (int t = 0; t < 5; ++t) {
                Section f = random_section(bundle, config.seed + static_cast<std::uint64_t>(t));
                Eigen::VectorXcd via_matrix = op.apply(flatten(bundle, f));
                Eigen::VectorXcd direct = flatten(bundle, apply_M(mg, bundle, f));
                consistency = std::max(consistency, (via_matrix - direct).cwiseAbs().maxCoeff());
            }
            report["residuals"]["self_adjoint_defect"] = op.self_adjoint_defect();
            report["residuals"]["apply_consistency"] = consistency;
            std::vector<std::vector<std::string>> rows;
            for (Eigen::Index k = 0; k < op.A.outerSize(); ++k)
                for (Eigen::SparseMatrix<Complex>::InnerIterator it(op.A, k); it; ++it)
                    rows.push_back({std::to_string(it.row()), std::to_string(it.col()),
                                    format_double(it.value().real()),
                                    format_double(it.value().imag())});
            write_csv(out_file("matrix.csv"), {"row", "col", "re", "im"}, rows);
        } else if (analysis == "spectrum") {
            MeasuredGraph mg = need_graph();
            HermitianBundle bundle = bundle_or_default(mg);
            AssembledOperator op = assemble(mg, bundle);
            json spectrum;
            if (op.rows() < 2000) {
                Eigen::MatrixXcd S(op.symmetrized());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
                const auto& ev = solver.eigenvalues();
                std::vector<std::vector<std::string>> rows;
                for (Eigen::Index i = 0; i < ev.size(); ++i)
                    rows.push_back({std::to_string(i), format_double(ev[i])});
                write_csv(out_file("spectrum.csv"), {"index", "eigenvalue"}, rows);
                spectrum = {{"lambda_min", ev.minCoeff()},
                            {"lambda_max", ev.maxCoeff()},
                            {"count", ev.size()}};
            } else {
                spectrum = {{"lambda_min", lambda0_estimate(op)}, {"count", op.rows()}};
            }
            report["spectrum"] = spectrum;
        } else if (analysis == "green-kato") {
            long trials = param_long(config.params, "trials", 100);
            std::mt19937_64 rng(config.seed);
            double max_green = 0.0, max_sym = 0.0, min_kato = kInf;
            for (long t = 0; t < trials; ++t) {
                RandomInstance inst =
                    config.graph_path.empty()
                        ? random_instance(rng)
                        : RandomInstance{load_graph(config.graph_path),
                                         HermitianBundle{}};
                if (!config.graph_path.empty()) inst.bundle = bundle_or_default(inst.mg);
                Section f = random_section(inst.bundle, rng());
                Section phi = random_section(inst.bundle, rng());
                GreenResidual gr = greens_residual(inst.mg, inst.bundle, phi, f);
                double scale =
                    1.0 + std::abs(inner_E(inst.mg, phi, apply_M(inst.mg, inst.bundle, f)));
                max_green = std::max(max_green, gr.form_residual / scale);
                max_sym = std::max(max_sym, gr.symmetry_residual / scale);
                // aligned partner: phi = s f with s >= 0 pointwise
                Section aligned = f;
                std::uniform_real_distribution<double> sdist(0.0, 2.0);
                for (auto& v : aligned) v *= sdist(rng);
                min_kato = std::min(min_kato, kato_gap(inst.mg, inst.bundle, f, aligned));
            }
            report["residuals"]["max_green_form"] = max_green;
            report["residuals"]["max_green_symmetry"] = max_sym;
            report["residuals"]["min_kato_gap"] = finite_or_string(min_kato);
            report["verdicts"]["green_ok"] = max_green <= 1e-10 && max_sym <= 1e-10;
            report["verdicts"]["kato_ok"] = min_kato >= -1e-9;
            if (max_green > 1e-10 || max_sym > 1e-10 || min_kato < -1e-9)
                throw Error(ErrorCode::ValidationFailure, "identity suite failed");
        } else if (analysis == "bounded") {
            MeasuredGraph mg = need_graph();
            HermitianBundle bundle = bundle_or_default(mg);
            BoundednessReport rep = boundedness_report(
                mg, bundle, static_cast<int>(param_long(config.params, "trials", 20)),
                config.seed);
            report["spectrum"] = {{"lambda_min_plus", rep.lambda_min_plus},
                                  {"lambda_max_plus", rep.lambda_max_plus},
                                  {"lambda_min_minus", rep.lambda_min_minus},
                                  {"lambda_max_minus", rep.lambda_max_minus}};
            report["residuals"]["heart_identity"] = rep.heart_residual;
            report["verdicts"]["B_max"] = rep.B_max;
        } else if (analysis == "criterion-measure") {
            MeasuredGraph mg = need_graph();
            Eigen::VectorXd w = config.bundle_path.empty()
                                    ? mg.V
                                    : w_min(load_bundle(config.bundle_path, mg.graph));
            double alpha = param_double(config.params, "alpha", 0.0);
            Path p;
            if (config.params.count("path")) {
                for (const auto& id : split_list(config.params.at("path")))
                    p.push_back(mg.graph.index_of(id));
            } else {
                p = auto_path(mg.graph, get_param(config.params, "start", "0"));
            }
            auto N = static_cast<std::size_t>(
                param_long(config.params, "N", static_cast<long>(p.size()) - 1));
            std::vector<double> sums = measure_criterion_partial_sums(mg, w, alpha, p, N);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t n = 0; n < sums.size(); ++n)
                rows.push_back({std::to_string(n + 1), format_double(sums[n])});
            write_csv(out_file("partial_sums.csv"), {"n", "S_n"}, rows);
            report["verdicts"]["S_final"] = sums.back();
            report["verdicts"]["tail_increment"] =
                sums.back() - sums[sums.size() / 2 > 0 ? sums.size() / 2 - 1 : 0];
        } else if (analysis == "criterion-metric") {
            MeasuredGraph mg = need_graph();
            if (config.metric_path.empty())
                throw Error(ErrorCode::BadInput, "analysis requires --metric");
            MetricInput metric = load_metric(config.metric_path, mg.graph);
            if (!metric.has_embedding)
                throw Error(ErrorCode::BadParameter,
                            "criterion-metric requires an embedding metric with boundary");
            Eigen::VectorXd D = boundary_distance(metric.iota, metric.boundary);
            Eigen::VectorXd w = config.bundle_path.empty()
                                    ? mg.V
                                    : w_min(load_bundle(config.bundle_path, mg.graph));
            Eigen::VectorXd vref =
                Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mg.size()));
            Eigen::VectorXd slack = metric_criterion_slack(w, D, vref);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t x = 0; x < mg.size(); ++x)
                rows.push_back({mg.graph.vertex_name(x),
                                format_double(D[static_cast<Eigen::Index>(x)]),
                                format_double(slack[static_cast<Eigen::Index>(x)])});
            write_csv(out_file("metric_criterion.csv"), {"vertex", "D", "slack"}, rows);
            report["verdicts"]["min_slack"] = slack.minCoeff();
            report["verdicts"]["criterion_satisfied"] = slack.minCoeff() >= -1e-12;
        } else if (analysis == "capacity") {
            MeasuredGraph mg = need_graph();
            if (!config.params.count("target"))
                throw Error(ErrorCode::BadParameter, "capacity requires target=v1,v2,...");
            std::vector<std::size_t> target;
            for (const auto& id : split_list(config.params.at("target")))
                target.push_back(mg.graph.index_of(id));
            std::vector<std::size_t> domain(mg.size());
            for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = i;
            Eigen::VectorXd h = auto_excessive_h(mg, domain, config.seed);
            CapacityResult cap = capacity(mg, domain, h, target);
            double alt = capacity_alt(mg, domain, h, target);
            report["verdicts"]["capacity"] = cap.value;
            report["verdicts"]["capacity_alt"] = alt;
            report["residuals"]["capacity_cross_check"] = std::abs(cap.value - alt);
            report["residuals"]["sandwich_violation"] = cap.sandwich_violation;
            std::vector<std::vector<std::string>> rows;
            for (std::size_t x = 0; x < mg.size(); ++x)
                rows.push_back({mg.graph.vertex_name(x),
                                format_double(h[static_cast<Eigen::Index>(x)]),
                                format_double(cap.equilibrium[static_cast<Eigen::Index>(x)])});
            write_csv(out_file("equilibrium.csv"), {"vertex", "h", "h_U"}, rows);
        } else if (analysis == "boundary-capacity") {
            MeasuredGraph mg = need_graph();
            std::string origin = get_param(config.params, "origin", "0");
            std::size_t seed_vertex =
                mg.graph.has_vertex(origin) ? mg.graph.index_of(origin) : 0;
            std::vector<double> radii_d =
                param_double_list(config.params, "radii", {5, 10, 20, 40, 80});
            std::vector<std::size_t> radii(radii_d.begin(), radii_d.end());
            Exhaustion ex = bfs_exhaustion(mg.graph, seed_vertex, radii);
            std::vector<std::size_t> domain(mg.size());
            for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = i;
            Eigen::VectorXd h = auto_excessive_h(mg, domain, config.seed);
            std::vector<double> caps = boundary_capacity(mg, h, ex);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < caps.size(); ++i)
                rows.push_back({std::to_string(i + 1), format_double(radii_d[i]),
                                format_double(caps[i])});
            write_csv(out_file("boundary_capacity.csv"), {"level", "radius", "capacity"}, rows);
            double worst = 0.0;
            for (std::size_t i = 1; i < caps.size(); ++i)
                worst = std::max(worst, caps[i] - caps[i - 1]);
            report["residuals"]["monotonicity_violation"] = worst;
            report["verdicts"]["first"] = caps.front();
            report["verdicts"]["last"] = caps.back();
        } else if (analysis == "recurrence") {
            MeasuredGraph mg = need_graph();
            double alpha = param_double(config.params, "alpha", 0.75);
            std::vector<double> levels =
                param_double_list(config.params, "levels", {1, 2, 3, 4, 5});
            Eigen::VectorXd f = f_alpha_on_names(mg.graph, alpha);
            std::vector<double> energies = recurrence_probe(mg, f, levels);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < energies.size(); ++i)
                rows.push_back({format_double(levels[i]), format_double(energies[i])});
            write_csv(out_file("recurrence.csv"), {"level", "energy"}, rows);
            report["verdicts"]["first"] = energies.front();
            report["verdicts"]["last"] = energies.back();
        } else if (analysis == "example") {
            std::string name = get_param(config.params, "name", "");
            for (const auto& f : emit_example(name, config.params, config.out_dir))
                report["outputs"].push_back(f);
        } else {
            throw Error(ErrorCode::BadParameter, "unknown analysis: " + analysis);
        }
    } catch (const Error& e) {
        report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
        exit_code = e.numerical() ? 3 : 2;
    } catch (const std::exception& e) {
        report["error"] = {{"code", "BadInput"}, {"message", e.what()}};
        exit_code = 2;
    }

    try {
        fs::create_directories(config.out_dir);
        std::ofstream out(fs::path(config.out_dir) / "report.json");
        out << report.dump(2) << '\n';
    } catch (const std::exception&) {
        return exit_code == 0 ? 2 : exit_code;
    }
    return exit_code;
}

} // namespace graphlap
