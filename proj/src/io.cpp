#include "graphlap/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace graphlap {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, path + ": " + e.what());
    }
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BadInput, "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

Complex parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw Error(ErrorCode::BadInput, where + ": complex number must be [re,im]");
}

Eigen::MatrixXcd parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw Error(ErrorCode::BadInput, where + ": matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
            throw Error(ErrorCode::BadInput, where + ": ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = parse_complex(j[r][c], where);
    }
    return m;
}

json dump_matrix(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

std::pair<std::string, std::string> split_edge_key(const std::string& key) {
    auto pos = key.find("->");
    if (pos == std::string::npos)
        throw Error(ErrorCode::BadInput, "edge key must look like \"u->v\": " + key);
    return {key.substr(0, pos), key.substr(pos + 2)};
}

} // namespace

MeasuredGraph load_graph(const std::string& path) {
    json j = read_json(path);
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw Error(ErrorCode::BadInput, path + ": missing vertices array");
    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) vertices.push_back(v.get<std::string>());

    std::vector<NamedEdge> edges;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 3)
                throw Error(ErrorCode::BadInput, path + ": edge must be [u,v,b]");
            edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                             e[2].get<double>()});
        }
    }
    WeightedGraph g(vertices, edges);

    Eigen::VectorXd mu = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(g.size()));
    Eigen::VectorXd V = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
    if (j.contains("mu"))
        for (const auto& [key, value] : j["mu"].items())
            mu[static_cast<Eigen::Index>(g.index_of(key))] = value.get<double>();
    if (j.contains("V"))
        for (const auto& [key, value] : j["V"].items())
            V[static_cast<Eigen::Index>(g.index_of(key))] = value.get<double>();
    return {std::move(g), std::move(mu), std::move(V)};
}

void save_graph(const std::string& path, const MeasuredGraph& mg) {
    json j;
    j["vertices"] = mg.graph.vertices();
    json edges = json::array();
    for (const auto& e : mg.graph.edges())
        edges.push_back({mg.graph.vertex_name(e.u), mg.graph.vertex_name(e.v), e.weight});
    j["edges"] = edges;
    json mu = json::object(), V = json::object();
    for (std::size_t x = 0; x < mg.size(); ++x) {
        mu[mg.graph.vertex_name(x)] = mg.mu[static_cast<Eigen::Index>(x)];
        V[mg.graph.vertex_name(x)] = mg.V[static_cast<Eigen::Index>(x)];
    }
    j["mu"] = mu;
    j["V"] = V;
    write_json(path, j);
}

HermitianBundle load_bundle(const std::string& path, const WeightedGraph& g) {
    json j = read_json(path);
    HermitianBundle bundle;
    bundle.dim.assign(g.size(), 1);
    if (j.contains("dim"))
        for (const auto& [key, value] : j["dim"].items())
            bundle.dim[g.index_of(key)] = value.get<Eigen::Index>();
    bundle.W.resize(g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
        bundle.W[x] = Eigen::MatrixXcd::Zero(bundle.dim[x], bundle.dim[x]);
    if (j.contains("W"))
        for (const auto& [key, value] : j["W"].items())
            bundle.W[g.index_of(key)] = parse_matrix(value, path + " W[" + key + "]");
    if (j.contains("Phi")) {
        for (const auto& [key, value] : j["Phi"].items()) {
            auto [u, v] = split_edge_key(key);
            bundle.Phi[{g.index_of(u), g.index_of(v)}] =
                parse_matrix(value, path + " Phi[" + key + "]");
        }
    } else {
        for (const auto& e : g.edges()) {
            bundle.Phi[{e.u, e.v}] = Eigen::MatrixXcd::Identity(bundle.dim[e.u], bundle.dim[e.v]);
            bundle.Phi[{e.v, e.u}] = Eigen::MatrixXcd::Identity(bundle.dim[e.v], bundle.dim[e.u]);
        }
    }
    // single-orientation files get the inverse orientation filled in
    for (const auto& e : g.edges()) {
        auto fwd = bundle.Phi.find({e.u, e.v});
        auto bwd = bundle.Phi.find({e.v, e.u});
        if (fwd != bundle.Phi.end() && bwd == bundle.Phi.end())
            bundle.Phi[{e.v, e.u}] = fwd->second.adjoint();
        else if (bwd != bundle.Phi.end() && fwd == bundle.Phi.end())
            bundle.Phi[{e.u, e.v}] = bwd->second.adjoint();
    }
    return bundle;
}

void save_bundle(const std::string& path, const WeightedGraph& g,
                 const HermitianBundle& bundle) {
    json j;
    json dim = json::object(), W = json::object(), Phi = json::object();
    for (std::size_t x = 0; x < g.size(); ++x) {
        dim[g.vertex_name(x)] = bundle.dim[x];
        W[g.vertex_name(x)] = dump_matrix(bundle.W[x]);
    }
    for (const auto& [key, mat] : bundle.Phi)
        Phi[g.vertex_name(key.first) + "->" + g.vertex_name(key.second)] = dump_matrix(mat);
    j["dim"] = dim;
    j["W"] = W;
    j["Phi"] = Phi;
    write_json(path, j);
}

MetricInput load_metric(const std::string& path, const WeightedGraph& g) {
    json j = read_json(path);
    std::string kind = j.value("kind", "");
    MetricInput out;
    if (kind == "path") {
        out.has_sigma = true;
        for (const auto& [key, value] : j["sigma"].items()) {
            auto [u, v] = split_edge_key(key);
            std::size_t x = g.index_of(u), y = g.index_of(v);
            out.sigma.sigma[x < y ? std::pair{x, y} : std::pair{y, x}] = value.get<double>();
        }
        out.metric = path_metric(g, out.sigma);
    } else if (kind == "embedding") {
        out.has_embedding = true;
        out.iota.resize(g.size());
        for (const auto& [key, value] : j["iota"].items()) {
            Eigen::VectorXd coords(value.size());
            for (std::size_t i = 0; i < value.size(); ++i) coords[i] = value[i].get<double>();
            out.iota[g.index_of(key)] = coords;
        }
        for (std::size_t x = 0; x < g.size(); ++x)
            if (out.iota[x].size() == 0)
                throw Error(ErrorCode::MissingCoordinate,
                            "no iota for vertex " + g.vertex_name(x));
        if (j.contains("boundary"))
            for (const auto& p : j["boundary"]) {
                Eigen::VectorXd coords(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) coords[i] = p[i].get<double>();
                out.boundary.push_back(coords);
            }
        out.metric = embedding_metric(g, out.iota).metric;
    } else if (kind == "table") {
        const auto& d = j["dist"];
        Eigen::MatrixXd table(d.size(), d.size());
        for (std::size_t r = 0; r < d.size(); ++r)
            for (std::size_t c = 0; c < d[r].size(); ++c)
                table(r, c) = d[r][c].get<double>();
        out.metric = PseudoMetric::from_table(table);
    } else {
        throw Error(ErrorCode::BadInput, path + ": kind must be path, embedding, or table");
    }
    return out;
}

void save_metric_path(const std::string& path, const WeightedGraph& g, const EdgeLength& sigma) {
    json s = json::object();
    for (const auto& [key, value] : sigma.sigma)
        s[g.vertex_name(key.first) + "->" + g.vertex_name(key.second)] = value;
    write_json(path, json{{"kind", "path"}, {"sigma", s}});
}

void save_metric_embedding(const std::string& path, const WeightedGraph& g,
                           const std::vector<Eigen::VectorXd>& iota,
                           const std::vector<Eigen::VectorXd>& boundary) {
    json io = json::object();
    for (std::size_t x = 0; x < g.size(); ++x) {
        json coords = json::array();
        for (Eigen::Index i = 0; i < iota[x].size(); ++i) coords.push_back(iota[x][i]);
        io[g.vertex_name(x)] = coords;
    }
    json bd = json::array();
    for (const auto& p : boundary) {
        json coords = json::array();
        for (Eigen::Index i = 0; i < p.size(); ++i) coords.push_back(p[i]);
        bd.push_back(coords);
    }
    write_json(path, json{{"kind", "embedding"}, {"iota", io}, {"boundary", bd}});
}

Section load_section(const std::string& path, const WeightedGraph& g,
                     const HermitianBundle& bundle) {
    json j = read_json(path);
    Section f = zero_section(bundle);
    for (const auto& [key, value] : j.items()) {
        std::size_t x = g.index_of(key);
        if (static_cast<Eigen::Index>(value.size()) != bundle.dim[x])
            throw Error(ErrorCode::DimensionMismatch, "section length at vertex " + key);
        for (Eigen::Index i = 0; i < bundle.dim[x]; ++i)
            f[x][i] = parse_complex(value[i], path + " " + key);
    }
    return f;
}

void save_section(const std::string& path, const WeightedGraph& g, const Section& f) {
    json j = json::object();
    for (std::size_t x = 0; x < f.size(); ++x) {
        json entries = json::array();
        for (Eigen::Index i = 0; i < f[x].size(); ++i)
            entries.push_back({f[x][i].real(), f[x][i].imag()});
        j[g.vertex_name(x)] = entries;
    }
    write_json(path, j);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << v;
    return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BadInput, "cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    out.flush();
}

} // namespace graphlap
