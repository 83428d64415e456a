#ifndef GRAPHLAP_IO_HPP
#define GRAPHLAP_IO_HPP

#include <string>
#include <vector>

#include "graphlap/bundle.hpp"
#include "graphlap/graph.hpp"
#include "graphlap/metric.hpp"

namespace graphlap {

/// Graph JSON: {"vertices":[...], "edges":[[u,v,b],...], "mu":{...}, "V":{...}};
/// mu defaults to 1 and V to 0 where omitted.
MeasuredGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const MeasuredGraph& mg);

/// Bundle JSON: {"dim":{...}, "W":{vertex:[[ [re,im],...],...]},
/// "Phi":{"u->v":[[ [re,im],...],...]}}; complex numbers as [re,im] pairs.
HermitianBundle load_bundle(const std::string& path, const WeightedGraph& g);
void save_bundle(const std::string& path, const WeightedGraph& g, const HermitianBundle& bundle);

/// Metric JSON: {"kind":"path","sigma":{"u->v":len,...}} or
/// {"kind":"embedding","iota":{vertex:[coords]},"boundary":[[coords],...]} or
/// {"kind":"table","dist":[[...]]}.
struct MetricInput {
    PseudoMetric metric;
    bool has_embedding = false;
    std::vector<Eigen::VectorXd> iota;
    std::vector<Eigen::VectorXd> boundary;
    bool has_sigma = false;
    EdgeLength sigma;
};

MetricInput load_metric(const std::string& path, const WeightedGraph& g);
void save_metric_path(const std::string& path, const WeightedGraph& g, const EdgeLength& sigma);
void save_metric_embedding(const std::string& path, const WeightedGraph& g,
                           const std::vector<Eigen::VectorXd>& iota,
                           const std::vector<Eigen::VectorXd>& boundary);

/// Section JSON: {"vertex":[[re,im],...]}.
Section load_section(const std::string& path, const WeightedGraph& g,
                     const HermitianBundle& bundle);
void save_section(const std::string& path, const WeightedGraph& g, const Section& f);

/// '.' decimal, 17 significant digits, no locale.
std::string format_double(double v);

/// CSV with a header row; every cell preformatted.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

} // namespace graphlap

#endif
