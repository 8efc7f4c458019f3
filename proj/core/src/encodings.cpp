#include "wtopo/encodings.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wtopo {

void EncodingOptions::validate() const {
    if (homology_dim < 0 || homology_dim > 1) {
        throw ArgumentError("homology dimension must be 0 or 1, got " + std::to_string(homology_dim));
    }
    if (algorithm == PersistenceAlgorithm::UnionFind && homology_dim > 0) {
        throw ArgumentError("union-find persistence only computes dimension 0");
    }
    if (std::isnan(max_scale) || max_scale < 0.0) throw ArgumentError("max_scale must be non-negative");
}

PIConfig default_pi_config(const Graph& g, std::size_t resolution, double sigma) {
    const auto lcc = largest_connected_component(g);
    return PIConfig::for_diameter(diameter(lcc.graph), resolution, sigma);
}

namespace {

PersistenceDiagram witness_diagram(const Graph& g, std::span<const NodeId> landmarks, const EncodingOptions& opts) {
    const auto dm = geodesics(g, landmarks);
    const auto f = witness_filtration(dm.source_block(), dm.transposed(), opts.homology_dim + 1, opts.max_scale,
                                      opts.nu);
    return compute_persistence(f, opts.algorithm, opts.homology_dim);
}

} // namespace

PersistenceDiagram cell_diagram(const Graph& g, const CoverCell& cell, const EncodingOptions& opts) {
    const auto sub = induced_subgraph(g, cell.members);
    std::vector<NodeId> local;
    local.reserve(cell.local_landmarks.size());
    for (NodeId l : cell.local_landmarks) {
        auto it = std::lower_bound(cell.members.begin(), cell.members.end(), l);
        if (it == cell.members.end() || *it != l) throw ValidationError("local landmark outside its cell");
        local.push_back(static_cast<NodeId>(it - cell.members.begin()));
    }
    return witness_diagram(sub.graph, local, opts);
}

LocalTopology local_topology(const Graph& g, const LandmarkSet& landmarks, const EncodingOptions& opts) {
    opts.validate();
    LocalTopology topo{build_cover(g, landmarks), {}};
    topo.diagrams.reserve(topo.cover.cells.size());
    for (const auto& cell : topo.cover.cells) topo.diagrams.push_back(cell_diagram(g, cell, opts));
    return topo;
}

LocalTopology local_topology(const Graph& g, double fraction, const EncodingOptions& opts) {
    return local_topology(g, select_landmarks(g, fraction), opts);
}

NodeFeatureMatrix local_encoding(const LocalTopology& topo, const PIConfig& cfg, int homology_dim) {
    cfg.validate();
    const std::size_t cols = cfg.resolution * cfg.resolution;
    const std::size_t n = topo.cover.cell_of.size();
    NodeFeatureMatrix out{Provenance::Local, Matrix(n, cols)};
    std::vector<PersistenceImage> images;
    images.reserve(topo.diagrams.size());
    for (const auto& d : topo.diagrams) images.push_back(persistence_image(d, cfg, homology_dim));
    for (std::size_t u = 0; u < n; ++u) {
        const auto& px = images[topo.cover.cell_of[u]].pixels;
        std::copy(px.begin(), px.end(), out.values.row(u).begin());
    }
    return out;
}

NodeFeatureMatrix local_encoding(const Graph& g, double fraction, const PIConfig& cfg, const EncodingOptions& opts) {
    return local_encoding(local_topology(g, fraction, opts), cfg, opts.homology_dim);
}

GlobalTopology global_topology(const Graph& g, const LandmarkSet& landmarks, const EncodingOptions& opts) {
    opts.validate();
    if (landmarks.landmarks.empty()) throw ArgumentError("global topology requires at least one landmark");
    const auto dm = geodesics(g, landmarks.landmarks);
    auto f = witness_filtration(dm.source_block(), dm.transposed(), opts.homology_dim + 1, opts.max_scale, opts.nu);
    auto d = compute_persistence(f, opts.algorithm, opts.homology_dim);
    return {landmarks, std::move(f), std::move(d)};
}

GlobalTopology global_topology(const Graph& g, double fraction, const EncodingOptions& opts) {
    return global_topology(g, select_landmarks(g, fraction), opts);
}

PersistenceImage global_encoding(const Graph& g, double fraction, const PIConfig& cfg, const EncodingOptions& opts) {
    cfg.validate();
    return persistence_image(global_topology(g, fraction, opts).diagram, cfg, opts.homology_dim);
}

void TopoLossConfig::validate() const {
    if (!(p >= 0.0) || !(q >= 0.0)) throw ArgumentError("loss exponents must be non-negative");
    if (!(p + q > 0.0)) throw ArgumentError("loss exponents must not both be zero");
}

namespace {

// base^e with base^0 == 1 for every base.
double power(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

} // namespace

double topo_loss(const PersistenceDiagram& d, const TopoLossConfig& cfg, int dim) {
    cfg.validate();
    double total = 0.0;
    for (const auto& pt : d.finite(dim)) {
        total += power(pt.death - pt.birth, cfg.p) * power(0.5 * (pt.death + pt.birth), cfg.q);
    }
    return total;
}

std::vector<PointGradient> topo_loss_grad(const PersistenceDiagram& d, const TopoLossConfig& cfg, int dim) {
    cfg.validate();
    std::vector<PointGradient> out;
    for (const auto& pt : d.finite(dim)) {
        const double pers = pt.death - pt.birth;
        const double mid = 0.5 * (pt.death + pt.birth);
        const double from_pers = cfg.p == 0.0 ? 0.0 : cfg.p * power(pers, cfg.p - 1.0) * power(mid, cfg.q);
        const double from_mid = cfg.q == 0.0 ? 0.0 : 0.5 * cfg.q * power(pers, cfg.p) * power(mid, cfg.q - 1.0);
        out.push_back({-from_pers + from_mid, from_pers + from_mid});
    }
    return out;
}

} // namespace wtopo
