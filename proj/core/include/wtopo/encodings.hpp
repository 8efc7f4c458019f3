#pragma once

#include "wtopo/complexes.hpp"
#include "wtopo/graph.hpp"
#include "wtopo/landmarks.hpp"
#include "wtopo/persistence.hpp"
#include "wtopo/vectorize.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace wtopo {

enum class Provenance { Local, Global };

/// One row per node, resolution^2 columns (row-major flattened image).
struct NodeFeatureMatrix {
    Provenance provenance = Provenance::Local;
    Matrix values;
};

/// Settings shared by the local and global pipelines.
struct EncodingOptions {
    int homology_dim = 0;  // 0 or 1; the witness complex is built one dimension higher
    std::size_t nu = 0;
    double max_scale = std::numeric_limits<double>::infinity();
    PersistenceAlgorithm algorithm = PersistenceAlgorithm::Reduction;

    void validate() const;
};

/// Grid defaults derived from the diameter of the largest connected component.
PIConfig default_pi_config(const Graph& g, std::size_t resolution = 10, double sigma = 1.0);

/// Per-cell diagrams of the local witness complexes, aligned with `cover.cells`.
struct LocalTopology {
    Cover cover;
    std::vector<PersistenceDiagram> diagrams;
};

LocalTopology local_topology(const Graph& g, double fraction, const EncodingOptions& opts = {});
LocalTopology local_topology(const Graph& g, const LandmarkSet& landmarks, const EncodingOptions& opts = {});

/// Diagram of the witness complex on a single cell. `local_landmarks` are node ids of g.
PersistenceDiagram cell_diagram(const Graph& g, const CoverCell& cell, const EncodingOptions& opts);

/// Local encoding: every node receives the image of its cover cell.
NodeFeatureMatrix local_encoding(const Graph& g, double fraction, const PIConfig& cfg,
                                 const EncodingOptions& opts = {});
NodeFeatureMatrix local_encoding(const LocalTopology& topo, const PIConfig& cfg, int homology_dim);

struct GlobalTopology {
    LandmarkSet landmarks;
    Filtration filtration;
    PersistenceDiagram diagram;
};

/// Witness complex on the global landmarks with every node acting as a witness.
GlobalTopology global_topology(const Graph& g, double fraction, const EncodingOptions& opts = {});
GlobalTopology global_topology(const Graph& g, const LandmarkSet& landmarks, const EncodingOptions& opts = {});

PersistenceImage global_encoding(const Graph& g, double fraction, const PIConfig& cfg,
                                 const EncodingOptions& opts = {});

/// Exponents of the topological loss sum (d - b)^p ((d + b) / 2)^q.
struct TopoLossConfig {
    double p = 2.0;
    double q = 0.0;

    double k() const noexcept { return p > q ? p : q; }
    void validate() const;
};

/// Loss over the finite points of dimension `dim`; essential points are excluded.
double topo_loss(const PersistenceDiagram& d, const TopoLossConfig& cfg, int dim);

struct PointGradient {
    double d_birth = 0.0;
    double d_death = 0.0;
};

/// Partial derivatives per finite point of `dim`, in PersistenceDiagram::finite order.
std::vector<PointGradient> topo_loss_grad(const PersistenceDiagram& d, const TopoLossConfig& cfg, int dim);

} // namespace wtopo
