#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace wtopo {

using NodeId = std::uint32_t;

/// Distance between nodes in different connected components.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

inline bool is_reachable(double d) noexcept { return std::isfinite(d); }

/// Undirected weighted edge, stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dense row-major real matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}
    Matrix(std::size_t r, std::size_t c, std::vector<double> v);

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Node feature matrix: one row per node.
using FeatureMatrix = Matrix;

/// Immutable undirected graph with positive edge weights and optional node features.
///
/// Edges are canonicalised (u < v) and kept sorted; adjacency is stored in CSR form
/// with each neighbour list sorted by node id.
class Graph {
public:
    struct Neighbor {
        NodeId node;
        double weight;
    };

    Graph() = default;

    /// Throws ValidationError on self-loops, duplicate pairs, out-of-range ids or
    /// non-positive / non-finite weights.
    Graph(std::size_t num_nodes, std::vector<Edge> edges,
          std::optional<FeatureMatrix> features = std::nullopt);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Neighbor> neighbors(NodeId u) const {
        return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

    bool has_edge(NodeId u, NodeId v) const { return edge_weight(u, v).has_value(); }
    std::optional<double> edge_weight(NodeId u, NodeId v) const;

    /// True when every edge has weight exactly 1 (breadth-first search applies).
    bool unit_weights() const noexcept { return unit_weights_; }

    const std::optional<FeatureMatrix>& node_features() const noexcept { return features_; }

private:
    std::size_t num_nodes_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    bool unit_weights_ = true;
    std::optional<FeatureMatrix> features_;
};

/// Shortest-path distances from a list of source nodes to every node.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::vector<NodeId> sources, std::size_t num_nodes, std::vector<double> dists);

    std::span<const NodeId> sources() const noexcept { return sources_; }
    std::size_t num_sources() const noexcept { return sources_.size(); }
    std::size_t num_nodes() const noexcept { return num_nodes_; }

    double at(std::size_t source_row, NodeId node) const { return dists_[source_row * num_nodes_ + node]; }
    std::span<const double> row(std::size_t source_row) const {
        return {dists_.data() + source_row * num_nodes_, num_nodes_};
    }

    /// Largest finite entry; this is the diameter when the sources are all nodes.
    double max_finite() const noexcept;

    /// |sources| x |sources| block: distances between the sources themselves.
    Matrix source_block() const;
    /// N x |sources| transpose: row w holds the distances from node w to each source.
    Matrix transposed() const;

private:
    std::vector<NodeId> sources_;
    std::size_t num_nodes_ = 0;
    std::vector<double> dists_;
};

enum class PathAlgorithm { Auto, Bfs, Dijkstra };

/// Parses "u v" or "u v w" lines; '#' starts a comment line. N = 1 + max id.
Graph load_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// Symmetrised k-nearest-neighbour graph under cosine distance. Ties go to the lower
/// node index; zero distances are raised to `zero_floor` so weights stay positive.
Graph build_knn_graph(const FeatureMatrix& features, std::size_t k, double zero_floor = 1e-9);

/// Geodesic distances from each source. Auto selects BFS on unit-weight graphs and
/// Dijkstra otherwise; Bfs on a weighted graph is an ArgumentError.
DistanceMatrix geodesics(const Graph& g, std::span<const NodeId> sources,
                         PathAlgorithm algorithm = PathAlgorithm::Auto);
DistanceMatrix all_pairs_geodesics(const Graph& g);

/// Largest finite geodesic distance over all node pairs (0 for graphs without edges).
double diameter(const Graph& g);

/// Component label per node; labels are dense and ordered by smallest member.
std::vector<std::size_t> connected_components(const Graph& g);

/// Induced subgraph with contiguous relabelling. `original[new_id]` is the old id.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> original;
};

/// `nodes` must be distinct; the new ids follow the order given.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Ties between equal-size components go to the one holding the smallest node id.
Subgraph largest_connected_component(const Graph& g);

/// Number of undirected node pairs whose adjacency differs.
std::size_t adjacency_l1_distance(const Graph& a, const Graph& b);

/// Sum of |w - w'| over undirected pairs, absent edges contributing weight 0.
double weighted_adjacency_l1_distance(const Graph& a, const Graph& b);

} // namespace wtopo
