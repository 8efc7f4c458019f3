#pragma once

#include "wtopo/graph.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wtopo {

/// Landmarks ordered by (degree desc, node id asc).
struct LandmarkSet {
    std::vector<NodeId> landmarks;
    double fraction = 1.0;
};

/// floor(n * fraction), at least 1. Throws ArgumentError unless 0 < fraction <= 1.
std::size_t landmark_count(std::size_t n, double fraction);

/// `nodes` reordered by (degree in g desc, id asc).
std::vector<NodeId> sort_by_degree(const Graph& g, std::vector<NodeId> nodes);

/// Top floor(N * fraction) nodes by degree centrality.
LandmarkSet select_landmarks(const Graph& g, double fraction);

struct CoverCell {
    NodeId landmark = 0;
    std::vector<NodeId> members;          // ascending node ids, contains `landmark`
    std::vector<NodeId> local_landmarks;  // degree order inside the induced subgraph
    bool self_covered = false;            // node unreachable from every landmark
};

/// Voronoi partition of the nodes around the landmarks.
///
/// Cells for real landmarks come first in landmark rank order; self-covered
/// singletons (nodes no landmark reaches) follow in node order.
struct Cover {
    std::vector<NodeId> landmarks;
    double fraction = 1.0;
    std::vector<CoverCell> cells;
    std::vector<std::size_t> cell_of;        // node -> index into cells
    std::vector<double> distance_to_center;  // node -> distance to its cell's landmark
    double epsilon_pairwise = 0.0;           // 0.5 * max finite landmark-landmark distance
    double cover_radius = 0.0;               // max distance_to_center
    std::size_t c_epsilon = 0;               // largest cell size
    DistanceMatrix landmark_distances;       // one row per landmark

    std::size_t num_self_covered() const;
};

/// Assigns every node to its geodesically nearest landmark; ties go to the
/// earlier-ranked landmark.
Cover build_cover(const Graph& g, const LandmarkSet& landmarks);

} // namespace wtopo
