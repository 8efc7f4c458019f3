#include "wtopo/landmarks.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wtopo {

std::size_t landmark_count(std::size_t n, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw ArgumentError("landmark fraction must lie in (0, 1], got " + std::to_string(fraction));
    }
    // The nudge keeps products such as 100 * 0.29 from flooring one below the intended count.
    const auto count = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction + 1e-9));
    return std::clamp<std::size_t>(count, 1, std::max<std::size_t>(n, 1));
}

std::vector<NodeId> sort_by_degree(const Graph& g, std::vector<NodeId> nodes) {
    std::stable_sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        const auto da = g.degree(a);
        const auto db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    return nodes;
}

LandmarkSet select_landmarks(const Graph& g, double fraction) {
    const std::size_t count = landmark_count(g.num_nodes(), fraction);
    if (g.num_nodes() == 0) throw ArgumentError("cannot select landmarks on an empty graph");
    std::vector<NodeId> order(g.num_nodes());
    std::iota(order.begin(), order.end(), NodeId{0});
    order = sort_by_degree(g, std::move(order));
    order.resize(count);
    return {std::move(order), fraction};
}

std::size_t Cover::num_self_covered() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CoverCell& c) { return c.self_covered; }));
}

Cover build_cover(const Graph& g, const LandmarkSet& ls) {
    if (ls.landmarks.empty()) throw ArgumentError("build_cover requires at least one landmark");
    const std::size_t n = g.num_nodes();
    for (NodeId l : ls.landmarks) {
        if (l >= n) throw ArgumentError("landmark " + std::to_string(l) + " is not a node of the graph");
    }

    Cover cover;
    cover.landmarks = ls.landmarks;
    cover.fraction = ls.fraction;
    cover.landmark_distances = geodesics(g, ls.landmarks);
    const auto& dm = cover.landmark_distances;
    const std::size_t nl = ls.landmarks.size();

    double max_pair = 0.0;
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = i + 1; j < nl; ++j) {
            const double d = dm.at(i, ls.landmarks[j]);
            if (is_reachable(d)) max_pair = std::max(max_pair, d);
        }
    }
    cover.epsilon_pairwise = 0.5 * max_pair;

    cover.cells.resize(nl);
    for (std::size_t i = 0; i < nl; ++i) cover.cells[i].landmark = ls.landmarks[i];
    cover.cell_of.assign(n, 0);
    cover.distance_to_center.assign(n, 0.0);

    for (NodeId u = 0; u < n; ++u) {
        std::size_t best = nl;
        double best_d = kUnreachable;
        for (std::size_t i = 0; i < nl; ++i) {
            const double d = dm.at(i, u);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == nl) {
            cover.cell_of[u] = cover.cells.size();
            cover.cells.push_back({u, {u}, {}, true});
            continue;
        }
        cover.cell_of[u] = best;
        cover.distance_to_center[u] = best_d;
        cover.cells[best].members.push_back(u);
    }

    for (auto& cell : cover.cells) {
        cover.c_epsilon = std::max(cover.c_epsilon, cell.members.size());
        if (cell.self_covered) {
            cell.local_landmarks = {cell.landmark};
            continue;
        }
        const auto sub = induced_subgraph(g, cell.members);
        std::vector<NodeId> local(sub.graph.num_nodes());
        std::iota(local.begin(), local.end(), NodeId{0});
        local = sort_by_degree(sub.graph, std::move(local));
        local.resize(landmark_count(local.size(), ls.fraction));
        cell.local_landmarks.reserve(local.size());
        for (NodeId v : local) cell.local_landmarks.push_back(sub.original[v]);
    }
    cover.cover_radius = *std::max_element(cover.distance_to_center.begin(), cover.distance_to_center.end());
    return cover;
}

} // namespace wtopo
