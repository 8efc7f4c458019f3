#include "wtopo/robustness.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>

namespace wtopo {

namespace {

using Pair = std::pair<NodeId, NodeId>;

std::vector<Pair> targeted_candidates(const Graph& g, double fraction) {
    const auto ls = select_landmarks(g, fraction);
    std::set<Pair> pairs;
    for (NodeId l : ls.landmarks) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (v != l) pairs.emplace(std::min(l, v), std::max(l, v));
        }
    }
    return {pairs.begin(), pairs.end()};
}

// Pair index k in the row-major enumeration of {(u, v) : u < v < n}.
Pair pair_from_index(std::uint64_t k, std::size_t n) {
    NodeId u = 0;
    std::uint64_t row = n - 1;
    while (k >= row) {
        k -= row;
        ++u;
        --row;
    }
    return {u, static_cast<NodeId>(u + 1 + k)};
}

std::vector<Pair> sample_pairs(const Graph& g, const PerturbSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<Pair> chosen;
    if (spec.mode == PerturbMode::Random) {
        const std::uint64_t n = g.num_nodes();
        const std::uint64_t total = n * (n - 1) / 2;
        // Floyd's algorithm: budget distinct indices out of [0, total).
        std::set<std::uint64_t> picked;
        for (std::uint64_t j = total - spec.budget; j < total; ++j) {
            const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
            if (!picked.insert(t).second) picked.insert(j);
        }
        for (auto k : picked) chosen.push_back(pair_from_index(k, g.num_nodes()));
    } else {
        auto cand = targeted_candidates(g, spec.landmark_fraction);
        for (std::size_t i = 0; i < spec.budget; ++i) {
            const auto j = std::uniform_int_distribution<std::size_t>(i, cand.size() - 1)(rng);
            std::swap(cand[i], cand[j]);
        }
        cand.resize(spec.budget);
        chosen = std::move(cand);
    }
    return chosen;
}

} // namespace

std::size_t perturbation_capacity(const Graph& g, const PerturbSpec& spec) {
    const std::size_t n = g.num_nodes();
    if (spec.mode == PerturbMode::Random || n < 2) return n < 2 ? 0 : n * (n - 1) / 2;
    const std::size_t k = landmark_count(n, spec.landmark_fraction);
    // Pairs touching at least one of k landmarks.
    return k * (n - k) + k * (k - 1) / 2;
}

Graph perturb(const Graph& g, const PerturbSpec& spec) {
    if (spec.budget == 0) return g;
    const std::size_t capacity = perturbation_capacity(g, spec);
    if (spec.budget > capacity) {
        throw ArgumentError("perturbation budget " + std::to_string(spec.budget) + " exceeds the " +
                            std::to_string(capacity) + " available node pairs");
    }
    auto flips = sample_pairs(g, spec);
    std::sort(flips.begin(), flips.end());

    std::vector<Edge> edges;
    edges.reserve(g.num_edges() + flips.size());
    std::size_t f = 0;
    for (const auto& e : g.edges()) {
        const Pair key{e.u, e.v};
        while (f < flips.size() && flips[f] < key) {
            edges.push_back({flips[f].first, flips[f].second, 1.0});
            ++f;
        }
        if (f < flips.size() && flips[f] == key) {
            ++f;  // removal
            continue;
        }
        edges.push_back(e);
    }
    for (; f < flips.size(); ++f) edges.push_back({flips[f].first, flips[f].second, 1.0});
    return Graph(g.num_nodes(), std::move(edges), g.node_features());
}

std::size_t budget_from_rate(const Graph& g, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw ArgumentError("perturbation rate must be non-negative");
    return static_cast<std::size_t>(std::llround(rate * static_cast<double>(g.num_edges())));
}

namespace {

struct Snapshot {
    LocalTopology local;
    PersistenceImage global_image;
    double loss = 0.0;
};

Snapshot snapshot(const Graph& g, const LandmarkSet& landmarks, const SweepConfig& cfg) {
    Snapshot s{local_topology(g, landmarks, cfg.encoding), {}, 0.0};
    const auto global = global_topology(g, landmarks, cfg.encoding);
    s.global_image = persistence_image(global.diagram, cfg.pi, cfg.encoding.homology_dim);
    s.loss = topo_loss(global.diagram, cfg.loss, cfg.encoding.homology_dim);
    return s;
}

double local_drift(const LocalTopology& a, const LocalTopology& b, int dim, double p) {
    std::map<NodeId, std::pair<const PersistenceDiagram*, const PersistenceDiagram*>> by_landmark;
    for (std::size_t i = 0; i < a.cover.cells.size(); ++i) by_landmark[a.cover.cells[i].landmark].first = &a.diagrams[i];
    for (std::size_t i = 0; i < b.cover.cells.size(); ++i) by_landmark[b.cover.cells[i].landmark].second = &b.diagrams[i];
    const PersistenceDiagram empty;
    double total = 0.0;
    for (const auto& [landmark, pair] : by_landmark) {
        const auto& da = pair.first ? *pair.first : empty;
        const auto& db = pair.second ? *pair.second : empty;
        total += diagram_distance(da, db, DistanceMode::wasserstein(p), dim, EssentialMatching::Drop);
    }
    return total;
}

double ratio(double drift, double denom) {
    if (drift == 0.0) return 0.0;
    return denom > 0.0 ? drift / denom : std::numeric_limits<double>::infinity();
}

} // namespace

StabilityReport stability_sweep(const Graph& g, const SweepConfig& cfg) {
    if (cfg.trials < 1) throw ArgumentError("stability sweep needs at least one trial");
    if (!std::is_sorted(cfg.budgets.begin(), cfg.budgets.end())) {
        throw ArgumentError("budgets must be sorted ascending");
    }
    cfg.pi.validate();
    cfg.loss.validate();
    cfg.encoding.validate();

    const auto clean_landmarks = select_landmarks(g, cfg.fraction);
    const auto clean = snapshot(g, clean_landmarks, cfg);
    const int dim = cfg.encoding.homology_dim;

    StabilityReport report;
    for (std::size_t budget : cfg.budgets) {
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const PerturbSpec spec{budget, cfg.mode, cfg.base_seed + t, cfg.fraction};
            const Graph poisoned = perturb(g, spec);
            const auto landmarks = cfg.freeze_landmarks ? clean_landmarks : select_landmarks(poisoned, cfg.fraction);
            const auto dirty = snapshot(poisoned, landmarks, cfg);

            StabilityRow row;
            row.budget = budget;
            row.trial = t;
            row.l1_distance = adjacency_l1_distance(g, poisoned);
            row.local_wasserstein_p = local_drift(clean.local, dirty.local, dim, cfg.wasserstein_p);
            row.global_pi_linf_drift = linf_distance(clean.global_image, dirty.global_image);
            row.topo_loss_drift = std::abs(clean.loss - dirty.loss);
            row.cover_radius = std::max(clean.local.cover.cover_radius, dirty.local.cover.cover_radius);
            row.c_epsilon = std::max(clean.local.cover.c_epsilon, dirty.local.cover.c_epsilon);
            const double slack = static_cast<double>(budget) + row.cover_radius;
            row.bound_ratio_local = ratio(row.local_wasserstein_p, static_cast<double>(row.c_epsilon) * slack);
            row.bound_ratio_global = ratio(row.global_pi_linf_drift, slack);
            report.rows.push_back(row);
        }
    }
    return report;
}

} // namespace wtopo
