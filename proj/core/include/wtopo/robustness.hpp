#pragma once

#include "wtopo/encodings.hpp"
#include "wtopo/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wtopo {

enum class PerturbMode { Random, LandmarkTargeted };

/// Edge-flip attack: `budget` distinct undirected pairs are toggled.
struct PerturbSpec {
    std::size_t budget = 0;
    PerturbMode mode = PerturbMode::Random;
    std::uint64_t seed = 0;
    double landmark_fraction = 0.05;  // landmark set used by LandmarkTargeted
};

/// Number of pairs `spec` may flip: all N(N-1)/2 pairs, or those touching a landmark.
std::size_t perturbation_capacity(const Graph& g, const PerturbSpec& spec);

/// Flips exactly spec.budget pairs sampled without replacement. Added edges get weight 1.
/// Deterministic for a given (g, spec).
Graph perturb(const Graph& g, const PerturbSpec& spec);

/// round(rate * |E|).
std::size_t budget_from_rate(const Graph& g, double rate);

struct SweepConfig {
    std::vector<std::size_t> budgets;  // ascending
    std::size_t trials = 1;
    double fraction = 0.05;
    PIConfig pi;
    TopoLossConfig loss;
    EncodingOptions encoding;
    PerturbMode mode = PerturbMode::Random;
    std::uint64_t base_seed = 0;
    double wasserstein_p = 1.0;
    bool freeze_landmarks = false;  // reuse the clean graph's landmarks on the perturbed graph
};

struct StabilityRow {
    std::size_t budget = 0;
    std::size_t trial = 0;
    std::size_t l1_distance = 0;
    double local_wasserstein_p = 0.0;
    double global_pi_linf_drift = 0.0;
    double topo_loss_drift = 0.0;
    double cover_radius = 0.0;
    std::size_t c_epsilon = 0;
    double bound_ratio_local = 0.0;
    double bound_ratio_global = 0.0;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
};

/// Re-runs the local and global pipelines on perturbed copies of `g` and reports how
/// far the encodings and the loss move.
///
/// Trial t of every budget is seeded with base_seed + t. The local drift is the sum over
/// cover landmarks of the W_p distance between matching cell diagrams (essential classes
/// dropped, a missing cell compared against the empty diagram). cover_radius and c_epsilon
/// are the larger of the clean and perturbed covers. The ratios divide by
/// c_epsilon * (budget + cover_radius) and (budget + cover_radius); 0 / 0 is reported as 0.
StabilityReport stability_sweep(const Graph& g, const SweepConfig& cfg);

} // namespace wtopo
