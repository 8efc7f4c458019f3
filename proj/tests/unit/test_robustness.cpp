#include "generators.hpp"

#include <wtopo/errors.hpp>
#include <wtopo/io.hpp>
#include <wtopo/robustness.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace wtopo;
using namespace wtopo::testing;

namespace {

SweepConfig sweep_config(const Graph& g, std::vector<std::size_t> budgets, std::size_t trials) {
    SweepConfig cfg;
    cfg.budgets = std::move(budgets);
    cfg.trials = trials;
    cfg.fraction = 0.2;
    cfg.pi = default_pi_config(g);
    cfg.base_seed = 5;
    return cfg;
}

} // namespace

TEST(Perturb, ZeroBudgetIsIdentity) {
    Rng rng(51);
    const auto g = random_connected_graph(rng, 20, 10, 3);
    const auto h = perturb(g, {0, PerturbMode::Random, 1});
    EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), h.edges().begin(), h.edges().end()));
}

TEST(Perturb, FlipsExactlyBudgetPairs) {
    Rng rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_graph(rng, 15, 0.3);
        for (auto mode : {PerturbMode::Random, PerturbMode::LandmarkTargeted}) {
            PerturbSpec spec{0, mode, rng(), 0.2};
            spec.budget = uniform_index(rng, 0, perturbation_capacity(g, spec));
            const auto h = perturb(g, spec);
            EXPECT_EQ(adjacency_l1_distance(g, h), spec.budget);
            EXPECT_EQ(h.num_nodes(), g.num_nodes());
            for (const auto& e : h.edges()) EXPECT_LT(e.u, e.v);
        }
    }
}

TEST(Perturb, Deterministic) {
    Rng rng(53);
    const auto g = random_connected_graph(rng, 30, 20);
    const PerturbSpec spec{12, PerturbMode::Random, 99};
    const auto a = perturb(g, spec), b = perturb(g, spec);
    EXPECT_TRUE(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
    const auto c = perturb(g, PerturbSpec{12, PerturbMode::Random, 100});
    EXPECT_NE(adjacency_l1_distance(a, c), 0u);
}

TEST(Perturb, TargetedFlipsTouchLandmarks) {
    Rng rng(54);
    const auto g = random_connected_graph(rng, 40, 40);
    const PerturbSpec spec{30, PerturbMode::LandmarkTargeted, 7, 0.1};
    const auto ls = select_landmarks(g, 0.1);
    const std::set<NodeId> land(ls.landmarks.begin(), ls.landmarks.end());
    const auto h = perturb(g, spec);
    auto pairs = [](const Graph& x) {
        std::set<std::pair<NodeId, NodeId>> s;
        for (const auto& e : x.edges()) s.emplace(e.u, e.v);
        return s;
    };
    const auto before = pairs(g), after = pairs(h);
    std::vector<std::pair<NodeId, NodeId>> diff;
    std::set_symmetric_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(diff));
    EXPECT_EQ(diff.size(), 30u);
    for (auto [u, v] : diff) EXPECT_TRUE(land.count(u) || land.count(v));
}

TEST(Perturb, BudgetOverCapacityRejected) {
    const auto g = path_graph(4);
    EXPECT_EQ(perturbation_capacity(g, {}), 6u);
    EXPECT_NO_THROW(perturb(g, {6, PerturbMode::Random, 0}));
    EXPECT_THROW(perturb(g, {7, PerturbMode::Random, 0}), ArgumentError);
    // One landmark out of four: 3 candidate pairs.
    EXPECT_THROW(perturb(g, {4, PerturbMode::LandmarkTargeted, 0, 0.25}), ArgumentError);
}

TEST(Perturb, RateToBudget) {
    const auto g = cycle_graph(20);
    EXPECT_EQ(budget_from_rate(g, 0.1), 2u);
    EXPECT_EQ(budget_from_rate(g, 0.0), 0u);
    EXPECT_EQ(budget_from_rate(g, 0.175), 4u);
    EXPECT_THROW(budget_from_rate(g, -0.1), ArgumentError);
}

TEST(Sweep, ZeroBudgetHasZeroDrift) {
    Rng rng(55);
    const auto g = random_connected_graph(rng, 30, 25);
    const auto report = stability_sweep(g, sweep_config(g, {0}, 4));
    ASSERT_EQ(report.rows.size(), 4u);
    for (const auto& r : report.rows) {
        EXPECT_EQ(r.l1_distance, 0u);
        EXPECT_EQ(r.local_wasserstein_p, 0.0);
        EXPECT_EQ(r.global_pi_linf_drift, 0.0);
        EXPECT_EQ(r.topo_loss_drift, 0.0);
        EXPECT_EQ(r.bound_ratio_local, 0.0);
        EXPECT_EQ(r.bound_ratio_global, 0.0);
    }
}

TEST(Sweep, RowCountAndOrder) {
    Rng rng(56);
    const auto g = random_connected_graph(rng, 25, 20);
    const auto report = stability_sweep(g, sweep_config(g, {1, 2, 4}, 3));
    ASSERT_EQ(report.rows.size(), 9u);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(report.rows[i].budget, (std::vector<std::size_t>{1, 2, 4})[i / 3]);
        EXPECT_EQ(report.rows[i].trial, i % 3);
        EXPECT_EQ(report.rows[i].l1_distance, report.rows[i].budget);
    }
}

TEST(Sweep, RatiosFiniteUpToTenPercent) {
    Rng rng(57);
    const auto g = random_connected_graph(rng, 30, 30);
    const std::size_t top = budget_from_rate(g, 0.1);
    for (bool freeze : {false, true}) {
        auto cfg = sweep_config(g, {1, top / 2, top}, 3);
        cfg.freeze_landmarks = freeze;
        for (const auto& r : stability_sweep(g, cfg).rows) {
            EXPECT_TRUE(std::isfinite(r.bound_ratio_local));
            EXPECT_TRUE(std::isfinite(r.bound_ratio_global));
            EXPECT_GE(r.local_wasserstein_p, 0.0);
            EXPECT_GE(r.global_pi_linf_drift, 0.0);
            EXPECT_GE(r.topo_loss_drift, 0.0);
            EXPECT_GE(r.c_epsilon, 1u);
        }
    }
}

TEST(Sweep, ArgumentChecks) {
    const auto g = cycle_graph(10);
    EXPECT_THROW(stability_sweep(g, sweep_config(g, {2, 1}, 1)), ArgumentError);
    EXPECT_THROW(stability_sweep(g, sweep_config(g, {1}, 0)), ArgumentError);
}

TEST(Sweep, CsvColumns) {
    StabilityReport report{{StabilityRow{2, 1, 2, 0.5, 0.25, 1, 1.5, 4, 0.0625, 0.5}}};
    std::ostringstream out;
    write_report_csv(out, report);
    EXPECT_EQ(out.str(),
              "budget,trial,l1_distance,local_wasserstein_p,global_pi_linf_drift,topo_loss_drift,cover_radius,"
              "c_epsilon,bound_ratio_local,bound_ratio_global\n2,1,2,0.5,0.25,1,1.5,4,0.0625,0.5\n");
}
