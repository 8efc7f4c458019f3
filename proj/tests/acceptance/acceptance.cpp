// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include "generators.hpp"
#include "oracles.hpp"

#include <wtopo/complexes.hpp>
#include <wtopo/encodings.hpp>
#include <wtopo/landmarks.hpp>
#include <wtopo/persistence.hpp>
#include <wtopo/robustness.hpp>
#include <wtopo/vectorize.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

using namespace wtopo;
using namespace wtopo::testing;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome landmark_counts() {
    const auto t0 = Clock::now();
    struct Case {
        std::size_t n;
        double fraction;
        std::size_t expect;
    };
    const Case cases[] = {{2485, 0.05, 124}, {2110, 0.05, 105}, {1222, 0.05, 61}, {19717, 0.02, 394}};
    std::string detail;
    bool ok = true;
    Rng rng(1);
    for (const auto& c : cases) {
        const auto g = random_connected_graph(rng, c.n, c.n);
        const auto got = select_landmarks(g, c.fraction).landmarks.size();
        ok = ok && got == c.expect;
        detail += std::to_string(c.n) + "->" + std::to_string(got) + " ";
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 1.0;
    return {ok, detail + "in " + num(secs) + " s (graph generation included)"};
}

Outcome union_find_vs_reduction() {
    Rng rng(2);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = uniform_index(rng, 1, 30);
        const auto scales = random_edge_scales(rng, n, uniform_real(rng, 0.05, 0.6), 8);
        const auto f = flag_filtration(scales, 1, kUnreachable, ComplexKind::VietorisRips);
        if (compute_persistence(f, PersistenceAlgorithm::UnionFind, 0) !=
            compute_persistence(f, PersistenceAlgorithm::Reduction, 0)) {
            ++mismatches;
        }
    }
    return {mismatches == 0, "100 filtrations, " + std::to_string(mismatches) + " mismatches"};
}

Outcome vr_stability() {
    Rng rng(3);
    int violations = 0;
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = uniform_index(rng, 3, 20);
        const auto g = random_connected_graph(rng, n, n, 6);
        const auto h = jitter_weights(rng, g, 0.5);
        const auto dg = floyd_warshall(g), dh = floyd_warshall(h);
        double sup = 0;
        for (std::size_t i = 0; i < dg.values.size(); ++i) sup = std::max(sup, std::abs(dg.values[i] - dh.values[i]));
        const auto pa = compute_persistence(vr_filtration(dg, 2, kUnreachable), PersistenceAlgorithm::Reduction, 1);
        const auto pb = compute_persistence(vr_filtration(dh, 2, kUnreachable), PersistenceAlgorithm::Reduction, 1);
        for (int dim : {0, 1}) {
            const double b = diagram_distance(pa, pb, DistanceMode::bottleneck(), dim);
            if (b > sup + 1e-9) ++violations;
            if (sup > 0) worst = std::max(worst, b / sup);
        }
    }
    return {violations == 0,
            "50 graphs, " + std::to_string(violations) + " violations, max ratio " + num(worst)};
}

Outcome sandwich() {
    Rng rng(4);
    int violations = 0, checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = uniform_index(rng, 6, 15);
        const auto g = random_connected_graph(rng, n, n / 2);
        const double fraction = std::min(0.4, 6.0 / static_cast<double>(n));
        const auto ls = select_landmarks(g, fraction);
        const auto d = floyd_warshall(g);
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), 0);
        const double eps = build_cover(g, ls).epsilon_pairwise;
        const double alpha = 2 * eps + uniform_real(rng, 0.01, 3);
        const auto r = sandwich_check(select(d, ls.landmarks, ls.landmarks), select(d, all, ls.landmarks), alpha,
                                      eps, 2);
        if (r != SandwichResult::Holds) ++violations;
        ++checked;
    }
    return {violations == 0, std::to_string(checked) + " instances, " + std::to_string(violations) + " violations"};
}

Outcome pi_stability() {
    Rng rng(5);
    const double sigmas[] = {0.5, 1.0, 2.0};
    int violations = 0;
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        PIConfig cfg;
        cfg.birth_hi = cfg.pers_hi = 5;
        cfg.sigma = sigmas[trial % 3];
        const auto a = random_diagram(rng, 8, 0, 5);
        const auto b = random_diagram(rng, 8, 0, 5);
        const double w1 = diagram_distance(a, b, DistanceMode::wasserstein(1), 0);
        const double drift = linf_distance(persistence_image(a, cfg, 0), persistence_image(b, cfg, 0));
        const double bound = c_sigma(cfg.sigma) * w1;
        if (drift > bound + 1e-12) ++violations;
        if (bound > 0) worst = std::max(worst, drift / bound);
    }
    return {violations == 0,
            "100 pairs, " + std::to_string(violations) + " violations, max drift/bound " + num(worst)};
}

Outcome pi_quadrature_check() {
    struct Case {
        double birth, death, extent, sigma;
        std::size_t r;
    };
    const Case cases[] = {{0, 2, 2, 1, 2}, {0.3, 1.1, 1.5, 0.4, 3}, {1, 4, 5, 2, 2}};
    double worst = 0;
    for (const auto& c : cases) {
        PIConfig cfg;
        cfg.resolution = c.r;
        cfg.birth_hi = cfg.pers_hi = c.extent;
        cfg.sigma = c.sigma;
        const auto img = persistence_image(PersistenceDiagram({{c.birth, c.death, 0}}), cfg, 0);
        const auto oracle = testing::pi_quadrature(c.birth, c.death, cfg, 1000);
        for (std::size_t i = 0; i < oracle.size(); ++i) worst = std::max(worst, std::abs(img.pixels[i] - oracle[i]));
    }
    return {worst <= 1e-6, "max abs pixel error " + num(worst)};
}

Outcome topological_loss() {
    auto dgm = [](std::vector<DiagramPoint> p) { return PersistenceDiagram(std::move(p)); };
    const double l0 = topo_loss(dgm({}), {2, 0}, 0);
    const double l4 = topo_loss(dgm({{0, 2, 0}}), {2, 0}, 0);
    const double l45 = topo_loss(dgm({{1, 3, 0}, {0, 1, 0}}), {1, 1}, 0);
    bool ok = std::abs(l0) <= 1e-12 && std::abs(l4 - 4) <= 1e-12 && std::abs(l45 - 4.5) <= 1e-12;

    Rng rng(6);
    double worst = 0;
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
        const TopoLossConfig cfg{std::floor(uniform_real(rng, 1, 4)), std::floor(uniform_real(rng, 0, 3))};
        const auto d = random_diagram(rng, 6, 0.5, 5);
        const auto grad = topo_loss_grad(d, cfg, 0);
        const auto pts = d.finite(0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (int coord = 0; coord < 2; ++coord) {
                auto at = [&](double delta) {
                    auto moved = pts;
                    (coord == 0 ? moved[i].birth : moved[i].death) += delta;
                    return topo_loss(PersistenceDiagram(moved), cfg, 0);
                };
                const double fd = (at(h) - at(-h)) / (2 * h);
                const double an = coord == 0 ? grad[i].d_birth : grad[i].d_death;
                worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
            }
        }
    }
    ok = ok && worst < 1e-6;
    return {ok, "examples " + num(l0) + "/" + num(l4) + "/" + num(l45) + ", max gradient rel. error " +
                    num(worst)};
}

Outcome zero_budget() {
    Rng rng(7);
    const auto g = random_connected_graph(rng, 60, 60);
    SweepConfig cfg;
    cfg.budgets = {0};
    cfg.trials = 5;
    cfg.fraction = 0.1;
    cfg.pi = default_pi_config(g);
    bool ok = true;
    for (const auto& r : stability_sweep(g, cfg).rows) {
        ok = ok && r.l1_distance == 0 && r.local_wasserstein_p == 0.0 && r.global_pi_linf_drift == 0.0 &&
             r.topo_loss_drift == 0.0 && r.bound_ratio_local == 0.0 && r.bound_ratio_global == 0.0;
    }
    return {ok, "5 trials at budget 0"};
}

Outcome efficiency() {
    Rng rng(8);
    const auto g = random_connected_graph(rng, 2500, 2501);
    const auto t0 = Clock::now();
    const auto cfg = default_pi_config(g);
    const auto topo = global_topology(g, 0.05);
    const auto img = persistence_image(topo.diagram, cfg, 0);
    const double secs = seconds_since(t0);
    const bool ok = topo.landmarks.landmarks.size() == 125 && secs < 60.0 && img.pixels.size() == 100;
    return {ok, std::to_string(g.num_nodes()) + " nodes, " + std::to_string(g.num_edges()) + " edges, " +
                    std::to_string(topo.landmarks.landmarks.size()) + " landmarks, " +
                    std::to_string(topo.filtration.size()) + " simplices in " + num(secs) + " s"};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome drift_growth() {
    Rng rng(9);
    const auto g = random_connected_graph(rng, 100, 100);
    SweepConfig cfg;
    cfg.budgets = {2, 4, 8, 16};
    cfg.trials = 20;
    cfg.fraction = 0.05;
    cfg.pi = default_pi_config(g);
    cfg.base_seed = 9;
    const auto report = stability_sweep(g, cfg);
    const double radius = build_cover(g, select_landmarks(g, cfg.fraction)).cover_radius;
    std::map<std::size_t, std::vector<double>> by_budget;
    for (const auto& r : report.rows) by_budget[r.budget].push_back(r.global_pi_linf_drift);
    bool ok = true;
    std::string detail = "cover_radius " + num(radius) + ";";
    for (std::size_t delta : {2, 4, 8}) {
        const double lo = median(by_budget[delta]), hi = median(by_budget[2 * delta]);
        ok = ok && hi <= 4 * lo + radius;
        detail += " median(" + std::to_string(2 * delta) + ")=" + num(hi) + " vs 4*median(" + std::to_string(delta) +
                  ")+radius=" + num(4 * lo + radius) + ";";
    }
    return {ok, detail};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"landmark-counts", landmark_counts},
        {"union-find-equals-reduction", union_find_vs_reduction},
        {"vr-bottleneck-stability", vr_stability},
        {"witness-sandwich", sandwich},
        {"pi-stability", pi_stability},
        {"pi-quadrature", pi_quadrature_check},
        {"topological-loss", topological_loss},
        {"zero-budget-fixed-point", zero_budget},
        {"efficiency", efficiency},
        {"drift-growth", drift_growth},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
