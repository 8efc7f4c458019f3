#include "generators.hpp"
#include "oracles.hpp"

#include <wtopo/errors.hpp>
#include <wtopo/io.hpp>
#include <wtopo/persistence.hpp>
#include <wtopo/vectorize.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace wtopo;
using namespace wtopo::testing;

namespace {

PIConfig box(double extent, std::size_t r, double sigma) {
    PIConfig cfg;
    cfg.resolution = r;
    cfg.birth_hi = cfg.pers_hi = extent;
    cfg.sigma = sigma;
    cfg.cap = extent + 1;
    return cfg;
}

} // namespace

TEST(PersistenceImage, EmptyDiagramIsZero) {
    const auto img = persistence_image(PersistenceDiagram{}, box(1, 4, 1), 0);
    EXPECT_EQ(img.pixels, std::vector<double>(16, 0.0));
}

TEST(PersistenceImage, DroppedEssentialsGiveZero) {
    auto cfg = box(2, 3, 1);
    cfg.essential_policy = EssentialPolicy::Drop;
    const PersistenceDiagram d({{0, kEssential, 0}, {1, kEssential, 0}});
    EXPECT_EQ(persistence_image(d, cfg, 0).pixels, std::vector<double>(9, 0.0));
    cfg.essential_policy = EssentialPolicy::Cap;
    // Capped essential equals the finite point (b, cap).
    EXPECT_EQ(persistence_image(d, cfg, 0).pixels,
              persistence_image(PersistenceDiagram({{0, 3, 0}, {1, 3, 0}}), cfg, 0).pixels);
}

TEST(PersistenceImage, SinglePointMatchesQuadrature) {
    const auto cfg = box(2, 2, 1);
    const auto img = persistence_image(PersistenceDiagram({{0, 2, 0}}), cfg, 0);
    const auto oracle = pi_quadrature(0, 2, cfg, 1000);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(img.pixels[i], oracle[i], 1e-6);
}

TEST(PersistenceImage, RowsArePersistenceColumnsAreBirth) {
    auto cfg = box(10, 10, 0.2);
    const auto img = persistence_image(PersistenceDiagram({{1.5, 9.0, 0}}), cfg, 0);
    const auto peak = std::max_element(img.pixels.begin(), img.pixels.end()) - img.pixels.begin();
    EXPECT_EQ(peak / 10, 7);  // persistence 7.5
    EXPECT_EQ(peak % 10, 1);  // birth 1.5
}

TEST(PersistenceImage, OtherDimensionsIgnored) {
    const PersistenceDiagram d({{0, 1, 1}});
    EXPECT_EQ(persistence_image(d, box(1, 2, 1), 0).pixels, std::vector<double>(4, 0.0));
}

TEST(PersistenceImage, PermutationInvariantAndLinear) {
    Rng rng(31);
    const auto cfg = box(5, 6, 0.7);
    for (int trial = 0; trial < 30; ++trial) {
        auto pts = random_diagram(rng, 8, 0, 5).points();
        const auto a = persistence_image(PersistenceDiagram(pts), cfg, 0);
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_EQ(persistence_image(PersistenceDiagram(pts), cfg, 0).pixels, a.pixels);
        if (pts.empty()) continue;
        const auto one = persistence_image(PersistenceDiagram({pts[0]}), cfg, 0);
        const auto two = persistence_image(PersistenceDiagram({pts[0], pts[0]}), cfg, 0);
        for (std::size_t i = 0; i < one.pixels.size(); ++i) EXPECT_EQ(two.pixels[i], 2 * one.pixels[i]);
    }
}

TEST(PersistenceImage, NonNegativeAndFinite) {
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        const auto img = persistence_image(random_diagram(rng, 8, 0, 20), box(5, 5, 0.3), 0);
        for (double v : img.pixels) {
            EXPECT_GE(v, 0.0);
            EXPECT_TRUE(std::isfinite(v));
        }
    }
}

TEST(PersistenceImage, StabilityBound) {
    Rng rng(33);
    for (double sigma : {0.5, 1.0, 2.0}) {
        const auto cfg = box(5, 10, sigma);
        for (int trial = 0; trial < 50; ++trial) {
            const auto a = random_diagram(rng, 8, 0, 5);
            const auto b = random_diagram(rng, 8, 0, 5);
            const double w1 = diagram_distance(a, b, DistanceMode::wasserstein(1), 0);
            const double drift = linf_distance(persistence_image(a, cfg, 0), persistence_image(b, cfg, 0));
            EXPECT_LE(drift, c_sigma(sigma) * w1 + 1e-12);
        }
    }
}

TEST(PersistenceImage, ConfigValidation) {
    auto cfg = box(1, 2, 1);
    cfg.sigma = 0;
    EXPECT_THROW(cfg.validate(), ArgumentError);
    cfg = box(1, 0, 1);
    EXPECT_THROW(cfg.validate(), ArgumentError);
    cfg = box(1, 2, 1);
    cfg.birth_hi = cfg.birth_lo;
    EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(PersistenceImage, DefaultsFromDiameter) {
    const auto cfg = PIConfig::for_diameter(6);
    EXPECT_EQ(cfg.resolution, 10u);
    EXPECT_EQ(cfg.birth_hi, 6);
    EXPECT_EQ(cfg.pers_hi, 6);
    EXPECT_EQ(cfg.cap, 7);
    EXPECT_EQ(cfg.essential_policy, EssentialPolicy::Cap);
    EXPECT_EQ(PIConfig::for_diameter(0).birth_hi, 1);
}

TEST(CSigma, ClosedForm) {
    EXPECT_NEAR(c_sigma(1.0), 4.0201921, 1e-7);
    EXPECT_NEAR(c_sigma(0.5), 5.8043161, 5e-7);
    EXPECT_NEAR(c_sigma(1e12), 2.2360680, 1e-7);
    EXPECT_DOUBLE_EQ(c_sigma(2.0), std::sqrt(5.0) + std::sqrt(10.0 / M_PI) / 2.0);
    EXPECT_THROW(c_sigma(0), ArgumentError);
    EXPECT_THROW(c_sigma(-1), ArgumentError);
}

TEST(ImageCsv, RowMajor) {
    PersistenceImage img{box(1, 2, 1), {1, 2, 3, 0.5}};
    std::ostringstream out;
    write_image_csv(out, img);
    EXPECT_EQ(out.str(), "1,2\n3,0.5\n");
}
