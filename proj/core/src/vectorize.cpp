#include "wtopo/vectorize.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wtopo {

void PIConfig::validate() const {
    if (resolution < 1) throw ArgumentError("persistence image resolution must be >= 1");
    if (!(birth_hi > birth_lo) || !std::isfinite(birth_lo) || !std::isfinite(birth_hi)) {
        throw ArgumentError("birth range must be finite and non-degenerate");
    }
    if (!(pers_hi > pers_lo) || !std::isfinite(pers_lo) || !std::isfinite(pers_hi)) {
        throw ArgumentError("persistence range must be finite and non-degenerate");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be positive");
    if (essential_policy == EssentialPolicy::Cap && !std::isfinite(cap)) {
        throw ArgumentError("essential cap must be finite");
    }
}

PIConfig PIConfig::for_diameter(double diam, std::size_t resolution, double sigma) {
    const double extent = std::max(diam, 1.0);
    PIConfig cfg;
    cfg.resolution = resolution;
    cfg.birth_hi = extent;
    cfg.pers_hi = extent;
    cfg.sigma = sigma;
    cfg.cap = extent + 1.0;
    return cfg;
}

namespace {

// Gaussian mass of [lo, hi] around `center`.
double interval_mass(double lo, double hi, double center, double sigma) {
    const double scale = 1.0 / (sigma * std::numbers::sqrt2);
    return 0.5 * (std::erfc((center - hi) * scale) - std::erfc((center - lo) * scale));
}

} // namespace

PersistenceImage persistence_image(const PersistenceDiagram& d, const PIConfig& cfg, int dim) {
    cfg.validate();
    const std::size_t r = cfg.resolution;
    PersistenceImage img{cfg, std::vector<double>(r * r, 0.0)};

    const double db = (cfg.birth_hi - cfg.birth_lo) / static_cast<double>(r);
    const double dp = (cfg.pers_hi - cfg.pers_lo) / static_cast<double>(r);
    std::vector<double> birth_mass(r), pers_mass(r);

    for (const auto& pt : d.in_dimension(dim)) {
        double death = pt.death;
        if (pt.essential()) {
            if (cfg.essential_policy == EssentialPolicy::Drop) continue;
            death = cfg.cap;
        }
        const double pers = death - pt.birth;
        if (!(pers > 0.0)) continue;
        for (std::size_t i = 0; i < r; ++i) {
            const double blo = cfg.birth_lo + db * static_cast<double>(i);
            const double plo = cfg.pers_lo + dp * static_cast<double>(i);
            birth_mass[i] = interval_mass(blo, blo + db, pt.birth, cfg.sigma);
            pers_mass[i] = interval_mass(plo, plo + dp, pers, cfg.sigma);
        }
        for (std::size_t row = 0; row < r; ++row) {
            for (std::size_t col = 0; col < r; ++col) {
                img.pixels[row * r + col] += pers * pers_mass[row] * birth_mass[col];
            }
        }
    }
    return img;
}

double c_sigma(double sigma) {
    if (!(sigma > 0.0)) throw ArgumentError("sigma must be positive, got " + std::to_string(sigma));
    return std::sqrt(5.0) + std::sqrt(10.0 / std::numbers::pi) / sigma;
}

double linf_distance(const PersistenceImage& a, const PersistenceImage& b) {
    if (a.pixels.size() != b.pixels.size()) throw ArgumentError("persistence images differ in resolution");
    double best = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) best = std::max(best, std::abs(a.pixels[i] - b.pixels[i]));
    return best;
}

} // namespace wtopo
