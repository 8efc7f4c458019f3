#pragma once

#include "wtopo/persistence.hpp"

#include <cstddef>
#include <vector>

namespace wtopo {

enum class EssentialPolicy { Drop, Cap };

/// Persistence-image grid and kernel settings.
///
/// The image covers [birth_lo, birth_hi] x [pers_lo, pers_hi] in birth-persistence
/// coordinates with `resolution` bins per axis. Each point is weighted by its
/// persistence and spread with an isotropic Gaussian of standard deviation `sigma`.
/// Essential points are dropped or given death `cap`.
struct PIConfig {
    std::size_t resolution = 10;
    double birth_lo = 0.0;
    double birth_hi = 1.0;
    double pers_lo = 0.0;
    double pers_hi = 1.0;
    double sigma = 1.0;
    EssentialPolicy essential_policy = EssentialPolicy::Cap;
    double cap = 2.0;

    /// Throws ArgumentError on a zero resolution, degenerate ranges or sigma <= 0.
    void validate() const;

    /// Ranges [0, diam] on both axes and cap = diam + 1 (diam is floored at 1).
    static PIConfig for_diameter(double diam, std::size_t resolution = 10, double sigma = 1.0);

    friend bool operator==(const PIConfig&, const PIConfig&) = default;
};

/// resolution x resolution pixels, row-major. Row r is the r-th persistence bin
/// (from pers_lo upward), column c the c-th birth bin.
struct PersistenceImage {
    PIConfig config;
    std::vector<double> pixels;

    std::size_t resolution() const noexcept { return config.resolution; }
    double at(std::size_t row, std::size_t col) const { return pixels[row * config.resolution + col]; }
};

/// Image of the `dim` part of a diagram. Each pixel holds the exact integral of the
/// weighted Gaussian surface over its cell.
PersistenceImage persistence_image(const PersistenceDiagram& d, const PIConfig& cfg, int dim);

/// Stability constant sqrt(5) + sqrt(10 / pi) / sigma of the Gaussian persistence image.
double c_sigma(double sigma);

/// max |a - b| over pixels; images must share a resolution.
double linf_distance(const PersistenceImage& a, const PersistenceImage& b);

} // namespace wtopo
