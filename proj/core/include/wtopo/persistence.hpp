#pragma once

#include "wtopo/complexes.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace wtopo {

/// Death value of a class that never dies.
inline constexpr double kEssential = std::numeric_limits<double>::infinity();

struct DiagramPoint {
    double birth = 0.0;
    double death = kEssential;
    int dimension = 0;

    bool essential() const noexcept { return death == kEssential; }
    double persistence() const noexcept { return death - birth; }
    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Points sorted by (dimension, birth, death); finite points satisfy death > birth.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    explicit PersistenceDiagram(std::vector<DiagramPoint> points);

    const std::vector<DiagramPoint>& points() const noexcept { return points_; }
    bool empty() const noexcept { return points_.empty(); }

    std::vector<DiagramPoint> in_dimension(int dim) const;
    std::vector<DiagramPoint> finite(int dim) const;
    std::vector<double> essential_births(int dim) const;
    /// Number of finite points in `dim`.
    std::size_t count(int dim) const;
    /// Largest dimension present, or -1 when empty.
    int max_dimension() const noexcept;

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

private:
    std::vector<DiagramPoint> points_;
};

enum class PersistenceAlgorithm { UnionFind, Reduction };

/// Persistence pairs of a filtration.
///
/// Reduction runs the standard column reduction of the boundary matrix over Z/2 and reports
/// dimensions 0..max_homology_dim (clamped to f.max_dim). UnionFind merges components in
/// filtration order and only produces dimension 0. A negative max_homology_dim selects the
/// largest dimension the algorithm supports. Zero-persistence pairs are dropped.
PersistenceDiagram compute_persistence(const Filtration& f,
                                       PersistenceAlgorithm algorithm = PersistenceAlgorithm::Reduction,
                                       int max_homology_dim = -1);

enum class DistanceKind { Bottleneck, Wasserstein };
enum class EssentialMatching { Match, Drop };

struct DistanceMode {
    DistanceKind kind = DistanceKind::Bottleneck;
    double p = 1.0;  // Wasserstein exponent, >= 1

    static DistanceMode bottleneck() { return {DistanceKind::Bottleneck, 1.0}; }
    static DistanceMode wasserstein(double p) { return {DistanceKind::Wasserstein, p}; }
};

/// Bottleneck or p-Wasserstein distance between the `dim` parts of two diagrams.
///
/// Ground metric is L-infinity; an unmatched point pays (death - birth) / 2. With
/// EssentialMatching::Match essential points pair only with essential points (cost
/// |b - b'|) and a count mismatch yields +infinity; Drop ignores them.
double diagram_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, DistanceMode mode, int dim,
                        EssentialMatching essentials = EssentialMatching::Match);

} // namespace wtopo
