#pragma once

#include "wtopo/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wtopo {

using VertexId = std::uint32_t;

/// A simplex over landmark indices entering the filtration at `scale`.
struct Simplex {
    std::vector<VertexId> vertices;  // strictly increasing
    double scale = 0.0;

    int dimension() const noexcept { return static_cast<int>(vertices.size()) - 1; }
    friend bool operator==(const Simplex&, const Simplex&) = default;
};

enum class ComplexKind { VietorisRips, Witness };

/// Simplices sorted by (scale, dimension, lexicographic vertices).
struct Filtration {
    std::size_t num_vertices = 0;
    std::vector<Simplex> simplices;
    int max_dim = 1;
    double max_scale = std::numeric_limits<double>::infinity();
    ComplexKind kind = ComplexKind::VietorisRips;
    std::size_t nu = 0;

    /// Number of simplices; the size of the boundary matrix.
    std::size_t size() const noexcept { return simplices.size(); }
};

/// Flag complex over a symmetric zero-diagonal distance matrix. Unreachable (infinite)
/// pairs are never joined; simplices above `max_scale` are left out.
Filtration vr_filtration(const Matrix& dists, int max_dim, double max_scale);

/// Lazy witness filtration.
///
/// An edge (i, j) enters at min_w max(0, max(d(w,i), d(w,j)) - m_nu(w)), where m_nu(w) is
/// the nu-th smallest distance from witness w to a landmark (m_0 = 0). Vertices enter at 0
/// and higher simplices at the largest scale among their edges.
Filtration witness_filtration(const Matrix& landmark_dists, const Matrix& witness_dists, int max_dim,
                              double max_scale, std::size_t nu = 0);

/// Flag filtration over an explicit edge-scale matrix (infinite = absent edge).
Filtration flag_filtration(const Matrix& edge_scales, int max_dim, double max_scale, ComplexKind kind,
                           std::size_t nu = 0);

/// Weak witness test: max_{v in sigma} d(w,v) <= min_{u not in sigma} d(w,u).
bool is_weak_witness(std::size_t witness, std::span<const VertexId> sigma, const Matrix& witness_dists);

enum class SandwichResult { Holds, Violated, NotApplicable };

/// Checks VR_{alpha/3} <= Wit_alpha <= VR_{3 alpha} as simplex sets. NotApplicable when
/// alpha <= 2 * epsilon.
SandwichResult sandwich_check(const Matrix& landmark_dists, const Matrix& witness_dists, double alpha,
                              double epsilon, int max_dim, std::size_t nu = 0);

/// Empty when `f` is sorted, face-closed and every face enters no later than its cofaces.
std::optional<std::string> validate_filtration(const Filtration& f);

/// Simplices of `f` with scale <= alpha, ignoring scales.
std::vector<std::vector<VertexId>> simplices_at(const Filtration& f, double alpha);

} // namespace wtopo
