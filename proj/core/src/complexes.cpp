#include "wtopo/complexes.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace wtopo {

namespace {

void check_max_dim(int max_dim) {
    if (max_dim < 0 || max_dim > 2) {
        throw ArgumentError("max_dim must be 0, 1 or 2, got " + std::to_string(max_dim));
    }
}

bool simplex_order(const Simplex& a, const Simplex& b) {
    if (a.scale != b.scale) return a.scale < b.scale;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

} // namespace

Filtration flag_filtration(const Matrix& edge_scales, int max_dim, double max_scale, ComplexKind kind,
                           std::size_t nu) {
    check_max_dim(max_dim);
    if (std::isnan(max_scale) || max_scale < 0.0) throw ArgumentError("max_scale must be non-negative");
    if (edge_scales.rows != edge_scales.cols) throw ValidationError("edge-scale matrix must be square");

    const std::size_t n = edge_scales.rows;
    Filtration f;
    f.num_vertices = n;
    f.max_dim = max_dim;
    f.max_scale = max_scale;
    f.kind = kind;
    f.nu = nu;

    for (std::size_t i = 0; i < n; ++i) f.simplices.push_back({{static_cast<VertexId>(i)}, 0.0});
    if (max_dim >= 1) {
        auto present = [&](std::size_t i, std::size_t j) {
            const double s = edge_scales.at(i, j);
            return std::isfinite(s) && s <= max_scale;
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!present(i, j)) continue;
                f.simplices.push_back({{static_cast<VertexId>(i), static_cast<VertexId>(j)}, edge_scales.at(i, j)});
                if (max_dim < 2) continue;
                for (std::size_t k = j + 1; k < n; ++k) {
                    if (!present(i, k) || !present(j, k)) continue;
                    const double s = std::max({edge_scales.at(i, j), edge_scales.at(i, k), edge_scales.at(j, k)});
                    f.simplices.push_back(
                        {{static_cast<VertexId>(i), static_cast<VertexId>(j), static_cast<VertexId>(k)}, s});
                }
            }
        }
    }
    std::sort(f.simplices.begin(), f.simplices.end(), simplex_order);
    return f;
}

Filtration vr_filtration(const Matrix& dists, int max_dim, double max_scale) {
    if (dists.rows != dists.cols) throw ValidationError("distance matrix must be square");
    const std::size_t n = dists.rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (dists.at(i, i) != 0.0) throw ValidationError("distance matrix must have a zero diagonal");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = dists.at(i, j);
            const double b = dists.at(j, i);
            if (a != b && !(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)))) {
                throw ValidationError("distance matrix is not symmetric at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
            }
            if (a < 0.0 || std::isnan(a)) throw ValidationError("distances must be non-negative");
        }
    }
    return flag_filtration(dists, max_dim, max_scale, ComplexKind::VietorisRips);
}

Filtration witness_filtration(const Matrix& landmark_dists, const Matrix& witness_dists, int max_dim,
                              double max_scale, std::size_t nu) {
    const std::size_t nl = landmark_dists.rows;
    if (landmark_dists.cols != nl) throw ValidationError("landmark distance matrix must be square");
    if (witness_dists.rows == 0) throw ArgumentError("witness set must be non-empty");
    if (witness_dists.cols != nl) {
        throw ValidationError("witness matrix has " + std::to_string(witness_dists.cols) + " columns for " +
                              std::to_string(nl) + " landmarks");
    }
    if (nu > nl) throw ArgumentError("nu cannot exceed the number of landmarks");

    Matrix scales(nl, nl, kUnreachable);
    for (std::size_t i = 0; i < nl; ++i) scales.at(i, i) = 0.0;

    std::vector<double> sorted;
    for (std::size_t w = 0; w < witness_dists.rows; ++w) {
        const auto row = witness_dists.row(w);
        double relax = 0.0;
        if (nu > 0) {
            sorted.assign(row.begin(), row.end());
            std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(nu - 1), sorted.end());
            relax = sorted[nu - 1];
            if (!std::isfinite(relax)) continue;
        }
        for (std::size_t i = 0; i < nl; ++i) {
            const double di = row[i];
            if (!std::isfinite(di)) continue;
            for (std::size_t j = i + 1; j < nl; ++j) {
                const double dj = row[j];
                if (!std::isfinite(dj)) continue;
                const double s = std::max(0.0, std::max(di, dj) - relax);
                if (s < scales.at(i, j)) scales.at(i, j) = s;
            }
        }
    }
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = i + 1; j < nl; ++j) scales.at(j, i) = scales.at(i, j);
    }
    return flag_filtration(scales, max_dim, max_scale, ComplexKind::Witness, nu);
}

bool is_weak_witness(std::size_t witness, std::span<const VertexId> sigma, const Matrix& witness_dists) {
    const auto row = witness_dists.row(witness);
    std::vector<bool> in_sigma(row.size(), false);
    double inner = 0.0;
    for (VertexId v : sigma) {
        in_sigma[v] = true;
        inner = std::max(inner, row[v]);
    }
    for (std::size_t u = 0; u < row.size(); ++u) {
        if (!in_sigma[u] && row[u] < inner) return false;
    }
    return true;
}

std::vector<std::vector<VertexId>> simplices_at(const Filtration& f, double alpha) {
    std::vector<std::vector<VertexId>> out;
    for (const auto& s : f.simplices) {
        if (s.scale <= alpha) out.push_back(s.vertices);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SandwichResult sandwich_check(const Matrix& landmark_dists, const Matrix& witness_dists, double alpha,
                              double epsilon, int max_dim, std::size_t nu) {
    if (!(alpha > 2.0 * epsilon)) return SandwichResult::NotApplicable;
    const auto inner = simplices_at(vr_filtration(landmark_dists, max_dim, alpha / 3.0), alpha / 3.0);
    const auto middle = simplices_at(witness_filtration(landmark_dists, witness_dists, max_dim, alpha, nu), alpha);
    const auto outer = simplices_at(vr_filtration(landmark_dists, max_dim, 3.0 * alpha), 3.0 * alpha);
    const bool holds = std::includes(middle.begin(), middle.end(), inner.begin(), inner.end()) &&
                       std::includes(outer.begin(), outer.end(), middle.begin(), middle.end());
    return holds ? SandwichResult::Holds : SandwichResult::Violated;
}

std::optional<std::string> validate_filtration(const Filtration& f) {
    std::map<std::vector<VertexId>, double> seen;
    for (std::size_t i = 0; i < f.simplices.size(); ++i) {
        const auto& s = f.simplices[i];
        if (s.vertices.empty()) return "empty simplex at position " + std::to_string(i);
        if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
            std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end()) {
            return "vertices not strictly increasing at position " + std::to_string(i);
        }
        if (s.vertices.back() >= f.num_vertices) return "vertex out of range at position " + std::to_string(i);
        if (!(s.scale >= 0.0)) return "negative scale at position " + std::to_string(i);
        if (i > 0 && simplex_order(s, f.simplices[i - 1])) return "not sorted at position " + std::to_string(i);
        if (s.vertices.size() > 1) {
            for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
                auto face = s.vertices;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                auto it = seen.find(face);
                if (it == seen.end()) return "face missing before position " + std::to_string(i);
                if (it->second > s.scale) return "face enters after coface at position " + std::to_string(i);
            }
        }
        if (!seen.emplace(s.vertices, s.scale).second) return "duplicate simplex at position " + std::to_string(i);
    }
    return std::nullopt;
}

} // namespace wtopo
