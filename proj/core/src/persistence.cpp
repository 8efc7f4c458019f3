#include "wtopo/persistence.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace wtopo {

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points) : points_(std::move(points)) {
    for (const auto& p : points_) {
        if (p.dimension < 0) throw ValidationError("diagram point has negative dimension");
        if (!(p.birth >= 0.0) || !std::isfinite(p.birth)) {
            throw ValidationError("diagram point birth must be finite and non-negative");
        }
        if (!p.essential() && !(p.death > p.birth)) {
            throw ValidationError("finite diagram point must satisfy death > birth");
        }
    }
    std::sort(points_.begin(), points_.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
        return std::tie(a.dimension, a.birth, a.death) < std::tie(b.dimension, b.birth, b.death);
    });
}

std::vector<DiagramPoint> PersistenceDiagram::in_dimension(int dim) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points_) {
        if (p.dimension == dim) out.push_back(p);
    }
    return out;
}

std::vector<DiagramPoint> PersistenceDiagram::finite(int dim) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points_) {
        if (p.dimension == dim && !p.essential()) out.push_back(p);
    }
    return out;
}

std::vector<double> PersistenceDiagram::essential_births(int dim) const {
    std::vector<double> out;
    for (const auto& p : points_) {
        if (p.dimension == dim && p.essential()) out.push_back(p.birth);
    }
    return out;
}

std::size_t PersistenceDiagram::count(int dim) const {
    return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [dim](const DiagramPoint& p) {
        return p.dimension == dim && !p.essential();
    }));
}

int PersistenceDiagram::max_dimension() const noexcept {
    int best = -1;
    for (const auto& p : points_) best = std::max(best, p.dimension);
    return best;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::uint64_t edge_key(VertexId a, VertexId b) { return (std::uint64_t{a} << 32) | b; }

PersistenceDiagram union_find_h0(const Filtration& f) {
    std::vector<std::size_t> parent(f.num_vertices, kNone);
    std::vector<std::size_t> oldest(f.num_vertices, kNone);  // filtration position of the root's birth
    std::vector<double> birth(f.num_vertices, 0.0);

    auto find = [&](std::size_t x) {
        std::size_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            const std::size_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    };

    std::vector<DiagramPoint> points;
    for (std::size_t pos = 0; pos < f.simplices.size(); ++pos) {
        const auto& s = f.simplices[pos];
        if (s.vertices.size() == 1) {
            const VertexId v = s.vertices[0];
            parent[v] = v;
            oldest[v] = pos;
            birth[v] = s.scale;
        } else if (s.vertices.size() == 2) {
            std::size_t a = find(s.vertices[0]);
            std::size_t b = find(s.vertices[1]);
            if (a == b) continue;
            // Elder rule: the component born later (by filtration position) dies.
            if (oldest[a] > oldest[b]) std::swap(a, b);
            if (s.scale > birth[b]) points.push_back({birth[b], s.scale, 0});
            parent[b] = a;
        }
    }
    for (std::size_t v = 0; v < f.num_vertices; ++v) {
        if (parent[v] == v) points.push_back({birth[v], kEssential, 0});
    }
    return PersistenceDiagram(std::move(points));
}

// Symmetric difference of two ascending index lists, written into `target`.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                std::vector<std::size_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

PersistenceDiagram reduction(const Filtration& f, int max_hom) {
    const std::size_t n = f.simplices.size();
    std::vector<std::size_t> vertex_pos(f.num_vertices, kNone);
    std::unordered_map<std::uint64_t, std::size_t> edge_pos;
    std::vector<std::vector<std::size_t>> columns(n);

    for (std::size_t j = 0; j < n; ++j) {
        const auto& v = f.simplices[j].vertices;
        switch (v.size()) {
        case 1:
            vertex_pos[v[0]] = j;
            break;
        case 2:
            edge_pos.emplace(edge_key(v[0], v[1]), j);
            columns[j] = {vertex_pos[v[0]], vertex_pos[v[1]]};
            break;
        case 3:
            if (max_hom >= 1) {
                columns[j] = {edge_pos.at(edge_key(v[0], v[1])), edge_pos.at(edge_key(v[0], v[2])),
                              edge_pos.at(edge_key(v[1], v[2]))};
            }
            break;
        default:
            throw ValidationError("simplices above dimension 2 are not supported");
        }
        std::sort(columns[j].begin(), columns[j].end());
    }

    std::vector<std::size_t> pivot_owner(n, kNone);
    std::vector<std::size_t> scratch;
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = columns[j];
        while (!col.empty() && pivot_owner[col.back()] != kNone) {
            add_column(col, columns[pivot_owner[col.back()]], scratch);
        }
        if (!col.empty()) pivot_owner[col.back()] = j;
    }

    std::vector<DiagramPoint> points;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = f.simplices[i];
        const int dim = s.dimension();
        if (dim > max_hom || !columns[i].empty()) continue;
        if (pivot_owner[i] == kNone) {
            points.push_back({s.scale, kEssential, dim});
        } else {
            const double death = f.simplices[pivot_owner[i]].scale;
            if (death > s.scale) points.push_back({s.scale, death, dim});
        }
    }
    return PersistenceDiagram(std::move(points));
}

} // namespace

PersistenceDiagram compute_persistence(const Filtration& f, PersistenceAlgorithm algorithm, int max_homology_dim) {
    if (algorithm == PersistenceAlgorithm::UnionFind) {
        if (max_homology_dim > 0) {
            throw ArgumentError("union-find persistence only computes dimension 0");
        }
        return union_find_h0(f);
    }
    const int max_hom = max_homology_dim < 0 ? f.max_dim : std::min(max_homology_dim, f.max_dim);
    return reduction(f, max_hom);
}

} // namespace wtopo
