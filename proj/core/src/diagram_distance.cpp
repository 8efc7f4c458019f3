#include "wtopo/persistence.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <limits>
#include <queue>

namespace wtopo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linf(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double to_diagonal(const DiagramPoint& a) { return 0.5 * (a.death - a.birth); }

/// Hopcroft-Karp maximum matching on a bipartite graph with `n` nodes per side.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(std::size_t n) : n_(n), adj_(n) {}

    void add_edge(std::size_t left, std::size_t right) { adj_[left].push_back(right); }

    bool has_perfect_matching() {
        match_left_.assign(n_, kFree);
        match_right_.assign(n_, kFree);
        dist_.assign(n_, 0);
        std::size_t matched = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < n_; ++u) {
                if (match_left_[u] == kFree && dfs(u)) ++matched;
            }
        }
        return matched == n_;
    }

private:
    static constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    static constexpr std::size_t kFar = static_cast<std::size_t>(-1);

    bool bfs() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < n_; ++u) {
            if (match_left_[u] == kFree) {
                dist_[u] = 0;
                q.push(u);
            } else {
                dist_[u] = kFar;
            }
        }
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v : adj_[u]) {
                const std::size_t w = match_right_[v];
                if (w == kFree) {
                    found = true;
                } else if (dist_[w] == kFar) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (std::size_t v : adj_[u]) {
            const std::size_t w = match_right_[v];
            if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kFar;
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_left_, match_right_, dist_;
};

// Left side: points of a, then diagonal slots for b. Right side: points of b, then
// diagonal slots for a. Diagonal-to-diagonal pairs are free.
bool matching_within(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double bound) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    BipartiteMatcher matcher(n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (linf(a[i], b[j]) <= bound) matcher.add_edge(i, j);
        }
        if (to_diagonal(a[i]) <= bound) matcher.add_edge(i, m + i);
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (to_diagonal(b[j]) <= bound) matcher.add_edge(n + j, j);
        for (std::size_t i = 0; i < n; ++i) matcher.add_edge(n + j, m + i);
    }
    return matcher.has_perfect_matching();
}

double bottleneck_finite(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::vector<double> candidates{0.0};
    for (const auto& p : a) candidates.push_back(to_diagonal(p));
    for (const auto& q : b) candidates.push_back(to_diagonal(q));
    for (const auto& p : a) {
        for (const auto& q : b) candidates.push_back(linf(p, q));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Matching everything to the diagonal always works, so the largest candidate is feasible.
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matching_within(a, b, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return candidates[lo];
}

/// Minimum-cost perfect assignment on a square cost matrix (potentials / shortest augmenting path).
double assignment_cost(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

double wasserstein_finite_sum(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double p) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n + m == 0) return 0.0;

    // Forbidden cells get a cost no optimal assignment would pay.
    double forbidden = 1.0;
    for (const auto& x : a) forbidden += std::pow(to_diagonal(x), p);
    for (const auto& y : b) forbidden += std::pow(to_diagonal(y), p);
    forbidden *= 4.0;

    const std::size_t k = n + m;
    std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double c = 0.0;
            if (i < n && j < m) {
                c = std::pow(linf(a[i], b[j]), p);
            } else if (i < n) {
                c = (j - m == i) ? std::pow(to_diagonal(a[i]), p) : forbidden;
            } else if (j < m) {
                c = (i - n == j) ? std::pow(to_diagonal(b[j]), p) : forbidden;
            }
            cost[i][j] = c;
        }
    }
    return assignment_cost(cost);
}

} // namespace

double diagram_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, DistanceMode mode, int dim,
                        EssentialMatching essentials) {
    if (mode.kind == DistanceKind::Wasserstein && !(mode.p >= 1.0)) {
        throw ArgumentError("Wasserstein exponent p must be >= 1");
    }
    auto fa = a.finite(dim);
    auto fb = b.finite(dim);
    // Fixed argument order so that d(a, b) and d(b, a) agree bit for bit.
    auto key = [](const DiagramPoint& x, const DiagramPoint& y) {
        return std::tie(x.birth, x.death) < std::tie(y.birth, y.death);
    };
    if (std::lexicographical_compare(fb.begin(), fb.end(), fa.begin(), fa.end(), key)) std::swap(fa, fb);

    double ess_max = 0.0;
    double ess_sum = 0.0;
    if (essentials == EssentialMatching::Match) {
        auto ea = a.essential_births(dim);
        auto eb = b.essential_births(dim);
        if (ea.size() != eb.size()) return kInf;
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        // On the line, sorted order is an optimal matching for every p.
        for (std::size_t i = 0; i < ea.size(); ++i) {
            const double c = std::abs(ea[i] - eb[i]);
            ess_max = std::max(ess_max, c);
            if (mode.kind == DistanceKind::Wasserstein) ess_sum += std::pow(c, mode.p);
        }
    }

    if (mode.kind == DistanceKind::Bottleneck) {
        return std::max(ess_max, bottleneck_finite(fa, fb));
    }
    const double total = wasserstein_finite_sum(fa, fb, mode.p) + ess_sum;
    return std::pow(std::max(total, 0.0), 1.0 / mode.p);
}

} // namespace wtopo
