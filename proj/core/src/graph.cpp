#include "wtopo/graph.hpp"

#include "wtopo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "wtopo/format.hpp"

namespace wtopo {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v)) {
    if (values.size() != rows * cols) {
        throw ValidationError("matrix has " + std::to_string(values.size()) +
                              " values, expected " + std::to_string(rows * cols));
    }
}

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges, std::optional<FeatureMatrix> features)
    : num_nodes_(num_nodes), edges_(std::move(edges)), features_(std::move(features)) {
    for (auto& e : edges_) {
        if (e.u == e.v) {
            throw ValidationError("self-loop on node " + std::to_string(e.u));
        }
        if (e.u >= num_nodes_ || e.v >= num_nodes_) {
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") references a node outside [0, " + std::to_string(num_nodes_) + ")");
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") has non-positive or non-finite weight");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.weight != 1.0) unit_weights_ = false;
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
            throw ValidationError("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                                  std::to_string(edges_[i].v) + ")");
        }
    }
    if (features_ && features_->rows != num_nodes_) {
        throw ValidationError("feature matrix has " + std::to_string(features_->rows) + " rows for " +
                              std::to_string(num_nodes_) + " nodes");
    }

    std::vector<std::size_t> deg(num_nodes_, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(num_nodes_ + 1, 0);
    for (std::size_t i = 0; i < num_nodes_; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[cursor[e.u]++] = {e.v, e.weight};
        adjacency_[cursor[e.v]++] = {e.u, e.weight};
    }
    for (std::size_t i = 0; i < num_nodes_; ++i) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
}

std::optional<double> Graph::edge_weight(NodeId u, NodeId v) const {
    if (u >= num_nodes_ || v >= num_nodes_) return std::nullopt;
    auto nbrs = neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                               [](const Neighbor& n, NodeId x) { return n.node < x; });
    if (it == nbrs.end() || it->node != v) return std::nullopt;
    return it->weight;
}

DistanceMatrix::DistanceMatrix(std::vector<NodeId> sources, std::size_t num_nodes, std::vector<double> dists)
    : sources_(std::move(sources)), num_nodes_(num_nodes), dists_(std::move(dists)) {
    if (dists_.size() != sources_.size() * num_nodes_) {
        throw ValidationError("distance matrix size does not match sources x nodes");
    }
}

double DistanceMatrix::max_finite() const noexcept {
    double best = 0.0;
    for (double d : dists_) {
        if (is_reachable(d)) best = std::max(best, d);
    }
    return best;
}

Matrix DistanceMatrix::source_block() const {
    const std::size_t k = sources_.size();
    Matrix out(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) out.at(i, j) = at(i, sources_[j]);
    }
    return out;
}

Matrix DistanceMatrix::transposed() const {
    Matrix out(num_nodes_, sources_.size());
    for (std::size_t r = 0; r < sources_.size(); ++r) {
        for (std::size_t w = 0; w < num_nodes_; ++w) out.at(w, r) = at(r, static_cast<NodeId>(w));
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

NodeId parse_node(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() ||
        value >= std::numeric_limits<NodeId>::max()) {
        throw ParseError(line, "invalid node id '" + std::string(tok) + "'");
    }
    return static_cast<NodeId>(value);
}

void bfs_row(const Graph& g, NodeId source, std::span<double> row) {
    std::fill(row.begin(), row.end(), kUnreachable);
    std::deque<NodeId> queue{source};
    row[source] = 0.0;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(u)) {
            if (!is_reachable(row[nb.node])) {
                row[nb.node] = row[u] + 1.0;
                queue.push_back(nb.node);
            }
        }
    }
}

void dijkstra_row(const Graph& g, NodeId source, std::span<double> row) {
    std::fill(row.begin(), row.end(), kUnreachable);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > row[u]) continue;
        for (const auto& nb : g.neighbors(u)) {
            const double nd = d + nb.weight;
            if (nd < row[nb.node]) {
                row[nb.node] = nd;
                heap.emplace(nd, nb.node);
            }
        }
    }
}

} // namespace

Graph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::size_t max_id_plus_one = 0;
    std::string line;
    std::size_t lineno = 0;
    std::size_t declared_nodes = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            // "# nodes N" pins the node count so trailing isolated nodes survive a round trip.
            auto toks = split_ws(body.substr(1));
            std::size_t declared = 0;
            if (toks.size() >= 2 && toks[0] == "nodes") {
                auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), declared);
                if (ec == std::errc{} && ptr == toks[1].data() + toks[1].size()) {
                    declared_nodes = std::max(declared_nodes, declared);
                }
            }
            continue;
        }
        auto toks = split_ws(body);
        if (toks.size() != 2 && toks.size() != 3) {
            throw ParseError(lineno, "expected 'u v' or 'u v w', got '" + std::string(body) + "'");
        }
        Edge e;
        e.u = parse_node(toks[0], lineno);
        e.v = parse_node(toks[1], lineno);
        if (toks.size() == 3) {
            auto w = parse_real(toks[2]);
            if (!w) throw ParseError(lineno, "invalid weight '" + std::string(toks[2]) + "'");
            e.weight = *w;
        }
        if (e.u == e.v) {
            throw ValidationError("line " + std::to_string(lineno) + ": self-loop on node " +
                                  std::to_string(e.u));
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw ValidationError("line " + std::to_string(lineno) + ": weight must be positive and finite");
        }
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(e.u, e.v) + std::size_t{1});
        edges.push_back(e);
    }
    return Graph(std::max(max_id_plus_one, declared_nodes), std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (!g.unit_weights()) out << ' ' << format_real(e.weight);
        out << '\n';
    }
}

Graph build_knn_graph(const FeatureMatrix& features, std::size_t k, double zero_floor) {
    const std::size_t n = features.rows;
    if (k < 1 || k >= n) {
        throw ArgumentError("k must satisfy 1 <= k < N (k=" + std::to_string(k) +
                            ", N=" + std::to_string(n) + ")");
    }
    if (!(zero_floor > 0.0)) throw ArgumentError("zero_floor must be positive");

    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = features.row(i);
        norms[i] = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (!(norms[i] > 0.0)) {
            throw ValidationError("feature row " + std::to_string(i) + " has zero norm");
        }
    }
    auto cosine = [&](std::size_t a, std::size_t b) {
        auto ra = features.row(a);
        auto rb = features.row(b);
        const double dot = std::inner_product(ra.begin(), ra.end(), rb.begin(), 0.0);
        return std::max(0.0, 1.0 - dot / (norms[a] * norms[b]));
    };

    // Symmetrise the directed kNN relation; the pair weight is the same either way.
    std::vector<std::vector<std::pair<NodeId, double>>> chosen(n);
    std::vector<std::pair<double, NodeId>> cand;
    for (std::size_t u = 0; u < n; ++u) {
        cand.clear();
        for (std::size_t v = 0; v < n; ++v) {
            if (v != u) cand.emplace_back(cosine(u, v), static_cast<NodeId>(v));
        }
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        for (std::size_t i = 0; i < k; ++i) {
            auto [d, v] = cand[i];
            const NodeId a = std::min<NodeId>(static_cast<NodeId>(u), v);
            const NodeId b = std::max<NodeId>(static_cast<NodeId>(u), v);
            chosen[a].emplace_back(b, std::max(d, zero_floor));
        }
    }
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < n; ++a) {
        auto& lst = chosen[a];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end(),
                              [](const auto& x, const auto& y) { return x.first == y.first; }),
                  lst.end());
        for (auto [b, w] : lst) edges.push_back({static_cast<NodeId>(a), b, w});
    }
    return Graph(n, std::move(edges), features);
}

DistanceMatrix geodesics(const Graph& g, std::span<const NodeId> sources, PathAlgorithm algorithm) {
    if (sources.empty()) throw ArgumentError("geodesics requires at least one source");
    for (NodeId s : sources) {
        if (s >= g.num_nodes()) throw ArgumentError("source " + std::to_string(s) + " out of range");
    }
    if (algorithm == PathAlgorithm::Bfs && !g.unit_weights()) {
        throw ArgumentError("breadth-first geodesics require unit edge weights");
    }
    const bool use_bfs = algorithm == PathAlgorithm::Bfs ||
                         (algorithm == PathAlgorithm::Auto && g.unit_weights());
    const std::size_t n = g.num_nodes();
    std::vector<double> dists(sources.size() * n);
    for (std::size_t r = 0; r < sources.size(); ++r) {
        std::span<double> row(dists.data() + r * n, n);
        if (use_bfs) {
            bfs_row(g, sources[r], row);
        } else {
            dijkstra_row(g, sources[r], row);
        }
    }
    return DistanceMatrix(std::vector<NodeId>(sources.begin(), sources.end()), n, std::move(dists));
}

DistanceMatrix all_pairs_geodesics(const Graph& g) {
    std::vector<NodeId> all(g.num_nodes());
    std::iota(all.begin(), all.end(), NodeId{0});
    if (all.empty()) return {};
    return geodesics(g, all);
}

double diameter(const Graph& g) {
    if (g.num_nodes() == 0) return 0.0;
    return all_pairs_geodesics(g).max_finite();
}

std::vector<std::size_t> connected_components(const Graph& g) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(g.num_nodes(), unset);
    std::size_t next = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (const auto& nb : g.neighbors(u)) {
                if (label[nb.node] == unset) {
                    label[nb.node] = next;
                    stack.push_back(nb.node);
                }
            }
        }
        ++next;
    }
    return label;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    constexpr auto absent = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> remap(g.num_nodes(), absent);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= g.num_nodes()) throw ArgumentError("induced_subgraph: node out of range");
        if (remap[nodes[i]] != absent) throw ArgumentError("induced_subgraph: duplicate node");
        remap[nodes[i]] = static_cast<NodeId>(i);
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (remap[e.u] != absent && remap[e.v] != absent) {
            edges.push_back({remap[e.u], remap[e.v], e.weight});
        }
    }
    std::optional<FeatureMatrix> feats;
    if (const auto& f = g.node_features()) {
        FeatureMatrix sub(nodes.size(), f->cols);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            auto src = f->row(nodes[i]);
            std::copy(src.begin(), src.end(), sub.values.begin() + static_cast<std::ptrdiff_t>(i * f->cols));
        }
        feats = std::move(sub);
    }
    return {Graph(nodes.size(), std::move(edges), std::move(feats)),
            std::vector<NodeId>(nodes.begin(), nodes.end())};
}

Subgraph largest_connected_component(const Graph& g) {
    const auto label = connected_components(g);
    if (label.empty()) return {g, {}};
    std::vector<std::size_t> size(*std::max_element(label.begin(), label.end()) + 1, 0);
    for (auto l : label) ++size[l];
    // Labels are assigned in order of smallest member, so the first maximum wins ties.
    const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
    std::vector<NodeId> members;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (label[u] == best) members.push_back(u);
    }
    return induced_subgraph(g, members);
}

namespace {

void require_same_size(const Graph& a, const Graph& b) {
    if (a.num_nodes() != b.num_nodes()) {
        throw ArgumentError("graphs have different node counts (" + std::to_string(a.num_nodes()) +
                            " vs " + std::to_string(b.num_nodes()) + ")");
    }
}

// Walks the two sorted edge lists in lockstep.
template <typename OnlyA, typename OnlyB, typename Both>
void merge_edges(const Graph& a, const Graph& b, OnlyA only_a, OnlyB only_b, Both both) {
    auto ea = a.edges();
    auto eb = b.edges();
    std::size_t i = 0, j = 0;
    auto key = [](const Edge& e) { return std::pair{e.u, e.v}; };
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && key(ea[i]) < key(eb[j]))) {
            only_a(ea[i++]);
        } else if (i == ea.size() || key(eb[j]) < key(ea[i])) {
            only_b(eb[j++]);
        } else {
            both(ea[i++], eb[j++]);
        }
    }
}

} // namespace

std::size_t adjacency_l1_distance(const Graph& a, const Graph& b) {
    require_same_size(a, b);
    std::size_t diff = 0;
    merge_edges(a, b, [&](const Edge&) { ++diff; }, [&](const Edge&) { ++diff; },
                [](const Edge&, const Edge&) {});
    return diff;
}

double weighted_adjacency_l1_distance(const Graph& a, const Graph& b) {
    require_same_size(a, b);
    double diff = 0.0;
    merge_edges(a, b, [&](const Edge& e) { diff += e.weight; }, [&](const Edge& e) { diff += e.weight; },
                [&](const Edge& x, const Edge& y) { diff += std::abs(x.weight - y.weight); });
    return diff;
}

} // namespace wtopo
