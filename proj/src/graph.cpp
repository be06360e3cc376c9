#include "rtinv/graph.hpp"

#include <algorithm>
#include <numeric>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace rtinv {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges) : n_(vertex_count), incident_(vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
        incident_[u].push_back(static_cast<int>(edges_.size()));
        incident_[v].push_back(static_cast<int>(edges_.size()));
        edges_.emplace_back(u, v);
    }
}

int Graph::max_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
    return m;
}

bool Graph::adjacent(int u, int v) const {
    for (int e : incident_[u])
        if (edges_[e].first == v || edges_[e].second == v) return true;
    return false;
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : edges_) parent[find(u)] = find(v);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n_, -1);
    for (int v = 0; v < n_; ++v) {
        const int r = find(v);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(v);
    }
    return out;
}

int Graph::cycle_rank() const {
    return edge_count() - n_ + static_cast<int>(components().size());
}

Graph Graph::induced(const std::vector<int>& vertices) const {
    std::vector<int> index(n_, -1);
    for (size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges_)
        if (index[u] >= 0 && index[v] >= 0) es.emplace_back(index[u], index[v]);
    return Graph(static_cast<int>(vertices.size()), std::move(es));
}

Graph Graph::complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

Graph Graph::path(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph(n, std::move(es));
}

Graph Graph::cycle(int n) {
    auto es = path(n).edges();
    if (n >= 3) es.emplace_back(0, n - 1);
    return Graph(n, std::move(es));
}

Graph Graph::disjoint_union(const Graph& a, const Graph& b) {
    auto es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.n_, v + a.n_);
    return Graph(a.n_ + b.n_, std::move(es));
}

HalfEdgeStructure::HalfEdgeStructure(const Graph& g) : at_vertex(g.vertex_count()) {
    half_edges.reserve(2 * g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        half_edges.push_back({g.edges()[e].first, e});
        half_edges.push_back({g.edges()[e].second, e});
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int e : g.incident(v)) at_vertex[v].push_back(g.edges()[e].first == v ? 2 * e : 2 * e + 1);
}

std::vector<Graph> connected_graphs_up_to(int max_vertices) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        const int m = static_cast<int>(slots.size());
        std::vector<int> perm(n);
        std::set<uint64_t> canon_seen;
        std::vector<std::pair<uint64_t, Graph>> found;
        // slot index lookup for relabeling
        std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
        for (int s = 0; s < m; ++s) slot_of[slots[s].first][slots[s].second] = slot_of[slots[s].second][slots[s].first] = s;
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
            std::vector<std::pair<int, int>> es;
            for (int s = 0; s < m; ++s)
                if (mask >> s & 1) es.push_back(slots[s]);
            Graph g(n, es);
            if (!g.connected()) continue;
            uint64_t best = UINT64_MAX;
            std::iota(perm.begin(), perm.end(), 0);
            do {
                uint64_t code = 0;
                for (auto [u, v] : es) code |= uint64_t{1} << slot_of[perm[u]][perm[v]];
                best = std::min(best, code);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (canon_seen.insert(best).second) found.emplace_back(mask, std::move(g));
        }
        std::stable_sort(found.begin(), found.end(),
                         [](const auto& a, const auto& b) { return a.second.edge_count() < b.second.edge_count(); });
        for (auto& [mask, g] : found) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace rtinv
