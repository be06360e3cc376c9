#pragma once

// Finite simple undirected graphs and their half-edge structure.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtinv {

struct UnsupportedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Graph {
public:
    Graph() = default;
    /// Throws std::invalid_argument on loops, repeated edges or out-of-range endpoints.
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    /// Edges with u < v, in insertion order.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return incident_[v]; }  // edge ids
    int degree(int v) const { return static_cast<int>(incident_[v].size()); }
    int max_degree() const;
    bool adjacent(int u, int v) const;

    /// Vertex lists of connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<int>> components() const;
    bool connected() const { return components().size() <= 1; }
    /// |E| - |V| + (#components): rank of the cycle space.
    int cycle_rank() const;
    Graph induced(const std::vector<int>& vertices) const;

    static Graph complete(int n);
    static Graph path(int n);
    static Graph cycle(int n);
    static Graph disjoint_union(const Graph& a, const Graph& b);

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> incident_;
};

/// Incidences (vertex, edge); half-edge 2e is the lower endpoint of edge e.
struct HalfEdgeStructure {
    struct HalfEdge {
        int vertex;
        int edge;
    };
    std::vector<HalfEdge> half_edges;
    std::vector<std::vector<int>> at_vertex;  // half-edge ids in incidence order

    explicit HalfEdgeStructure(const Graph& g);
    int partner(int h) const { return h ^ 1; }
};

/// One representative per isomorphism class of connected simple graphs with
/// 1..max_vertices vertices; ordered by vertex count, then edge count.
std::vector<Graph> connected_graphs_up_to(int max_vertices);

}  // namespace rtinv
