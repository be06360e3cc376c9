#pragma once

/**
 * @file graph_manifolds.hpp
 * @brief Evaluators of Z_C(M_G) for the graph-manifold family.
 *
 * Three routes are provided: the closed graph formula D^{|E|} Z_{A_C}(G), the
 * half-edge state sum (contracted as a tensor network, with a literal
 * enumeration twin), and the center product for anomalous data.
 */

#include <vector>

#include "rtinv/abelian_gauss.hpp"
#include "rtinv/graph.hpp"
#include "rtinv/graph_partition.hpp"
#include "rtinv/modular_data.hpp"
#include "rtinv/surgery.hpp"

namespace rtinv {

/// Raised when a paper-level hypothesis (anomaly-free, D normalization) fails.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A_r(a_1..a_r) = sum_i d_i^{-r} prod_j S_{i a_j}.
CycNum vertex_coefficient(const ModularData& md, const std::vector<int>& colors);

/// Throws PreconditionError unless md is anomaly-free with D = Delta_+.
void require_anomaly_free(const ModularData& md);

struct HalfEdgeOptions {
    uint64_t budget = kDefaultBudget;  // largest intermediate tensor, in entries
    bool allow_integer_path = true;    // int64 coefficient arithmetic when entries are integral
};

/// D^{-|E|} sum over half-edge labelings, by tensor contraction.
CycNum rt_half_edge_sum(const ModularData& md, const Graph& g, const HalfEdgeOptions& opts = {});

/// Literal enumeration of all |I|^{2|E|} half-edge labelings.
CycNum rt_half_edge_sum_bruteforce(const ModularData& md, const Graph& g, uint64_t budget = kDefaultBudget);

/// D^{|E|} Z_{A_C}(G).
CycNum rt_graph_manifold(const ModularData& md, const Graph& g, const PartitionOptions& opts = {});

/// Z_{Z(C)}(M_G); pointed inputs are cross-checked against the surgery product.
CycNum rt_center_product(const ModularData& md, const Graph& g, const PartitionOptions& opts = {});

}  // namespace rtinv
