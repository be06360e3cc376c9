#pragma once

/**
 * @file graph_partition.hpp
 * @brief Graph homomorphism partition functions Z_A(G) and the
 *        multiplicative-block-rank-one (MBR1) classifier.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rtinv/cyclotomic.hpp"
#include "rtinv/graph.hpp"
#include "rtinv/kernels.hpp"
#include "rtinv/modular_data.hpp"

namespace rtinv {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr uint64_t kDefaultBudget = uint64_t{1} << 24;

struct WeightMatrix {
    int conductor = 1;
    int size = 0;
    std::vector<CycNum> entries;  // row-major
    bool symmetric = true;

    const CycNum& at(int i, int j) const { return entries[static_cast<size_t>(i) * size + j]; }
    CycNum& at(int i, int j) { return entries[static_cast<size_t>(i) * size + j]; }

    /// Rows of integers, conductor 1.
    static WeightMatrix from_integers(const std::vector<std::vector<long>>& rows, int conductor = 1);
    WeightMatrix embedded(int m) const;
    WeightMatrix permuted(const std::vector<int>& perm) const;
    bool check_symmetric() const;
};

/// A(i,j) = S_{i,j*} / (d_i d_j).
WeightMatrix edge_weight_matrix(const ModularData& md);

struct PartitionOptions {
    uint64_t budget = kDefaultBudget;  // max assignments per connected component
    int workers = 1;
    bool allow_fast_path = true;       // root-of-unity matrices use exponent counting
    kernels::Isa isa = kernels::detected_isa();
};

/// Z_A(G) = sum_{sigma: V -> I} prod_{uv in E} A(sigma u, sigma v), component by component.
CycNum partition_function(const WeightMatrix& a, const Graph& g, const PartitionOptions& opts = {});

WeightMatrix kronecker(const WeightMatrix& a, const WeightMatrix& b);
WeightMatrix hadamard_power(const WeightMatrix& a, int r);

struct BlockStructure {
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols;
};

/// Partition of the support into full rectangles R_p x C_p, if one exists.
std::optional<BlockStructure> rectangular_blocks(const WeightMatrix& a);

/// Quadruple (i, j, i2, j2): rows {i, i2}, cols {j, j2}.
using Quadruple = std::array<int, 4>;

struct Mbr1Result {
    bool mbr1 = false;
    std::optional<int64_t> witness_r;
    std::optional<Quadruple> violation;
    bool support_violation = false;         // violation is a 2x2 with exactly three nonzero entries
    std::optional<CycNum> violating_ratio;  // cross-ratio that is not a root of unity
};

Mbr1Result is_mbr1(const WeightMatrix& a);

/// Direct check: rectangular support and every block of rank one.
bool is_block_rank_one(const WeightMatrix& a);

}  // namespace rtinv
