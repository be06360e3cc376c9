#pragma once

/**
 * @file exponent_sum.hpp
 * @brief Brute-force sums of roots of unity with pairwise exponent structure.
 *
 * Evaluates sum_{x in D^m} z_N^{e(x)} where
 *   e(x) = c + sum_r unary_r(x_r) + sum_{(r,s)} pair_{rs}(x_r, x_s)  (mod N)
 * by enumerating every assignment and counting exponents. The enumeration
 * order is fixed (mixed radix, last variable fastest). The trailing variables
 * are batched into one block so the inner loop is a row accumulation handled
 * by the SIMD kernels.
 */

#include <cstdint>
#include <vector>

#include "rtinv/cyclotomic.hpp"
#include "rtinv/kernels.hpp"

namespace rtinv {

struct PairwiseExponentModel {
    struct Pair {
        int first = 0;
        int second = 0;
        std::vector<int32_t> table;  // table[x_first * domain + x_second], residues mod N
    };

    int variables = 0;
    int domain = 1;
    int32_t modulus = 1;
    int32_t constant = 0;
    std::vector<int32_t> unary;  // unary[r * domain + x], residues mod N; empty means zero
    std::vector<Pair> pairs;
};

/// hist[e] = number of assignments with exponent e.
std::vector<int64_t> exponent_histogram(const PairwiseExponentModel& model, kernels::Isa isa);
inline std::vector<int64_t> exponent_histogram(const PairwiseExponentModel& model) {
    return exponent_histogram(model, kernels::detected_isa());
}

/// sum_e hist[e] z_N^e as an element of Q(z_target); target must be a multiple of N.
CycNum histogram_value(const std::vector<int64_t>& hist, int target_order);

/// domain^variables, saturating at UINT64_MAX.
uint64_t assignment_count(uint64_t domain, uint64_t variables);

}  // namespace rtinv
