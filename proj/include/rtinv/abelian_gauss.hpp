#pragma once

/**
 * @file abelian_gauss.hpp
 * @brief Finite abelian groups, metric groups, quadratic exponential sums and
 *        the pointed surgery evaluator.
 *
 * Two engines evaluate every sum: a brute-force one that enumerates the
 * group, and a polynomial-time one that reduces an integral quadratic form
 * prime power by prime power to one- and two-variable local sums.
 */

#include <cstdint>
#include <vector>

#include "rtinv/cyclotomic.hpp"
#include "rtinv/graph.hpp"
#include "rtinv/graph_partition.hpp"
#include "rtinv/integer_matrix.hpp"
#include "rtinv/modular_data.hpp"
#include "rtinv/surgery.hpp"

namespace rtinv {

/// Z_{n_1} x ... x Z_{n_k}; elements indexed mixed radix, last coordinate fastest.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<int64_t> orders);

    const std::vector<int64_t>& orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    int64_t size() const { return size_; }
    /// lcm of the orders
    int64_t exponent() const;

    std::vector<int64_t> coords(int64_t index) const;
    int64_t index(const std::vector<int64_t>& coords) const;  // coordinates reduced first
    int64_t add(int64_t x, int64_t y) const;
    int64_t neg(int64_t x) const;
    /// Index of the j-th generator e_j.
    int64_t generator(int j) const;

    friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

private:
    std::vector<int64_t> orders_;
    std::vector<int64_t> stride_;
    int64_t size_ = 1;
};

struct MetricGroup {
    FinAbGroup group;
    int64_t modulus = 1;         // q(x) = z_N^{qexp[x]}
    std::vector<int64_t> qexp;   // indexed by element, residues mod N

    /// b(x, y) exponent: q(x+y) - q(x) - q(y) mod N.
    int64_t bexp(int64_t x, int64_t y) const;
    ValidationReport validate() const;

    /// Default modulus 2 lcm(n_j^2).
    static int64_t default_modulus(const FinAbGroup& g);
};

/// Labels = group elements, a* = -a, d = 1, S_ab = b(a, b), theta_a = q(a).
ModularData pointed_modular_from_metric(const MetricGroup& mg, const CycNum& D);

struct PointedMetric {
    MetricGroup metric;
    std::vector<int> label_of;  // group element index -> label of the data
};

/// Recover (Lambda, q) from pointed modular data: group law from fusion, q from twists.
PointedMetric metric_from_pointed(const ModularData& md);

/// sum over x in Lambda^m of prod_r q(x_r)^{B_rr} prod_{r<s} b(x_r, x_s)^{B_rs}, by enumeration.
/// Factorizes over the connected components of the off-diagonal support of B.
CycNum gauss_sum_bracket(const MetricGroup& mg, const IntMatrix& B, uint64_t budget = kDefaultBudget);

/// Same value through the quadratic-form reduction; polynomial in the size of B.
CycNum gauss_sum_fast(const MetricGroup& mg, const IntMatrix& B);

/// The positive square root of n >= 1 in the smallest convenient cyclotomic field.
CycNum positive_root(int64_t n);

/// Delta_+ and Delta_- of the induced pointed data.
std::pair<CycNum, CycNum> metric_gauss_sums(const MetricGroup& mg);

enum class GaussEngine { fast, bracket };

/// D^{-b0-1} Delta_+^{-b+} Delta_-^{-b-} G(B).
CycNum rt_pointed_surgery(const MetricGroup& mg, const CycNum& D, const SurgeryPresentation& sp,
                          GaussEngine engine = GaussEngine::fast, uint64_t budget = kDefaultBudget);

/**
 * z_N^{Q(x)} with Q(x) = sum_{i<=j} a_ij x_i x_j + sum_i l_i x_i + c (mod N)
 * on integer lifts of x.
 */
struct QuadExpWeight {
    int64_t modulus = 1;
    int vars = 0;
    std::vector<int64_t> quad;    // vars x vars, entries with i <= j used
    std::vector<int64_t> linear;  // vars
    int64_t constant = 0;

    explicit QuadExpWeight(int n = 0, int64_t N = 1)
        : modulus(N), vars(n), quad(static_cast<size_t>(n) * n, 0), linear(n, 0) {}
    int64_t& a(int i, int j) { return quad[static_cast<size_t>(std::min(i, j)) * vars + std::max(i, j)]; }
    int64_t a(int i, int j) const { return quad[static_cast<size_t>(std::min(i, j)) * vars + std::max(i, j)]; }
    int64_t evaluate(const std::vector<int64_t>& x) const;
    /// True when Q mod N only depends on x_i mod orders[i].
    bool compatible_with(const std::vector<int64_t>& orders) const;
};

/// sum over x in Z_{orders} of z_N^{Q(x)}; fast engine.
CycNum quadratic_sum(const std::vector<int64_t>& orders, const QuadExpWeight& q);
/// Brute-force twin.
CycNum quadratic_sum_bruteforce(const std::vector<int64_t>& orders, const QuadExpWeight& q,
                                uint64_t budget = kDefaultBudget);

/// Homomorphism prod Z_{source} -> prod Z_{target} given by an integer matrix.
struct IntMatrixModOrders {
    std::vector<int64_t> source;
    std::vector<int64_t> target;
    std::vector<int64_t> entries;  // target.size() x source.size(), row-major

    int64_t at(int r, int c) const { return entries[static_cast<size_t>(r) * source.size() + c]; }
    /// Reduce entries to canonical residues mod the target order of their row.
    void normalize();
    /// Each column must map the source order to zero.
    bool well_defined() const;
};

/// sum over x in ker(H) of z_N^{Q(x)}; kernel parametrized by Smith normal form.
CycNum kernel_quadratic_sum(const IntMatrixModOrders& h, const QuadExpWeight& q);
CycNum kernel_quadratic_sum_bruteforce(const IntMatrixModOrders& h, const QuadExpWeight& q,
                                       uint64_t budget = kDefaultBudget);

/**
 * Metric group on Lambda x Lambda-hat with q((a, chi)) = prod_j z_{n_j}^{u_j a_j chi_j}.
 * The units u_j select the identification of Lambda-hat with Lambda (default all 1).
 * Coordinates are (a_1..a_k, chi_1..chi_k).
 */
MetricGroup hyperbolic_center(const FinAbGroup& lambda, const std::vector<int64_t>& units = {});

/// |M|_{Vec_Lambda} through the center; Graph input checks both routes.
CycNum tv_pointed_trivial(const FinAbGroup& lambda, const Graph& g, uint64_t budget = kDefaultBudget);
CycNum tv_pointed_trivial(const FinAbGroup& lambda, const SurgeryPresentation& sp);

struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace rtinv
