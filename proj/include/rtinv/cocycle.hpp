#pragma once

/**
 * @file cocycle.hpp
 * @brief Normalized 3-cocycles on finite abelian groups, the alternating
 *        form psi and the two dichotomy classifiers.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtinv/abelian_gauss.hpp"
#include "rtinv/graph_partition.hpp"
#include "rtinv/modular_data.hpp"

namespace rtinv {

using Triple = std::array<int64_t, 3>;

/// omega(x, y, z) = z_N^{w(x, y, z)}; table indexed by (x |L| + y) |L| + z.
struct Cocycle {
    FinAbGroup group;
    int64_t modulus = 1;
    std::vector<int64_t> w;

    int64_t at(int64_t x, int64_t y, int64_t z) const;
    int64_t& at(int64_t x, int64_t y, int64_t z);

    static Cocycle trivial(const FinAbGroup& g, int64_t modulus = 1);
    static Cocycle from_function(const FinAbGroup& g, int64_t modulus,
                                 const std::function<int64_t(int64_t, int64_t, int64_t)>& f);
};

/// The cocycle a (b + c - [b + c]) / n on Z_n scaled by p, modulus n.
Cocycle cyclic_cocycle(int64_t n, int64_t p);

/// delta eta for a normalized 2-cochain eta (table |L| x |L|, exponents mod N).
Cocycle coboundary(const FinAbGroup& g, int64_t modulus, const std::vector<int64_t>& eta);

/// Pointwise product; moduli are lifted to their lcm.
Cocycle multiply(const Cocycle& a, const Cocycle& b);

/// Checks table_size, normalized and cocycle_identity. The identity is checked on
/// every quadruple when |L|^4 <= 65536 and on `samples` random quadruples otherwise.
ValidationReport validate_cocycle(const Cocycle& c, uint64_t samples = 200000, uint64_t seed = 1);

/// Exponent mod N of the six-term alternating product.
int64_t psi_exponent(const Cocycle& c, int64_t x1, int64_t x2, int64_t x3);
CycNum psi_trilinear(const Cocycle& c, int64_t x1, int64_t x2, int64_t x3);

struct Trivializability {
    bool trivializable = true;
    std::optional<Triple> witness;
    bool checked_all_triples = false;
};

/// psi == 1 on all generator triples, and on all triples when |L|^3 <= 2^18.
Trivializability is_trivializable(const Cocycle& c);

struct Classification {
    std::string label;      // "RT: FP", "RT: #P-hard", "TV: FP", "TV: #P-hard"
    std::string basis;      // which criterion decided the label
    std::string detail;     // witness description
    std::optional<Mbr1Result> mbr1;
    std::optional<Triple> psi_witness;
    bool classifiers_agree = true;  // pointedness vs MBR1 of the weight matrix

    std::string str() const;
};

Classification classify_dichotomy(const ModularData& md);
Classification classify_dichotomy(const Cocycle& c);

/// "(1,0,0)"
std::string element_str(const FinAbGroup& g, int64_t x);

}  // namespace rtinv
