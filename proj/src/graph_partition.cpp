#include "rtinv/graph_partition.hpp"

#include <numeric>
#include <thread>

#include "rtinv/arith.hpp"
#include "rtinv/exponent_sum.hpp"

namespace rtinv {

WeightMatrix WeightMatrix::from_integers(const std::vector<std::vector<long>>& rows, int conductor) {
    WeightMatrix w;
    w.conductor = conductor;
    w.size = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != w.size) throw std::invalid_argument("weight matrix must be square");
        for (long v : row) w.entries.push_back(CycNum::integer(conductor, v));
    }
    w.symmetric = w.check_symmetric();
    return w;
}

WeightMatrix WeightMatrix::embedded(int m) const {
    WeightMatrix w = *this;
    w.conductor = m;
    for (auto& x : w.entries) x = x.embed(m);
    return w;
}

WeightMatrix WeightMatrix::permuted(const std::vector<int>& perm) const {
    WeightMatrix w = *this;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) w.at(perm[i], perm[j]) = at(i, j);
    return w;
}

bool WeightMatrix::check_symmetric() const {
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            if (!(at(i, j) == at(j, i))) return false;
    return true;
}

WeightMatrix edge_weight_matrix(const ModularData& md) {
    const int k = md.rank();
    WeightMatrix w;
    w.conductor = md.conductor;
    w.size = k;
    w.entries.resize(static_cast<size_t>(k) * k);
    std::vector<CycNum> inv_d(k);
    for (int i = 0; i < k; ++i) {
        if (md.dim(i).is_zero()) throw InvalidData("zero quantum dimension at label " + std::to_string(i));
        inv_d[i] = md.dim(i).inverse();
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) w.at(i, j) = md.s(i, md.dual[j]) * inv_d[i] * inv_d[j];
    w.symmetric = w.check_symmetric();
    return w;
}

namespace {

// Roots of unity of Q(z_n) as a cyclic table g^e, e in [0, M), with M = n or 2n.
struct RootTable {
    int64_t modulus = 1;
    std::vector<CycNum> powers;

    explicit RootTable(int n) {
        modulus = n % 2 == 0 ? n : 2 * n;
        const CycNum gen = n % 2 == 0 ? CycNum::zeta(n, 1) : -CycNum::zeta(n, (n + 1) / 2);
        powers.reserve(modulus);
        CycNum p = CycNum::one(n);
        for (int64_t e = 0; e < modulus; ++e) {
            powers.push_back(p);
            p = p * gen;
        }
    }

    std::optional<int32_t> log(const CycNum& x) const {
        if (!x.is_integral()) return std::nullopt;
        for (int64_t e = 0; e < modulus; ++e)
            if (powers[e].coeffs() == x.coeffs()) return static_cast<int32_t>(e);
        return std::nullopt;
    }
};

// Exponent table when every entry is a nonzero root of unity.
std::optional<std::vector<int32_t>> root_exponents(const WeightMatrix& a, const RootTable& roots) {
    std::vector<int32_t> out(a.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        auto e = roots.log(a.entries[i]);
        if (!e) return std::nullopt;
        out[i] = *e;
    }
    return out;
}

CycNum component_fast(const WeightMatrix& a, const Graph& comp, const std::vector<int32_t>& exps,
                      const RootTable& roots, kernels::Isa isa) {
    PairwiseExponentModel model;
    model.variables = comp.vertex_count();
    model.domain = a.size;
    model.modulus = static_cast<int32_t>(roots.modulus);
    for (auto [u, v] : comp.edges()) model.pairs.push_back({u, v, exps});
    const auto hist = exponent_histogram(model, isa);
    CycNum sum = CycNum::zero(a.conductor);
    for (size_t e = 0; e < hist.size(); ++e)
        if (hist[e] != 0) sum += roots.powers[e] * Rational(static_cast<long>(hist[e]));
    return sum;
}

// Exact enumeration over sigma restricted to sigma(0) in [first_lo, first_hi).
CycNum component_generic(const WeightMatrix& a, const Graph& comp, int first_lo, int first_hi) {
    const int n = comp.vertex_count();
    const int k = a.size;
    // Edges grouped by their later endpoint so a prefix product covers vertices < p.
    std::vector<std::vector<int>> back(n);
    for (auto [u, v] : comp.edges()) back[std::max(u, v)].push_back(std::min(u, v));
    std::vector<int> sigma(n, 0);
    sigma[0] = first_lo;
    std::vector<CycNum> partial(n + 1, CycNum::one(a.conductor));
    CycNum total = CycNum::zero(a.conductor);
    int p = 0;
    while (true) {
        // Recompute prefix products from position p.
        bool zero = false;
        for (; p < n; ++p) {
            CycNum prod = partial[p];
            for (int u : back[p]) prod = prod * a.at(sigma[u], sigma[p]);
            partial[p + 1] = std::move(prod);
            if (partial[p + 1].is_zero()) {
                zero = true;
                break;
            }
        }
        if (!zero) {
            total += partial[n];
            p = n - 1;
        }
        // Advance at position p (the deepest valid one), carrying leftwards.
        while (p >= 0) {
            const int limit = p == 0 ? first_hi : k;
            if (++sigma[p] < limit) break;
            sigma[p] = p == 0 ? first_lo : 0;
            --p;
        }
        if (p < 0) break;
        for (int q = p + 1; q < n; ++q) sigma[q] = 0;
    }
    return total;
}

}  // namespace

CycNum partition_function(const WeightMatrix& a, const Graph& g, const PartitionOptions& opts) {
    CycNum total = CycNum::one(a.conductor);
    if (g.vertex_count() == 0) return total;
    std::optional<RootTable> roots;
    std::optional<std::vector<int32_t>> exps;
    if (opts.allow_fast_path && a.size > 0) {
        roots.emplace(a.conductor);
        exps = root_exponents(a, *roots);
    }
    for (const auto& verts : g.components()) {
        const Graph comp = g.induced(verts);
        const uint64_t count = assignment_count(a.size, comp.vertex_count());
        if (count > opts.budget)
            throw BudgetExceeded("partition function needs " + std::to_string(a.size) + "^" +
                                 std::to_string(comp.vertex_count()) + " assignments, over budget");
        if (comp.edge_count() == 0) {
            total *= Rational(a.size);
            continue;
        }
        if (exps) {
            total *= component_fast(a, comp, *exps, *roots, opts.isa);
            continue;
        }
        const int workers = std::max(1, std::min(opts.workers, a.size));
        if (workers == 1) {
            total *= component_generic(a, comp, 0, a.size);
            continue;
        }
        // Contiguous slices of sigma(0); partial sums combined in slice order.
        std::vector<CycNum> parts(workers, CycNum::zero(a.conductor));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const int lo = a.size * w / workers, hi = a.size * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { parts[w] = lo < hi ? component_generic(a, comp, lo, hi) : parts[w]; });
        }
        for (auto& t : pool) t.join();
        CycNum sum = CycNum::zero(a.conductor);
        for (const auto& part : parts) sum += part;
        total *= sum;
    }
    return total;
}

WeightMatrix kronecker(const WeightMatrix& a0, const WeightMatrix& b0) {
    const int m = common_order(a0.conductor, b0.conductor);
    const WeightMatrix a = a0.embedded(m), b = b0.embedded(m);
    WeightMatrix w;
    w.conductor = m;
    w.size = a.size * b.size;
    w.entries.resize(static_cast<size_t>(w.size) * w.size);
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < b.size; ++j)
            for (int p = 0; p < a.size; ++p)
                for (int q = 0; q < b.size; ++q) w.at(i * b.size + j, p * b.size + q) = a.at(i, p) * b.at(j, q);
    w.symmetric = a.symmetric && b.symmetric;
    return w;
}

WeightMatrix hadamard_power(const WeightMatrix& a, int r) {
    WeightMatrix w = a;
    for (auto& x : w.entries) x = x.pow(r);
    return w;
}

namespace {

std::optional<Quadruple> three_nonzero_minor(const WeightMatrix& a) {
    const int k = a.size;
    auto nz = [&](int i, int j) { return !a.at(i, j).is_zero(); };
    for (int i = 0; i < k; ++i)
        for (int i2 = i + 1; i2 < k; ++i2)
            for (int j = 0; j < k; ++j)
                for (int j2 = j + 1; j2 < k; ++j2) {
                    const int count = nz(i, j) + nz(i, j2) + nz(i2, j) + nz(i2, j2);
                    if (count == 3) return Quadruple{i, j, i2, j2};
                }
    return std::nullopt;
}

}  // namespace

std::optional<BlockStructure> rectangular_blocks(const WeightMatrix& a) {
    const int k = a.size;
    // Union-find on rows 0..k-1 and columns k..2k-1 of the bipartite support graph.
    std::vector<int> parent(2 * k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (!a.at(i, j).is_zero()) parent[find(i)] = find(k + j);
    std::vector<int> slot(2 * k, -1);
    BlockStructure bs;
    for (int i = 0; i < k; ++i) {
        bool any = false;
        for (int j = 0; j < k && !any; ++j) any = !a.at(i, j).is_zero();
        if (!any) continue;
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(bs.rows.size());
            bs.rows.emplace_back();
            bs.cols.emplace_back();
        }
        bs.rows[slot[r]].push_back(i);
    }
    for (int j = 0; j < k; ++j) {
        const int r = find(k + j);
        if (slot[r] >= 0) bs.cols[slot[r]].push_back(j);
    }
    for (size_t p = 0; p < bs.rows.size(); ++p)
        for (int i : bs.rows[p])
            for (int j : bs.cols[p])
                if (a.at(i, j).is_zero()) return std::nullopt;
    return bs;
}

// Over a field, supp(A^{or}) = supp(A), so A^{or} is block-rank-one iff A has
// rectangular support and, inside each block, every 2x2 minor of A^{or}
// vanishes, i.e. every cross-ratio A_ij A_i'j' / (A_ij' A_i'j) has r-th power
// 1. Such an r exists iff every cross-ratio is a root of unity, and the least
// one is the lcm of their orders. Cross-ratios against a fixed base row and
// column generate all others multiplicatively, so those suffice.
Mbr1Result is_mbr1(const WeightMatrix& a) {
    Mbr1Result res;
    const auto blocks = rectangular_blocks(a);
    if (!blocks) {
        res.violation = three_nonzero_minor(a);
        res.support_violation = true;
        return res;
    }
    int64_t r = 1;
    for (size_t p = 0; p < blocks->rows.size(); ++p) {
        const auto& rows = blocks->rows[p];
        const auto& cols = blocks->cols[p];
        const int i0 = rows.front(), j0 = cols.front();
        for (size_t x = 1; x < rows.size(); ++x)
            for (size_t y = 1; y < cols.size(); ++y) {
                const int i = rows[x], j = cols[y];
                const CycNum ratio = a.at(i0, j0) * a.at(i, j) / (a.at(i0, j) * a.at(i, j0));
                const auto order = cyc_root_of_unity_order(ratio);
                if (!order) {
                    res.violation = Quadruple{i0, j0, i, j};
                    res.violating_ratio = ratio;
                    return res;
                }
                r = lcm64(r, *order);
            }
    }
    res.mbr1 = true;
    res.witness_r = r;
    return res;
}

bool is_block_rank_one(const WeightMatrix& a) {
    const auto blocks = rectangular_blocks(a);
    if (!blocks) return false;
    for (size_t p = 0; p < blocks->rows.size(); ++p) {
        const auto& rows = blocks->rows[p];
        const auto& cols = blocks->cols[p];
        for (size_t x = 0; x < rows.size(); ++x)
            for (size_t x2 = x + 1; x2 < rows.size(); ++x2)
                for (size_t y = 0; y < cols.size(); ++y)
                    for (size_t y2 = y + 1; y2 < cols.size(); ++y2) {
                        const int i = rows[x], i2 = rows[x2], j = cols[y], j2 = cols[y2];
                        if (!(a.at(i, j) * a.at(i2, j2) == a.at(i, j2) * a.at(i2, j))) return false;
                    }
    }
    return true;
}

}  // namespace rtinv
