#include "rtinv/graph_manifolds.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>

#include "rtinv/exponent_sum.hpp"

namespace rtinv {

CycNum vertex_coefficient(const ModularData& md, const std::vector<int>& colors) {
    const int r = static_cast<int>(colors.size());
    if (r == 0) throw UnsupportedInput("vertex coefficient needs at least one color");
    const int k = md.rank();
    for (int a : colors)
        if (a < 0 || a >= k) throw std::out_of_range("color out of range");
    CycNum total = CycNum::zero(md.conductor);
    for (int i = 0; i < k; ++i) {
        CycNum term = md.dim(i).pow(-r);
        for (int a : colors) term = term * md.s(i, a);
        total += term;
    }
    return total;
}

void require_anomaly_free(const ModularData& md) {
    const auto g = gauss_sums(md);
    if (!g.anomaly_free) throw PreconditionError("not anomaly-free: Delta+ != Delta-");
    if (!(md.D == g.plus)) throw PreconditionError("normalization: D must equal Delta+ for anomaly-free data");
}

namespace {

void require_family_graph(const Graph& g) {
    if (g.edge_count() == 0) throw UnsupportedInput("graph manifolds need at least one edge");
    if (!g.connected()) throw UnsupportedInput("graph manifolds need a connected graph");
}

// Table of A_r over all r-tuples of labels, mixed radix with the last color fastest.
std::vector<CycNum> vertex_table(const ModularData& md, int r) {
    const int k = md.rank();
    std::vector<CycNum> coef(k);
    for (int i = 0; i < k; ++i) coef[i] = md.dim(i).pow(-r);
    size_t count = 1;
    for (int j = 0; j < r; ++j) count *= static_cast<size_t>(k);
    std::vector<CycNum> out(count, CycNum::zero(md.conductor));
    // prefix[level][i] = coef_i prod_{j < level} S_{i a_j}
    std::vector<std::vector<CycNum>> prefix(r + 1, std::vector<CycNum>(k));
    prefix[0] = coef;
    std::vector<int> a(r, 0);
    int level = 0;
    size_t idx = 0;
    while (true) {
        for (; level < r; ++level)
            for (int i = 0; i < k; ++i) prefix[level + 1][i] = prefix[level][i] * md.s(i, a[level]);
        CycNum sum = CycNum::zero(md.conductor);
        for (int i = 0; i < k; ++i) sum += prefix[r][i];
        out[idx++] = std::move(sum);
        int p = r - 1;
        while (p >= 0 && ++a[p] == k) a[p--] = 0;
        if (p < 0) break;
        level = p;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dense tensors over two coefficient rings.

struct NotRepresentable {};

struct ExactRing {
    int order;
    using Buf = std::vector<CycNum>;

    Buf make(size_t count) const { return Buf(count, CycNum::zero(order)); }
    Buf from_values(const std::vector<CycNum>& v) const { return v; }
    void copy(Buf& dst, size_t di, const Buf& src, size_t si) const { dst[di] = src[si]; }
    CycNum value(const Buf& b, size_t i) const { return b[i]; }

    Buf matmul(const Buf& A, const Buf& B, size_t r, size_t m, size_t c) const {
        Buf out = make(r * c);
        for (size_t i = 0; i < r; ++i)
            for (size_t l = 0; l < m; ++l) {
                const CycNum& a = A[i * m + l];
                if (a.is_zero()) continue;
                for (size_t j = 0; j < c; ++j) {
                    const CycNum& b = B[l * c + j];
                    if (!b.is_zero()) out[i * c + j] += a * b;
                }
            }
        return out;
    }
};

// Integral elements as phi int64 coefficients; products accumulate unreduced in
// 128-bit and are reduced once per output entry.
struct IntRing {
    int order;
    int phi;
    std::vector<std::vector<int64_t>> wide_rows;  // z^w reduced, w in [phi, 2 phi - 1)
    long double reduction_growth = 1;

    explicit IntRing(int n) : order(n) {
        const auto& f = CyclotomicField::get(n);
        phi = f.degree;
        long double g = 1;
        for (int w = phi; w < 2 * phi - 1; ++w) {
            wide_rows.push_back(f.zeta_power[w]);
            int64_t mx = 0;
            for (int64_t x : f.zeta_power[w]) mx = std::max<int64_t>(mx, x < 0 ? -x : x);
            g += mx;
        }
        reduction_growth = g;
    }

    using Buf = std::vector<int64_t>;

    Buf make(size_t count) const { return Buf(count * phi, 0); }
    Buf from_values(const std::vector<CycNum>& v) const {
        Buf out = make(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            const auto& c = v[i].embed(order).coeffs();
            for (int t = 0; t < phi; ++t) {
                if (c[t].get_den() != 1 || !c[t].get_num().fits_slong_p()) throw NotRepresentable{};
                out[i * phi + t] = c[t].get_num().get_si();
            }
        }
        return out;
    }
    void copy(Buf& dst, size_t di, const Buf& src, size_t si) const {
        std::memcpy(&dst[di * phi], &src[si * phi], sizeof(int64_t) * phi);
    }
    CycNum value(const Buf& b, size_t i) const {
        std::vector<Rational> c(phi);
        for (int t = 0; t < phi; ++t) c[t] = Rational(static_cast<long>(b[i * phi + t]));
        return CycNum::from_coeffs(order, c);
    }

    static long double max_abs(const Buf& b) {
        int64_t m = 0;
        for (int64_t x : b) m = std::max<int64_t>(m, x < 0 ? -x : x);
        return static_cast<long double>(m);
    }

    Buf matmul(const Buf& A, const Buf& B, size_t r, size_t m, size_t c) const {
        const long double bound = max_abs(A) * max_abs(B) * static_cast<long double>(m) * phi * reduction_growth;
        if (bound >= 4.0e18L) throw NotRepresentable{};
        std::vector<char> a_nz(r * m), b_nz(m * c);
        for (size_t i = 0; i < r * m; ++i)
            a_nz[i] = std::any_of(&A[i * phi], &A[i * phi] + phi, [](int64_t x) { return x != 0; });
        for (size_t i = 0; i < m * c; ++i)
            b_nz[i] = std::any_of(&B[i * phi], &B[i * phi] + phi, [](int64_t x) { return x != 0; });
        Buf out = make(r * c);
        const int wide = 2 * phi - 1;
        std::vector<__int128> acc(wide);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) {
                std::fill(acc.begin(), acc.end(), 0);
                bool any = false;
                for (size_t l = 0; l < m; ++l) {
                    if (!a_nz[i * m + l] || !b_nz[l * c + j]) continue;
                    any = true;
                    const int64_t* a = &A[(i * m + l) * phi];
                    const int64_t* b = &B[(l * c + j) * phi];
                    for (int s = 0; s < phi; ++s) {
                        if (a[s] == 0) continue;
                        for (int t = 0; t < phi; ++t) acc[s + t] += static_cast<__int128>(a[s]) * b[t];
                    }
                }
                if (!any) continue;
                int64_t* o = &out[(i * c + j) * phi];
                for (int t = 0; t < phi; ++t) {
                    __int128 v = acc[t];
                    for (int w = phi; w < wide; ++w)
                        if (acc[w] != 0) v += acc[w] * wide_rows[w - phi][t];
                    o[t] = static_cast<int64_t>(v);
                }
            }
        return out;
    }
};

template <class Ring>
struct Tensor {
    std::vector<int> labels;  // half-edge ids, slowest index first
    typename Ring::Buf data;
};

size_t ipow_size(int k, size_t r) {
    size_t out = 1;
    for (size_t i = 0; i < r; ++i) out *= static_cast<size_t>(k);
    return out;
}

template <class Ring>
Tensor<Ring> permute(const Ring& ring, const Tensor<Ring>& t, const std::vector<int>& order, int k) {
    if (order == t.labels) return t;
    const size_t r = order.size();
    std::vector<size_t> old_stride(t.labels.size());
    size_t s = 1;
    for (size_t p = t.labels.size(); p-- > 0;) {
        old_stride[p] = s;
        s *= static_cast<size_t>(k);
    }
    std::vector<size_t> stride(r);
    for (size_t p = 0; p < r; ++p) {
        const auto it = std::find(t.labels.begin(), t.labels.end(), order[p]);
        stride[p] = old_stride[it - t.labels.begin()];
    }
    const size_t count = ipow_size(k, r);
    Tensor<Ring> out{order, ring.make(count)};
    std::vector<int> digit(r, 0);
    size_t old = 0;
    for (size_t idx = 0; idx < count; ++idx) {
        ring.copy(out.data, idx, t.data, old);
        for (size_t p = r; p-- > 0;) {
            if (++digit[p] < k) {
                old += stride[p];
                break;
            }
            digit[p] = 0;
            old -= stride[p] * static_cast<size_t>(k - 1);
        }
    }
    return out;
}

struct Plan {
    std::vector<int> order;
    size_t peak = 0;
};

// Frontier simulation: open half-edges after absorbing vertices in the given order.
size_t plan_peak(const Graph& g, const HalfEdgeStructure& hs, const std::vector<int>& order, int k,
                 size_t limit) {
    std::vector<char> done(g.vertex_count(), 0);
    size_t open = 0, peak = 1;
    for (int v : order) {
        size_t shared = 0;
        for (int h : hs.at_vertex[v])
            if (done[hs.half_edges[hs.partner(h)].vertex]) ++shared;
        const size_t deg = hs.at_vertex[v].size();
        // vertex tensor, then the product tensor
        peak = std::max(peak, ipow_size(k, std::min<size_t>(deg, 40)));
        const size_t after = open - shared + (deg - shared);
        peak = std::max(peak, ipow_size(k, std::min<size_t>(after, 40)));
        if (peak > limit) return peak;
        open = after;
        done[v] = 1;
    }
    return peak;
}

Plan choose_order(const Graph& g, const HalfEdgeStructure& hs, int k) {
    const int n = g.vertex_count();
    Plan best;
    best.peak = SIZE_MAX;
    if (n <= 8) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const size_t p = plan_peak(g, hs, perm, k, best.peak);
            if (p < best.peak) best = {perm, p};
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // Greedy: keep the frontier small.
    std::vector<char> done(n, 0);
    int open = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1, pick_after = 0;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            int shared = 0;
            for (int h : hs.at_vertex[v]) shared += done[hs.half_edges[hs.partner(h)].vertex];
            const int after = open - shared + (static_cast<int>(hs.at_vertex[v].size()) - shared);
            if (pick < 0 || after < pick_after) pick = v, pick_after = after;
        }
        done[pick] = 1;
        open = pick_after;
        best.order.push_back(pick);
    }
    best.peak = plan_peak(g, hs, best.order, k, SIZE_MAX);
    return best;
}

template <class Ring>
CycNum contract(const Ring& ring, const ModularData& md, const Graph& g, const HalfEdgeStructure& hs,
                const Plan& plan) {
    const int k = md.rank();
    const auto S = ring.from_values(md.S);
    std::map<int, typename Ring::Buf> tables;
    std::vector<char> done(g.vertex_count(), 0);
    Tensor<Ring> frontier{{}, ring.from_values({CycNum::one(md.conductor)})};
    for (int v : plan.order) {
        const auto& hv = hs.at_vertex[v];
        const int deg = static_cast<int>(hv.size());
        if (!tables.count(deg)) tables.emplace(deg, ring.from_values(vertex_table(md, deg)));
        Tensor<Ring> t{hv, tables.at(deg)};

        // Fold S into every half-edge whose partner is already in the frontier.
        std::vector<int> shared;
        for (int h : hv) {
            const int hp = hs.partner(h);
            if (!done[hs.half_edges[hp].vertex]) continue;
            std::vector<int> last_h;
            for (int x : t.labels)
                if (x != h) last_h.push_back(x);
            last_h.push_back(h);
            t = permute(ring, t, last_h, k);
            const size_t rest = ipow_size(k, t.labels.size() - 1);
            t.data = ring.matmul(t.data, S, rest, k, k);
            t.labels.back() = hp;
            shared.push_back(hp);
        }

        std::vector<int> f_order, t_order;
        for (int x : frontier.labels)
            if (std::find(shared.begin(), shared.end(), x) == shared.end()) f_order.push_back(x);
        const size_t f_rest = f_order.size();
        f_order.insert(f_order.end(), shared.begin(), shared.end());
        t_order = shared;
        for (int x : t.labels)
            if (std::find(shared.begin(), shared.end(), x) == shared.end()) t_order.push_back(x);
        frontier = permute(ring, frontier, f_order, k);
        t = permute(ring, t, t_order, k);
        const size_t r = ipow_size(k, f_rest), m = ipow_size(k, shared.size()),
                     c = ipow_size(k, t_order.size() - shared.size());
        Tensor<Ring> next;
        next.labels.assign(f_order.begin(), f_order.begin() + static_cast<long>(f_rest));
        next.labels.insert(next.labels.end(), t_order.begin() + static_cast<long>(shared.size()), t_order.end());
        next.data = ring.matmul(frontier.data, t.data, r, m, c);
        frontier = std::move(next);
        done[v] = 1;
    }
    if (!frontier.labels.empty()) throw InternalConsistencyError("contraction left open half-edges");
    return ring.value(frontier.data, 0);
}

}  // namespace

CycNum rt_half_edge_sum(const ModularData& md, const Graph& g, const HalfEdgeOptions& opts) {
    require_anomaly_free(md);
    require_family_graph(g);
    const HalfEdgeStructure hs(g);
    const Plan plan = choose_order(g, hs, md.rank());
    if (plan.peak > opts.budget)
        throw BudgetExceeded("half-edge contraction needs a tensor of " + std::to_string(plan.peak) +
                             " entries, over budget");
    CycNum sum;
    bool done = false;
    if (opts.allow_integer_path) {
        try {
            sum = contract(IntRing(md.conductor), md, g, hs, plan);
            done = true;
        } catch (const NotRepresentable&) {
        }
    }
    if (!done) sum = contract(ExactRing{md.conductor}, md, g, hs, plan);
    return sum * md.D.pow(-g.edge_count());
}

CycNum rt_half_edge_sum_bruteforce(const ModularData& md, const Graph& g, uint64_t budget) {
    require_anomaly_free(md);
    require_family_graph(g);
    const int k = md.rank();
    const HalfEdgeStructure hs(g);
    const int nh = static_cast<int>(hs.half_edges.size());
    if (assignment_count(k, nh) > budget)
        throw BudgetExceeded("half-edge enumeration needs " + std::to_string(k) + "^" + std::to_string(nh) +
                             " labelings, over budget");
    std::map<int, std::vector<CycNum>> tables;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int deg = g.degree(v);
        if (!tables.count(deg)) tables.emplace(deg, vertex_table(md, deg));
    }
    std::vector<int> label(nh, 0);
    CycNum total = CycNum::zero(md.conductor);
    while (true) {
        CycNum term = CycNum::one(md.conductor);
        for (int e = 0; e < g.edge_count() && !term.is_zero(); ++e) term = term * md.s(label[2 * e], label[2 * e + 1]);
        for (int v = 0; v < g.vertex_count() && !term.is_zero(); ++v) {
            size_t idx = 0;
            for (int h : hs.at_vertex[v]) idx = idx * static_cast<size_t>(k) + static_cast<size_t>(label[h]);
            term = term * tables.at(g.degree(v))[idx];
        }
        total += term;
        int p = nh - 1;
        while (p >= 0 && ++label[p] == k) label[p--] = 0;
        if (p < 0) break;
    }
    return total * md.D.pow(-g.edge_count());
}

CycNum rt_graph_manifold(const ModularData& md, const Graph& g, const PartitionOptions& opts) {
    require_anomaly_free(md);
    require_family_graph(g);
    return md.D.pow(g.edge_count()) * partition_function(edge_weight_matrix(md), g, opts);
}

CycNum rt_center_product(const ModularData& md, const Graph& g, const PartitionOptions& opts) {
    require_family_graph(g);
    const CycNum value = rt_graph_manifold(center_of_modular(md), g, opts);
    if (is_pointed(md).pointed) {
        const PointedMetric pm = metric_from_pointed(md);
        const SurgeryPresentation sp = plumbing_presentation(g);
        const CycNum product = rt_pointed_surgery(pm.metric, md.D, sp) *
                               rt_pointed_surgery(pm.metric, md.D, reverse_presentation(sp));
        if (!(product == value))
            throw InternalConsistencyError("center product mismatch: graph formula " + value.token() +
                                           ", surgery product " + product.token());
    }
    return value;
}

CycNum tv_pointed_trivial(const FinAbGroup& lambda, const Graph& g, uint64_t budget) {
    const MetricGroup mg = hyperbolic_center(lambda);
    const CycNum D = CycNum::integer(static_cast<int>(mg.modulus), static_cast<long>(lambda.size()));
    PartitionOptions opts;
    opts.budget = budget;
    const CycNum graph_route = rt_graph_manifold(pointed_modular_from_metric(mg, D), g, opts);
    const CycNum surgery_route = rt_pointed_surgery(mg, D, plumbing_presentation(g));
    if (!(graph_route == surgery_route))
        throw InternalConsistencyError("Turaev-Viro routes disagree: " + graph_route.token() + " vs " +
                                       surgery_route.token());
    return graph_route;
}

CycNum tv_pointed_trivial(const FinAbGroup& lambda, const SurgeryPresentation& sp) {
    const MetricGroup mg = hyperbolic_center(lambda);
    const CycNum D = CycNum::integer(static_cast<int>(mg.modulus), static_cast<long>(lambda.size()));
    return rt_pointed_surgery(mg, D, sp);
}

}  // namespace rtinv
