#include "rtinv/abelian_gauss.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "rtinv/arith.hpp"
#include "rtinv/exponent_sum.hpp"

namespace rtinv {

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup::FinAbGroup(std::vector<int64_t> orders) : orders_(std::move(orders)), stride_(orders_.size()) {
    for (int j = rank() - 1; j >= 0; --j) {
        if (orders_[j] < 1) throw std::invalid_argument("cyclic orders must be positive");
        stride_[j] = size_;
        size_ *= orders_[j];
        if (size_ > (int64_t{1} << 40)) throw std::invalid_argument("group too large");
    }
}

int64_t FinAbGroup::exponent() const {
    int64_t e = 1;
    for (int64_t n : orders_) e = lcm64(e, n);
    return e;
}

std::vector<int64_t> FinAbGroup::coords(int64_t index) const {
    std::vector<int64_t> c(rank());
    for (int j = 0; j < rank(); ++j) c[j] = index / stride_[j] % orders_[j];
    return c;
}

int64_t FinAbGroup::index(const std::vector<int64_t>& c) const {
    if (static_cast<int>(c.size()) != rank()) throw std::invalid_argument("coordinate count mismatch");
    int64_t idx = 0;
    for (int j = 0; j < rank(); ++j) idx += mod_pos(c[j], orders_[j]) * stride_[j];
    return idx;
}

int64_t FinAbGroup::add(int64_t x, int64_t y) const {
    int64_t idx = 0;
    for (int j = 0; j < rank(); ++j)
        idx += (x / stride_[j] % orders_[j] + y / stride_[j] % orders_[j]) % orders_[j] * stride_[j];
    return idx;
}

int64_t FinAbGroup::neg(int64_t x) const {
    int64_t idx = 0;
    for (int j = 0; j < rank(); ++j) idx += (orders_[j] - x / stride_[j] % orders_[j]) % orders_[j] * stride_[j];
    return idx;
}

int64_t FinAbGroup::generator(int j) const { return orders_[j] == 1 ? 0 : stride_[j]; }

// ---------------------------------------------------------------------------
// MetricGroup

int64_t MetricGroup::bexp(int64_t x, int64_t y) const {
    return mod_pos(qexp[group.add(x, y)] - qexp[x] - qexp[y], modulus);
}

int64_t MetricGroup::default_modulus(const FinAbGroup& g) {
    int64_t l = 1;
    for (int64_t n : g.orders()) l = lcm64(l, n * n);
    return 2 * l;
}

ValidationReport MetricGroup::validate() const {
    ValidationReport report;
    auto add = [&](std::string name) -> CheckResult& {
        CheckResult c;
        c.name = std::move(name);
        report.checks.push_back(std::move(c));
        return report.checks.back();
    };
    auto fail = [](CheckResult& c, std::vector<int> w, std::string detail) {
        if (!c.passed) return;
        c.passed = false;
        c.witness = std::move(w);
        c.detail = std::move(detail);
    };
    const int64_t n = group.size();
    auto& table = add("table_size");
    if (modulus < 1) fail(table, {}, "modulus must be positive");
    if (static_cast<int64_t>(qexp.size()) != n) {
        fail(table, {}, "q table has " + std::to_string(qexp.size()) + " entries, group has " + std::to_string(n));
        return report;
    }
    for (int64_t x = 0; x < n; ++x)
        if (qexp[x] < 0 || qexp[x] >= modulus) fail(table, {static_cast<int>(x)}, "exponent not reduced mod N");
    if (!table.passed) return report;

    auto& zero = add("q_zero");
    if (qexp[0] != 0) fail(zero, {0}, "q(0) != 1");

    auto& even = add("q_even");
    for (int64_t x = 0; x < n; ++x)
        if (qexp[x] != qexp[group.neg(x)]) fail(even, {static_cast<int>(x)}, "q(-x) != q(x)");

    // b(x + e_j, z) = b(x, z) b(e_j, z) for every generator forces additivity in
    // the first slot; b is symmetric by construction.
    auto& bi = add("bicharacter");
    for (int j = 0; j < group.rank() && bi.passed; ++j) {
        const int64_t e = group.generator(j);
        for (int64_t x = 0; x < n && bi.passed; ++x)
            for (int64_t z = 0; z < n; ++z)
                if (bexp(group.add(x, e), z) != mod_pos(bexp(x, z) + bexp(e, z), modulus)) {
                    fail(bi, {static_cast<int>(x), j, static_cast<int>(z)}, "b is not bi-additive");
                    break;
                }
    }

    auto& nondeg = add("nondegenerate");
    if (bi.passed) {
        for (int64_t x = 1; x < n; ++x) {
            bool trivial = true;
            for (int j = 0; j < group.rank() && trivial; ++j)
                if (bexp(x, group.generator(j)) != 0) trivial = false;
            if (trivial) {
                fail(nondeg, {static_cast<int>(x)}, "b(x, -) is trivial for x != 0");
                break;
            }
        }
    }
    return report;
}

ModularData pointed_modular_from_metric(const MetricGroup& mg, const CycNum& D) {
    const int n = static_cast<int>(mg.group.size());
    const int conductor = common_order(static_cast<int>(mg.modulus), D.order());
    const int step = conductor / static_cast<int>(mg.modulus);
    ModularData md;
    md.conductor = conductor;
    md.dual.resize(n);
    for (int x = 0; x < n; ++x) md.dual[x] = static_cast<int>(mg.group.neg(x));
    md.S.reserve(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) md.S.push_back(CycNum::zeta(conductor, mg.bexp(x, y) * step));
    for (int x = 0; x < n; ++x) md.theta.push_back(CycNum::zeta(conductor, mg.qexp[x] * step));
    md.D = D.embed(conductor);
    return md;
}

namespace {

// e with x = z_M^e, M = n or 2n; nullopt when x is not a root of unity.
std::optional<int64_t> root_exponent(const CycNum& x, int64_t& modulus_out) {
    const int n = x.order();
    const int m = n % 2 == 0 ? n : 2 * n;
    modulus_out = m;
    const CycNum y = x.embed(m);
    for (int64_t e = 0; e < m; ++e)
        if (CycNum::zeta(m, e) == y) return e;
    return std::nullopt;
}

}  // namespace

PointedMetric metric_from_pointed(const ModularData& md) {
    const int k = md.rank();
    if (!is_pointed(md).pointed) throw InvalidData("modular data is not pointed");
    const auto fusion = fusion_table(md);
    std::vector<int> product(static_cast<size_t>(k) * k, -1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l)
                if (fusion[(static_cast<size_t>(i) * k + j) * k + l].is_one()) product[i * k + j] = l;

    // Presentation Z^k / <e_0, e_i + e_j - e_{ij}>; SNF turns it into cyclic factors.
    std::vector<std::vector<long>> rel;
    std::vector<long> unit(k, 0);
    unit[0] = 1;
    rel.push_back(unit);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            std::vector<long> r(k, 0);
            r[i] += 1;
            r[j] += 1;
            r[product[i * k + j]] -= 1;
            rel.push_back(r);
        }
    const SmithForm f = smith_normal_form(IntMatrix::from_rows(rel));
    const auto d = f.diagonal();
    std::vector<int64_t> orders;
    std::vector<int> cols;
    for (int c = 0; c < k; ++c) {
        if (d[c] == 0) throw InvalidData("fusion rules do not define a finite group");
        if (d[c] != 1) {
            orders.push_back(d[c].get_si());
            cols.push_back(c);
        }
    }
    PointedMetric pm;
    pm.metric.group = FinAbGroup(orders);
    if (pm.metric.group.size() != k) throw InvalidData("fusion group order differs from label count");
    pm.label_of.assign(k, -1);
    std::vector<int64_t> exps(k);
    int64_t modulus = 1;
    for (int x = 0; x < k; ++x) {
        auto e = root_exponent(md.theta[x], modulus);
        if (!e) throw InvalidData("twist is not a root of unity at label " + std::to_string(x));
        exps[x] = *e;
    }
    pm.metric.modulus = modulus;
    pm.metric.qexp.assign(k, 0);
    for (int x = 0; x < k; ++x) {
        std::vector<int64_t> c;
        for (int col : cols) {
            BigInt v = f.V(x, col);
            c.push_back(mod_pos(BigInt(v % orders[c.size()]).get_si(), orders[c.size()]));
        }
        const int64_t idx = pm.metric.group.index(c);
        if (pm.label_of[idx] >= 0) throw InvalidData("labels do not map bijectively onto the fusion group");
        pm.label_of[idx] = x;
        pm.metric.qexp[idx] = exps[x];
    }
    return pm;
}

// ---------------------------------------------------------------------------
// Bracket (enumeration)

namespace {

int64_t residue(const BigInt& v, int64_t m) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}

std::vector<std::vector<int>> offdiagonal_components(const IntMatrix& B) {
    const int m = B.rows();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s)
            if (B(r, s) != 0) parent[find(r)] = find(s);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(m, -1);
    for (int r = 0; r < m; ++r) {
        const int root = find(r);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root]].push_back(r);
    }
    return out;
}

void require_square_symmetric(const IntMatrix& B) {
    if (B.rows() != B.cols() || !B.is_symmetric()) throw std::invalid_argument("B must be a symmetric square matrix");
}

}  // namespace

CycNum gauss_sum_bracket(const MetricGroup& mg, const IntMatrix& B, uint64_t budget) {
    require_square_symmetric(B);
    const int N = static_cast<int>(mg.modulus);
    const int dom = static_cast<int>(mg.group.size());
    std::vector<int32_t> btable(static_cast<size_t>(dom) * dom);
    for (int x = 0; x < dom; ++x)
        for (int y = 0; y < dom; ++y) btable[x * dom + y] = static_cast<int32_t>(mg.bexp(x, y));

    CycNum total = CycNum::one(N);
    for (const auto& comp : offdiagonal_components(B)) {
        const int c = static_cast<int>(comp.size());
        if (assignment_count(dom, c) > budget)
            throw BudgetExceeded("Gauss bracket needs " + std::to_string(dom) + "^" + std::to_string(c) +
                                 " tuples, over budget");
        PairwiseExponentModel model;
        model.variables = c;
        model.domain = dom;
        model.modulus = N;
        model.unary.resize(static_cast<size_t>(c) * dom);
        for (int r = 0; r < c; ++r) {
            const int64_t f = residue(B(comp[r], comp[r]), N);
            for (int x = 0; x < dom; ++x) model.unary[r * dom + x] = static_cast<int32_t>(f * mg.qexp[x] % N);
        }
        for (int r = 0; r < c; ++r)
            for (int s = r + 1; s < c; ++s) {
                const int64_t f = residue(B(comp[r], comp[s]), N);
                if (f == 0) continue;
                PairwiseExponentModel::Pair p{r, s, std::vector<int32_t>(btable.size())};
                for (size_t i = 0; i < btable.size(); ++i) p.table[i] = static_cast<int32_t>(f * btable[i] % N);
                model.pairs.push_back(std::move(p));
            }
        total *= histogram_value(exponent_histogram(model), N);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Quadratic sums: prime-power reduction

namespace {

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(mod_pos(static_cast<int64_t>((static_cast<__int128>(a) * b) % m), m));
}

// Sum over y in (Z/p^a)^n of z_{p^a}^{Q(y)}, by completing squares.
class LocalReducer {
public:
    LocalReducer(int64_t p, int a, const QuadExpWeight& q, int64_t scale)
        : p_(p), a_(a), P_(ipow(p, a)), n_(q.vars), diag_(n_), cross_(static_cast<size_t>(n_) * n_, 0), lin_(n_),
          alive_(n_, true) {
        for (int i = 0; i < n_; ++i) {
            diag_[i] = mulmod(q.a(i, i), scale, P_);
            lin_[i] = mulmod(q.linear[i], scale, P_);
            for (int j = i + 1; j < n_; ++j) X(i, j) = X(j, i) = mulmod(q.a(i, j), scale, P_);
        }
        const_ = mulmod(q.constant, scale, P_);
    }

    CycNum run() {
        CycNum value = CycNum::one(static_cast<int>(P_));
        int live = n_;
        while (live > 0) {
            int t = a_, s = a_;
            for (int i = 0; i < n_; ++i) {
                if (!alive_[i]) continue;
                t = std::min(t, v(diag_[i]));
                s = std::min(s, v(lin_[i]));
                for (int j = i + 1; j < n_; ++j)
                    if (alive_[j]) t = std::min(t, v(X(i, j)));
            }
            if (s < t) return CycNum::zero(static_cast<int>(P_));
            if (t == a_) {
                BigInt f;
                mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(a_) * live);
                value *= Rational(f);
                break;
            }
            if (p_ != 2) {
                value *= eliminate_odd(t);
                --live;
            } else if (int i = single_candidate(t); i >= 0) {
                value *= eliminate_two_single(i, t);
                --live;
            } else {
                value *= eliminate_two_pair(t);
                live -= 2;
            }
        }
        return value * CycNum::zeta(static_cast<int>(P_), const_);
    }

private:
    int64_t p_;
    int a_;
    int64_t P_;
    int n_;
    std::vector<int64_t> diag_, cross_, lin_;
    int64_t const_ = 0;
    std::vector<bool> alive_;
    std::map<std::tuple<int, int64_t, int64_t, int64_t>, CycNum> cache_;

    int64_t& X(int i, int j) { return cross_[static_cast<size_t>(i) * n_ + j]; }
    int v(int64_t x) const { return valuation(x, p_, a_); }

    // y_i <- y_i + sum_k c[k] y_k + c0, c[i] ignored.
    void substitute(int i, const std::vector<int64_t>& c, int64_t c0) {
        const int64_t Di = diag_[i], Li = lin_[i];
        std::vector<int64_t> Xi(n_);
        for (int k = 0; k < n_; ++k) Xi[k] = k == i ? 0 : X(i, k);
        auto addX = [&](int k, int l, int64_t d) {
            X(k, l) = (X(k, l) + d) % P_;
            X(l, k) = X(k, l);
        };
        for (int k = 0; k < n_; ++k) {
            if (!alive_[k] || k == i) continue;
            const int64_t ck = c[k];
            addX(i, k, mulmod(2 * Di % P_, ck, P_));
            diag_[k] = (diag_[k] + mulmod(Di, mulmod(ck, ck, P_), P_) + mulmod(Xi[k], ck, P_)) % P_;
            lin_[k] = (lin_[k] + mulmod(mulmod(2 * Di % P_, c0, P_), ck, P_) + mulmod(Xi[k], c0, P_) +
                       mulmod(Li, ck, P_)) % P_;
            for (int l = k + 1; l < n_; ++l) {
                if (!alive_[l] || l == i) continue;
                const int64_t d = mulmod(mulmod(2 * Di % P_, ck, P_), c[l], P_) + mulmod(Xi[k], c[l], P_) +
                                  mulmod(Xi[l], ck, P_);
                addX(k, l, d % P_);
            }
        }
        lin_[i] = (Li + mulmod(2 * Di % P_, c0, P_)) % P_;
        const_ = (const_ + mulmod(Di, mulmod(c0, c0, P_), P_) + mulmod(Li, c0, P_)) % P_;
    }

    void require_isolated(const std::vector<int>& vars, int64_t linear_allowed) {
        for (int i : vars) {
            for (int k = 0; k < n_; ++k) {
                if (!alive_[k] || std::find(vars.begin(), vars.end(), k) != vars.end()) continue;
                if (X(i, k) != 0) throw InternalConsistencyError("quadratic reduction left a cross term");
            }
            if (lin_[i] != linear_allowed) throw InternalConsistencyError("quadratic reduction left a linear term");
        }
    }

    // p^t * sum_{z in Z/R} z_R^{u z^2 + e z}, R = p^{a-t}, as an element of Q(z_{p^a}).
    CycNum local_one(int t, int64_t u, int64_t e) {
        const auto key = std::make_tuple(t, u, e, int64_t{-1});
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const int64_t R = ipow(p_, a_ - t);
        std::vector<int64_t> hist(R, 0);
        for (int64_t z = 0; z < R; ++z) ++hist[(mulmod(u, mulmod(z, z, R), R) + mulmod(e, z, R)) % R];
        CycNum val = histogram_value(hist, static_cast<int>(P_)) * Rational(BigInt(ipow(p_, t)));
        cache_.emplace(key, val);
        return val;
    }

    CycNum local_two(int t, int64_t al, int64_t be, int64_t ga) {
        const auto key = std::make_tuple(t, al, be, ga);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const int64_t R = ipow(p_, a_ - t);
        std::vector<int64_t> hist(R, 0);
        for (int64_t z1 = 0; z1 < R; ++z1) {
            const int64_t base = mulmod(al, mulmod(z1, z1, R), R);
            const int64_t lin = mulmod(be, z1, R);
            for (int64_t z2 = 0; z2 < R; ++z2)
                ++hist[(base + mulmod(lin, z2, R) + mulmod(ga, mulmod(z2, z2, R), R)) % R];
        }
        CycNum val = histogram_value(hist, static_cast<int>(P_)) * Rational(BigInt(ipow(p_, 2 * t)));
        cache_.emplace(key, val);
        return val;
    }

    CycNum eliminate_odd(int t) {
        int i = -1;
        for (int k = 0; k < n_ && i < 0; ++k)
            if (alive_[k] && v(diag_[k]) == t) i = k;
        if (i < 0) {
            // Only a cross term reaches the minimum: after y_k <- y_k + y_l the
            // square of y_l picks up the cross coefficient.
            int k0 = -1, l0 = -1;
            for (int k = 0; k < n_ && k0 < 0; ++k)
                for (int l = k + 1; l < n_; ++l)
                    if (alive_[k] && alive_[l] && v(X(k, l)) == t) {
                        k0 = k, l0 = l;
                        break;
                    }
            std::vector<int64_t> c(n_, 0);
            c[l0] = 1;
            substitute(k0, c, 0);
            i = l0;
            if (v(diag_[i]) != t) throw InternalConsistencyError("odd prime pivot lost its valuation");
        }
        const int64_t pt = ipow(p_, t), R = ipow(p_, a_ - t);
        const int64_t u = diag_[i] / pt % R;
        const int64_t w = mod_inverse(2 * u % R, R);
        std::vector<int64_t> c(n_, 0);
        for (int k = 0; k < n_; ++k)
            if (alive_[k] && k != i) c[k] = mod_pos(-mulmod(w, X(i, k) / pt, P_), P_);
        const int64_t c0 = mod_pos(-mulmod(w, lin_[i] / pt, P_), P_);
        substitute(i, c, c0);
        require_isolated({i}, 0);
        alive_[i] = false;
        return local_one(t, u, 0);
    }

    int single_candidate(int t) {
        for (int i = 0; i < n_; ++i) {
            if (!alive_[i] || v(diag_[i]) != t) continue;
            bool ok = true;
            for (int k = 0; k < n_ && ok; ++k)
                if (alive_[k] && k != i && v(X(i, k)) < t + 1) ok = false;
            if (ok) return i;
        }
        return -1;
    }

    CycNum eliminate_two_single(int i, int t) {
        const int64_t pt = ipow(2, t), R = ipow(2, a_ - t);
        const int64_t u = diag_[i] / pt % R;
        const int64_t w = mod_inverse(u, R);
        std::vector<int64_t> c(n_, 0);
        for (int k = 0; k < n_; ++k)
            if (alive_[k] && k != i) c[k] = mod_pos(-mulmod(w, X(i, k) / (2 * pt), P_), P_);
        const int64_t lh = lin_[i] / pt;
        const int64_t e = lh % 2;
        const int64_t c0 = mod_pos(-mulmod(w, (lh - e) / 2, P_), P_);
        substitute(i, c, c0);
        require_isolated({i}, e * pt % P_);
        alive_[i] = false;
        return local_one(t, u, e % R);
    }

    CycNum eliminate_two_pair(int t) {
        int i = -1, j = -1;
        for (int k = 0; k < n_ && i < 0; ++k)
            for (int l = k + 1; l < n_; ++l)
                if (alive_[k] && alive_[l] && v(X(k, l)) == t) {
                    i = k, j = l;
                    break;
                }
        if (i < 0) throw InternalConsistencyError("no 2-adic pivot pair");
        const int64_t pt = ipow(2, t), R = ipow(2, a_ - t);
        const int64_t al = diag_[i] / pt % R, be = X(i, j) / pt % R, ga = diag_[j] / pt % R;
        const int64_t det = mod_pos(4 * al % R * ga - be * be, R);
        const int64_t dinv = mod_inverse(det, R);
        // s = -H^{-1} m with H = [[2al, be], [be, 2ga]], m the linear forms paired with y_i, y_j.
        std::vector<int64_t> si(n_, 0), sj(n_, 0);
        auto solve = [&](int64_t mi, int64_t mj, int64_t& oi, int64_t& oj) {
            oi = mod_pos(-mulmod(dinv, mod_pos(2 * ga % R * mi - be * mj % R, R), R), R);
            oj = mod_pos(-mulmod(dinv, mod_pos(2 * al % R * mj - be * mi % R, R), R), R);
        };
        for (int k = 0; k < n_; ++k)
            if (alive_[k] && k != i && k != j) solve(X(i, k) / pt % R, X(j, k) / pt % R, si[k], sj[k]);
        int64_t si0, sj0;
        solve(lin_[i] / pt % R, lin_[j] / pt % R, si0, sj0);
        si[j] = 0;
        sj[i] = 0;
        substitute(i, si, si0);
        substitute(j, sj, sj0);
        require_isolated({i, j}, 0);
        alive_[i] = alive_[j] = false;
        return local_two(t, al, be, ga);
    }
};

QuadExpWeight reduced(const QuadExpWeight& q) {
    QuadExpWeight r = q;
    for (auto& x : r.quad) x = mod_pos(x, q.modulus);
    for (auto& x : r.linear) x = mod_pos(x, q.modulus);
    r.constant = mod_pos(q.constant, q.modulus);
    return r;
}

}  // namespace

int64_t QuadExpWeight::evaluate(const std::vector<int64_t>& x) const {
    int64_t e = constant % modulus;
    for (int i = 0; i < vars; ++i) {
        e = (e + mulmod(linear[i], x[i], modulus)) % modulus;
        for (int j = i; j < vars; ++j) e = (e + mulmod(mulmod(a(i, j), x[i], modulus), x[j], modulus)) % modulus;
    }
    return mod_pos(e, modulus);
}

bool QuadExpWeight::compatible_with(const std::vector<int64_t>& orders) const {
    if (static_cast<int>(orders.size()) != vars) return false;
    const int64_t N = modulus;
    for (int i = 0; i < vars; ++i) {
        const int64_t m = orders[i] % N;
        if (mulmod(2 * m % N, a(i, i), N) != 0) return false;
        for (int k = 0; k < vars; ++k)
            if (k != i && mulmod(m, a(i, k), N) != 0) return false;
        if ((mulmod(mulmod(m, m, N), a(i, i), N) + mulmod(m, linear[i], N)) % N != 0) return false;
    }
    return true;
}

CycNum quadratic_sum(const std::vector<int64_t>& orders, const QuadExpWeight& q0) {
    if (static_cast<int>(orders.size()) != q0.vars) throw std::invalid_argument("variable count mismatch");
    const QuadExpWeight q = reduced(q0);
    if (!q.compatible_with(orders)) throw std::invalid_argument("quadratic weight is not well defined on the orders");
    const int64_t N = q.modulus;
    const int n = q.vars;
    if (n == 0) return CycNum::zeta(static_cast<int>(N), q.constant);

    // Lift every variable to Z/R; each point of the original domain is hit prod(R/m_i) times.
    int64_t R = N;
    for (int64_t m : orders) R = lcm64(R, m);
    Rational total(1);
    for (int64_t m : orders) total /= Rational(BigInt(R / m));

    CycNum value = CycNum::one(static_cast<int>(N));
    for (auto [p, e] : factorize(R)) {
        const int a = valuation(N, p, 64);
        BigInt free;
        mpz_ui_pow_ui(free.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e - a) * n);
        total *= Rational(free);
        if (a == 0) continue;
        const int64_t pa = ipow(p, a);
        const int64_t scale = mod_inverse((N / pa) % pa, pa);
        LocalReducer red(p, a, q, scale);
        value *= red.run().embed(static_cast<int>(N));
        if (value.is_zero()) return value;
    }
    return value * total;
}

CycNum quadratic_sum_bruteforce(const std::vector<int64_t>& orders, const QuadExpWeight& q0, uint64_t budget) {
    if (static_cast<int>(orders.size()) != q0.vars) throw std::invalid_argument("variable count mismatch");
    const QuadExpWeight q = reduced(q0);
    uint64_t count = 1;
    for (int64_t m : orders) {
        if (count > budget / static_cast<uint64_t>(m)) throw BudgetExceeded("quadratic sum domain over budget");
        count *= static_cast<uint64_t>(m);
    }
    std::vector<int64_t> hist(q.modulus, 0), x(q.vars, 0);
    while (true) {
        ++hist[q.evaluate(x)];
        int r = q.vars - 1;
        while (r >= 0 && ++x[r] == orders[r]) x[r--] = 0;
        if (r < 0) break;
    }
    return histogram_value(hist, static_cast<int>(q.modulus));
}

CycNum gauss_sum_fast(const MetricGroup& mg, const IntMatrix& B) {
    require_square_symmetric(B);
    const int m = B.rows();
    const int k = mg.group.rank();
    const int64_t N = mg.modulus;
    const auto& ord = mg.group.orders();
    std::vector<int64_t> c(k);
    std::vector<std::vector<int64_t>> cb(k, std::vector<int64_t>(k));
    for (int j = 0; j < k; ++j) c[j] = mg.qexp[mg.group.generator(j)];
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) cb[j][l] = mg.bexp(mg.group.generator(j), mg.group.generator(l));

    QuadExpWeight q(m * k, N);
    std::vector<int64_t> orders;
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < k; ++j) orders.push_back(ord[j]);
    for (int r = 0; r < m; ++r) {
        const int64_t brr = residue(B(r, r), N);
        for (int j = 0; j < k; ++j) {
            q.a(r * k + j, r * k + j) = mulmod(brr, c[j], N);
            for (int l = j + 1; l < k; ++l) q.a(r * k + j, r * k + l) = mulmod(brr, cb[j][l], N);
        }
        for (int s = r + 1; s < m; ++s) {
            const int64_t brs = residue(B(r, s), N);
            if (brs == 0) continue;
            for (int j = 0; j < k; ++j)
                for (int l = 0; l < k; ++l) q.a(r * k + j, s * k + l) = mulmod(brs, cb[j][l], N);
        }
    }
    return quadratic_sum(orders, q);
}

CycNum positive_root(int64_t n) {
    if (n < 1) throw std::invalid_argument("positive_root needs n >= 1");
    int64_t square = 1, order = 1;
    std::vector<int64_t> odd_primes;
    bool two = false;
    for (auto [p, e] : factorize(n)) {
        square *= ipow(p, e / 2);
        if (e % 2 == 0) continue;
        if (p == 2) {
            two = true;
            order = lcm64(order, 8);
        } else {
            odd_primes.push_back(p);
            order = lcm64(order, p % 4 == 1 ? p : 4 * p);
        }
    }
    const int m = static_cast<int>(order);
    CycNum r = CycNum::integer(m, static_cast<long>(square));
    if (two) r = r * (CycNum::zeta(m, m / 8) + CycNum::zeta(m, -m / 8));
    for (int64_t p : odd_primes) {
        // quadratic Gauss sum: sqrt(p) or i sqrt(p)
        CycNum g = CycNum::zero(m);
        for (int64_t x = 0; x < p; ++x) g += CycNum::zeta(m, (x * x % p) * (m / p));
        if (p % 4 == 3) g = g * CycNum::zeta(m, -m / 4);
        r = r * g;
    }
    return r;
}

std::pair<CycNum, CycNum> metric_gauss_sums(const MetricGroup& mg) {
    std::vector<int64_t> plus(mg.modulus, 0), minus(mg.modulus, 0);
    for (int64_t e : mg.qexp) {
        ++plus[mod_pos(e, mg.modulus)];
        ++minus[mod_pos(-e, mg.modulus)];
    }
    const int N = static_cast<int>(mg.modulus);
    return {histogram_value(plus, N), histogram_value(minus, N)};
}

CycNum rt_pointed_surgery(const MetricGroup& mg, const CycNum& D, const SurgeryPresentation& sp, GaussEngine engine,
                          uint64_t budget) {
    const auto report = mg.validate();
    if (!report.ok()) throw InvalidData("metric group fails validation: " + report.summary());
    const int L = common_order(static_cast<int>(mg.modulus), D.order());
    const CycNum d = D.embed(L);
    if (!(d * d == CycNum::integer(L, static_cast<long>(mg.group.size()))))
        throw InvalidData("D^2 must equal |Lambda|");
    const auto [dp, dm] = metric_gauss_sums(mg);
    if (dp.is_zero() || dm.is_zero()) throw InvalidData("vanishing Gauss sum");
    const SignatureData sig = signature_data(sp);
    const CycNum g = engine == GaussEngine::fast ? gauss_sum_fast(mg, sp.B) : gauss_sum_bracket(mg, sp.B, budget);
    return d.pow(-sig.b_zero - 1) * dp.embed(L).pow(-sig.b_plus) * dm.embed(L).pow(-sig.b_minus) * g.embed(L);
}

// ---------------------------------------------------------------------------
// Kernel-restricted sums

void IntMatrixModOrders::normalize() {
    for (size_t r = 0; r < target.size(); ++r)
        for (size_t c = 0; c < source.size(); ++c) {
            auto& x = entries[r * source.size() + c];
            x = mod_pos(x, target[r]);
        }
}

bool IntMatrixModOrders::well_defined() const {
    if (entries.size() != source.size() * target.size()) return false;
    for (size_t r = 0; r < target.size(); ++r)
        for (size_t c = 0; c < source.size(); ++c)
            if (mulmod(at(static_cast<int>(r), static_cast<int>(c)), source[c], target[r]) != 0) return false;
    return true;
}

namespace {

void check_kernel_inputs(const IntMatrixModOrders& h, const QuadExpWeight& q) {
    if (static_cast<int>(h.source.size()) != q.vars) throw std::invalid_argument("shape mismatch: Q has " +
                                                                                std::to_string(q.vars) +
                                                                                " variables, H has " +
                                                                                std::to_string(h.source.size()) +
                                                                                " source coordinates");
    if (h.entries.size() != h.source.size() * h.target.size()) throw std::invalid_argument("shape mismatch in H");
    if (!h.well_defined()) throw std::invalid_argument("H is not a homomorphism between the declared groups");
}

}  // namespace

CycNum kernel_quadratic_sum(const IntMatrixModOrders& h, const QuadExpWeight& q0) {
    check_kernel_inputs(h, q0);
    const QuadExpWeight q = reduced(q0);
    if (!q.compatible_with(h.source)) throw std::invalid_argument("quadratic weight is not well defined on the orders");
    const int n = q.vars, m = static_cast<int>(h.target.size());
    const int64_t N = q.modulus;
    if (n == 0) return CycNum::zeta(static_cast<int>(N), q.constant);

    // ker = {x : Hx = T y}; the first n coordinates of an integer kernel basis of [H | -T].
    IntMatrix M(m, n + m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) M(r, c) = h.at(r, c);
        M(r, n + r) = -h.target[r];
    }
    const IntMatrix K = integer_kernel(M);
    if (K.cols() != n) throw InternalConsistencyError("kernel lattice has unexpected rank");
    IntMatrix P(n, n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) P(i, c) = K(i, c);
    const BigInt det = abs(determinant(P));
    if (det == 0) throw InternalConsistencyError("kernel lattice is degenerate");
    BigInt vol = 1;
    for (int64_t s : h.source) vol *= s;
    if (vol % det != 0) throw InternalConsistencyError("kernel index does not divide the group order");
    const BigInt kernel_size = vol / det;

    int64_t R = 1;
    for (int64_t s : h.source) R = lcm64(R, s);
    std::vector<std::vector<int64_t>> p(n, std::vector<int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) p[i][c] = residue(P(i, c), h.source[i]);

    QuadExpWeight pulled(n, N);
    for (int c = 0; c < n; ++c) {
        int64_t lin = 0;
        for (int i = 0; i < n; ++i) lin = (lin + mulmod(q.linear[i], p[i][c], N)) % N;
        pulled.linear[c] = lin;
        for (int d = c; d < n; ++d) {
            int64_t acc = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const int64_t aij = q.a(i, j);
                    if (aij == 0) continue;
                    int64_t term = mulmod(p[i][c], p[j][d], N);
                    if (c != d) term = (term + mulmod(p[i][d], p[j][c], N)) % N;
                    acc = (acc + mulmod(aij, term, N)) % N;
                }
            pulled.a(c, d) = acc;
        }
    }
    pulled.constant = q.constant;
    const CycNum lattice_sum = quadratic_sum(std::vector<int64_t>(n, R), pulled);
    BigInt cover;
    mpz_ui_pow_ui(cover.get_mpz_t(), static_cast<unsigned long>(R), static_cast<unsigned long>(n));
    Rational ratio(kernel_size, cover);
    ratio.canonicalize();
    return lattice_sum * ratio;
}

CycNum kernel_quadratic_sum_bruteforce(const IntMatrixModOrders& h, const QuadExpWeight& q0, uint64_t budget) {
    check_kernel_inputs(h, q0);
    const QuadExpWeight q = reduced(q0);
    const int n = q.vars, m = static_cast<int>(h.target.size());
    uint64_t count = 1;
    for (int64_t s : h.source) {
        if (count > budget / static_cast<uint64_t>(s)) throw BudgetExceeded("kernel enumeration over budget");
        count *= static_cast<uint64_t>(s);
    }
    std::vector<int64_t> hist(q.modulus, 0), x(n, 0);
    while (true) {
        bool in_kernel = true;
        for (int r = 0; r < m && in_kernel; ++r) {
            int64_t acc = 0;
            for (int c = 0; c < n; ++c) acc = (acc + mulmod(h.at(r, c), x[c], h.target[r])) % h.target[r];
            if (acc != 0) in_kernel = false;
        }
        if (in_kernel) ++hist[q.evaluate(x)];
        int r = n - 1;
        while (r >= 0 && ++x[r] == h.source[r]) x[r--] = 0;
        if (r < 0) break;
    }
    return histogram_value(hist, static_cast<int>(q.modulus));
}

// ---------------------------------------------------------------------------
// Hyperbolic center

MetricGroup hyperbolic_center(const FinAbGroup& lambda, const std::vector<int64_t>& units) {
    const int k = lambda.rank();
    if (!units.empty() && static_cast<int>(units.size()) != k) throw std::invalid_argument("one unit per cyclic factor");
    std::vector<int64_t> orders = lambda.orders();
    orders.insert(orders.end(), lambda.orders().begin(), lambda.orders().end());
    MetricGroup mg;
    mg.group = FinAbGroup(orders);
    mg.modulus = lambda.exponent();
    mg.qexp.resize(mg.group.size());
    for (int64_t x = 0; x < mg.group.size(); ++x) {
        const auto c = mg.group.coords(x);
        int64_t e = 0;
        for (int j = 0; j < k; ++j) {
            const int64_t nj = lambda.orders()[j];
            const int64_t u = units.empty() ? 1 : units[j];
            if (std::gcd(mod_pos(u, nj), nj) != 1 && nj > 1) throw std::invalid_argument("identification needs units");
            e += mulmod(mulmod(u, c[j] * c[k + j], nj), mg.modulus / nj, mg.modulus);
        }
        mg.qexp[x] = mod_pos(e, mg.modulus);
    }
    return mg;
}

}  // namespace rtinv
