#include "rtinv/cocycle.hpp"

#include <sstream>

#include "rtinv/arith.hpp"

namespace rtinv {

namespace {

size_t cell(const FinAbGroup& g, int64_t x, int64_t y, int64_t z) {
    const auto n = static_cast<size_t>(g.size());
    return (static_cast<size_t>(x) * n + static_cast<size_t>(y)) * n + static_cast<size_t>(z);
}

}  // namespace

int64_t Cocycle::at(int64_t x, int64_t y, int64_t z) const { return w[cell(group, x, y, z)]; }
int64_t& Cocycle::at(int64_t x, int64_t y, int64_t z) { return w[cell(group, x, y, z)]; }

Cocycle Cocycle::trivial(const FinAbGroup& g, int64_t modulus) {
    const auto n = static_cast<size_t>(g.size());
    return {g, modulus, std::vector<int64_t>(n * n * n, 0)};
}

Cocycle Cocycle::from_function(const FinAbGroup& g, int64_t modulus,
                               const std::function<int64_t(int64_t, int64_t, int64_t)>& f) {
    Cocycle c = trivial(g, modulus);
    const int64_t n = g.size();
    for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y)
            for (int64_t z = 0; z < n; ++z) c.at(x, y, z) = mod_pos(f(x, y, z), modulus);
    return c;
}

Cocycle cyclic_cocycle(int64_t n, int64_t p) {
    return Cocycle::from_function(FinAbGroup({n}), n, [&](int64_t a, int64_t b, int64_t c) {
        return b + c >= n ? p * a : 0;
    });
}

Cocycle coboundary(const FinAbGroup& g, int64_t modulus, const std::vector<int64_t>& eta) {
    const int64_t n = g.size();
    if (static_cast<int64_t>(eta.size()) != n * n) throw std::invalid_argument("2-cochain table has the wrong size");
    auto e = [&](int64_t x, int64_t y) { return eta[static_cast<size_t>(x * n + y)]; };
    return Cocycle::from_function(g, modulus, [&](int64_t x, int64_t y, int64_t z) {
        return e(y, z) - e(g.add(x, y), z) + e(x, g.add(y, z)) - e(x, y);
    });
}

Cocycle multiply(const Cocycle& a, const Cocycle& b) {
    if (!(a.group == b.group)) throw std::invalid_argument("cocycles live on different groups");
    const int64_t m = lcm64(a.modulus, b.modulus);
    Cocycle out = Cocycle::trivial(a.group, m);
    for (size_t i = 0; i < out.w.size(); ++i)
        out.w[i] = mod_pos(a.w[i] * (m / a.modulus) + b.w[i] * (m / b.modulus), m);
    return out;
}

ValidationReport validate_cocycle(const Cocycle& c, uint64_t samples, uint64_t seed) {
    ValidationReport report;
    auto add = [&](std::string name) -> CheckResult& {
        CheckResult r;
        r.name = std::move(name);
        report.checks.push_back(std::move(r));
        return report.checks.back();
    };
    auto fail = [](CheckResult& r, std::vector<int> w, std::string detail) {
        if (!r.passed) return;
        r.passed = false;
        r.witness = std::move(w);
        r.detail = std::move(detail);
    };
    const int64_t n = c.group.size();
    const auto& g = c.group;

    auto& table = add("table_size");
    if (c.modulus < 1) fail(table, {}, "modulus must be positive");
    if (static_cast<int64_t>(c.w.size()) != n * n * n) {
        fail(table, {}, "table has " + std::to_string(c.w.size()) + " entries, expected |L|^3");
        return report;
    }
    for (size_t i = 0; i < c.w.size(); ++i)
        if (c.w[i] < 0 || c.w[i] >= c.modulus) {
            fail(table, {}, "exponent not reduced mod N");
            break;
        }
    if (!table.passed) return report;

    auto& norm = add("normalized");
    for (int64_t x = 0; x < n && norm.passed; ++x)
        for (int64_t y = 0; y < n && norm.passed; ++y)
            for (const Triple& t : {Triple{0, x, y}, Triple{x, 0, y}, Triple{x, y, 0}})
                if (c.at(t[0], t[1], t[2]) != 0) {
                    fail(norm, {int(t[0]), int(t[1]), int(t[2])}, "omega is not 1 on a triple containing 0");
                    break;
                }

    auto& id = add("cocycle_identity");
    auto check = [&](int64_t x, int64_t y, int64_t z, int64_t t) {
        const int64_t lhs = c.at(y, z, t) + c.at(x, g.add(y, z), t) + c.at(x, y, z);
        const int64_t rhs = c.at(g.add(x, y), z, t) + c.at(x, y, g.add(z, t));
        if (mod_pos(lhs - rhs, c.modulus) != 0) {
            fail(id, {int(x), int(y), int(z), int(t)}, "3-cocycle identity fails");
            return false;
        }
        return true;
    };
    if (n * n * n * n <= 65536) {
        for (int64_t x = 0; x < n; ++x)
            for (int64_t y = 0; y < n; ++y)
                for (int64_t z = 0; z < n; ++z)
                    for (int64_t t = 0; t < n; ++t)
                        if (!check(x, y, z, t)) return report;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int64_t> pick(0, n - 1);
        for (uint64_t s = 0; s < samples; ++s)
            if (!check(pick(rng), pick(rng), pick(rng), pick(rng))) break;
        id.detail = id.passed ? "sampled " + std::to_string(samples) + " quadruples" : id.detail;
    }
    return report;
}

int64_t psi_exponent(const Cocycle& c, int64_t a, int64_t b, int64_t d) {
    const int64_t even = c.at(a, b, d) + c.at(b, d, a) + c.at(d, a, b);
    const int64_t odd = c.at(b, a, d) + c.at(a, d, b) + c.at(d, b, a);
    return mod_pos(even - odd, c.modulus);
}

CycNum psi_trilinear(const Cocycle& c, int64_t x1, int64_t x2, int64_t x3) {
    return CycNum::zeta(static_cast<int>(c.modulus), psi_exponent(c, x1, x2, x3));
}

Trivializability is_trivializable(const Cocycle& c) {
    Trivializability out;
    const int r = c.group.rank();
    for (int i = 0; i < r && out.trivializable; ++i)
        for (int j = 0; j < r && out.trivializable; ++j)
            for (int k = 0; k < r; ++k) {
                const Triple t{c.group.generator(i), c.group.generator(j), c.group.generator(k)};
                if (psi_exponent(c, t[0], t[1], t[2]) != 0) {
                    out.trivializable = false;
                    out.witness = t;
                    break;
                }
            }
    const int64_t n = c.group.size();
    if (out.trivializable && n * n * n <= (int64_t{1} << 18)) {
        out.checked_all_triples = true;
        for (int64_t x = 0; x < n && out.trivializable; ++x)
            for (int64_t y = 0; y < n && out.trivializable; ++y)
                for (int64_t z = 0; z < n; ++z)
                    if (psi_exponent(c, x, y, z) != 0) {
                        out.trivializable = false;
                        out.witness = Triple{x, y, z};
                        break;
                    }
    }
    return out;
}

std::string element_str(const FinAbGroup& g, int64_t x) {
    std::ostringstream os;
    os << "(";
    const auto co = g.coords(x);
    for (size_t i = 0; i < co.size(); ++i) os << (i ? "," : "") << co[i];
    os << ")";
    return os.str();
}

std::string Classification::str() const { return detail.empty() ? label : label + " (" + detail + ")"; }

Classification classify_dichotomy(const ModularData& md) {
    Classification out;
    const bool pointed = is_pointed(md).pointed;
    out.mbr1 = is_mbr1(edge_weight_matrix(md));
    out.classifiers_agree = pointed == out.mbr1->mbr1;
    out.basis = "pointedness of the modular data";
    if (pointed) {
        out.label = "RT: FP";
        out.detail = "pointed";
        if (out.mbr1->mbr1) out.detail += "; weight matrix is MBR1";
    } else {
        out.label = "RT: #P-hard";
        out.detail = "non-pointed";
        if (const auto& v = out.mbr1->violation) {
            const auto& q = *v;
            out.detail += "; MBR1 violation at rows {" + std::to_string(q[0]) + "," + std::to_string(q[2]) +
                          "} cols {" + std::to_string(q[1]) + "," + std::to_string(q[3]) + "}";
            if (out.mbr1->support_violation) out.detail += ", support not rectangular";
        }
    }
    if (!out.classifiers_agree) out.detail += "; MBR1 test disagrees";
    return out;
}

Classification classify_dichotomy(const Cocycle& c) {
    Classification out;
    const auto t = is_trivializable(c);
    out.basis = "psi on generator triples";
    if (t.trivializable) {
        out.label = "TV: FP";
        out.detail = "trivializable pointed; psi = 1";
    } else {
        out.label = "TV: #P-hard";
        out.psi_witness = t.witness;
        const auto& w = *t.witness;
        out.detail = "psi(" + element_str(c.group, w[0]) + "," + element_str(c.group, w[1]) + "," +
                     element_str(c.group, w[2]) + ") = " + psi_trilinear(c, w[0], w[1], w[2]).pretty();
    }
    return out;
}

}  // namespace rtinv
