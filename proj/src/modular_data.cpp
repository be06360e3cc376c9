#include "rtinv/modular_data.hpp"

#include <sstream>

#include "rtinv/arith.hpp"

namespace rtinv {

CycNum ModularData::global_dimension() const {
    CycNum sum = CycNum::zero(conductor);
    for (int i = 0; i < rank(); ++i) sum += dim(i) * dim(i);
    return sum;
}

ModularData ModularData::embedded(int m) const {
    ModularData out;
    out.conductor = m;
    out.dual = dual;
    out.S.reserve(S.size());
    for (const auto& x : S) out.S.push_back(x.embed(m));
    for (const auto& x : theta) out.theta.push_back(x.embed(m));
    out.D = D.embed(m);
    return out;
}

ModularData ModularData::relabeled(const std::vector<int>& perm) const {
    const int k = rank();
    if (static_cast<int>(perm.size()) != k || perm[0] != 0)
        throw std::invalid_argument("relabeling must be a permutation fixing the unit");
    ModularData out = *this;
    for (int i = 0; i < k; ++i) {
        out.dual[perm[i]] = perm[dual[i]];
        out.theta[perm[i]] = theta[i];
        for (int j = 0; j < k; ++j) out.s(perm[i], perm[j]) = s(i, j);
    }
    return out;
}

bool same_data(const ModularData& a, const ModularData& b) {
    if (a.dual != b.dual || a.S.size() != b.S.size() || a.theta.size() != b.theta.size()) return false;
    for (size_t i = 0; i < a.S.size(); ++i)
        if (!(a.S[i] == b.S[i])) return false;
    for (size_t i = 0; i < a.theta.size(); ++i)
        if (!(a.theta[i] == b.theta[i])) return false;
    return a.D == b.D;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed && !c.warning_only) return false;
    return true;
}

const CheckResult* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "pass" : (c.warning_only ? "warn" : "FAIL")) << "  " << c.name;
        if (!c.passed && !c.witness.empty()) {
            os << "  witness (";
            for (size_t i = 0; i < c.witness.size(); ++i) os << (i ? "," : "") << c.witness[i];
            os << ")";
        }
        if (!c.detail.empty()) os << "  " << c.detail;
        os << '\n';
    }
    return os.str();
}

namespace {

struct Checker {
    ValidationReport report;

    CheckResult& add(std::string name) {
        CheckResult c;
        c.name = std::move(name);
        report.checks.push_back(std::move(c));
        return report.checks.back();
    }
    static void fail(CheckResult& c, std::vector<int> witness, std::string detail = {}) {
        if (!c.passed) return;
        c.passed = false;
        c.witness = std::move(witness);
        c.detail = std::move(detail);
    }
};

bool structurally_sound(const ModularData& md, std::string& why) {
    const int k = md.rank();
    if (k < 1) {
        why = "no labels";
        return false;
    }
    if (md.S.size() != static_cast<size_t>(k) * k) {
        why = "S is not rank x rank";
        return false;
    }
    if (static_cast<int>(md.theta.size()) != k) {
        why = "theta has wrong length";
        return false;
    }
    for (int d : md.dual)
        if (d < 0 || d >= k) {
            why = "dual label out of range";
            return false;
        }
    auto wrong_order = [&](const CycNum& x) { return x.order() != md.conductor; };
    for (const auto& x : md.S)
        if (wrong_order(x)) {
            why = "S entry outside the declared conductor";
            return false;
        }
    for (const auto& x : md.theta)
        if (wrong_order(x)) {
            why = "twist outside the declared conductor";
            return false;
        }
    if (wrong_order(md.D)) {
        why = "D outside the declared conductor";
        return false;
    }
    return true;
}

}  // namespace

ValidationReport validate_modular_data(const ModularData& md) {
    Checker ck;
    {
        auto& c = ck.add("structure");
        std::string why;
        if (!structurally_sound(md, why)) {
            Checker::fail(c, {}, why);
            return ck.report;
        }
    }
    const int k = md.rank();
    const int n = md.conductor;

    auto& inv = ck.add("dual_involution");
    if (md.dual[0] != 0) Checker::fail(inv, {0});
    for (int i = 0; i < k; ++i)
        if (md.dual[md.dual[i]] != i) Checker::fail(inv, {i});

    auto& sym = ck.add("S_symmetric");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!(md.s(i, j) == md.s(j, i))) Checker::fail(sym, {i, j});

    auto& nz = ck.add("dimensions_nonzero");
    bool dims_ok = true;
    for (int i = 0; i < k; ++i)
        if (md.dim(i).is_zero()) {
            Checker::fail(nz, {i});
            dims_ok = false;
        }

    auto& unit = ck.add("unit_dimension");
    if (!md.dim(0).is_one()) Checker::fail(unit, {0});

    auto& ddual = ck.add("dual_dimensions");
    for (int i = 0; i < k; ++i)
        if (!(md.dim(md.dual[i]) == md.dim(i))) Checker::fail(ddual, {i});

    auto& sdual = ck.add("S_duality");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (!(md.s(i, md.dual[j]) == md.s(md.dual[i], j))) Checker::fail(sdual, {i, j});

    const CycNum dim = md.global_dimension();
    auto& sq = ck.add("S_squared");
    for (int i = 0; i < k && sq.passed; ++i)
        for (int j = 0; j < k; ++j) {
            CycNum acc = CycNum::zero(n);
            for (int a = 0; a < k; ++a) acc += md.s(i, a) * md.s(a, j);
            const CycNum expect = md.dual[i] == j ? dim : CycNum::zero(n);
            if (!(acc == expect)) {
                Checker::fail(sq, {i, j});
                break;
            }
        }

    auto& tu = ck.add("theta_unit");
    if (!md.theta[0].is_one()) Checker::fail(tu, {0});

    auto& td = ck.add("theta_dual");
    for (int i = 0; i < k; ++i)
        if (!(md.theta[md.dual[i]] == md.theta[i])) Checker::fail(td, {i});

    auto& tr = ck.add("theta_root_of_unity");
    for (int i = 0; i < k; ++i)
        if (!cyc_root_of_unity_order(md.theta[i])) Checker::fail(tr, {i});

    auto& gp = ck.add("gauss_product");
    std::optional<GaussSums> gs;
    bool twists_invertible = true;
    for (const auto& t : md.theta) twists_invertible = twists_invertible && !t.is_zero();
    if (twists_invertible) {
        CycNum plus = CycNum::zero(n), minus = CycNum::zero(n);
        for (int i = 0; i < k; ++i) {
            const CycNum d2 = md.dim(i) * md.dim(i);
            plus += md.theta[i] * d2;
            minus += md.theta[i].inverse() * d2;
        }
        if (!(plus * minus == dim)) Checker::fail(gp, {}, "Delta+ * Delta- != Dim");
        gs = GaussSums{plus, minus, CycNum::zero(n), plus == minus};
    } else {
        Checker::fail(gp, {}, "zero twist");
    }

    auto& dsq = ck.add("D_squared");
    if (!(md.D * md.D == dim)) Checker::fail(dsq, {}, "D^2 != Dim");

    auto& vi = ck.add("verlinde_integrality");
    if (!dims_ok || dim.is_zero()) {
        Checker::fail(vi, {}, "fusion undefined: zero dimension");
    } else {
        const auto table = fusion_table(md);
        for (int i = 0; i < k && vi.passed; ++i)
            for (int j = 0; j < k && vi.passed; ++j)
                for (int l = 0; l < k; ++l) {
                    const auto q = table[(static_cast<size_t>(i) * k + j) * k + l].to_rational();
                    if (!q || q->get_den() != 1 || sgn(*q) < 0) {
                        Checker::fail(vi, {i, j, l});
                        break;
                    }
                }
    }

    auto& dn = ck.add("D_normalization");
    dn.warning_only = true;
    if (gs && gs->anomaly_free && !(md.D == gs->plus))
        Checker::fail(dn, {}, "anomaly-free data with D != Delta+");

    return ck.report;
}

std::vector<CycNum> fusion_table(const ModularData& md) {
    const int k = md.rank();
    const int n = md.conductor;
    const CycNum dim = md.global_dimension();
    if (dim.is_zero()) throw InvalidData("global dimension is zero");
    std::vector<CycNum> weight(k);
    for (int a = 0; a < k; ++a) {
        if (md.dim(a).is_zero()) throw InvalidData("zero quantum dimension at label " + std::to_string(a));
        weight[a] = (md.dim(a) * dim).inverse();
    }
    std::vector<CycNum> out(static_cast<size_t>(k) * k * k, CycNum::zero(n));
    std::vector<CycNum> partial(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            for (int a = 0; a < k; ++a) partial[a] = md.s(i, a) * md.s(j, a) * weight[a];
            for (int l = 0; l < k; ++l) {
                CycNum acc = CycNum::zero(n);
                const int ld = md.dual[l];
                for (int a = 0; a < k; ++a) acc += partial[a] * md.s(ld, a);
                out[(static_cast<size_t>(i) * k + j) * k + l] = std::move(acc);
            }
        }
    return out;
}

CycNum verlinde_fusion(const ModularData& md, int i, int j, int l) {
    const int k = md.rank();
    const CycNum dim = md.global_dimension();
    if (dim.is_zero()) throw InvalidData("global dimension is zero");
    CycNum acc = CycNum::zero(md.conductor);
    for (int a = 0; a < k; ++a) {
        if (md.dim(a).is_zero()) throw InvalidData("zero quantum dimension at label " + std::to_string(a));
        acc += md.s(i, a) * md.s(j, a) * md.s(md.dual[l], a) / md.dim(a);
    }
    return acc / dim;
}

GaussSums gauss_sums(const ModularData& md) {
    const int n = md.conductor;
    CycNum plus = CycNum::zero(n), minus = CycNum::zero(n);
    for (int i = 0; i < md.rank(); ++i) {
        const CycNum d2 = md.dim(i) * md.dim(i);
        plus += md.theta[i] * d2;
        minus += md.theta[i].inverse() * d2;
    }
    if (minus.is_zero()) throw InvalidData("Delta- is zero");
    GaussSums g{plus, minus, plus / minus, plus == minus};
    return g;
}

PointedResult is_pointed(const ModularData& md) {
    const int k = md.rank();
    const auto table = fusion_table(md);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int ones = 0;
            bool clean = true;
            for (int l = 0; l < k; ++l) {
                const CycNum& v = table[(static_cast<size_t>(i) * k + j) * k + l];
                if (v.is_zero()) continue;
                if (v.is_one())
                    ++ones;
                else
                    clean = false;
            }
            if (!clean || ones != 1) return {false, i};
        }
    return {true, std::nullopt};
}

ModularData reverse_data(const ModularData& md) {
    ModularData out = md;
    const int k = md.rank();
    for (int i = 0; i < k; ++i) {
        out.theta[i] = md.theta[i].inverse();
        for (int j = 0; j < k; ++j) out.s(i, j) = md.s(i, md.dual[j]);
    }
    return out;
}

ModularData deligne_product(const ModularData& a0, const ModularData& b0) {
    const int m = common_order(a0.conductor, b0.conductor);
    const ModularData a = a0.embedded(m), b = b0.embedded(m);
    const int ka = a.rank(), kb = b.rank();
    ModularData out;
    out.conductor = m;
    out.dual.resize(static_cast<size_t>(ka) * kb);
    out.theta.resize(out.dual.size());
    out.S.resize(out.dual.size() * out.dual.size());
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            const int x = i * kb + j;
            out.dual[x] = a.dual[i] * kb + b.dual[j];
            out.theta[x] = a.theta[i] * b.theta[j];
        }
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j)
            for (int p = 0; p < ka; ++p)
                for (int q = 0; q < kb; ++q) out.s(i * kb + j, p * kb + q) = a.s(i, p) * b.s(j, q);
    out.D = a.D * b.D;
    return out;
}

ModularData center_of_modular(const ModularData& md) { return deligne_product(md, reverse_data(md)); }

ModularData trivial_modular_data() {
    ModularData md;
    md.conductor = 1;
    md.dual = {0};
    md.S = {CycNum::one(1)};
    md.theta = {CycNum::one(1)};
    md.D = CycNum::one(1);
    return md;
}

}  // namespace rtinv
