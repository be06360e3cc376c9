// Acceptance run: one PASS/FAIL line per criterion, exact equality throughout.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "../unit/gauss_helpers.hpp"
#include "rtinv/cocycle.hpp"
#include "rtinv/graph_manifolds.hpp"
#include "rtinv/io.hpp"

using namespace rtinv;
using namespace gauss_helpers;

namespace {

std::string data_path(const std::string& name) { return std::string(RTINV_DATA_DIR) + "/" + name; }

ModularData load_md(const std::string& name) {
    return io::parse_modular_data(io::read_file(data_path(name)), name);
}

/// Collects the first failure of a criterion; later checks still run.
struct Verdict {
    bool ok = true;
    std::string note;
    int checks = 0;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

std::vector<Graph> graphs_with_edges(int max_vertices) {
    std::vector<Graph> out;
    for (auto& g : connected_graphs_up_to(max_vertices))
        if (g.edge_count() > 0) out.push_back(std::move(g));
    return out;
}

std::string describe(const Graph& g) {
    std::ostringstream os;
    os << "|V|=" << g.vertex_count() << " E={";
    for (size_t i = 0; i < g.edges().size(); ++i)
        os << (i ? "," : "") << g.edges()[i].first << g.edges()[i].second;
    os << "}";
    return os.str();
}

const std::vector<std::string> kBundled = {"semion.md", "toric.md", "fib.md", "ising.md", "dsemion.md"};

// ---------------------------------------------------------------------------

void criterion1(Verdict& v) {
    for (const auto& name : kBundled) {
        const auto rep = validate_modular_data(load_md(name));
        v.expect(rep.ok(), name + " fails validation: " + rep.summary());
        for (const char* check : {"S_squared", "gauss_product", "verlinde_integrality"}) {
            const auto* c = rep.find(check);
            v.expect(c != nullptr && c->passed, name + ": check " + check + " missing or failing");
        }
    }
    const ModularData semion = load_md("semion.md");
    const int k = semion.rank();
    auto corrupt = [&](const std::string& label, const std::function<void(ModularData&)>& edit) {
        ModularData bad = semion;
        edit(bad);
        v.expect(!validate_modular_data(bad).ok(), "corruption " + label + " passes validation");
    };
    for (const auto& [tag, change] :
         std::vector<std::pair<std::string, std::function<CycNum(const CycNum&)>>>{
             {"doubled", [](const CycNum& x) { return x * Rational(2); }},
             {"plus one", [](const CycNum& x) { return x + CycNum::one(x.order()); }},
             {"times i", [](const CycNum& x) { return x * CycNum::zeta(x.order(), x.order() / 4); }}}) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                corrupt("S " + std::to_string(i) + std::to_string(j) + " " + tag,
                        [&](ModularData& md) { md.s(i, j) = change(md.s(i, j)); });
        for (int i = 0; i < k; ++i)
            corrupt("theta " + std::to_string(i) + " " + tag,
                    [&](ModularData& md) { md.theta[i] = change(md.theta[i]); });
        corrupt("D " + tag, [&](ModularData& md) { md.D = change(md.D); });
    }
    corrupt("dual 1", [](ModularData& md) { md.dual[1] = 0; });
}

void criterion2(Verdict& v) {
    for (int64_t n : {2, 3}) {
        const MetricGroup mg = hyperbolic_center(FinAbGroup({n}));
        const CycNum D = CycNum::integer(1, static_cast<long>(n));
        const ModularData md = pointed_modular_from_metric(mg, D);
        for (const Graph& g : graphs_with_edges(5)) {
            const CycNum surgery = rt_pointed_surgery(mg, D, plumbing_presentation(g));
            const CycNum graph = rt_graph_manifold(md, g);
            const CycNum half = rt_half_edge_sum(md, g);
            const std::string where = "Z" + std::to_string(n) + " hyperbolic, " + describe(g);
            v.expect(surgery == graph, where + ": surgery " + surgery.token() + " vs graph " + graph.token());
            v.expect(graph == half, where + ": graph " + graph.token() + " vs half-edge " + half.token());
        }
    }
}

void criterion3(Verdict& v) {
    const ModularData fib = load_md("fib.md");
    const std::vector<std::pair<std::string, ModularData>> cases = {
        {"doubled semion", load_md("dsemion.md")},
        {"Fib x Fib^rev", deligne_product(fib, reverse_data(fib))}};
    for (const auto& [name, md] : cases)
        for (const Graph& g : graphs_with_edges(3)) {
            const CycNum graph = rt_graph_manifold(md, g);
            const CycNum half = rt_half_edge_sum(md, g);
            const CycNum literal = rt_half_edge_sum_bruteforce(md, g);
            v.expect(graph == half, name + ", " + describe(g) + ": graph vs contracted half-edge sum");
            v.expect(half == literal, name + ", " + describe(g) + ": contracted vs literal half-edge sum");
        }
}

void criterion4(Verdict& v) {
    const ModularData semion = load_md("semion.md");
    const ModularData center = center_of_modular(semion);
    const PointedMetric pm = metric_from_pointed(semion);
    for (const Graph& g : {Graph::complete(2), Graph::path(3), Graph::complete(3)}) {
        const auto sp = plumbing_presentation(g);
        const CycNum lhs = rt_graph_manifold(center, g);
        const CycNum rhs = rt_pointed_surgery(pm.metric, semion.D, sp) *
                           rt_pointed_surgery(pm.metric, semion.D, reverse_presentation(sp));
        v.expect(lhs == rhs, describe(g) + ": center " + lhs.token() + " vs product " + rhs.token());
    }
}

void criterion5(Verdict& v) {
    for (const auto& name : kBundled) {
        const ModularData md = load_md(name);
        v.expect(is_mbr1(edge_weight_matrix(md)).mbr1 == is_pointed(md).pointed, name + ": MBR1 != pointed");
    }
    const auto fib = is_mbr1(edge_weight_matrix(load_md("fib.md")));
    const CycNum phi = CycNum::one(20) + CycNum::zeta(20, 4) + CycNum::zeta(20, 16);
    v.expect(fib.violating_ratio.has_value() && *fib.violating_ratio == phi - CycNum::integer(20, 2),
             "Fibonacci cross-ratio is not phi - 2");
    const auto ising = is_mbr1(edge_weight_matrix(load_md("ising.md")));
    v.expect(!ising.mbr1 && ising.support_violation, "Ising violation is not a support (zero-entry) violation");
}

void criterion6(Verdict& v) {
    std::mt19937 rng(20240611);
    const auto& shapes = small_group_shapes();
    int gauss_trials = 0;
    for (int trial = 0; gauss_trials < 120; ++trial) {
        const auto& shape = shapes[trial % shapes.size()];
        MetricGroup mg;
        bool found = false;
        for (int attempt = 0; attempt < 200 && !found; ++attempt) {
            mg = random_metric(rng, shape);
            found = mg.validate().ok();
        }
        if (!found) continue;
        const int m = 1 + static_cast<int>(rng() % 4);
        const IntMatrix b = random_symmetric(rng, m, -3, 3);
        v.expect(gauss_sum_fast(mg, b) == gauss_sum_bracket(mg, b), "Gauss engines disagree on trial " +
                                                                         std::to_string(gauss_trials));
        ++gauss_trials;
    }
    for (int trial = 0; trial < 120; ++trial) {
        const int64_t s_choices[] = {2, 3, 4, 6, 8};
        const int64_t s = s_choices[rng() % 5];
        int n = 1 + static_cast<int>(rng() % 5);
        while (std::pow(double(s), n) > 65536) --n;
        const int64_t t_choices[] = {2, 3, 4, 6, 8, 12};
        const int64_t t = t_choices[rng() % 6];
        const int m = static_cast<int>(rng() % 3);
        IntMatrixModOrders h;
        h.source.assign(n, s);
        h.target.assign(m, t);
        const int64_t unit = t / std::gcd(s, t);
        for (int i = 0; i < m * n; ++i) h.entries.push_back(unit * static_cast<int64_t>(rng() % (t / unit)));
        const int64_t Ns[] = {2, 4, 6, 8, 12, 16, 18, 24};
        const QuadExpWeight q = random_weight(rng, h.source, Ns[rng() % 8]);
        v.expect(kernel_quadratic_sum(h, q) == kernel_quadratic_sum_bruteforce(h, q),
                 "kernel sums disagree on trial " + std::to_string(trial));
    }
}

void criterion7(Verdict& v) {
    const ModularData toric = load_md("toric.md");
    const Graph k2 = Graph::complete(2);
    const CycNum eight = CycNum::integer(1, 8);
    v.expect(rt_graph_manifold(toric, k2) == eight, "Z(toric, M_K2) != 8 by the graph formula");
    v.expect(rt_half_edge_sum_bruteforce(toric, k2) == eight, "Z(toric, M_K2) != 8 by literal half-edge sum");
    PartitionOptions slow;
    slow.allow_fast_path = false;
    v.expect(rt_graph_manifold(toric, k2, slow) == eight, "Z(toric, M_K2) != 8 without the fast path");

    const MetricGroup toric_mg = metric_from_pointed(toric).metric;
    const auto sp = plumbing_presentation(k2);
    const CycNum g1024 = CycNum::integer(1, 1024);
    v.expect(gauss_sum_bracket(toric_mg, sp.B) == g1024, "bracket Gauss sum on plumbing(K2) != 1024");
    v.expect(gauss_sum_fast(toric_mg, sp.B) == g1024, "fast Gauss sum on plumbing(K2) != 1024");

    const auto sig = signature_data(sp);
    v.expect(sig.b_plus == 1 && sig.b_minus == 1 && sig.b_zero == 4, "signature of plumbing(K2) != (1,1,4)");
    const auto h = first_homology(sp);
    v.expect(h.free_rank == 4 && h.torsion.empty(), "H1 of plumbing(K2) is not Z^4");

    const WeightMatrix sw = edge_weight_matrix(load_md("semion.md"));
    v.expect(partition_function(sw, Graph::complete(3)).is_zero(), "Z_A(K3) != 0 for the semion");
    v.expect(partition_function(sw, Graph::complete(3), slow).is_zero(), "Z_A(K3) != 0 by plain enumeration");

    const Cocycle c = io::parse_cocycle(io::read_file(data_path("z2cubed.cocycle")), "z2cubed.cocycle");
    const auto& g = c.group;
    v.expect(validate_cocycle(c).ok(), "Z2^3 cocycle invalid");
    v.expect(psi_trilinear(c, g.generator(0), g.generator(1), g.generator(2)) == CycNum::integer(1, -1),
             "psi(e1,e2,e3) != -1");
}

void criterion8(Verdict& v) {
    for (const auto& [name, label] : std::vector<std::pair<std::string, std::string>>{
             {"toric.md", "RT: FP"}, {"semion.md", "RT: FP"}, {"dsemion.md", "RT: FP"},
             {"fib.md", "RT: #P-hard"}, {"ising.md", "RT: #P-hard"}}) {
        const auto cls = classify_dichotomy(load_md(name));
        v.expect(cls.label == label, name + " classified as " + cls.str());
    }
    for (int64_t n = 1; n <= 12; ++n)
        for (int64_t p = 0; p < n; ++p) {
            const Cocycle c = cyclic_cocycle(n, p);
            v.expect(validate_cocycle(c).ok() && classify_dichotomy(c).label == "TV: FP",
                     "Z" + std::to_string(n) + " cocycle p=" + std::to_string(p) + " not TV: FP");
        }
    const Cocycle c = io::parse_cocycle(io::read_file(data_path("z2cubed.cocycle")), "z2cubed.cocycle");
    const auto cls = classify_dichotomy(c);
    const auto& g = c.group;
    v.expect(cls.label == "TV: #P-hard", "Z2^3 example classified as " + cls.str());
    v.expect(cls.psi_witness && *cls.psi_witness == Triple{g.generator(0), g.generator(1), g.generator(2)},
             "Z2^3 witness is not (e1,e2,e3)");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        void (*run)(Verdict&);
    };
    const Criterion all[] = {
        {1, "validator suite and single-entry corruptions", 1, criterion1},
        {2, "pointed cross-oracle on graphs with <= 5 vertices", 60, criterion2},
        {3, "elimination identity on non-pointed data, <= 3 vertices", 60, criterion3},
        {4, "center-product identity for the semion", 10, criterion4},
        {5, "MBR1 classifier agrees with pointedness", 1, criterion5},
        {6, "Gauss and kernel-sum engine equivalence", 120, criterion6},
        {7, "anchored values", 10, criterion7},
        {8, "dichotomy labels", 1, criterion8},
    };
    int failed = 0;
    for (const auto& c : all) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (v.ok && secs > c.limit_s) v.expect(false, "over the time limit");
        std::printf("[%s] criterion %d: %s (%d checks, %.2fs of %.0fs)%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name,
                    v.checks, secs, c.limit_s, v.ok ? "" : " -- ", v.note.c_str());
        failed += v.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
