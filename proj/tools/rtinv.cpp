// rtinv: command-line front end for the exact invariant library.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "rtinv/abelian_gauss.hpp"
#include "rtinv/cocycle.hpp"
#include "rtinv/graph_manifolds.hpp"
#include "rtinv/io.hpp"

using namespace rtinv;
using json = nlohmann::ordered_json;

namespace {

struct CheckFailed {};

CycNum canonical(const CycNum& v) {
    if (const auto q = v.to_rational()) return CycNum::rational(1, *q);
    return v;
}

std::string approx_str(const CycNum& v) {
    const auto z = v.approx();
    const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
    const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
    char buf[96];
    if (im == 0)
        std::snprintf(buf, sizeof buf, "%.12g", re);
    else
        std::snprintf(buf, sizeof buf, "%.12g %c %.12gi", re, im < 0 ? '-' : '+', std::abs(im));
    return buf;
}

class Output {
public:
    explicit Output(bool json_lines) : json_(json_lines) {}

    void begin(const std::string& command) { rec_ = json{{"command", command}}; }
    void end() {
        if (json_) std::cout << rec_.dump() << "\n";
    }

    void field(const std::string& key, const json& value, const std::string& text) {
        rec_[key] = value;
        if (!json_) std::cout << key << ": " << text << "\n";
    }
    void field(const std::string& key, const std::string& text) { field(key, text, text); }

    /// Printed verbatim in text mode.
    void block(const std::string& key, const std::string& text) {
        rec_[key] = text;
        if (!json_) std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    }

    void number(const std::string& key, const CycNum& raw) {
        const CycNum v = canonical(raw);
        const auto z = v.approx();
        rec_[key] = json{{"exact", v.pretty()}, {"token", v.token()}, {"approx", json::array({z.real(), z.imag()})}};
        if (!json_) {
            const std::string prefix = key == "value" ? "" : key + " ";
            std::cout << key << ": " << v.pretty() << "\n"
                      << prefix << "token: " << v.token() << "\n"
                      << prefix << "approx: " << approx_str(v) << "\n";
        }
    }

private:
    bool json_;
    json rec_;
};

struct Inputs {
    static std::string text(const std::string& path) { return io::read_file(path); }

    static ModularData md(const std::string& path) { return io::parse_modular_data(text(path), path); }
    static Graph graph(const std::string& path) { return io::parse_graph(text(path), path); }
    static MetricGroup metric(const std::string& path) {
        MetricGroup mg = io::parse_metric_group(text(path), path);
        const auto rep = mg.validate();
        if (!rep.ok()) throw InvalidData(path + ": not a metric group: " + rep.summary());
        return mg;
    }
    static FinAbGroup group(const std::string& path) { return io::parse_group(text(path), path); }
    static Cocycle cocycle(const std::string& path) { return io::parse_cocycle(text(path), path); }

    static WeightMatrix weights(const std::string& path) {
        const std::string t = text(path);
        switch (io::detect_kind(t)) {
            case io::FileKind::modular_data: return edge_weight_matrix(io::parse_modular_data(t, path));
            case io::FileKind::weight_matrix: return io::parse_weight_matrix(t, path);
            default: throw ParseError(path + ": expected modular data or a weight matrix");
        }
    }
    /// Linking matrix, or a graph passed through the plumbing construction.
    static SurgeryPresentation presentation(const std::string& path) {
        const std::string t = text(path);
        switch (io::detect_kind(t)) {
            case io::FileKind::linking_matrix: return io::parse_linking_matrix(t, path);
            case io::FileKind::graph: return plumbing_presentation(io::parse_graph(t, path));
            default: throw ParseError(path + ": expected a linking matrix or a graph");
        }
    }
};

std::string triple_str(const FinAbGroup& g, const Triple& t) {
    return element_str(g, t[0]) + " " + element_str(g, t[1]) + " " + element_str(g, t[2]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Reshetikhin-Turaev invariants of graph manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    int budget_log2 = 24;
    std::string format = "text";
    app.add_option("--budget", budget_log2, "log2 of the largest enumeration or tensor allowed")
        ->check(CLI::Range(1, 62));
    app.add_option("--format", format, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));

    std::vector<std::function<void(Output&, uint64_t)>> actions;
    auto command = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

    std::string a1, a2, d_token, engine = "fast", at;

    auto* validate = command("validate", "check the axioms of modular data");
    validate->add_option("md", a1)->required();
    validate->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const auto rep = validate_modular_data(Inputs::md(a1));
            for (const auto& c : rep.checks) {
                out.begin("validate");
                std::string line = std::string(c.passed ? "PASS " : "FAIL ") + c.name;
                if (!c.passed && !c.witness.empty()) {
                    line += " at (";
                    for (size_t i = 0; i < c.witness.size(); ++i) line += (i ? "," : "") + std::to_string(c.witness[i]);
                    line += ")";
                }
                if (!c.passed && !c.detail.empty()) line += ": " + c.detail;
                out.block("check", line);
                out.end();
            }
            out.begin("validate");
            out.field("result", rep.ok() ? "valid" : "invalid");
            out.end();
            if (!rep.ok()) throw CheckFailed{};
        });
    });

    auto* classify = command("classify", "RT dichotomy label of modular data");
    classify->add_option("md", a1)->required();
    classify->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const auto cls = classify_dichotomy(Inputs::md(a1));
            out.begin("classify");
            out.block("classification", cls.str());
            out.end();
        });
    });

    auto* classify_tv = command("classify-tv", "TV dichotomy label of a pointed spherical input");
    classify_tv->add_option("group", a1)->required();
    classify_tv->add_option("cocycle", a2)->required();
    classify_tv->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const FinAbGroup g = Inputs::group(a1);
            const Cocycle c = Inputs::cocycle(a2);
            if (!(c.group == g)) throw InvalidData(a2 + ": cocycle is defined on a different group than " + a1);
            const auto rep = validate_cocycle(c);
            if (!rep.ok()) throw InvalidData(a2 + ": not a normalized 3-cocycle: " + rep.summary());
            const auto cls = classify_dichotomy(c);
            out.begin("classify-tv");
            out.block("classification", cls.str());
            out.end();
        });
    });

    auto* weights = command("weights", "edge weight matrix of modular data");
    weights->add_option("md", a1)->required();
    weights->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            out.begin("weights");
            out.block("matrix", io::emit_weight_matrix(edge_weight_matrix(Inputs::md(a1))));
            out.end();
        });
    });

    auto* partition = command("partition", "partition function Z_A(G)");
    partition->add_option("weights", a1, "modular data or weight matrix")->required();
    partition->add_option("graph", a2)->required();
    partition->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            PartitionOptions opts;
            opts.budget = budget;
            const CycNum v = partition_function(Inputs::weights(a1), Inputs::graph(a2), opts);
            out.begin("partition");
            out.number("value", v);
            out.end();
        });
    });

    auto* eval_graph = command("eval-graph", "invariant of M_G by the graph formula");
    eval_graph->add_option("md", a1)->required();
    eval_graph->add_option("graph", a2)->required();
    eval_graph->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            PartitionOptions opts;
            opts.budget = budget;
            const CycNum v = rt_graph_manifold(Inputs::md(a1), Inputs::graph(a2), opts);
            out.begin("eval-graph");
            out.number("value", v);
            out.end();
        });
    });

    auto* eval_half = command("eval-halfedge", "invariant of M_G by the half-edge state sum");
    eval_half->add_option("md", a1)->required();
    eval_half->add_option("graph", a2)->required();
    eval_half->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            HalfEdgeOptions opts;
            opts.budget = budget;
            const CycNum v = rt_half_edge_sum(Inputs::md(a1), Inputs::graph(a2), opts);
            out.begin("eval-halfedge");
            out.number("value", v);
            out.end();
        });
    });

    auto* eval_surgery = command("eval-surgery", "pointed surgery formula");
    eval_surgery->add_option("metric", a1)->required();
    eval_surgery->add_option("presentation", a2, "linking matrix or graph")->required();
    eval_surgery->add_option("--D", d_token, "global dimension token (default: positive root of |L|)");
    eval_surgery->add_option("--engine", engine)->check(CLI::IsMember({"fast", "bracket"}));
    eval_surgery->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            const MetricGroup mg = Inputs::metric(a1);
            const SurgeryPresentation sp = Inputs::presentation(a2);
            const CycNum D = d_token.empty() ? positive_root(mg.group.size()) : CycNum::parse(d_token);
            const auto sig = signature_data(sp);
            const CycNum v = rt_pointed_surgery(mg, D, sp, engine == "fast" ? GaussEngine::fast : GaussEngine::bracket,
                                                budget);
            out.begin("eval-surgery");
            out.field("signature", json::array({sig.b_plus, sig.b_minus, sig.b_zero}),
                      "(" + std::to_string(sig.b_plus) + "," + std::to_string(sig.b_minus) + "," +
                          std::to_string(sig.b_zero) + ")");
            out.number("value", v);
            out.end();
        });
    });

    auto* eval_center = command("eval-center", "invariant of M_G for the center of the data");
    eval_center->add_option("md", a1)->required();
    eval_center->add_option("graph", a2)->required();
    eval_center->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            PartitionOptions opts;
            opts.budget = budget;
            const CycNum v = rt_center_product(Inputs::md(a1), Inputs::graph(a2), opts);
            out.begin("eval-center");
            out.number("value", v);
            out.end();
        });
    });

    auto* eval_tv = command("eval-tv", "Turaev-Viro invariant for Vec_L with trivial associator");
    eval_tv->add_option("group", a1)->required();
    eval_tv->add_option("input", a2, "graph or linking matrix")->required();
    eval_tv->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            const FinAbGroup g = Inputs::group(a1);
            const std::string t = Inputs::text(a2);
            const CycNum v = io::detect_kind(t) == io::FileKind::graph
                                 ? tv_pointed_trivial(g, io::parse_graph(t, a2), budget)
                                 : tv_pointed_trivial(g, io::parse_linking_matrix(t, a2));
            out.begin("eval-tv");
            out.number("value", v);
            out.end();
        });
    });

    auto* gauss = command("gauss", "Gauss sum of a linking matrix, both engines");
    gauss->add_option("metric", a1)->required();
    gauss->add_option("matrix", a2, "linking matrix or graph")->required();
    gauss->callback([&] {
        actions.push_back([&](Output& out, uint64_t budget) {
            const MetricGroup mg = Inputs::metric(a1);
            const SurgeryPresentation sp = Inputs::presentation(a2);
            const CycNum fast = gauss_sum_fast(mg, sp.B);
            const CycNum bracket = gauss_sum_bracket(mg, sp.B, budget);
            out.begin("gauss");
            out.number("fast", fast);
            out.number("bracket", bracket);
            const bool agree = fast == bracket;
            out.field("agree", agree, agree ? "yes" : "no");
            out.end();
            if (!agree) throw CheckFailed{};
        });
    });

    auto* mbr1 = command("mbr1", "multiplicative-block-rank-one test");
    mbr1->add_option("weights", a1, "modular data or weight matrix")->required();
    mbr1->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const auto r = is_mbr1(Inputs::weights(a1));
            out.begin("mbr1");
            out.field("mbr1", r.mbr1, r.mbr1 ? "yes" : "no");
            if (r.witness_r) out.field("root_order", json(*r.witness_r), std::to_string(*r.witness_r));
            if (r.violation) {
                const auto& q = *r.violation;
                out.field("violation", json::array({q[0], q[1], q[2], q[3]}),
                          "rows {" + std::to_string(q[0]) + "," + std::to_string(q[2]) + "} cols {" +
                              std::to_string(q[1]) + "," + std::to_string(q[3]) + "}");
                out.field("support_violation", r.support_violation, r.support_violation ? "yes" : "no");
            }
            if (r.violating_ratio) out.number("ratio", *r.violating_ratio);
            out.end();
        });
    });

    auto* plumb = command("plumb", "linking matrix of the plumbing presentation of M_G");
    plumb->add_option("graph", a1)->required();
    plumb->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            out.begin("plumb");
            out.block("matrix", io::emit_linking_matrix(plumbing_presentation(Inputs::graph(a1))));
            out.end();
        });
    });

    auto* homology = command("homology", "first homology and signature of a surgery presentation");
    homology->add_option("matrix", a1, "linking matrix or graph")->required();
    homology->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const auto sp = Inputs::presentation(a1);
            const auto h = first_homology(sp);
            const auto sig = signature_data(sp);
            json torsion = json::array();
            for (const auto& t : h.torsion) torsion.push_back(t.get_str());
            out.begin("homology");
            out.field("H1", json{{"free_rank", h.free_rank}, {"torsion", torsion}}, h.str());
            out.field("signature", json::array({sig.b_plus, sig.b_minus, sig.b_zero}),
                      "(" + std::to_string(sig.b_plus) + "," + std::to_string(sig.b_minus) + "," +
                          std::to_string(sig.b_zero) + ")");
            out.end();
        });
    });

    auto* psi = command("psi", "alternating form of a 3-cocycle");
    psi->add_option("group", a1)->required();
    psi->add_option("cocycle", a2)->required();
    psi->add_option("--at", at, "evaluate at x|y|z only");
    psi->callback([&] {
        actions.push_back([&](Output& out, uint64_t) {
            const FinAbGroup g = Inputs::group(a1);
            const Cocycle c = Inputs::cocycle(a2);
            if (!(c.group == g)) throw InvalidData(a2 + ": cocycle is defined on a different group than " + a1);
            auto emit = [&](const Triple& t) {
                out.begin("psi");
                out.field("arguments", json::array({io::element_coords(g, t[0]), io::element_coords(g, t[1]),
                                                    io::element_coords(g, t[2])}),
                          triple_str(g, t));
                out.number("psi", psi_trilinear(c, t[0], t[1], t[2]));
                out.end();
            };
            if (!at.empty()) {
                Triple t{};
                std::string_view rest = at;
                for (int p = 0; p < 3; ++p) {
                    const size_t bar = rest.find('|');
                    if ((p < 2) != (bar != std::string_view::npos)) throw ParseError("--at expects x|y|z");
                    t[p] = io::parse_element(g, rest.substr(0, bar));
                    if (p < 2) rest.remove_prefix(bar + 1);
                }
                emit(t);
                return;
            }
            for (int i = 0; i < g.rank(); ++i)
                for (int j = i + 1; j < g.rank(); ++j)
                    for (int k = j + 1; k < g.rank(); ++k) emit({g.generator(i), g.generator(j), g.generator(k)});
            const auto t = is_trivializable(c);
            out.begin("psi");
            out.field("trivializable", t.trivializable, t.trivializable ? "yes" : "no");
            if (t.witness) out.field("witness", triple_str(g, *t.witness));
            out.end();
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Output out(format == "json-lines");
    const uint64_t budget = uint64_t{1} << budget_log2;
    try {
        for (auto& act : actions) act(out, budget);
    } catch (const CheckFailed&) {
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (raise --budget)\n";
        return 4;
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
