#include <doctest.h>

#include "fixtures.hpp"
#include "rtinv/io.hpp"

using namespace rtinv;

namespace {

std::string data(const std::string& name) { return io::read_file(std::string(RTINV_DATA_DIR) + "/" + name); }

std::string parse_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("bundled modular data matches the hand-built fixtures") {
    const std::vector<std::pair<std::string, ModularData>> cases = {
        {"semion.md", fixtures::semion()},   {"toric.md", fixtures::toric()},
        {"fib.md", fixtures::fibonacci()},   {"ising.md", fixtures::ising()},
        {"dsemion.md", fixtures::doubled_semion()}};
    for (const auto& [name, expected] : cases) {
        const std::string text = data(name);
        CHECK(io::detect_kind(text) == io::FileKind::modular_data);
        const ModularData md = io::parse_modular_data(text, name);
        CHECK(same_data(md, expected));
        CHECK(validate_modular_data(md).ok());
        CHECK(io::emit_modular_data(md) == text);
    }
}

TEST_CASE("modular data parsing") {
    const std::string base = "conductor 2\nlabels 1\ndual 0\nS 0 0 1:[1]\ntheta 0 2:[1]\nD 1:[1]\n";
    const auto md = io::parse_modular_data(base);
    CHECK(md.conductor == 2);
    CHECK(md.D == CycNum::one(2));

    // symmetric redundancy is fine when consistent
    const std::string two = "conductor 2\nlabels 2\ndual 0 1\nS 0 0 1:[1]\nS 0 1 1:[1]\nS 1 0 1:[1]\n"
                            "S 1 1 1:[-1]\ntheta 0 1:[1]\ntheta 1 1:[1]\nD 1:[1]\n";
    CHECK_NOTHROW(io::parse_modular_data(two));

    const std::string twice = "conductor 2\nlabels 1\ndual 0\nS 0 0 1:[1]\nS 0 0 1:[2]\ntheta 0 1:[1]\nD 1:[1]\n";
    CHECK(parse_error([&] { io::parse_modular_data(twice, "bad.md"); }) ==
          "bad.md:5: inconsistent duplicate S 0 0");
    CHECK(parse_error([&] { io::parse_modular_data("conductor 2\nlabels 1\ndual 0\nS 0 0 3:[1,0]\n", "x"); })
              .find("x:4: order 3 does not divide conductor 2") == 0);
    CHECK(parse_error([&] { io::parse_modular_data("conductor 2\nlabels 1\ndual 0\ntheta 0 1:[1]\nD 1:[1]\n", "x"); }) ==
          "x: missing S entry 0 0");
    CHECK(parse_error([&] { io::parse_modular_data("conductor 2\nlabels 1\nbogus 1\n", "x"); }) ==
          "x:3: unknown keyword 'bogus' in modular data");
    CHECK(parse_error([&] { io::parse_modular_data("conductor 2\nlabels 1\ndual 0\nS 0 0 1:[1\n", "x"); })
              .find("x:4: malformed cyclotomic token") == 0);
    CHECK(parse_error([&] { io::parse_modular_data("conductor two\n", "x"); }) == "x:1: malformed integer 'two'");
}

TEST_CASE("graph files") {
    const auto g = io::parse_graph(data("k3.graph"));
    CHECK(g == Graph::complete(3));
    const auto single = io::parse_graph("vertices 1\n");
    CHECK(single.vertex_count() == 1);
    CHECK(single.edge_count() == 0);
    for (const Graph& h : {Graph::complete(2), Graph::path(3), Graph::cycle(5), Graph::complete(4)})
        CHECK(io::parse_graph(io::emit_graph(h)) == h);
    CHECK(parse_error([] { io::parse_graph("vertices 2\nedge 0 0\n", "g"); }) == "g:2: self-loops are not allowed");
    CHECK(parse_error([] { io::parse_graph("vertices 2\nedge 0 1\n# c\nedge 1 0\n", "g"); }) ==
          "g:4: duplicate edge (first on line 2)");
    CHECK(parse_error([] { io::parse_graph("vertices 2\nedge 0 2\n", "g"); }) == "g:2: vertex 2 out of range");
    CHECK(parse_error([] { io::parse_graph("edge 0 1\n", "g"); }) == "g:1: 'edge' before 'vertices'");
}

TEST_CASE("linking matrix files keep roles") {
    const auto text = data("k2.link");
    CHECK(io::detect_kind(text) == io::FileKind::linking_matrix);
    const auto sp = io::parse_linking_matrix(text);
    const auto expect = plumbing_presentation(Graph::complete(2));
    CHECK(sp.B == expect.B);
    CHECK(sp.roles == expect.roles);
    CHECK(io::emit_linking_matrix(sp) == text);

    const auto sym = io::parse_linking_matrix("size 2\nentry 1 0 -3\nentry 0 1 -3\nentry 1 1 2\n");
    CHECK(sym.B == IntMatrix::from_rows({{0, -3}, {-3, 2}}));
    CHECK(parse_error([] { io::parse_linking_matrix("size 2\nentry 1 0 1\nentry 0 1 2\n", "m"); }) ==
          "m:3: inconsistent duplicate entry 0 1 (line 2)");
    CHECK(parse_error([] { io::parse_linking_matrix("size 1\n# role 0 Z 0\n", "m"); }) ==
          "m:2: unknown role 'Z' (expected K, a, b or c)");
}

TEST_CASE("weight matrix files") {
    const auto a = io::parse_weight_matrix(data("semion.weights"));
    const auto expect = edge_weight_matrix(fixtures::semion());
    REQUIRE(a.size == expect.size);
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j) CHECK(a.at(i, j) == expect.at(i, j));
    const auto inferred = io::parse_weight_matrix("weights 2\nA 0 0 1:[1]\nA 0 1 4:[0,1]\nA 1 0 4:[0,1]\nA 1 1 3:[2,0]\n");
    CHECK(inferred.conductor == 12);
    CHECK(inferred.symmetric);
    CHECK(inferred.at(1, 1) == CycNum::integer(12, 2));
    CHECK(io::parse_weight_matrix(io::emit_weight_matrix(inferred)).entries == inferred.entries);
}

TEST_CASE("metric groups, groups and cocycles") {
    const auto hyp3 = io::parse_metric_group(data("hyp3.mg"));
    const auto ref = hyperbolic_center(FinAbGroup({3}));
    CHECK(hyp3.group == ref.group);
    CHECK(hyp3.modulus == ref.modulus);
    CHECK(hyp3.qexp == ref.qexp);
    CHECK(io::detect_kind(data("semion.mg")) == io::FileKind::metric_group);
    const auto semion = io::parse_metric_group(data("semion.mg"));
    CHECK(semion.qexp == std::vector<int64_t>{0, 1});
    CHECK(semion.validate().ok());

    CHECK(io::detect_kind(data("z2cubed.group")) == io::FileKind::group);
    CHECK(io::parse_group(data("z2cubed.group")) == FinAbGroup({2, 2, 2}));
    CHECK(io::parse_group(data("hyp3.mg")) == FinAbGroup({3, 3}));
    CHECK(io::parse_group("orders\n").size() == 1);

    CHECK(io::detect_kind(data("z4.cocycle")) == io::FileKind::cocycle);
    CHECK(io::parse_cocycle(data("z4.cocycle")).w == cyclic_cocycle(4, 1).w);
    const auto c = io::parse_cocycle(data("z2cubed.cocycle"));
    CHECK(validate_cocycle(c).ok());
    CHECK(io::emit_cocycle(c) == data("z2cubed.cocycle"));
    CHECK(parse_error([] { io::parse_cocycle("orders 2\nmodulus 2\nomega 1|1 1\n", "c"); }) ==
          "c:3: expected x|y|z, got '1|1'");
    CHECK(parse_error([] { io::parse_cocycle("orders 2 2\nmodulus 2\nomega 1|1|1 1\n", "c"); }) ==
          "c:3: element '1' has 1 coordinates, group has rank 2");
    CHECK(parse_error([] { io::parse_metric_group("orders 2\nq 1 1\n", "q"); }) == "q: missing 'modulus' line");
}

TEST_CASE("elements") {
    const FinAbGroup g({2, 3});
    CHECK(io::parse_element(g, "1,2") == g.index({1, 2}));
    CHECK(io::parse_element(g, "-1,5") == g.index({1, 2}));
    CHECK(io::element_coords(g, g.index({1, 2})) == "1,2");
    CHECK_THROWS_AS(io::parse_element(g, "1,"), ParseError);
}
