#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "rtinv/graph_manifolds.hpp"

using namespace rtinv;

namespace {

CycNum integer(long v) { return CycNum::integer(1, v); }

std::vector<Graph> small_graphs() {
    std::vector<Graph> out;
    for (auto& g : connected_graphs_up_to(3))
        if (g.edge_count() > 0) out.push_back(std::move(g));
    return out;
}

}  // namespace

TEST_CASE("vertex coefficient examples") {
    for (const auto& md : {fixtures::semion(), fixtures::toric(), fixtures::fibonacci(), fixtures::ising()})
        CHECK(vertex_coefficient(md, {0}) == integer(md.rank()));
    const auto t = fixtures::toric();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(vertex_coefficient(t, {a, b}) == integer(a == b ? 4 : 0));
    CHECK(vertex_coefficient(fixtures::fibonacci(), {1}) == integer(1));
    CHECK_THROWS_AS(vertex_coefficient(t, {}), UnsupportedInput);
}

TEST_CASE("vertex coefficients are symmetric nonnegative integers") {
    for (const auto& md : {fixtures::semion(), fixtures::fibonacci(), fixtures::ising()}) {
        const int k = md.rank();
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c) {
                    std::vector<int> col{a, b, c};
                    const CycNum v = vertex_coefficient(md, col);
                    const auto q = v.to_rational();
                    REQUIRE(q.has_value());
                    CHECK(q->get_den() == 1);
                    CHECK(*q >= 0);
                    std::sort(col.begin(), col.end());
                    do {
                        CHECK(vertex_coefficient(md, col) == v);
                    } while (std::next_permutation(col.begin(), col.end()));
                }
    }
}

TEST_CASE("anomaly-free precondition") {
    CHECK_NOTHROW(require_anomaly_free(fixtures::toric()));
    CHECK_NOTHROW(require_anomaly_free(fixtures::doubled_semion()));
    CHECK_THROWS_AS(require_anomaly_free(fixtures::semion()), PreconditionError);
    CHECK_THROWS_AS(require_anomaly_free(fixtures::fibonacci()), PreconditionError);
    CHECK_THROWS_AS(rt_graph_manifold(fixtures::semion(), Graph::complete(2)), PreconditionError);
    CHECK_THROWS_AS(rt_half_edge_sum(fixtures::ising(), Graph::complete(2)), PreconditionError);
    auto bad = fixtures::toric();
    bad.D = -bad.D;
    CHECK_THROWS_AS(require_anomaly_free(bad), PreconditionError);
}

TEST_CASE("graph formula anchors") {
    const auto t = fixtures::toric();
    CHECK(rt_graph_manifold(t, Graph::complete(2)) == integer(8));
    CHECK(rt_graph_manifold(t, Graph::path(3)) == integer(64));
    CHECK(rt_graph_manifold(fixtures::doubled_semion(), Graph::complete(2)) == integer(8));
    CHECK_THROWS_AS(rt_graph_manifold(t, Graph(2, {})), UnsupportedInput);
    CHECK_THROWS_AS(rt_graph_manifold(t, Graph(4, {{0, 1}, {2, 3}})), UnsupportedInput);
}

TEST_CASE("half-edge sum: contraction, enumeration and graph formula agree") {
    for (const auto& md : {fixtures::toric(), fixtures::doubled_semion()})
        for (const auto& g : small_graphs()) {
            const CycNum graph = rt_graph_manifold(md, g);
            CHECK(rt_half_edge_sum(md, g) == graph);
            HalfEdgeOptions exact;
            exact.allow_integer_path = false;
            CHECK(rt_half_edge_sum(md, g, exact) == graph);
            CHECK(rt_half_edge_sum_bruteforce(md, g) == graph);
        }
    CHECK(rt_half_edge_sum(fixtures::toric(), Graph::complete(2)) == integer(8));
}

TEST_CASE("half-edge sum on a non-pointed double") {
    const auto z = center_of_modular(fixtures::fibonacci());
    for (const auto& g : small_graphs()) {
        const CycNum graph = rt_graph_manifold(z, g);
        CHECK(rt_half_edge_sum(z, g) == graph);
        CHECK_FALSE(graph.is_zero());
    }
    CHECK(rt_half_edge_sum_bruteforce(z, Graph::complete(2)) == rt_graph_manifold(z, Graph::complete(2)));
}

TEST_CASE("half-edge contraction on larger graphs") {
    const auto t = fixtures::toric();
    for (const Graph& g : {Graph::complete(4), Graph::cycle(5), Graph::path(6), Graph::complete(5)})
        CHECK(rt_half_edge_sum(t, g) == rt_graph_manifold(t, g));
    HalfEdgeOptions tiny;
    tiny.budget = 16;
    CHECK_THROWS_AS(rt_half_edge_sum(t, Graph::complete(4), tiny), BudgetExceeded);
    CHECK_THROWS_AS(rt_half_edge_sum_bruteforce(t, Graph::complete(5), 1 << 10), BudgetExceeded);
}

TEST_CASE("product identity") {
    const auto t = fixtures::toric(), ds = fixtures::doubled_semion();
    const auto prod = deligne_product(t, ds);
    for (const auto& g : small_graphs())
        CHECK(rt_graph_manifold(prod, g) == rt_graph_manifold(t, g).embed(8) * rt_graph_manifold(ds, g).embed(8));
}

TEST_CASE("center product") {
    CHECK(rt_center_product(fixtures::semion(), Graph::complete(2)) == integer(8));
    CHECK(rt_center_product(fixtures::toric(), Graph::complete(2)) == integer(64));
    for (const auto& g : small_graphs()) CHECK_NOTHROW(rt_center_product(fixtures::semion(), g));
    CHECK_FALSE(rt_center_product(fixtures::fibonacci(), Graph::complete(2)).is_zero());
}

TEST_CASE("pointed Turaev-Viro through the center") {
    CHECK(tv_pointed_trivial(FinAbGroup({2}), Graph::complete(2)) == integer(8));
    SurgeryPresentation empty;
    const CycNum half = tv_pointed_trivial(FinAbGroup({2}), empty);
    CHECK(half == CycNum::rational(1, Rational(1, 2)));
    CHECK(tv_pointed_trivial(FinAbGroup(std::vector<int64_t>{}), empty) == integer(1));
    for (const auto& g : small_graphs()) {
        const CycNum via_graph = tv_pointed_trivial(FinAbGroup({3}), g);
        CHECK(via_graph == tv_pointed_trivial(FinAbGroup({3}), plumbing_presentation(g)));
    }
}
