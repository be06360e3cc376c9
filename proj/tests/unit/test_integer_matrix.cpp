#include <doctest.h>

#include <random>

#include "rtinv/integer_matrix.hpp"

using namespace rtinv;

TEST_CASE("Smith normal form anchors") {
    const auto a = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
    CHECK(a.diagonal() == std::vector<BigInt>{2, 4});
    CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
    CHECK(smith_normal_form(IntMatrix::from_rows({{0, 1}, {1, 0}})).diagonal() == std::vector<BigInt>{1, 1});
}

TEST_CASE("Smith certificates on random matrices") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> dist(-6, 6);
    for (int t = 0; t < 200; ++t) {
        const int r = 1 + t % 5, c = 1 + (t / 5) % 5;
        IntMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = dist(rng);
        const auto f = smith_normal_form(m);
        CHECK(verify_smith(m, f));
        if (r == c) {
            BigInt prod = 1;
            for (const auto& d : f.diagonal()) prod *= d;
            CHECK(prod == abs(determinant(m)));
        }
        const IntMatrix k = integer_kernel(m);
        const IntMatrix z = m * k;
        for (int i = 0; i < z.rows(); ++i)
            for (int j = 0; j < z.cols(); ++j) CHECK(z(i, j) == 0);
    }
}

TEST_CASE("determinants") {
    CHECK(determinant(IntMatrix::from_rows({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(IntMatrix::from_rows({{0, 1, 2}, {1, 0, 3}, {4, -3, 8}})) == -2);
    CHECK(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("inertia") {
    auto in = inertia(IntMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(in.positive == 1);
    CHECK(in.negative == 1);
    CHECK(in.zero == 0);
    in = inertia(IntMatrix::from_rows({{2}}));
    CHECK(in.positive == 1);
    in = inertia(IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    CHECK(in.positive == 1);
    CHECK(in.negative == 2);
    in = inertia(IntMatrix::from_rows({{1, 2}, {2, 4}}));
    CHECK(in.positive == 1);
    CHECK(in.zero == 1);
    CHECK_THROWS(inertia(IntMatrix::from_rows({{0, 1}, {0, 0}})));
}
