#include <doctest.h>

#include <random>

#include "rtinv/cyclotomic.hpp"

using namespace rtinv;

namespace {

CycNum random_element(std::mt19937& rng, int n) {
    const int deg = static_cast<int>(CyclotomicField::get(n).degree);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(deg);
    for (auto& x : c) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
    }
    return CycNum::from_coeffs(n, c);
}

}  // namespace

TEST_CASE("products reduce modulo the cyclotomic polynomial") {
    CHECK(cyc_mul(CycNum::zeta(4, 1), CycNum::zeta(4, 1)) == CycNum::integer(4, -1));

    const CycNum z = CycNum::zeta(5, 1);
    const CycNum s = CycNum::one(5) + z + z * z + z.pow(3);
    CHECK(cyc_mul(s, CycNum::one(5)) == -z.pow(4));
    CHECK(s.coeffs() == std::vector<Rational>{1, 1, 1, 1});

    const CycNum r2 = CycNum::zeta(8, 1) - CycNum::zeta(8, 3);
    CHECK(cyc_mul(r2, r2) == CycNum::integer(8, 2));
}

TEST_CASE("mismatched orders are rejected") {
    CHECK_THROWS_AS(cyc_mul(CycNum::zeta(4, 1), CycNum::zeta(8, 1)), OrderMismatch);
}

TEST_CASE("inverses") {
    CHECK(cyc_inv(CycNum::zeta(4, 1)) == -CycNum::zeta(4, 1));
    const CycNum z = CycNum::zeta(5, 1);
    const CycNum phi = CycNum::one(5) + z + z.pow(4);
    CHECK(cyc_inv(phi) == z + z.pow(4));
    CHECK(cyc_mul(phi, z + z.pow(4)).is_one());
    const CycNum r2 = CycNum::zeta(8, 1) - CycNum::zeta(8, 3);
    CHECK(cyc_inv(r2) == r2 * Rational(1, 2));
    CHECK_THROWS_AS(cyc_inv(CycNum::zero(7)), DivisionByZero);
}

TEST_CASE("root of unity orders") {
    CHECK(cyc_root_of_unity_order(CycNum::zeta(4, 1)) == 4);
    CHECK(cyc_root_of_unity_order(CycNum::integer(8, -1)) == 2);
    const CycNum z = CycNum::zeta(5, 1);
    const CycNum phi = CycNum::one(5) + z + z.pow(4);
    CHECK_FALSE(cyc_root_of_unity_order(phi).has_value());
    CHECK(phi.pow(10) != CycNum::one(5));
    // odd conductor: -z5 has order 10
    CHECK(cyc_root_of_unity_order(-z) == 10);
    CHECK(cyc_root_of_unity_order(CycNum::zero(3)) == std::nullopt);
    CHECK(cyc_root_of_unity_order(CycNum::integer(3, 2)) == std::nullopt);
    for (int n : {1, 2, 3, 8, 12, 15, 16, 20}) {
        for (int k = 0; k < n; ++k) {
            const auto m = cyc_root_of_unity_order(CycNum::zeta(n, k));
            REQUIRE(m.has_value());
            CHECK(CycNum::zeta(n, k).pow(*m).is_one());
            CHECK(*m == n / std::gcd(n, k));
        }
    }
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    for (int n : {3, 5, 8, 12, 20}) {
        for (int trial = 0; trial < 20; ++trial) {
            const CycNum a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK(a.inverse().inverse() == a);
            }
            CHECK((a * b).galois(-1) == a.conj() * b.conj());
            CHECK((a + b).conj() == a.conj() + b.conj());
        }
    }
    CHECK(CycNum::rational(12, Rational(3, 7)).conj() == CycNum::rational(12, Rational(3, 7)));
}

TEST_CASE("embedding is a ring map and equality crosses orders") {
    std::mt19937 rng(11);
    const CycNum a = random_element(rng, 5), b = random_element(rng, 5);
    CHECK((a * b).embed(20) == a.embed(20) * b.embed(20));
    CHECK(a.embed(20) == a);
    CHECK(CycNum::zeta(4, 1) == CycNum::zeta(8, 2));
    CHECK(CycNum::zeta(4, 1) != CycNum::zeta(8, 1));
}

TEST_CASE("token round trip and rendering") {
    std::mt19937 rng(3);
    for (int n : {1, 4, 5, 8, 16}) {
        const CycNum a = random_element(rng, n);
        CHECK(CycNum::parse(a.token()) == a);
    }
    CHECK(CycNum::integer(1, 8).token() == "1:[8]");
    CHECK(CycNum::parse("8:[1,0,-1/2,0]") == CycNum::one(8) - CycNum::zeta(8, 2) * Rational(1, 2));
    CHECK(CycNum::integer(3, 8).pretty() == "8");
    CHECK_THROWS_AS(CycNum::parse("8:[1,2]"), ParseError);
    CHECK_THROWS_AS(CycNum::parse("x"), ParseError);
    CHECK(std::abs(CycNum::zeta(8, 1).approx() - std::polar(1.0, 3.14159265358979 / 4)) < 1e-12);
}
