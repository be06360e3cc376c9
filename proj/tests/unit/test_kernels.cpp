#include <doctest.h>

#include <random>

#include "rtinv/exponent_sum.hpp"
#include "rtinv/kernels.hpp"

using namespace rtinv;

TEST_CASE("every available kernel matches the scalar reference") {
    std::mt19937 rng(42);
    for (int32_t modulus : {1, 2, 7, 24, 1000, 1 << 20}) {
        for (size_t len : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 100u}) {
            std::uniform_int_distribution<int32_t> dist(0, modulus - 1);
            std::vector<int32_t> base(len);
            for (auto& x : base) x = dist(rng);
            std::vector<std::vector<int32_t>> rows(3, std::vector<int32_t>(len));
            for (auto& r : rows)
                for (auto& x : r) x = dist(rng);
            std::vector<const int32_t*> ptrs;
            for (auto& r : rows) ptrs.push_back(r.data());
            const int32_t offset = dist(rng);

            std::vector<int32_t> ref(len);
            kernels::accumulate_mod(kernels::Isa::scalar, offset, base.data(), ptrs, modulus, ref.data(), len);
            for (size_t i = 0; i < len; ++i) {
                int64_t e = int64_t{offset} + base[i];
                for (auto& r : rows) e += r[i];
                CHECK(ref[i] == e % modulus);
            }
            for (kernels::Isa isa : kernels::available_isas()) {
                std::vector<int32_t> out(len);
                kernels::accumulate_mod(isa, offset, base.data(), ptrs, modulus, out.data(), len);
                CHECK_MESSAGE(out == ref, kernels::isa_name(isa));
            }
        }
    }
}

TEST_CASE("scalar is always available and listed first") {
    const auto isas = kernels::available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == kernels::Isa::scalar);
    CHECK(kernels::isa_available(kernels::detected_isa()));
}

TEST_CASE("exponent histogram agrees across kernels and with direct enumeration") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        PairwiseExponentModel m;
        m.variables = 1 + trial % 6;
        m.domain = 2 + trial % 4;
        m.modulus = 3 + trial % 9;
        std::uniform_int_distribution<int32_t> dist(0, m.modulus - 1);
        m.constant = dist(rng);
        m.unary.resize(static_cast<size_t>(m.variables) * m.domain);
        for (auto& x : m.unary) x = dist(rng);
        for (int r = 0; r < m.variables; ++r)
            for (int s = r + 1; s < m.variables; ++s) {
                if (rng() % 2) continue;
                PairwiseExponentModel::Pair p{r, s, std::vector<int32_t>(m.domain * m.domain)};
                for (auto& x : p.table) x = dist(rng);
                m.pairs.push_back(p);
            }
        std::vector<int64_t> direct(m.modulus, 0);
        std::vector<int> x(m.variables, 0);
        while (true) {
            int64_t e = m.constant;
            for (int r = 0; r < m.variables; ++r) e += m.unary[r * m.domain + x[r]];
            for (auto& p : m.pairs) e += p.table[x[p.first] * m.domain + x[p.second]];
            ++direct[e % m.modulus];
            int r = m.variables - 1;
            while (r >= 0 && ++x[r] == m.domain) x[r--] = 0;
            if (r < 0) break;
        }
        for (kernels::Isa isa : kernels::available_isas()) CHECK(exponent_histogram(m, isa) == direct);
    }
}

TEST_CASE("histogram values") {
    // 1 + z4 from counts {1, 1, 0, 0}
    CHECK(histogram_value({1, 1, 0, 0}, 8) == CycNum::one(8) + CycNum::zeta(8, 2));
    CHECK(assignment_count(4, 3) == 64);
    CHECK(assignment_count(1000, 100) == UINT64_MAX);
}
