#pragma once

// Random metric-group and quadratic-sum instances shared by tests and acceptance.

#include <random>

#include "rtinv/abelian_gauss.hpp"
#include "rtinv/arith.hpp"

namespace gauss_helpers {

using namespace rtinv;

inline const std::vector<std::vector<int64_t>>& small_group_shapes() {
    static const std::vector<std::vector<int64_t>> shapes = {
        {1},    {2},    {3},       {4},    {5},       {6},    {7},          {8},    {9},    {12},
        {16},   {2, 2}, {2, 4},    {3, 3}, {2, 6},    {4, 4}, {2, 8},       {2, 2, 2}, {2, 2, 4}, {2, 2, 2, 2},
        {3, 5}, {2, 3}, {15},      {10},   {14},      {11},   {13},
    };
    return shapes;
}

/// A random (possibly degenerate) quadratic form on the group, default modulus.
inline MetricGroup random_metric(std::mt19937& rng, const std::vector<int64_t>& orders) {
    MetricGroup mg;
    mg.group = FinAbGroup(orders);
    mg.modulus = MetricGroup::default_modulus(mg.group);
    const int64_t N = mg.modulus;
    const int k = mg.group.rank();
    std::vector<int64_t> c(k);
    std::vector<std::vector<int64_t>> cc(k, std::vector<int64_t>(k, 0));
    for (int j = 0; j < k; ++j) {
        const int64_t n = orders[j];
        const int64_t unit = N / (2 * n);
        while (true) {
            c[j] = unit * static_cast<int64_t>(rng() % (2 * n));
            if ((n * n % N) * c[j] % N == 0) break;
        }
        for (int l = j + 1; l < k; ++l) {
            const int64_t g = std::gcd(n, orders[l]);
            cc[j][l] = N / g * static_cast<int64_t>(rng() % g);
        }
    }
    mg.qexp.resize(mg.group.size());
    for (int64_t x = 0; x < mg.group.size(); ++x) {
        const auto v = mg.group.coords(x);
        int64_t e = 0;
        for (int j = 0; j < k; ++j) {
            e += c[j] * v[j] % N * v[j];
            for (int l = j + 1; l < k; ++l) e += cc[j][l] * v[j] % N * v[l];
        }
        mg.qexp[x] = mod_pos(e, N);
    }
    return mg;
}

/// Random weight on prod Z_{orders}; rejection-samples until well defined.
inline QuadExpWeight random_weight(std::mt19937& rng, const std::vector<int64_t>& orders, int64_t N) {
    const int n = static_cast<int>(orders.size());
    while (true) {
        QuadExpWeight q(n, N);
        for (int i = 0; i < n; ++i) {
            const int64_t m = orders[i];
            const int64_t du = N / std::gcd(N, 2 * m);
            q.a(i, i) = du * static_cast<int64_t>(rng() % (N / du));
            q.linear[i] = (N / std::gcd(N, m)) * static_cast<int64_t>(rng() % std::gcd(N, m));
            for (int j = i + 1; j < n; ++j) {
                const int64_t cu = N / std::gcd(N, std::gcd(m, orders[j]));
                q.a(i, j) = cu * static_cast<int64_t>(rng() % (N / cu));
            }
        }
        q.constant = static_cast<int64_t>(rng() % N);
        // linear terms may fix up the m^2 a_ii condition; retry otherwise
        if (q.compatible_with(orders)) return q;
        for (int i = 0; i < n; ++i) {
            const int64_t m = orders[i];
            for (int64_t l = 0; l < N; ++l) {
                q.linear[i] = l;
                if ((m * m % N * q.a(i, i) + m * l) % N == 0 && (rng() % 3 == 0 || l + 1 == N)) break;
            }
        }
        if (q.compatible_with(orders)) return q;
    }
}

inline IntMatrix random_symmetric(std::mt19937& rng, int m, int lo, int hi) {
    IntMatrix b(m, m);
    std::uniform_int_distribution<int> d(lo, hi);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) b(i, j) = b(j, i) = d(rng);
    return b;
}

}  // namespace gauss_helpers
