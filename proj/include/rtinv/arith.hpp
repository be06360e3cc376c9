#pragma once

// Small integer number-theory helpers shared across modules.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rtinv {

inline int64_t mod_pos(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> lo, hi;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t g = m, x = 0, x1 = 1, r = mod_pos(a, m);
    while (r != 0) {
        int64_t q = g / r;
        std::tie(g, r) = std::make_pair(r, g - q * r);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    return mod_pos(x, m);
}

/// p-adic valuation of a (mod p^cap); returns cap when a == 0 mod p^cap.
inline int valuation(int64_t a, int64_t p, int cap) {
    int v = 0;
    while (v < cap && a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace rtinv
