#include "rtinv/exponent_sum.hpp"

#include <limits>
#include <stdexcept>

namespace rtinv {

namespace {

constexpr int64_t kBlockCap = 4096;

}  // namespace

uint64_t assignment_count(uint64_t domain, uint64_t variables) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < variables; ++i) {
        if (domain != 0 && r > std::numeric_limits<uint64_t>::max() / domain)
            return std::numeric_limits<uint64_t>::max();
        r *= domain;
    }
    return r;
}

std::vector<int64_t> exponent_histogram(const PairwiseExponentModel& model, kernels::Isa isa) {
    const int m = model.variables;
    const int k = model.domain;
    const int32_t n = model.modulus;
    if (n < 1 || n >= (1 << 30)) throw std::invalid_argument("exponent modulus out of range");
    if (k < 1) throw std::invalid_argument("exponent domain must be nonempty");
    std::vector<int64_t> hist(n, 0);
    auto unary = [&](int r, int x) -> int32_t { return model.unary.empty() ? 0 : model.unary[r * k + x]; };

    // Tail block: last t variables with k^t <= kBlockCap (at least one when m > 0).
    int t = 0;
    int64_t block = 1;
    while (t < m && (t == 0 || block * k <= kBlockCap)) {
        block *= k;
        ++t;
    }
    const int prefix = m - t;

    std::vector<int> digits(t);
    std::vector<int32_t> tail(block);
    for (int64_t y = 0; y < block; ++y) {
        int64_t rest = y;
        for (int j = t - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(rest % k);
            rest /= k;
        }
        int64_t e = model.constant;
        for (int j = 0; j < t; ++j) e += unary(prefix + j, digits[j]);
        for (const auto& p : model.pairs)
            if (p.first >= prefix && p.second >= prefix)
                e += p.table[digits[p.first - prefix] * k + digits[p.second - prefix]];
        tail[y] = static_cast<int32_t>(e % n);
    }

    // contrib[r][x] = sum over pairs (r, s) with s in the tail of pair(x, y_s), as a row over y.
    std::vector<std::vector<int32_t>> contrib(static_cast<size_t>(prefix) * k);
    std::vector<char> has_contrib(prefix, 0);
    for (const auto& p : model.pairs) {
        const bool first_tail = p.first >= prefix, second_tail = p.second >= prefix;
        if (first_tail == second_tail) continue;
        const int r = first_tail ? p.second : p.first;
        const int s = first_tail ? p.first : p.second;
        has_contrib[r] = 1;
        for (int x = 0; x < k; ++x) {
            auto& row = contrib[static_cast<size_t>(r) * k + x];
            if (row.empty()) row.assign(block, 0);
            for (int64_t y = 0; y < block; ++y) {
                int64_t rest = y;
                for (int j = t - 1; j > s - prefix; --j) rest /= k;
                const int ys = static_cast<int>(rest % k);
                const int32_t v = first_tail ? p.table[ys * k + x] : p.table[x * k + ys];
                int32_t acc = row[y] + v;
                if (acc >= n) acc -= n;
                row[y] = acc;
            }
        }
    }

    std::vector<int> x(prefix, 0);
    std::vector<const int32_t*> rows;
    rows.reserve(prefix);
    std::vector<int32_t> out(block);
    while (true) {
        int64_t e = 0;
        for (int r = 0; r < prefix; ++r) e += unary(r, x[r]);
        for (const auto& p : model.pairs)
            if (p.first < prefix && p.second < prefix) e += p.table[x[p.first] * k + x[p.second]];
        rows.clear();
        for (int r = 0; r < prefix; ++r)
            if (has_contrib[r]) rows.push_back(contrib[static_cast<size_t>(r) * k + x[r]].data());
        kernels::accumulate_mod(isa, static_cast<int32_t>(e % n), tail.data(), rows, n, out.data(), out.size());
        kernels::histogram(out, hist);

        int r = prefix - 1;
        while (r >= 0 && ++x[r] == k) x[r--] = 0;
        if (r < 0) break;
    }
    return hist;
}

CycNum histogram_value(const std::vector<int64_t>& hist, int target_order) {
    const int n = static_cast<int>(hist.size());
    if (target_order % n != 0) throw OrderMismatch("histogram modulus does not divide target order");
    const int step = target_order / n;
    const auto& f = CyclotomicField::get(target_order);
    std::vector<Rational> c(f.degree);
    for (int e = 0; e < n; ++e) {
        if (hist[e] == 0) continue;
        const auto& row = f.zeta_power[static_cast<size_t>(e) * step];
        const Rational count(static_cast<long>(hist[e]));
        for (int j = 0; j < f.degree; ++j)
            if (row[j] != 0) c[j] += count * static_cast<long>(row[j]);
    }
    return CycNum::from_coeffs(target_order, std::move(c));
}

}  // namespace rtinv
