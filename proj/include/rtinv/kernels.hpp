#pragma once

// Data-parallel kernels for root-of-unity exponent accumulation.
//
// Every brute-force sum over a finite abelian group whose summands are roots
// of unity z_N^{e(x)} reduces to counting how often each exponent e occurs.
// The hot loop adds rows of exponent tables modulo N. A scalar reference and
// SIMD variants (AVX2 on x86-64, NEON on AArch64) are compiled side by side;
// the variant is picked at runtime and all of them must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rtinv::kernels {

enum class Isa { scalar, avx2, neon };

/// Best variant supported by the running CPU. RTINV_FORCE_SCALAR=1 in the
/// environment pins the scalar path.
Isa detected_isa();
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);
std::vector<Isa> available_isas();

/// out[i] = (offset + base[i] + sum_k addends[k][i]) mod modulus.
/// Preconditions: 0 <= offset, base[i], addends[k][i] < modulus < 2^30.
void accumulate_mod(Isa isa, int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                    int32_t modulus, int32_t* out, size_t len);

inline void accumulate_mod(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                           int32_t modulus, int32_t* out, size_t len) {
    accumulate_mod(detected_isa(), offset, base, addends, modulus, out, len);
}

/// hist[values[i]] += 1; values must lie in [0, hist.size()).
void histogram(std::span<const int32_t> values, std::span<int64_t> hist);

namespace detail {
void accumulate_mod_scalar(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                           int32_t modulus, int32_t* out, size_t len);
#if defined(__x86_64__) || defined(_M_X64)
void accumulate_mod_avx2(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                         int32_t modulus, int32_t* out, size_t len);
#endif
#if defined(__aarch64__)
void accumulate_mod_neon(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                         int32_t modulus, int32_t* out, size_t len);
#endif
}  // namespace detail

}  // namespace rtinv::kernels
