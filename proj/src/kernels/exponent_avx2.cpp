// Compiled with -mavx2 for this translation unit only; reached through the
// runtime dispatcher after a CPUID check.

#include <immintrin.h>

#include "rtinv/kernels.hpp"

namespace rtinv::kernels::detail {

namespace {

// x in [0, 2N) -> x mod N. When x < N the unsigned difference wraps above x.
inline __m256i reduce_once(__m256i x, __m256i n) { return _mm256_min_epu32(x, _mm256_sub_epi32(x, n)); }

}  // namespace

void accumulate_mod_avx2(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                         int32_t modulus, int32_t* out, size_t len) {
    const __m256i n = _mm256_set1_epi32(modulus);
    const __m256i off = _mm256_set1_epi32(offset);
    size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + i));
        acc = reduce_once(_mm256_add_epi32(acc, off), n);
        for (const int32_t* row : addends) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
            acc = reduce_once(_mm256_add_epi32(acc, v), n);
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
    }
    if (i < len) {
        std::vector<const int32_t*> tail(addends.size());
        for (size_t k = 0; k < addends.size(); ++k) tail[k] = addends[k] + i;
        accumulate_mod_scalar(offset, base + i, tail, modulus, out + i, len - i);
    }
}

}  // namespace rtinv::kernels::detail
