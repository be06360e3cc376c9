#include "rtinv/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace rtinv::kernels::detail {

void accumulate_mod_neon(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                         int32_t modulus, int32_t* out, size_t len) {
    const uint32x4_t n = vdupq_n_u32(static_cast<uint32_t>(modulus));
    const uint32x4_t off = vdupq_n_u32(static_cast<uint32_t>(offset));
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        uint32x4_t acc = vaddq_u32(vld1q_u32(reinterpret_cast<const uint32_t*>(base + i)), off);
        acc = vminq_u32(acc, vsubq_u32(acc, n));
        for (const int32_t* row : addends) {
            acc = vaddq_u32(acc, vld1q_u32(reinterpret_cast<const uint32_t*>(row + i)));
            acc = vminq_u32(acc, vsubq_u32(acc, n));
        }
        vst1q_u32(reinterpret_cast<uint32_t*>(out + i), acc);
    }
    if (i < len) {
        std::vector<const int32_t*> tail(addends.size());
        for (size_t k = 0; k < addends.size(); ++k) tail[k] = addends[k] + i;
        accumulate_mod_scalar(offset, base + i, tail, modulus, out + i, len - i);
    }
}

}  // namespace rtinv::kernels::detail
#endif
