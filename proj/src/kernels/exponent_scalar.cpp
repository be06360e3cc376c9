#include "rtinv/kernels.hpp"

namespace rtinv::kernels::detail {

void accumulate_mod_scalar(int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                           int32_t modulus, int32_t* out, size_t len) {
    for (size_t i = 0; i < len; ++i) {
        int32_t acc = offset + base[i];
        if (acc >= modulus) acc -= modulus;
        for (const int32_t* row : addends) {
            acc += row[i];
            if (acc >= modulus) acc -= modulus;
        }
        out[i] = acc;
    }
}

}  // namespace rtinv::kernels::detail
