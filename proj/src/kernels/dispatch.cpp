#include <cstdlib>
#include <stdexcept>

#include "rtinv/kernels.hpp"

namespace rtinv::kernels {

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detected_isa() {
    static const Isa best = [] {
        if (const char* force = std::getenv("RTINV_FORCE_SCALAR"); force && *force == '1') return Isa::scalar;
        if (isa_available(Isa::avx2)) return Isa::avx2;
        if (isa_available(Isa::neon)) return Isa::neon;
        return Isa::scalar;
    }();
    return best;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (isa_available(isa)) out.push_back(isa);
    return out;
}

void accumulate_mod(Isa isa, int32_t offset, const int32_t* base, std::span<const int32_t* const> addends,
                    int32_t modulus, int32_t* out, size_t len) {
    if (!isa_available(isa)) throw std::invalid_argument("requested SIMD variant not available on this CPU");
    switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2:
            detail::accumulate_mod_avx2(offset, base, addends, modulus, out, len);
            return;
#endif
#if defined(__aarch64__)
        case Isa::neon:
            detail::accumulate_mod_neon(offset, base, addends, modulus, out, len);
            return;
#endif
        default:
            detail::accumulate_mod_scalar(offset, base, addends, modulus, out, len);
    }
}

void histogram(std::span<const int32_t> values, std::span<int64_t> hist) {
    for (int32_t v : values) ++hist[static_cast<size_t>(v)];
}

}  // namespace rtinv::kernels
