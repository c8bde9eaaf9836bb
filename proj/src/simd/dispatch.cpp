#include "vomech/simd/spectral_kernel.hpp"

#include <cstdlib>
#include <string_view>

namespace vomech::simd {

bool avx2_available() {
#if defined(VOMECH_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Backend active_backend() {
    static const Backend chosen = [] {
        if (const char* env = std::getenv("VOMECH_SIMD"); env && std::string_view(env) == "scalar")
            return Backend::scalar;
        return avx2_available() ? Backend::avx2 : Backend::scalar;
    }();
    return chosen;
}

KernelFn kernel_for(Backend b) {
#if defined(VOMECH_HAVE_AVX2_KERNEL)
    if (b == Backend::avx2 && avx2_available()) return &spectral_integrand_avx2;
#endif
    (void)b;
    return &spectral_integrand_scalar;
}

std::string_view to_string(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

} // namespace vomech::simd
