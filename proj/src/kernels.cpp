#include "iwasawa/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace iwasawa::kernels {

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", &scalar::gemm, &scalar::sum_sq, &scalar::axpy};
    return table;
}

const KernelTable* avx2_table() {
#if defined(IWASAWA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    static const KernelTable table{"avx2", &avx2::gemm, &avx2::sum_sq, &avx2::axpy};
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = []() -> const KernelTable& {
        if (const char* env = std::getenv("IWASAWA_KERNELS"); env && std::string_view(env) == "scalar") {
            return scalar_table();
        }
        if (const KernelTable* t = avx2_table()) return *t;
        return scalar_table();
    }();
    return chosen;
}

}  // namespace iwasawa::kernels
