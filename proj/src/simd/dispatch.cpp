#include <cstdlib>
#include <cstring>

#include "ksmap/simd.hpp"

namespace ksmap::simd {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    static const Backend b = [] {
        const char* env = std::getenv("KSMAP_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        return avx2_available() ? Backend::Avx2 : Backend::Scalar;
    }();
    return b;
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out) {
    if (active_backend() == Backend::Avx2) return avx2::horner_many(table, ncoef, npoly, z, out);
    scalar::horner_many(table, ncoef, npoly, z, out);
}

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    if (active_backend() == Backend::Avx2) return avx2::caxpy(a, x, y, n);
    scalar::caxpy(a, x, y, n);
}

void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C) {
    if (active_backend() == Backend::Avx2) return avx2::cgemm_small(n, A, B, C);
    scalar::cgemm_small(n, A, B, C);
}

}  // namespace ksmap::simd
