#include <immintrin.h>

#include "ksmap/simd.hpp"

namespace ksmap::simd::avx2 {

void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    int p = 0;
    // Four polynomials per pass, real and imaginary parts in separate lanes.
    for (; p + 4 <= npoly; p += 4) {
        __m256d re = _mm256_setzero_pd();
        __m256d im = _mm256_setzero_pd();
        for (int k = ncoef - 1; k >= 0; --k) {
            const __m256d c = _mm256_loadu_pd(table + static_cast<std::size_t>(k) * npoly + p);
            const __m256d nr = _mm256_fmsub_pd(re, zr, _mm256_fmsub_pd(im, zi, c));
            im = _mm256_fmadd_pd(re, zi, _mm256_mul_pd(im, zr));
            re = nr;
        }
        alignas(32) double r[4], i[4];
        _mm256_store_pd(r, re);
        _mm256_store_pd(i, im);
        for (int q = 0; q < 4; ++q) out[p + q] = {r[q], i[q]};
    }
    for (; p < npoly; ++p) {
        double re = 0.0, im = 0.0;
        for (int k = ncoef - 1; k >= 0; --k) {
            const double nr = re * z.real() - im * z.imag() + table[k * npoly + p];
            im = re * z.imag() + im * z.real();
            re = nr;
        }
        out[p] = {re, im};
    }
}

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101);
        // [xr ar - xi ai, xi ar + xr ai]
        const __m256d prod = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + a.real() * xr - a.imag() * xi, y[i].imag() + a.real() * xi + a.imag() * xr};
    }
}

void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C) {
    for (int i = 0; i < n * n; ++i) C[i] = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) caxpy(A[i * n + k], B + k * n, C + i * n, static_cast<std::size_t>(n));
}

}  // namespace ksmap::simd::avx2
