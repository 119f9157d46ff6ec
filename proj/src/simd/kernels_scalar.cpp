#include "ksmap/simd.hpp"

namespace ksmap::simd::scalar {

void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out) {
    for (int p = 0; p < npoly; ++p) {
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
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + a.real() * xr - a.imag() * xi, y[i].imag() + a.real() * xi + a.imag() * xr};
    }
}

void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C) {
    for (int i = 0; i < n * n; ++i) C[i] = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) caxpy(A[i * n + k], B + k * n, C + i * n, static_cast<std::size_t>(n));
}

}  // namespace ksmap::simd::scalar
