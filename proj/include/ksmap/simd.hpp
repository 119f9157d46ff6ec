#pragma once

#include <complex>
#include <cstddef>

namespace ksmap::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Backend picked at first use: AVX2+FMA when the CPU has it, unless
/// KSMAP_SIMD=scalar is set in the environment.
Backend active_backend();
const char* backend_name(Backend b);
bool avx2_available();

/// Evaluates npoly real polynomials at one complex point.
/// table[k * npoly + p] is the coefficient of z^k in polynomial p, k < ncoef.
void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out);

/// y += a x
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);

/// C = A B for row-major n x n complex matrices. C must not alias A or B.
void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C);

namespace scalar {
void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out);
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C);
}  // namespace scalar

namespace avx2 {
void horner_many(const double* table, int ncoef, int npoly, cplx z, cplx* out);
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cgemm_small(int n, const cplx* A, const cplx* B, cplx* C);
}  // namespace avx2

}  // namespace ksmap::simd
