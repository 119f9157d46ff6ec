#include <random>
#include <vector>

#include "doctest.h"
#include "ksmap/simd.hpp"

using namespace ksmap::simd;

namespace {

std::vector<cplx> random_complex(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    return d;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels against direct formulas") {
    // p0 = 1 + 2z, p1 = z^2 - 3
    const double table[] = {1.0, -3.0, 2.0, 0.0, 0.0, 1.0};
    cplx out[2];
    const cplx z(0.5, -1.5);
    scalar::horner_many(table, 3, 2, z, out);
    CHECK(std::abs(out[0] - (1.0 + 2.0 * z)) < 1e-15);
    CHECK(std::abs(out[1] - (z * z - 3.0)) < 1e-15);

    std::vector<cplx> x{{1, 2}, {3, -1}, {0, 1}}, y{{0, 0}, {1, 1}, {2, 0}};
    const cplx a(2, -1);
    auto expect = y;
    for (std::size_t i = 0; i < x.size(); ++i) expect[i] += a * x[i];
    scalar::caxpy(a, x.data(), y.data(), x.size());
    CHECK(max_diff(y, expect) < 1e-15);
}

TEST_CASE("avx2 kernels match scalar kernels") {
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int npoly : {1, 3, 4, 7, 16, 33}) {
        for (int ncoef : {1, 2, 9}) {
            std::vector<double> table(static_cast<std::size_t>(npoly * ncoef));
            for (auto& c : table) c = u(rng);
            const cplx z(u(rng) * 0.4, u(rng) * 0.4);
            std::vector<cplx> a(npoly), b(npoly);
            scalar::horner_many(table.data(), ncoef, npoly, z, a.data());
            avx2::horner_many(table.data(), ncoef, npoly, z, b.data());
            CHECK(max_diff(a, b) < 1e-13);
        }
    }
    for (std::size_t n : {0u, 1u, 2u, 5u, 64u}) {
        const auto x = random_complex(rng, n);
        auto y1 = random_complex(rng, n);
        auto y2 = y1;
        const cplx a(u(rng), u(rng));
        scalar::caxpy(a, x.data(), y1.data(), n);
        avx2::caxpy(a, x.data(), y2.data(), n);
        CHECK(max_diff(y1, y2) < 1e-14);
    }
    for (int n : {1, 2, 3, 4, 5}) {
        const auto A = random_complex(rng, static_cast<std::size_t>(n * n));
        const auto B = random_complex(rng, static_cast<std::size_t>(n * n));
        std::vector<cplx> c1(static_cast<std::size_t>(n * n)), c2(c1.size()), ref(c1.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) ref[i * n + j] += A[i * n + k] * B[k * n + j];
        scalar::cgemm_small(n, A.data(), B.data(), c1.data());
        avx2::cgemm_small(n, A.data(), B.data(), c2.data());
        CHECK(max_diff(c1, ref) < 1e-13);
        CHECK(max_diff(c2, ref) < 1e-13);
    }
}

TEST_CASE("dispatch selects a backend") {
    const Backend b = active_backend();
    CHECK((b == Backend::Scalar || avx2_available()));
    CHECK(std::string(backend_name(b)).size() > 0);
}

}  // TEST_SUITE
