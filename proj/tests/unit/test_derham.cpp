#include <random>

#include "doctest.h"
#include "ksmap/derham.hpp"
#include "ksmap/errors.hpp"
#include "oracles.hpp"

using namespace ksmap;
using ksmap::oracle::ansatz_connection;

namespace {
const MultiPoly X = MultiPoly::variable(kVarX);
const MultiPoly T = MultiPoly::variable(kVarT1);
const MultiPoly S = MultiPoly::variable(kVarT2);

MultiRational R(const MultiPoly& n, const MultiPoly& d = MultiPoly(1)) { return {n, d}; }
MultiRational Q(long n, long d = 1) { return BigRational(n, d); }

HyperellipticPencil legendre() { return validate_pencil(X * (X - 1) * (X - T)); }
HyperellipticPencil isotrivial() { return validate_pencil(X.pow(3) - T); }
HyperellipticPencil constant_pencil() { return validate_pencil(X.pow(3) - 1, 1); }
HyperellipticPencil genus2() { return validate_pencil(X * (X - 1) * (X - 2) * (X - 3) * (X - T)); }
HyperellipticPencil genus2_two() { return validate_pencil(X * (X - 1) * (X - 2) * (X - T) * (X - S)); }
}  // namespace

TEST_SUITE("derham") {

TEST_CASE("validate_pencil") {
    const auto l = legendre();
    CHECK(l.genus == 1);
    REQUIRE(l.singular_factors.size() == 2);
    CHECK(l.singular_factors[0] == T);
    CHECK(l.singular_factors[1] == T - 1);

    const auto c = constant_pencil();
    CHECK(c.genus == 1);
    CHECK(c.singular_factors.empty());

    const auto g2 = genus2();
    CHECK(g2.genus == 2);
    CHECK(g2.singular_factors.size() == 4);
    for (int r = 0; r <= 3; ++r) CHECK(g2.discriminant.substitute(kVarT1, r).is_zero());

    CHECK_THROWS_WITH_AS(validate_pencil(X.pow(4) - T), "unsupported model (use odd-degree form)",
                         InputError);
    CHECK_THROWS_WITH_AS(validate_pencil(X.pow(6) + T), "unsupported model (use odd-degree form)",
                         InputError);
    CHECK_THROWS_WITH_AS(validate_pencil((X - T) * (X - T) * (X - 1)), "pencil everywhere singular",
                         InputError);
    CHECK_THROWS_AS(validate_pencil(2 * X.pow(3) - T), InputError);
}

TEST_CASE("reduce_form examples") {
    const auto p = isotrivial();
    // f_x dx/y^3 is exact.
    const auto z = reduce_form(p, p.fx, 3);
    for (const auto& c : z) CHECK(c.is_zero());
    // (1/2) dx/y^3 -> -1/(6t) e1 and (1/2) x dx/y^3 -> 1/(6t) e2.
    const auto a = reduce_form(p, UPoly(Q(1, 2)), 3);
    CHECK(a[0] == R(MultiPoly(-1), 6 * T));
    CHECK(a[1].is_zero());
    const auto b = reduce_form(p, UPoly::x_power(1, Q(1, 2)), 3);
    CHECK(b[0].is_zero());
    CHECK(b[1] == R(MultiPoly(1), 6 * T));
    CHECK_THROWS_AS(reduce_form(p, p.fx, 2), InputError);
    CHECK_THROWS_AS(reduce_form(p, p.fx, -1), InputError);
}

TEST_CASE("reduce_form is the identity on the basis") {
    for (const auto& p : {legendre(), genus2()}) {
        for (int j = 0; j < p.dim(); ++j) {
            const auto v = reduce_form(p, UPoly::x_power(j), 1);
            for (int k = 0; k < p.dim(); ++k) CHECK(v[k] == MultiRational(k == j ? 1 : 0));
        }
    }
}

TEST_CASE("exact forms reduce to zero") {
    for (const auto& p : {isotrivial(), legendre(), genus2(), genus2_two()}) {
        for (int m = 1; m <= 2 * p.genus + 2; ++m) {
            // d(x^m / y) = (m x^(m-1) f - x^m f_x / 2) dx / y^3
            const UPoly P = UPoly::x_power(m - 1, Q(m)) * p.fu - UPoly::x_power(m, Q(1, 2)) * p.fx;
            for (const auto& c : reduce_form(p, P, 3)) CHECK(c.is_zero());
        }
        // d(x^m y) at pole order 1.
        for (int m = 0; m <= 2; ++m) {
            UPoly P = UPoly::x_power(m, Q(1, 2)) * p.fx;
            if (m > 0) P = P + UPoly::x_power(m - 1, Q(m)) * p.fu;
            for (const auto& c : reduce_form(p, P, 1)) CHECK(c.is_zero());
        }
    }
}

TEST_CASE("Gauss-Manin matrices") {
    const auto c = gauss_manin_matrix(constant_pencil(), 0);
    CHECK(c.m.is_zero());
    CHECK(kodaira_spencer_block(c).is_zero());

    const auto iso = gauss_manin_matrix(isotrivial(), 0);
    CHECK(iso.m == RatMatrix::from_rows({{R(MultiPoly(-1), 6 * T), Q(0)}, {Q(0), R(MultiPoly(1), 6 * T)}}));
    CHECK(kodaira_spencer_block(iso).is_zero());

    // Frozen from an independent sympy reduction (ansatz d(Q/y)).
    const auto p = legendre();
    const auto leg = gauss_manin_matrix(p, 0);
    const RatMatrix golden = RatMatrix::from_rows({
        {R(MultiPoly(-1), 2 * (T - 1)), R(MultiPoly(-1), 2 * (T - 1))},
        {R(MultiPoly(1), 2 * T * (T - 1)), R(MultiPoly(1), 2 * (T - 1))},
    });
    CHECK(leg.m == golden);
    CHECK(leg.m == ansatz_connection(p, 0));
    CHECK_FALSE(kodaira_spencer_block(leg).is_zero());
    CHECK(connection_regular(p, leg.m));
}

TEST_CASE("genus-2 connection agrees with the ansatz route and the frozen oracle") {
    const auto p = genus2();
    const auto cm = gauss_manin_matrix(p, 0);
    CHECK(cm.m == ansatz_connection(p, 0));
    const MultiPoly D = (T - 1) * (T - 2) * (T - 3);
    CHECK(cm.m(0, 0) == R(-(T * T - 6 * T + 11), 2 * D));
    CHECK(cm.m(0, 3) == R(-3 * T * T, D));
    CHECK(cm.m(1, 2) == R(11 * T - 3, D));
    CHECK(cm.m(2, 0) == R(-(T + 12), 2 * T * D));
    CHECK(cm.m(2, 3) == R(-(18 * T * T - 11 * T + 6), 2 * D));
    CHECK(cm.m(3, 0) == R(MultiPoly(3), 2 * T * D));
    CHECK(cm.m(3, 3) == R(3 * T * T, 2 * D));
    CHECK(connection_regular(p, cm.m));
}

TEST_CASE("Legendre Picard-Fuchs equation") {
    const auto pf = picard_fuchs(gauss_manin_matrix(legendre(), 0), 0);
    REQUIRE(pf.size() == 3);
    // t(1-t) u'' + (1-2t) u' - u/4 = 0 up to a common factor.
    const MultiRational k = pf[2] / R(T * (1 - T));
    CHECK(pf[1] == k * R(1 - 2 * T));
    CHECK(pf[0] == k * Q(-1, 4));
}

TEST_CASE("Leibniz consistency") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (const auto& p : {legendre(), genus2()}) {
        const auto cm = gauss_manin_matrix(p, 0);
        for (int trial = 0; trial < 3; ++trial) {
            MultiPoly c = MultiPoly(coef(rng) | 1);
            for (int e = 1; e <= 3; ++e) c += coef(rng) * T.pow(e);
            const MultiRational cr(c);
            const MultiRational dc = cr.derivative(kVarT1);
            for (int j = 0; j < p.dim(); ++j) {
                const UPoly direct = UPoly::x_power(j, dc) * p.fu +
                                     UPoly::x_power(j, cr * Q(-1, 2)) * p.f_param(0);
                const auto lhs = reduce_form(p, direct, 3);
                for (int k = 0; k < p.dim(); ++k) {
                    const MultiRational rhs = (k == j ? dc : MultiRational()) + cr * cm.m(k, j);
                    CHECK(lhs[k] == rhs);
                }
            }
        }
    }
}

TEST_CASE("two-parameter flatness and regularity") {
    const auto p = genus2_two();
    const auto m1 = gauss_manin_matrix(p, 0);
    const auto m2 = gauss_manin_matrix(p, 1);
    CHECK(curvature(m1, m2).is_zero());
    CHECK(connection_regular(p, m1.m));
    CHECK(connection_regular(p, m2.m));
    CHECK(m1.m == ansatz_connection(p, 0));
}

}  // TEST_SUITE
