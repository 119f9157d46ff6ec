#include "doctest.h"
#include "ksmap/errors.hpp"
#include "ksmap/pairing.hpp"

using namespace ksmap;

namespace {
const MultiPoly X = MultiPoly::variable(kVarX);
const MultiPoly T = MultiPoly::variable(kVarT1);
const MultiPoly S = MultiPoly::variable(kVarT2);

std::vector<HyperellipticPencil> corpus() {
    return {
        validate_pencil(X.pow(3) - 1, 1),
        validate_pencil(X.pow(3) - T),
        validate_pencil(X * (X - 1) * (X - T)),
        validate_pencil(X * (X - 1) * (X - 2) * (X - 3) * (X - T)),
        validate_pencil(X * (X - 1) * (X - 2) * (X - T) * (X - S)),
    };
}

RatMatrix standard_form(int g) {
    RatMatrix J0(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        J0(i, g + i) = 1;
        J0(g + i, i) = -1;
    }
    return J0;
}
}  // namespace

TEST_SUITE("pairing") {

TEST_CASE("Laurent arithmetic tracks precision") {
    const LaurentSeries a(-2, {MultiRational(1), MultiRational(0), MultiRational(3)}, 4);
    const LaurentSeries b(1, {MultiRational(2)}, 3);
    const LaurentSeries p = a * b;
    CHECK(p.valuation() == -1);
    CHECK(p.precision() == std::min(-2 + 3, 1 + 4));
    CHECK(p.coeff(-1) == MultiRational(2));
    CHECK_THROWS_WITH_AS(p.coeff(1), "increase truncation", InputError);
    const LaurentSeries z(0, {MultiRational(0), MultiRational(0)}, 5);
    CHECK(z.is_zero());
    CHECK(z.valuation() == 5);
    CHECK_THROWS_AS(LaurentSeries(-1, {MultiRational(1)}, 3).antiderivative(), AlgebraError);
}

TEST_CASE("expansion at infinity") {
    const auto leg = validate_pencil(X * (X - 1) * (X - T));
    CHECK(expand_at_infinity(1, leg, 14).form.valuation() == 0);
    CHECK(expand_at_infinity(2, leg, 14).form.valuation() == -2);
    const auto g2 = validate_pencil(X * (X - 1) * (X - 2) * (X - 3) * (X - T));
    for (int j = 1; j <= 4; ++j) CHECK(expand_at_infinity(j, g2, 22).form.valuation() == 2 * (2 - j));

    // u = 1 - (t/2) s^6 + O(s^12) for f = x^3 - t.
    const auto iso = validate_pencil(X.pow(3) - T);
    const auto u = expand_at_infinity(1, iso, 12).u;
    CHECK(u.coeff(0) == MultiRational(1));
    CHECK(u.coeff(6) == MultiRational(T * BigRational(-1, 2)));
    for (int k : {1, 2, 3, 4, 5, 7, 8, 9, 10, 11}) CHECK(u.coeff(k).is_zero());
    CHECK_THROWS_WITH_AS(u.coeff(12), "increase truncation", InputError);
    // u^2 = h exactly to the known order.
    const auto u2 = u * u;
    CHECK(u2.coeff(6) == MultiRational(-T));
    for (int k = 7; k < 12; ++k) CHECK(u2.coeff(k).is_zero());
}

TEST_CASE("cup matrix identities") {
    for (const auto& p : corpus()) {
        const int g = p.genus;
        const CupMatrix cm = cup_matrix(p);
        const RatMatrix& J = cm.J;
        CHECK((J + J.transpose()).is_zero());
        CHECK(J.block(0, 0, g, g).is_zero());
        CHECK_FALSE(determinant(J).is_zero());
        for (int i = 0; i < p.num_params; ++i) {
            CHECK(horizontality_defect(J, gauss_manin_matrix(p, i)).is_zero());
        }
        // Truncation stability.
        CHECK(cup_matrix(p, 2 * cm.truncation).J == J);
    }
}

TEST_CASE("constant pencil pairing is constant") {
    const auto p = validate_pencil(X.pow(3) - 1, 1);
    CHECK(cup_matrix(p).J.derivative(kVarT1).is_zero());
}

TEST_CASE("g = 1 shape and symplectification") {
    const auto p = validate_pencil(X * (X - 1) * (X - T));
    const RatMatrix J = cup_matrix(p).J;
    const MultiRational c = J(0, 1);
    CHECK_FALSE(c.is_zero());
    CHECK(J(1, 0) == -c);
    const RatMatrix G = symplectify(J);
    CHECK(G == RatMatrix::from_rows({{MultiRational(1), MultiRational(0)}, {MultiRational(0), c.inverse()}}));
    CHECK(symplectify(standard_form(2)) == RatMatrix::identity(4));
}

TEST_CASE("symplectified Kodaira-Spencer blocks are symmetric") {
    for (const auto& p : corpus()) {
        const int g = p.genus;
        const RatMatrix J = cup_matrix(p).J;
        const RatMatrix G = symplectify(J);
        CHECK(G.transpose() * J * G == standard_form(g));
        CHECK(G.block(g, 0, g, g).is_zero());
        for (int i = 0; i < p.num_params; ++i) {
            const auto cm = gauss_manin_matrix(p, i);
            const RatMatrix Mp = change_basis(cm.m, G, i);
            const RatMatrix Tp = Mp.block(g, 0, g, g);
            CHECK(Tp.is_symmetric());
            CHECK(Tp == J.block(0, g, g, g) * cm.T());
        }
    }
}

TEST_CASE("insufficient truncation") {
    const auto g2 = validate_pencil(X * (X - 1) * (X - 2) * (X - 3) * (X - T));
    CHECK_THROWS_WITH_AS(cup_matrix(g2, 1), "increase truncation", InputError);
    const auto leg = validate_pencil(X * (X - 1) * (X - T));
    const CupMatrix c = cup_matrix(leg, 1);
    CHECK(c.truncation > 1);
    CHECK(c.J == cup_matrix(leg).J);
}

}  // TEST_SUITE
