#include "doctest.h"
#include "ksmap/errors.hpp"
#include "ksmap/pairing.hpp"
#include "ksmap/ranks.hpp"

using namespace ksmap;

namespace {
const MultiPoly X = MultiPoly::variable(kVarX);
const MultiPoly T = MultiPoly::variable(kVarT1);
const MultiPoly S = MultiPoly::variable(kVarT2);

std::vector<ConnectionMatrix> connections(const HyperellipticPencil& p) {
    std::vector<ConnectionMatrix> out;
    for (int i = 0; i < std::max(1, p.num_params); ++i) out.push_back(gauss_manin_matrix(p, i));
    return out;
}

HyperellipticPencil legendre() { return validate_pencil(X * (X - 1) * (X - T)); }
HyperellipticPencil isotrivial() { return validate_pencil(X.pow(3) - T); }
HyperellipticPencil constant_pencil() { return validate_pencil(X.pow(3) - 1, 1); }
HyperellipticPencil constant_genus2() { return validate_pencil(X.pow(5) - 1, 1); }
HyperellipticPencil genus2() { return validate_pencil(X * (X - 1) * (X - 2) * (X - 3) * (X - T)); }
HyperellipticPencil genus2_two() { return validate_pencil(X * (X - 1) * (X - 2) * (X - T) * (X - S)); }

void check_chain(const RankReport& r) {
    CHECK(0 <= r.r_doubleprime);
    CHECK(r.r_doubleprime <= r.r_prime);
    CHECK(r.r_prime <= r.r);
    CHECK(r.r <= r.g);
}
}  // namespace

TEST_SUITE("ranks") {

TEST_CASE("constant and isotrivial pencils") {
    const auto c = constant_pencil();
    const auto rc = rank_report(c, connections(c));
    CHECK(rc.r == 0);
    CHECK(rc.r_prime == 0);
    CHECK(rc.r_doubleprime == 0);
    CHECK(rc.stabilization_steps == 0);
    CHECK(rc.d_span_dimension == 1);
    CHECK(rc.isotrivial);

    const auto iso = isotrivial();
    const auto ri = rank_report(iso, connections(iso));
    CHECK(ri.r == 0);
    CHECK(ri.r_prime == 0);
    CHECK(ri.r_doubleprime == 0);
    CHECK(ri.isotrivial);
}

TEST_CASE("Legendre ranks") {
    const auto p = legendre();
    const auto r = rank_report(p, connections(p));
    CHECK(r.r == 1);
    CHECK(r.r_prime == 1);
    CHECK(r.r_doubleprime == 1);
    CHECK(r.d_span_dimension == 2);
    CHECK(r.stabilization_steps == 1);
    CHECK_FALSE(r.isotrivial);
    check_chain(r);
}

TEST_CASE("genus-2 ranks") {
    const auto p = genus2();
    const auto r = rank_report(p, connections(p));
    check_chain(r);
    CHECK(r.r_prime == 1);
    CHECK(r.r_doubleprime == 1);
    CHECK(r.r == 2);

    const auto p2 = genus2_two();
    const auto r2 = rank_report(p2, connections(p2));
    check_chain(r2);
    CHECK(r2.r_prime == 2);
    CHECK(r2.r_doubleprime == 2);
    CHECK(r2.r == 2);
    CHECK(r2.d_span_dimension == 4);
}

TEST_CASE("rank of a lambda combination never exceeds the concatenation") {
    const auto p = genus2_two();
    const auto cms = connections(p);
    std::vector<RatMatrix> blocks;
    for (const auto& cm : cms) blocks.push_back(kodaira_spencer_block(cm));
    CHECK(rank_rdoubleprime(blocks) <= rank_rprime(blocks));
    CHECK(rank_rprime({}) == 0);
    CHECK(rank_rdoubleprime({}) == 0);
}

TEST_CASE("quadratic-form rank") {
    using M = RatMatrix;
    CHECK(quadratic_form_rank(M::from_rows({{0, 1}, {1, 0}})) == 2);
    CHECK(quadratic_form_rank(M::from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK(quadratic_form_rank(M::from_rows({{0, 0}, {0, 0}})) == 0);
    CHECK(quadratic_form_rank(M::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})) == 3);
    CHECK_THROWS_AS(quadratic_form_rank(M::from_rows({{0, 1}, {2, 0}})), AlgebraError);

    // In the symplectic basis, the Kodaira-Spencer block is symmetric and its
    // matrix rank agrees with its rank as a quadratic form.
    for (const auto& p : {legendre(), genus2()}) {
        const auto cm = gauss_manin_matrix(p, 0);
        const RatMatrix G = symplectify(cup_matrix(p).J);
        const int g = p.genus;
        const RatMatrix Tp = change_basis(cm.m, G, 0).block(g, 0, g, g);
        REQUIRE(Tp.is_symmetric());
        CHECK(quadratic_form_rank(Tp) == rank(Tp));
        CHECK(rank(Tp) == rank(kodaira_spencer_block(cm)));
    }
}

TEST_CASE("scalar endomorphisms") {
    for (const auto& p : {legendre(), genus2()}) {
        const auto cms = connections(p);
        for (int sign : {1, -1}) {
            const RatMatrix e = MultiRational(sign) * RatMatrix::identity(p.dim());
            const auto d = endo_decompose(p, e, cms);
            REQUIRE(d.factors.size() == 1);
            CHECK(d.factors[0].q == X - sign);
            CHECK(d.factors[0].r_lambda == p.genus);
            CHECK(d.factors[0].s_lambda == p.genus);
            CHECK(d.factors[0].ks_rank == rank(kodaira_spencer_block(cms[0])));
            CHECK(restricted_pem_check(d));
        }
    }
}

TEST_CASE("non-horizontal and non-semisimple candidates are rejected") {
    const auto p = legendre();
    const RatMatrix rot = RatMatrix::from_rows({{0, -1}, {1, 0}});
    CHECK_THROWS_WITH_AS(endo_decompose(p, rot, connections(p)), "not an endomorphism of (ℋ,∇)", InputError);

    const auto c = constant_pencil();
    const RatMatrix jordan = RatMatrix::from_rows({{1, 1}, {0, 1}});
    CHECK_THROWS_WITH_AS(endo_decompose(c, jordan, connections(c)), "non-semisimple endomorphism unsupported",
                         InputError);
    CHECK_THROWS_AS(endo_decompose(c, RatMatrix::identity(3), connections(c)), InputError);
}

TEST_CASE("split decomposition bookkeeping") {
    // On a constant pencil every constant Omega-preserving matrix is horizontal.
    const auto c = constant_genus2();
    const RatMatrix e = RatMatrix::from_rows({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
    const auto d = endo_decompose(c, e, connections(c));
    REQUIRE(d.factors.size() == 2);
    for (const auto& f : d.factors) {
        CHECK(f.component_dim == 2);
        CHECK(f.r_lambda == 1);
        CHECK(f.s_lambda == 1);
        CHECK(f.ks_rank == 0);
    }
    CHECK(restricted_pem_check(d));

    const RatMatrix e2 = RatMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
    const auto d2 = endo_decompose(c, e2, connections(c));
    REQUIRE(d2.factors.size() == 2);
    CHECK_FALSE(restricted_pem_check(d2));

    EndoDecomposition empty;
    CHECK_THROWS_AS(restricted_pem_check(empty), InputError);
}

}  // TEST_SUITE
