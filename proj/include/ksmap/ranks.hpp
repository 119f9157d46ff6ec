#pragma once

#include <vector>

#include "ksmap/derham.hpp"

namespace ksmap {

struct RankR {
    int r = 0;
    int d_span_dimension = 0;
    int steps = 0;  // iterations in which the span grew
};

struct RankReport {
    int g = 0;
    int r = 0;
    int r_prime = 0;
    int r_doubleprime = 0;
    bool isotrivial = false;
    int d_span_dimension = 0;
    int stabilization_steps = 0;
};

/// Dimension of the D-span of the first-kind subspace, minus g.
RankR rank_r(const HyperellipticPencil& pencil, const std::vector<ConnectionMatrix>& cms);

/// Rank of [T_1 | ... | T_d].
int rank_rprime(const std::vector<RatMatrix>& blocks);

/// Rank of l1 T_1 + ... + ld T_d over Q(t, l).
int rank_rdoubleprime(const std::vector<RatMatrix>& blocks);

RankReport rank_report(const HyperellipticPencil& pencil, const std::vector<ConnectionMatrix>& cms);

/// Rank of a symmetric matrix read as a quadratic form (congruence diagonalization).
int quadratic_form_rank(const RatMatrix& sym);

struct EndoFactor {
    MultiPoly q;        // irreducible monic factor of the minimal polynomial, in the variable slot x
    int multiplicity = 1;
    int component_dim = 0;   // dim ker q(e) / deg q
    int r_lambda = 0;
    int s_lambda = 0;
    int ks_rank = 0;
};

struct EndoDecomposition {
    RatMatrix e;
    MultiPoly minpoly;
    std::vector<EndoFactor> factors;
};

/// Decomposes the de Rham bundle by the minimal polynomial of a horizontal
/// endomorphism e (nabla-horizontal: d_i e = e M_i - M_i e, Omega-preserving).
EndoDecomposition endo_decompose(const HyperellipticPencil& pencil, const RatMatrix& e,
                                 const std::vector<ConnectionMatrix>& cms);

/// True iff r_lambda = s_lambda for every factor. Throws InputError on an empty list.
bool restricted_pem_check(const EndoDecomposition& d);

/// Evaluates a polynomial in the x slot at a square matrix.
RatMatrix evaluate_at_matrix(const MultiPoly& q, const RatMatrix& e);

}  // namespace ksmap
