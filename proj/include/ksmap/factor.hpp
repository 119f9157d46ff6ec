#pragma once

#include <vector>

#include "ksmap/multipoly.hpp"

namespace ksmap {

/// Distinct rational roots of a polynomial univariate in v, ascending.
std::vector<BigRational> rational_roots(const MultiPoly& p, int v);

/// Pairwise coprime, squarefree, integer-primitive factors whose product has
/// the same zero set as p. Univariate factors are split further into linear
/// factors at their rational roots. Sorted by degree then printed form.
std::vector<MultiPoly> squarefree_factors(const MultiPoly& p);

/// Irreducible factors over Q of a squarefree polynomial univariate in v,
/// each monic. Rational roots first, then quadratic splitting of quartics.
/// Throws AlgebraError for an irreducibility question above degree 4.
std::vector<MultiPoly> factor_univariate(const MultiPoly& p, int v);

}  // namespace ksmap
