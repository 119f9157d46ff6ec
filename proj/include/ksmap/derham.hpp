#pragma once

#include <vector>

#include "ksmap/ratmatrix.hpp"
#include "ksmap/upoly.hpp"

namespace ksmap {

/// y^2 = f(x, t) with f monic of odd degree 2g+1 in x.
struct HyperellipticPencil {
    MultiPoly f;
    UPoly fu;   // f as a polynomial in x
    UPoly fx;   // df/dx
    int genus = 0;
    int num_params = 0;
    MultiPoly discriminant;                  // res_x(f, f_x), integer primitive
    std::vector<MultiPoly> singular_factors; // squarefree factors of the discriminant
    BezoutCofactors bezout;                  // u*f + v*f_x = 1
    // Same cofactors over a common denominator: u = bez_u / bez_den, v = bez_v / bez_den.
    MultiPoly bez_u, bez_v, bez_den;

    int dim() const { return 2 * genus; }
    /// df/dt_i as a polynomial in x.
    UPoly f_param(int i) const;
};

/// num_params < 0 means: infer from the parameters occurring in f.
HyperellipticPencil validate_pencil(const MultiPoly& f, int num_params = -1);

/// Coordinates of P dx / y^pole_order in the basis e_j = x^(j-1) dx/y, j = 1..2g.
RatVector reduce_form(const HyperellipticPencil& pencil, const UPoly& P, int pole_order);

/// Gauss-Manin matrix for d/dt_i: nabla e_j = sum_k M[k][j] e_k, so that the
/// period matrix satisfies dY = Y M.
struct ConnectionMatrix {
    int parameter_index = 0;
    int genus = 0;
    RatMatrix m;

    RatMatrix R() const { return m.block(0, 0, genus, genus); }
    RatMatrix S() const { return m.block(0, genus, genus, genus); }
    RatMatrix T() const { return m.block(genus, 0, genus, genus); }
    RatMatrix U() const { return m.block(genus, genus, genus, genus); }
};

ConnectionMatrix gauss_manin_matrix(const HyperellipticPencil& pencil, int i);

/// Lower-left g x g block of M.
RatMatrix kodaira_spencer_block(const ConnectionMatrix& cm);

/// True when every irreducible factor of every denominator divides the
/// discriminant or a parameter variable.
bool connection_regular(const HyperellipticPencil& pencil, const RatMatrix& m);

/// Curvature d1 M2 - d2 M1 + [M1, M2] for a two-parameter pencil.
RatMatrix curvature(const ConnectionMatrix& m1, const ConnectionMatrix& m2);

/// Scalar differential equation sum_k c_k u^(k) = 0 satisfied by every period
/// of e_j (one-parameter case). Coefficients are polynomials in t with the
/// leading one having positive leading coefficient; index = derivative order.
std::vector<MultiRational> picard_fuchs(const ConnectionMatrix& cm, int j);

}  // namespace ksmap
