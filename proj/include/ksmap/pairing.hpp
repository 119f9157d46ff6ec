#pragma once

#include <vector>

#include "ksmap/derham.hpp"

namespace ksmap {

/// Truncated Laurent series sum_{k >= v} c_k s^k + O(s^N) over Q(t).
/// The lowest stored coefficient is nonzero; the zero series has v = N.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(int valuation, std::vector<MultiRational> coeffs, int precision);
    static LaurentSeries zero(int precision);

    int valuation() const { return val_; }
    int precision() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    /// Coefficient of s^k. Throws InputError("increase truncation") when k >= precision.
    MultiRational coeff(int k) const;

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const MultiRational& c, const LaurentSeries& a);

    /// Formal antiderivative with zero constant term. Requires a zero s^-1 coefficient.
    LaurentSeries antiderivative() const;
    /// Coefficient of s^-1.
    MultiRational residue() const { return coeff(-1); }

private:
    void normalize();
    int val_ = 0;
    int prec_ = 0;
    std::vector<MultiRational> c_;
};

struct InfinityExpansion {
    LaurentSeries u;      // y = s^-(2g+1) u(s), u(0) = 1
    LaurentSeries form;   // e_j = form(s) ds
    LaurentSeries primitive;
};

/// Expansion of e_j (1-based j) at the point at infinity in the local
/// parameter s with x = s^-2; series in u are known to O(s^N).
InfinityExpansion expand_at_infinity(int j, const HyperellipticPencil& pencil, int N);

struct CupMatrix {
    RatMatrix J;
    int truncation = 0;  // truncation that succeeded
};

/// J[i][j] = res_{s=0}((int e_i) e_j). N <= 0 selects 8g+6; on insufficient
/// truncation N is doubled up to two times.
CupMatrix cup_matrix(const HyperellipticPencil& pencil, int N = 0);

/// Block upper-triangular G with G^T J G = [[0, I], [-I, 0]].
/// Throws AlgebraError("degenerate pairing") when J is singular.
RatMatrix symplectify(const RatMatrix& J);

/// Connection matrix in the basis e*G: G^-1 M G + G^-1 dG/dt_i.
RatMatrix change_basis(const RatMatrix& M, const RatMatrix& G, int param_index);

/// d_i J - (M_i^T J + J M_i).
RatMatrix horizontality_defect(const RatMatrix& J, const ConnectionMatrix& cm);

}  // namespace ksmap
