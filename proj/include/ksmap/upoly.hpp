#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ksmap/multirational.hpp"

namespace ksmap {

/// Polynomial in x with coefficients in Q(t1, t2, l1, l2).
/// coeffs()[k] is the coefficient of x^k; no trailing zeros are stored.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<MultiRational> coeffs);
    UPoly(const MultiRational& c);  // NOLINT(google-explicit-constructor)

    static UPoly x_power(int k, const MultiRational& c = MultiRational(1));
    /// Splits a MultiPoly in x and the parameters by powers of x.
    static UPoly from_multipoly(const MultiPoly& p);
    MultiPoly to_multipoly() const;  // requires polynomial coefficients

    const std::vector<MultiRational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const MultiRational& lead() const { return c_.back(); }
    MultiRational coeff(int k) const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const MultiRational& c);
    friend UPoly operator*(const MultiRational& c, const UPoly& a) { return a * c; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    UPoly derivative_x() const;
    /// Entrywise derivative of the coefficients with respect to variable v.
    UPoly derivative_coeffs(int v) const;
    UPoly monic() const;

    std::string to_string(const VarNames& names = default_var_names()) const;

private:
    void trim();
    std::vector<MultiRational> c_;
};

/// Euclidean division over the coefficient field. Throws on b == 0.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

/// Monic gcd in x over the coefficient field, via the multivariate gcd of the
/// x-primitive numerators. Throws AlgebraError("gcd undefined") when both are zero.
UPoly poly_gcd(const UPoly& a, const UPoly& b);

struct BezoutCofactors {
    UPoly u;
    UPoly v;
};

/// u*a + v*b = 1 with deg u < deg b and deg v < deg a.
/// Throws AlgebraError("not coprime") when gcd(a, b) != 1.
BezoutCofactors bezout_cofactors(const UPoly& a, const UPoly& b);

/// Resultant res_x(a, b) via the Sylvester determinant.
MultiRational resultant(const UPoly& a, const UPoly& b);

}  // namespace ksmap
