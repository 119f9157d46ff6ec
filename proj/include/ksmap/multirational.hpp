#pragma once

#include <complex>
#include <string>

#include "ksmap/multipoly.hpp"

namespace ksmap {

/// Element of Q(t1, t2, l1, l2), kept canonical after every operation:
/// gcd(num, den) = 1 and den is an integer-primitive polynomial with positive
/// leading coefficient. Equal values therefore have identical representations.
class MultiRational {
public:
    MultiRational() : den_(1) {}
    MultiRational(const BigRational& c) : num_(c), den_(1) {}  // NOLINT
    MultiRational(long c) : MultiRational(BigRational(c)) {}   // NOLINT
    MultiRational(int c) : MultiRational(BigRational(c)) {}    // NOLINT
    MultiRational(const MultiPoly& p) : num_(p), den_(1) {}    // NOLINT
    MultiRational(const MultiPoly& num, const MultiPoly& den);

    static MultiRational variable(int v) { return MultiPoly::variable(v); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    BigRational constant_value() const;
    bool depends_on(int v) const { return num_.depends_on(v) || den_.depends_on(v); }

    MultiRational operator-() const;
    friend MultiRational operator+(const MultiRational& a, const MultiRational& b);
    friend MultiRational operator-(const MultiRational& a, const MultiRational& b);
    friend MultiRational operator*(const MultiRational& a, const MultiRational& b);
    friend MultiRational operator/(const MultiRational& a, const MultiRational& b);
    MultiRational& operator+=(const MultiRational& o) { return *this = *this + o; }
    MultiRational& operator-=(const MultiRational& o) { return *this = *this - o; }
    MultiRational& operator*=(const MultiRational& o) { return *this = *this * o; }
    MultiRational& operator/=(const MultiRational& o) { return *this = *this / o; }
    MultiRational inverse() const;
    MultiRational pow(int e) const;

    friend bool operator==(const MultiRational& a, const MultiRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    MultiRational derivative(int v) const;
    MultiRational substitute(int v, const BigRational& value) const;
    /// Throws AlgebraError when the denominator vanishes at the point.
    BigRational evaluate(const std::array<BigRational, kNumVars>& point) const;

    /// Canonical string "num" or "(num)/(den)" with integer coefficients.
    std::string to_string(const VarNames& names = default_var_names()) const;

private:
    struct Raw {};
    MultiRational(Raw, MultiPoly num, MultiPoly den)
        : num_(std::move(num)), den_(std::move(den)) {}
    void normalize_scale();

    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace ksmap
