#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ksmap {

using BigRational = mpq_class;
using BigInteger = mpz_class;

/// Fixed variable universe. Slot 0 is the curve coordinate x, slots 1-2 the
/// pencil parameters, slots 3-4 the auxiliary multipliers used for generic
/// linear combinations of derivations.
inline constexpr int kNumVars = 5;
inline constexpr int kVarX = 0;
inline constexpr int kVarT1 = 1;
inline constexpr int kVarT2 = 2;
inline constexpr int kVarL1 = 3;
inline constexpr int kVarL2 = 4;
inline constexpr int kMaxParams = 2;

inline constexpr int param_var(int i) { return kVarT1 + i; }
inline constexpr int lambda_var(int i) { return kVarL1 + i; }

using VarNames = std::array<std::string, kNumVars>;
const VarNames& default_var_names();

/// Dense exponent vector packed into one word: 12 bits per variable, x in the
/// most significant field, so integer order is lex order x > t1 > t2 > l1 > l2.
/// Bit 11 of each field is a guard bit; exponents are limited to 2047.
class Monomial {
public:
    static constexpr int kBits = 12;
    static constexpr std::uint64_t kFieldMask = (std::uint64_t{1} << kBits) - 1;
    static constexpr int kMaxExponent = (1 << (kBits - 1)) - 1;

    constexpr Monomial() = default;
    static Monomial var(int v, int exponent = 1);
    static Monomial from_exponents(std::span<const int> exps);

    static constexpr int shift(int v) { return kBits * (kNumVars - 1 - v); }

    int exponent(int v) const {
        return static_cast<int>((bits_ >> shift(v)) & kFieldMask);
    }
    int total_degree() const;
    bool is_one() const { return bits_ == 0; }
    bool divides(Monomial other) const;
    Monomial with_exponent(int v, int e) const;
    std::uint64_t bits() const { return bits_; }

    Monomial operator*(Monomial other) const;
    /// Requires divides(other is a multiple of *this).
    Monomial operator/(Monomial divisor) const;

    auto operator<=>(const Monomial&) const = default;

private:
    explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
    std::uint64_t bits_ = 0;
};

/// Multivariate polynomial over Q in the fixed variable universe.
/// Terms are kept sorted by decreasing monomial (lex) with no zero coefficients.
class MultiPoly {
public:
    struct Term {
        Monomial mono;
        BigRational coef;
    };

    MultiPoly() = default;
    MultiPoly(const BigRational& c);  // NOLINT(google-explicit-constructor)
    MultiPoly(long c) : MultiPoly(BigRational(c)) {}  // NOLINT
    MultiPoly(int c) : MultiPoly(BigRational(c)) {}   // NOLINT

    static MultiPoly variable(int v);
    static MultiPoly monomial(Monomial m, const BigRational& c);
    /// Sorts and merges; zero coefficients are dropped.
    static MultiPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    BigRational constant_value() const;  // coefficient of the unit monomial

    int degree(int v) const;
    int min_degree(int v) const;
    int total_degree() const;
    bool depends_on(int v) const;
    unsigned var_mask() const;

    /// Leading term in lex order. Requires !is_zero().
    const Term& leading_term() const { return terms_.front(); }
    const BigRational& leading_coefficient() const { return terms_.front().coef; }

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const BigRational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigRational& c) { return a *= c; }
    friend MultiPoly operator*(const BigRational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(MultiPoly a, int c) { return a *= BigRational(c); }
    friend MultiPoly operator*(int c, MultiPoly a) { return a *= BigRational(c); }
    MultiPoly mul_monomial(Monomial m, const BigRational& c) const;
    MultiPoly pow(int e) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly derivative(int v) const;

    /// Coefficients with respect to v, index = power of v.
    std::vector<MultiPoly> coefficients_in(int v) const;
    static MultiPoly from_coefficients(int v, const std::vector<MultiPoly>& coeffs);

    MultiPoly substitute(int v, const BigRational& value) const;
    BigRational evaluate(const std::array<BigRational, kNumVars>& point) const;

    /// Scales by a positive or negative rational so that all coefficients are
    /// integers with gcd 1 and the leading coefficient is positive.
    /// Returns the applied factor.
    BigRational make_integer_primitive();
    MultiPoly monic() const;

    std::string to_string(const VarNames& names = default_var_names()) const;

private:
    std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Exact quotient; throws AlgebraError when the division is not exact.
MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b);

/// Greatest common divisor over Q, normalized monic in lex order.
/// gcd(0, 0) throws AlgebraError("gcd undefined").
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of `a` seen as a polynomial in v.
MultiPoly content_in(const MultiPoly& a, int v);

}  // namespace ksmap
