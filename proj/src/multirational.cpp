#include "ksmap/multirational.hpp"

#include "ksmap/errors.hpp"

namespace ksmap {

MultiRational::MultiRational(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw AlgebraError("zero denominator");
    if (num.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num * BigRational(1 / den.constant_value());
        den_ = MultiPoly(1);
        return;
    }
    const MultiPoly g = gcd(num, den);
    if (g.is_constant()) {
        num_ = num;
        den_ = den;
    } else {
        num_ = div_exact(num, g);
        den_ = div_exact(den, g);
    }
    normalize_scale();
}

void MultiRational::normalize_scale() {
    const BigRational factor = den_.make_integer_primitive();
    if (factor != 1) num_ *= factor;
}

BigRational MultiRational::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

MultiRational MultiRational::operator-() const { return {Raw{}, -num_, den_}; }

MultiRational operator+(const MultiRational& a, const MultiRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return {MultiRational::Raw{}, a.num_ + b.num_, a.den_};
        return {a.num_ + b.num_, a.den_};
    }
    if (a.den_.is_constant()) return {a.num_ * b.den_ + b.num_, b.den_};
    if (b.den_.is_constant()) return {a.num_ + b.num_ * a.den_, a.den_};
    const MultiPoly g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    const MultiPoly ad = div_exact(a.den_, g);
    const MultiPoly bd = div_exact(b.den_, g);
    return {a.num_ * bd + b.num_ * ad, ad * b.den_};
}

MultiRational operator-(const MultiRational& a, const MultiRational& b) { return a + (-b); }

MultiRational operator*(const MultiRational& a, const MultiRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) {
        return {MultiRational::Raw{}, a.num_ * b.num_, MultiPoly(1)};
    }
    // Cross-cancel so the product is reduced without a full gcd of the result.
    MultiPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant() && !an.is_constant()) {
        const MultiPoly g = gcd(an, bd);
        if (!g.is_constant()) {
            an = div_exact(an, g);
            bd = div_exact(bd, g);
        }
    }
    if (!ad.is_constant() && !bn.is_constant()) {
        const MultiPoly g = gcd(bn, ad);
        if (!g.is_constant()) {
            bn = div_exact(bn, g);
            ad = div_exact(ad, g);
        }
    }
    MultiRational r{MultiRational::Raw{}, an * bn, ad * bd};
    r.normalize_scale();
    return r;
}

MultiRational MultiRational::inverse() const {
    if (is_zero()) throw AlgebraError("division by zero rational function");
    MultiRational r{Raw{}, den_, num_};
    r.normalize_scale();
    return r;
}

MultiRational operator/(const MultiRational& a, const MultiRational& b) { return a * b.inverse(); }

MultiRational MultiRational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    MultiRational r{Raw{}, num_.pow(e), den_.pow(e)};
    r.normalize_scale();
    return r;
}

MultiRational MultiRational::derivative(int v) const {
    if (den_.is_constant()) return {Raw{}, num_.derivative(v), den_};
    // (n/d)' = (n' d - n d') / d^2 ; cancel one factor of gcd(d, d').
    const MultiPoly dd = den_.derivative(v);
    const MultiPoly top = num_.derivative(v) * den_ - num_ * dd;
    return {top, den_ * den_};
}

MultiRational MultiRational::substitute(int v, const BigRational& value) const {
    const MultiPoly d = den_.substitute(v, value);
    if (d.is_zero()) throw AlgebraError("denominator vanishes under substitution");
    return {num_.substitute(v, value), d};
}

BigRational MultiRational::evaluate(const std::array<BigRational, kNumVars>& point) const {
    const BigRational d = den_.evaluate(point);
    if (sgn(d) == 0) throw AlgebraError("denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
}

std::string MultiRational::to_string(const VarNames& names) const {
    // Print with integer coefficients: multiply both sides by the lcm of the
    // numerator coefficient denominators.
    MultiPoly n = num_;
    MultiPoly d = den_;
    BigInteger l = 1;
    for (const auto& t : n.terms()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    if (l != 1) {
        n *= BigRational(l);
        d *= BigRational(l);
    }
    if (d == MultiPoly(1)) return n.to_string(names);
    // A bare power of one variable needs no parentheses: "1/t^2".
    const auto single_var_power = [](const MultiPoly& p) {
        if (p.size() != 1 || p.leading_coefficient() != 1) return false;
        int vars = 0;
        for (int v = 0; v < kNumVars; ++v) vars += p.leading_term().mono.exponent(v) != 0;
        return vars == 1;
    };
    const bool simple_num = n.size() == 1 && (n.is_constant() || sgn(n.leading_coefficient()) > 0);
    std::string s = simple_num || n.is_constant() ? n.to_string(names)
                                                  : "(" + n.to_string(names) + ")";
    s += '/';
    s += single_var_power(d) || d.is_constant() ? d.to_string(names) : "(" + d.to_string(names) + ")";
    return s;
}

}  // namespace ksmap
