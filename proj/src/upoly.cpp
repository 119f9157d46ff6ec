#include "ksmap/upoly.hpp"

#include <utility>

#include "ksmap/errors.hpp"
#include "ksmap/ratmatrix.hpp"

namespace ksmap {

UPoly::UPoly(std::vector<MultiRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const MultiRational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::x_power(int k, const MultiRational& c) {
    if (k < 0) throw AlgebraError("negative power of x");
    std::vector<MultiRational> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return UPoly(std::move(v));
}

UPoly UPoly::from_multipoly(const MultiPoly& p) {
    std::vector<MultiRational> v;
    for (const auto& c : p.coefficients_in(kVarX)) v.emplace_back(c);
    return UPoly(std::move(v));
}

MultiPoly UPoly::to_multipoly() const {
    std::vector<MultiPoly> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) {
        if (!c.is_polynomial()) throw AlgebraError("coefficient is not a polynomial");
        cs.push_back(c.num() * BigRational(1 / c.den().constant_value()));
    }
    return MultiPoly::from_coefficients(kVarX, cs);
}

MultiRational UPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return {};
    return c_[k];
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<MultiRational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k < a.c_.size()) v[k] = a.c_[k];
        if (k < b.c_.size()) v[k] += b.c_[k];
    }
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<MultiRational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            v[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const MultiRational& c) {
    if (c.is_zero()) return {};
    std::vector<MultiRational> v;
    v.reserve(a.c_.size());
    for (const auto& x : a.c_) v.push_back(x * c);
    return UPoly(std::move(v));
}

UPoly UPoly::derivative_x() const {
    std::vector<MultiRational> v;
    for (std::size_t k = 1; k < c_.size(); ++k) {
        v.push_back(c_[k] * MultiRational(static_cast<long>(k)));
    }
    return UPoly(std::move(v));
}

UPoly UPoly::derivative_coeffs(int v) const {
    std::vector<MultiRational> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.derivative(v));
    return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
    if (is_zero()) return {};
    return *this * lead().inverse();
}

std::string UPoly::to_string(const VarNames& names) const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        const MultiRational& c = c_[k];
        if (c.is_zero()) continue;
        std::string cs = c.to_string(names);
        bool neg = false;
        if (c.is_constant() && sgn(c.constant_value()) < 0) {
            neg = true;
            cs = (-c).to_string(names);
        }
        const bool simple = c.is_constant() || (c.is_polynomial() && c.num().is_monomial() &&
                                                 sgn(c.num().leading_coefficient()) > 0);
        std::string term;
        std::string xs = k == 0 ? "" : (k == 1 ? names[kVarX] : names[kVarX] + "^" + std::to_string(k));
        if (k == 0) {
            term = cs;
        } else if (c.is_constant() && cs == "1") {
            term = xs;
        } else {
            term = (simple ? cs : "(" + cs + ")") + "*" + xs;
        }
        if (s.empty()) {
            s = neg ? "-" + term : term;
        } else {
            s += neg ? " - " : " + ";
            s += term;
        }
    }
    return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw AlgebraError("polynomial division by zero");
    std::vector<MultiRational> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {UPoly{}, a};
    std::vector<MultiRational> q(static_cast<std::size_t>(a.degree() - db) + 1);
    const MultiRational inv = b.lead().inverse();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k].is_zero()) continue;
        const MultiRational f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) {
            if (b.coeffs()[j].is_zero()) continue;
            r[k - db + j] -= f * b.coeffs()[j];
        }
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

namespace {

// Clears denominators and removes the content in x, giving a polynomial in
// Q[x, t] that is primitive with respect to x.
MultiPoly primitive_numerator(const UPoly& a) {
    MultiPoly l(1);
    for (const auto& c : a.coeffs()) {
        if (c.den().is_constant()) continue;
        l = l * div_exact(c.den(), gcd(l, c.den()));
    }
    std::vector<MultiPoly> cs;
    for (const auto& c : a.coeffs()) {
        cs.push_back(c.is_zero() ? MultiPoly{} : c.num() * div_exact(l, c.den()));
    }
    MultiPoly p = MultiPoly::from_coefficients(kVarX, cs);
    const MultiPoly content = content_in(p, kVarX);
    if (!content.is_constant()) p = div_exact(p, content);
    return p;
}

}  // namespace

UPoly poly_gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero() && b.is_zero()) throw AlgebraError("gcd undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return UPoly(MultiRational(1));
    const MultiPoly g = gcd(primitive_numerator(a), primitive_numerator(b));
    return UPoly::from_multipoly(g).monic();
}

namespace {

// Sylvester matrix of the map (u, v) -> u*a + v*b with deg u < deg b, deg v < deg a.
// Column k < n holds x^k a, column n + k holds x^k b; row r is the coefficient of x^r.
RatMatrix sylvester_columns(const UPoly& a, const UPoly& b) {
    const int m = a.degree();
    const int n = b.degree();
    RatMatrix s(m + n, m + n);
    for (int k = 0; k < n; ++k)
        for (int r = 0; r <= m; ++r) s(k + r, k) = a.coeffs()[r];
    for (int k = 0; k < m; ++k)
        for (int r = 0; r <= n; ++r) s(k + r, n + k) = b.coeffs()[r];
    return s;
}

}  // namespace

BezoutCofactors bezout_cofactors(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) throw AlgebraError("not coprime");
    if (b.degree() == 0) return {UPoly{}, UPoly(b.lead().inverse())};
    if (a.degree() == 0) return {UPoly(a.lead().inverse()), UPoly{}};
    // Cramer's rule on the Sylvester system keeps every intermediate a
    // polynomial minor instead of a growing Euclidean remainder.
    const int m = a.degree();
    const int n = b.degree();
    const RatMatrix s = sylvester_columns(a, b);
    const MultiRational det = determinant(s);
    if (det.is_zero()) throw AlgebraError("not coprime");
    std::vector<MultiRational> u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(m));
    for (int c = 0; c < m + n; ++c) {
        RatMatrix sc = s;
        for (int r = 0; r < m + n; ++r) sc(r, c) = MultiRational(r == 0 ? 1 : 0);
        const MultiRational z = determinant(sc) / det;
        if (c < n) {
            u[c] = z;
        } else {
            v[c - n] = z;
        }
    }
    return {UPoly(std::move(u)), UPoly(std::move(v))};
}

MultiRational resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const int m = a.degree();
    const int n = b.degree();
    if (m == 0) return a.lead().pow(n);
    if (n == 0) return b.lead().pow(m);
    RatMatrix s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s(i, i + k) = a.coeffs()[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) s(n + i, i + k) = b.coeffs()[n - k];
    return determinant(s);
}

}  // namespace ksmap
