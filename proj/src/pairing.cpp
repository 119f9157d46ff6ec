#include "ksmap/pairing.hpp"

#include <algorithm>

#include "ksmap/errors.hpp"

namespace ksmap {

LaurentSeries::LaurentSeries(int valuation, std::vector<MultiRational> coeffs, int precision)
    : val_(valuation), prec_(precision), c_(std::move(coeffs)) {
    if (val_ + static_cast<int>(c_.size()) > prec_) c_.resize(static_cast<std::size_t>(std::max(0, prec_ - val_)));
    normalize();
}

LaurentSeries LaurentSeries::zero(int precision) { return {precision, {}, precision}; }

void LaurentSeries::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<int>(lead);
    }
    // Explicit zeros up to the precision are implied.
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

MultiRational LaurentSeries::coeff(int k) const {
    if (k >= prec_) throw InputError("increase truncation");
    if (k < val_ || k >= val_ + static_cast<int>(c_.size())) return {};
    return c_[static_cast<std::size_t>(k - val_)];
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    const int prec = std::min(a.prec_, b.prec_);
    const int v = std::min(a.val_, b.val_);
    if (v >= prec) return LaurentSeries::zero(prec);
    std::vector<MultiRational> c(static_cast<std::size_t>(prec - v));
    for (int k = v; k < prec; ++k) {
        MultiRational s;
        if (k >= a.val_ && k < a.val_ + static_cast<int>(a.c_.size())) s = a.c_[k - a.val_];
        if (k >= b.val_ && k < b.val_ + static_cast<int>(b.c_.size())) s += b.c_[k - b.val_];
        c[k - v] = std::move(s);
    }
    return {v, std::move(c), prec};
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    // Known range of a product: min(v_a + N_b, v_b + N_a).
    const int prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
    const int v = a.val_ + b.val_;
    if (a.is_zero() || b.is_zero() || v >= prec) return LaurentSeries::zero(prec);
    std::vector<MultiRational> c(static_cast<std::size_t>(prec - v));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < prec - v; ++j) {
            if (b.c_[j].is_zero()) continue;
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return {v, std::move(c), prec};
}

LaurentSeries operator*(const MultiRational& k, const LaurentSeries& a) {
    std::vector<MultiRational> c;
    c.reserve(a.c_.size());
    for (const auto& x : a.c_) c.push_back(k * x);
    return {a.val_, std::move(c), a.prec_};
}

LaurentSeries LaurentSeries::antiderivative() const {
    std::vector<MultiRational> c;
    c.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const int k = val_ + static_cast<int>(i);
        if (k == -1) {
            if (!c_[i].is_zero()) throw AlgebraError("form has a residue; no Laurent antiderivative");
            c.emplace_back();
            continue;
        }
        BigRational inv(1, k + 1);
        inv.canonicalize();
        c.push_back(c_[i] * MultiRational(inv));
    }
    if (is_zero()) return zero(prec_ + 1);
    return {val_ + 1, std::move(c), prec_ + 1};
}

namespace {

using Series = std::vector<MultiRational>;  // power series, index = exponent

Series mul_trunc(const Series& a, const Series& b, std::size_t n) {
    Series c(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (b[j].is_zero()) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

// h(s) = s^(4g+2) f(s^-2) = 1 + a_{2g} s^2 + ... + a_0 s^(4g+2).
Series infinity_polynomial(const HyperellipticPencil& p) {
    const int d = 2 * p.genus + 1;
    Series h(static_cast<std::size_t>(2 * d) + 1);
    for (int k = 0; k <= d; ++k) h[static_cast<std::size_t>(2 * (d - k))] = p.fu.coeff(k);
    return h;
}

// w = h^(-1/2) to n terms by Newton iteration w <- w + w (1 - h w^2) / 2.
Series inverse_sqrt(const Series& h, std::size_t n) {
    Series w{MultiRational(1)};
    std::size_t have = 1;
    const MultiRational half = BigRational(1, 2);
    while (have < n) {
        have = std::min(2 * have, n);
        const Series e = mul_trunc(h, mul_trunc(w, w, have), have);
        Series r(have);
        r[0] = MultiRational(1) - e[0];
        for (std::size_t k = 1; k < have; ++k) r[k] = -e[k];
        const Series corr = mul_trunc(w, r, have);
        w.resize(have);
        for (std::size_t k = 0; k < have; ++k) w[k] += half * corr[k];
    }
    return w;
}

}  // namespace

InfinityExpansion expand_at_infinity(int j, const HyperellipticPencil& pencil, int N) {
    const int g = pencil.genus;
    if (j < 1 || j > 2 * g) throw InputError("basis index out of range");
    if (N < 1) throw InputError("truncation must be positive");
    const Series h = infinity_polynomial(pencil);
    const Series w = inverse_sqrt(h, static_cast<std::size_t>(N));
    const Series u = mul_trunc(h, w, static_cast<std::size_t>(N));
    // e_j = x^(j-1) dx / y = -2 s^(2g-2j) w(s) ds.
    const int v = 2 * g - 2 * j;
    Series form;
    form.reserve(w.size());
    for (const auto& c : w) form.push_back(MultiRational(-2) * c);
    InfinityExpansion out;
    out.u = LaurentSeries(0, u, N);
    out.form = LaurentSeries(v, std::move(form), v + N);
    out.primitive = out.form.antiderivative();
    return out;
}

CupMatrix cup_matrix(const HyperellipticPencil& pencil, int N) {
    const int g = pencil.genus;
    const int n = 2 * g;
    if (N <= 0) N = 8 * g + 6;
    for (int attempt = 0; attempt < 3; ++attempt, N *= 2) {
        try {
            std::vector<InfinityExpansion> ex;
            ex.reserve(static_cast<std::size_t>(n));
            for (int j = 1; j <= n; ++j) ex.push_back(expand_at_infinity(j, pencil, N));
            RatMatrix J(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) J(i, j) = (ex[i].primitive * ex[j].form).residue();
            return {J, N};
        } catch (const InputError&) {
            if (attempt == 2) throw;
        }
    }
    throw InputError("increase truncation");
}

RatMatrix symplectify(const RatMatrix& J) {
    const int n = J.rows();
    if (n % 2 != 0 || J.cols() != n) throw AlgebraError("degenerate pairing");
    const int g = n / 2;
    if (!J.block(0, 0, g, g).is_zero()) throw AlgebraError("first-kind block is not lagrangian");
    const RatMatrix B = J.block(0, g, g, g);
    const RatMatrix C = J.block(g, g, g, g);
    if (determinant(B).is_zero()) throw AlgebraError("degenerate pairing");
    const RatMatrix R = inverse(B);
    const RatMatrix Q = MultiRational(BigRational(1, 2)) * (R.transpose() * C * R);
    RatMatrix G = RatMatrix::identity(n);
    G.set_block(0, g, Q);
    G.set_block(g, g, R);
    return G;
}

RatMatrix change_basis(const RatMatrix& M, const RatMatrix& G, int param_index) {
    const RatMatrix Gi = inverse(G);
    return Gi * M * G + Gi * G.derivative(param_var(param_index));
}

RatMatrix horizontality_defect(const RatMatrix& J, const ConnectionMatrix& cm) {
    const RatMatrix dJ = J.derivative(param_var(cm.parameter_index));
    return dJ - (cm.m.transpose() * J + J * cm.m);
}

}  // namespace ksmap
