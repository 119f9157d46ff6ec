#include "ksmap/derham.hpp"

#include "ksmap/errors.hpp"
#include "ksmap/factor.hpp"

namespace ksmap {

namespace {

// P = N / D with N in Q[x, t] and D in Q[t].
std::pair<MultiPoly, MultiPoly> clear_denominators(const UPoly& p) {
    MultiPoly l(1);
    for (const auto& c : p.coeffs()) {
        if (c.den().is_constant()) continue;
        l = l * div_exact(c.den(), gcd(l, c.den()));
    }
    std::vector<MultiPoly> cs;
    for (const auto& c : p.coeffs()) {
        cs.push_back(c.is_zero() ? MultiPoly{} : c.num() * div_exact(l, c.den()));
    }
    return {MultiPoly::from_coefficients(kVarX, cs), l};
}

// Division in x by a polynomial monic in x.
std::pair<MultiPoly, MultiPoly> divmod_monic(const MultiPoly& a, const MultiPoly& f) {
    std::vector<MultiPoly> r = a.coefficients_in(kVarX);
    const std::vector<MultiPoly> fc = f.coefficients_in(kVarX);
    const int df = static_cast<int>(fc.size()) - 1;
    const int da = static_cast<int>(r.size()) - 1;
    if (da < df) return {MultiPoly{}, a};
    std::vector<MultiPoly> q(static_cast<std::size_t>(da - df) + 1);
    for (int k = da; k >= df; --k) {
        if (r[k].is_zero()) continue;
        const MultiPoly c = r[k];
        q[k - df] = c;
        for (int j = 0; j <= df; ++j) {
            if (!fc[j].is_zero()) r[k - df + j] -= c * fc[j];
        }
    }
    r.resize(static_cast<std::size_t>(df));
    return {MultiPoly::from_coefficients(kVarX, q), MultiPoly::from_coefficients(kVarX, r)};
}

}  // namespace

UPoly HyperellipticPencil::f_param(int i) const {
    return UPoly::from_multipoly(f.derivative(param_var(i)));
}

HyperellipticPencil validate_pencil(const MultiPoly& f, int num_params) {
    for (int i = 0; i < kMaxParams; ++i) {
        if (f.depends_on(lambda_var(i))) throw InputError("auxiliary variables are not allowed in f");
    }
    const int deg = f.degree(kVarX);
    if (deg % 2 == 0) throw InputError("unsupported model (use odd-degree form)");
    if (deg < 3) throw InputError("degree in x must be at least 3");
    const UPoly fu = UPoly::from_multipoly(f);
    if (!(fu.lead() == MultiRational(1))) throw InputError("polynomial must be monic in x");

    int used = 0;
    for (int i = 0; i < kMaxParams; ++i)
        if (f.depends_on(param_var(i))) used = i + 1;
    if (num_params < 0) num_params = used;
    if (num_params > kMaxParams) throw InputError("at most 2 parameters are supported");
    if (used > num_params) throw InputError("polynomial uses an undeclared parameter");

    HyperellipticPencil p;
    p.f = f;
    p.fu = fu;
    p.fx = fu.derivative_x();
    p.genus = (deg - 1) / 2;
    p.num_params = num_params;
    const MultiRational disc = resultant(p.fu, p.fx);
    if (disc.is_zero()) throw InputError("pencil everywhere singular");
    p.discriminant = disc.num();
    p.discriminant.make_integer_primitive();
    p.singular_factors = squarefree_factors(p.discriminant);
    p.bezout = bezout_cofactors(p.fu, p.fx);
    auto [un, ud] = clear_denominators(p.bezout.u);
    auto [vn, vd] = clear_denominators(p.bezout.v);
    const MultiPoly l = ud * div_exact(vd, gcd(ud, vd));
    p.bez_u = un * div_exact(l, ud);
    p.bez_v = vn * div_exact(l, vd);
    p.bez_den = l;
    return p;
}

RatVector reduce_form(const HyperellipticPencil& pencil, const UPoly& P, int pole_order) {
    if (pole_order < 1 || pole_order % 2 == 0) {
        throw InputError("pole order must be an odd integer >= 1");
    }
    const int g = pencil.genus;
    const MultiPoly& f = pencil.f;
    const MultiPoly fx = f.derivative(kVarX);
    // Fraction-free: the form is num/den dx/y^(2k+1) with num in Q[x, t], den in Q[t].
    auto [num, den] = clear_denominators(P);
    // Pole lowering: P = A f + B f_x with B = P v mod f, A = P u + q f_x, then
    // P dx/y^(2k+1) == (A + 2 B'/(2k-1)) dx/y^(2k-1).
    for (int k = (pole_order - 1) / 2; k >= 1; --k) {
        if (num.is_zero()) break;
        auto [q, b] = divmod_monic(num * pencil.bez_v, f);
        num = num * pencil.bez_u + q * fx + b.derivative(kVarX) * BigRational(2, 2 * k - 1);
        den = den * pencil.bez_den;
    }
    // Degree lowering with d(x^m y) = x^(m-1) (2m f + x f_x)/2 dx/y, whose
    // leading coefficient in x is (2m + 2g + 1)/2.
    const MultiPoly x = MultiPoly::variable(kVarX);
    while (!num.is_zero() && num.degree(kVarX) >= 2 * g) {
        const int m = num.degree(kVarX) - 2 * g;
        const MultiPoly exact = m > 0 ? MultiPoly::monomial(Monomial::var(kVarX, m - 1), 1) *
                                            (f * BigRational(2 * m) + x * fx)
                                      : fx;  // twice the exact form
        const MultiPoly lead = num.coefficients_in(kVarX).back();
        num -= lead * exact * BigRational(1, 2 * m + 2 * g + 1);
    }
    const std::vector<MultiPoly> cs = num.coefficients_in(kVarX);
    RatVector coords(static_cast<std::size_t>(2 * g));
    for (int j = 0; j < 2 * g && j < static_cast<int>(cs.size()); ++j) {
        if (!cs[j].is_zero()) coords[j] = MultiRational(cs[j], den);
    }
    return coords;
}

ConnectionMatrix gauss_manin_matrix(const HyperellipticPencil& pencil, int i) {
    if (i < 0 || i >= pencil.num_params) throw InputError("parameter index out of range");
    const int n = pencil.dim();
    const UPoly ft = pencil.f_param(i) * MultiRational(BigRational(-1, 2));
    std::vector<RatVector> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols.push_back(reduce_form(pencil, UPoly::x_power(j) * ft, 3));
    return {i, pencil.genus, RatMatrix::from_columns(cols)};
}

RatMatrix kodaira_spencer_block(const ConnectionMatrix& cm) { return cm.T(); }

bool connection_regular(const HyperellipticPencil& pencil, const RatMatrix& m) {
    MultiPoly allowed = pencil.discriminant;
    for (int i = 0; i < pencil.num_params; ++i) allowed *= MultiPoly::variable(param_var(i));
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            MultiPoly d = m(r, c).den();
            while (!d.is_constant()) {
                const MultiPoly h = gcd(d, allowed);
                if (h.is_constant()) return false;
                d = div_exact(d, h);
            }
        }
    }
    return true;
}

RatMatrix curvature(const ConnectionMatrix& m1, const ConnectionMatrix& m2) {
    const int v1 = param_var(m1.parameter_index);
    const int v2 = param_var(m2.parameter_index);
    return m2.m.derivative(v1) - m1.m.derivative(v2) + m1.m * m2.m - m2.m * m1.m;
}

std::vector<MultiRational> picard_fuchs(const ConnectionMatrix& cm, int j) {
    const int n = cm.m.rows();
    if (j < 0 || j >= n) throw InputError("basis index out of range");
    const int v = param_var(cm.parameter_index);
    std::vector<RatVector> chain;
    RatVector cur(static_cast<std::size_t>(n));
    cur[j] = 1;
    chain.push_back(cur);
    for (int k = 0; k < n; ++k) {
        RatVector next = cm.m * cur;
        for (int r = 0; r < n; ++r) next[r] += cur[r].derivative(v);
        chain.push_back(next);
        cur = next;
        const auto ker = kernel_basis(RatMatrix::from_columns(chain));
        if (ker.empty()) continue;
        RatVector c = ker.front();
        if (c.back().is_zero()) continue;
        if (sgn(c.back().num().leading_coefficient()) < 0) {
            for (auto& e : c) e = -e;
        }
        return c;
    }
    throw InvariantViolation("cyclic vector chain did not close");
}

}  // namespace ksmap
